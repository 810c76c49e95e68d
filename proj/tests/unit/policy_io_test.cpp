#include <gtest/gtest.h>

#include <sstream>

#include "aoi/error.hpp"
#include "aoi/mdp.hpp"
#include "aoi/policy_io.hpp"
#include "test_support.hpp"

namespace aoi {
namespace {

std::string emit(const PolicyFile& file) {
  std::ostringstream out;
  write_policy(out, file);
  return out.str();
}

PolicyFile parse(const std::string& text) {
  std::istringstream in(text);
  return read_policy(in);
}

TEST(PolicyIo, ReadsRowsAsYSlices) {
  const PolicyFile file = parse("# made by hand\nN 3\n1 1 1\n2 1 1\n2 2 1\n");
  ASSERT_EQ(file.matrix.size(), 3);
  EXPECT_EQ(file.matrix.at({1, 2}), Agent::kTwo);
  EXPECT_EQ(file.matrix.at({2, 2}), Agent::kOne);
  EXPECT_EQ(file.matrix.at({2, 3}), Agent::kTwo);
  ASSERT_EQ(file.comments.size(), 1u);
  EXPECT_EQ(file.comments[0], " made by hand");
}

TEST(PolicyIo, SizeLineIsOptional) {
  const PolicyFile file = parse("1 2\n1 1\n");
  EXPECT_EQ(file.matrix.size(), 2);
  EXPECT_EQ(file.matrix.at({2, 1}), Agent::kTwo);
}

TEST(PolicyIo, RoundTripIsByteIdentical) {
  const NetworkParams params(0.9, 0.1);
  const OptimalPolicy op = solve_optimal(build_model(params, 32));
  const std::string first = emit(PolicyFile{{" gain 1.5", " second comment"}, *op.policy.matrix()});
  const std::string second = emit(parse(first));
  EXPECT_EQ(first, second);
}

TEST(PolicyIo, FileRoundTrip) {
  test::TempDir dir;
  DecisionMatrix m(5, Agent::kOne);
  m.set({1, 5}, Agent::kTwo);
  write_policy_file(dir.file("p.txt"), PolicyFile{{}, m});
  EXPECT_EQ(read_policy_file(dir.file("p.txt")).matrix, m);
  EXPECT_THROW(read_policy_file(dir.file("missing.txt")), ValidationError);
}

TEST(PolicyIo, MalformedInputs) {
  EXPECT_THROW(parse("1 3\n1 1\n"), ValidationError);       // entry not 1 or 2
  EXPECT_THROW(parse("1 1\n1\n"), ValidationError);         // ragged
  EXPECT_THROW(parse("1 1 1\n1 1 1\n"), ValidationError);   // not square
  EXPECT_THROW(parse("N 3\n1 1\n1 1\n"), ValidationError);  // size mismatch
  EXPECT_THROW(parse("N x\n1\n"), ValidationError);
  EXPECT_THROW(parse("# only comments\n"), ValidationError);
  EXPECT_THROW(parse("1  1\n1 1\n"), ValidationError);      // double space
}

}  // namespace
}  // namespace aoi
