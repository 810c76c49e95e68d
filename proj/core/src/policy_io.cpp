#include "aoi/policy_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "policy file line " << line_no << ": " << what;
  throw ValidationError(msg.str());
}

std::vector<Agent> parse_row(const std::string& line, int line_no) {
  std::vector<Agent> row;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t end = line.find(' ', pos);
    const std::string tok = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (tok == "1") {
      row.push_back(Agent::kOne);
    } else if (tok == "2") {
      row.push_back(Agent::kTwo);
    } else {
      fail(line_no, "entry '" + tok + "' is not 1 or 2");
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return row;
}

}  // namespace

PolicyFile read_policy(std::istream& in) {
  PolicyFile file;
  std::vector<std::vector<Agent>> rows;
  int declared = -1;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') {
      file.comments.push_back(line.substr(1));
      continue;
    }
    if (line.empty()) continue;
    if (rows.empty() && declared < 0 && line.rfind("N ", 0) == 0) {
      try {
        std::size_t used = 0;
        declared = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2 || declared < 1) throw std::invalid_argument("size");
      } catch (const std::exception&) {
        fail(line_no, "bad size declaration '" + line + "'");
      }
      continue;
    }
    rows.push_back(parse_row(line, line_no));
  }
  if (rows.empty()) throw ValidationError("policy file contains no matrix rows");
  const int n = static_cast<int>(rows.size());
  if (declared >= 0 && declared != n) {
    std::ostringstream msg;
    msg << "policy file declares N " << declared << " but has " << n << " rows";
    throw ValidationError(msg.str());
  }
  file.matrix = DecisionMatrix(n, Agent::kOne);
  for (int y = 1; y <= n; ++y) {
    const auto& row = rows[static_cast<std::size_t>(y - 1)];
    if (static_cast<int>(row.size()) != n) {
      std::ostringstream msg;
      msg << "policy row y = " << y << " has " << row.size() << " entries, expected " << n;
      throw ValidationError(msg.str());
    }
    for (int x = 1; x <= n; ++x) file.matrix.set({x, y}, row[static_cast<std::size_t>(x - 1)]);
  }
  return file;
}

PolicyFile read_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open policy file '" + path + "'");
  return read_policy(in);
}

void write_policy(std::ostream& out, const PolicyFile& file) {
  for (const auto& c : file.comments) out << '#' << c << '\n';
  const int n = file.matrix.size();
  out << "N " << n << '\n';
  std::string line;
  line.reserve(static_cast<std::size_t>(2 * n));
  for (int y = 1; y <= n; ++y) {
    line.clear();
    for (int x = 1; x <= n; ++x) {
      if (x > 1) line.push_back(' ');
      line.push_back(file.matrix.at({x, y}) == Agent::kOne ? '1' : '2');
    }
    out << line << '\n';
  }
}

void write_policy_file(const std::string& path, const PolicyFile& file) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write policy file '" + path + "'");
  write_policy(out, file);
}

}  // namespace aoi
