#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aoi/distribution.hpp"
#include "aoi/error.hpp"
#include "aoi/exact_solver.hpp"
#include "aoi/grid_io.hpp"
#include "aoi/mdp.hpp"
#include "aoi/metrics.hpp"
#include "aoi/oracle.hpp"
#include "aoi/policy.hpp"
#include "aoi/policy_io.hpp"
#include "aoi/simulator.hpp"
#include "cli/range.hpp"

namespace aoi::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

const std::vector<std::string> kAllChecks = {"causality", "normalization", "diagonal", "pantograph", "oracle"};

// Shortest round-trip form, for echoes meant to be read by people.
std::string short_real(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

std::string resolved_format(const RunConfig& c) {
  if (!c.format.empty()) return c.format;
  return c.command == "sweep" ? "csv" : "grid";
}

// Destination for the main artifact: --out if given, the output stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ValidationError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  void finish(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw Error("write failed" + (path.empty() ? std::string() : " for '" + path + "'"));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_to(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  Sink sink(path, fallback);
  body(sink.stream());
  sink.finish(path);
}

std::string text_value(const Json& v) {
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

// Summary as "key value" lines; nested objects are skipped (the config is
// echoed separately).
std::vector<std::string> summary_lines(const Json& summary) {
  std::vector<std::string> lines;
  for (const auto& [key, value] : summary.items()) {
    if (value.is_object()) continue;
    lines.push_back(key + ' ' + text_value(value));
  }
  return lines;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.command == "sweep") {
    j["p"] = c.p_range;
    j["q"] = c.q_range;
  } else {
    j["p"] = c.p;
    j["q"] = c.q;
  }
  j["policy"] = c.policy;
  j["size"] = c.y_hat;
  j["n"] = c.n_trunc;
  j["steps"] = c.steps;
  j["seed"] = c.seed;
  j["burn_in"] = c.burn_in;
  j["format"] = resolved_format(c);
  j["out"] = c.out;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["method"] = c.method;
  j["threads"] = c.threads;
  if (!c.diff_against.empty()) j["diff_against"] = c.diff_against;
  if (c.command == "validate") {
    j["checks"] = c.checks.empty() ? kAllChecks : c.checks;
    j["window"] = c.window;
    j["oracle_n"] = c.oracle_n;
  }
  return j;
}

Json make_summary(const RunConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  j["config"] = config_json(c);
  return j;
}

void emit_json(std::ostream& out, const Json& summary) { out << summary.dump(2) << '\n'; }

void print_summary(std::ostream& out, const RunConfig& c, const Json& summary) {
  out << "config " << describe(c) << '\n';
  for (const auto& line : summary_lines(summary)) out << line << '\n';
}

std::vector<std::string> header_lines(const RunConfig& c, const Json& summary) {
  // Keys the grid writer emits itself are left out so the file reads back unchanged.
  static const std::vector<std::string> kSkip = {"command", "tail_mass", "norm_constant"};
  std::vector<std::string> header{" config " + describe(c)};
  for (const auto& line : summary_lines(summary)) {
    const std::string key = line.substr(0, line.find(' '));
    if (std::find(kSkip.begin(), kSkip.end(), key) == kSkip.end()) header.push_back(' ' + line);
  }
  return header;
}

void write_grid_csv(std::ostream& out, const Grid& g) {
  out << "x,y,value\n";
  for (int x = 1; x <= g.size(); ++x)
    for (int y = 1; y <= g.size(); ++y) out << x << ',' << y << ',' << format_real(g(x, y)) << '\n';
}

// Writes the main artifact of solve / simulate in the requested format;
// prints the text summary when the artifact went to a file.
void deliver_distribution(const RunConfig& c, const Distribution& dist, const Json& summary, std::ostream& out) {
  const std::string format = resolved_format(c);
  write_to(c.out, out, [&](std::ostream& s) {
    if (format == "json") {
      emit_json(s, summary);
    } else if (format == "csv") {
      write_grid_csv(s, dist.grid);
    } else {
      write_grid(s, GridFile{dist, header_lines(c, summary)});
    }
  });
  if (!c.out.empty() && format != "json") print_summary(out, c, summary);
}

struct ResolvedPolicy {
  Policy policy;
  std::optional<OptimalPolicy> optimal;
};

OptimalPolicy run_optimal(const RunConfig& c, const NetworkParams& params) {
  const MdpModel model = build_model(params, c.n_trunc);
  OptimalPolicy result = c.method == "rvi" ? solve_optimal_rvi(model, c.tol, c.max_iter * 5000)
                                           : solve_optimal(model, c.tol, c.max_iter);
  result.policy.set_id("op:N=" + std::to_string(c.n_trunc));
  return result;
}

ResolvedPolicy resolve_policy(const RunConfig& c, const NetworkParams& params) {
  if (c.policy == "mw") return {Policy::max_weight(), std::nullopt};
  if (c.policy == "op") {
    OptimalPolicy op = run_optimal(c, params);
    Policy policy = op.policy;
    return {std::move(policy), std::move(op)};
  }
  const std::string path = c.policy.substr(5);
  return {Policy::tabular(read_policy_file(path).matrix, c.policy), std::nullopt};
}

void add_optimal_info(Json& summary, const std::optional<OptimalPolicy>& op) {
  if (!op) return;
  summary["op_truncated_gain"] = op->gain;
  summary["op_iterations"] = op->iterations;
}

void add_distribution_info(Json& summary, const Distribution& dist) {
  const AoiEstimate avg = average_aoi(dist);
  summary["avg_aoi"] = avg.value;
  summary["avg_aoi_truncation_bound"] = avg.truncation_bound;
  summary["moment2_total"] = moment(dist, 2, Component::kTotal);
  summary["moment3_total"] = moment(dist, 3, Component::kTotal);
  summary["norm_constant"] = dist.norm_constant;
  summary["tail_mass"] = dist.tail_mass;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const NetworkParams params(c.p, c.q);
  const ResolvedPolicy resolved = resolve_policy(c, params);
  const Distribution dist = solve(resolved.policy, params, SolverConfig{c.y_hat});
  Json summary = make_summary(c);
  add_optimal_info(summary, resolved.optimal);
  add_distribution_info(summary, dist);
  deliver_distribution(c, dist, summary, out);
  return 0;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const NetworkParams params(c.p, c.q);
  const ResolvedPolicy resolved = resolve_policy(c, params);
  const SimResult sim = simulate(resolved.policy, params, c.steps, c.seed, c.y_hat, c.burn_in);
  Json summary = make_summary(c);
  add_optimal_info(summary, resolved.optimal);
  summary["avg_aoi"] = sim.avg_aoi;
  summary["steps"] = sim.steps;
  summary["seed"] = sim.seed;
  summary["overflow_mass"] = sim.empirical.tail_mass;

  if (!c.diff_against.empty()) {
    const GridFile exact = read_grid_file(c.diff_against);
    if (!(exact.dist.params == params))
      throw ValidationError("--diff-against grid was computed for different p, q");
    const Distribution diff = absolute_difference(exact.dist, sim.empirical);
    double worst = 0.0;
    for (double v : diff.grid.cells()) worst = std::max(worst, v);
    summary["max_abs_diff"] = worst;
    std::string diff_path = c.diff_out;
    if (diff_path.empty() && !c.out.empty()) diff_path = c.out + ".diff";
    if (!diff_path.empty()) {
      Distribution tagged = diff;
      tagged.policy_id = "absdiff:" + resolved.policy.id();
      tagged.normalized = false;
      tagged.tail_mass = 0.0;
      tagged.norm_constant = 1.0;
      std::vector<std::string> header = header_lines(c, summary);
      header.push_back(" value |exact - sampled|");
      write_grid_file(diff_path, GridFile{tagged, header});
      summary["diff_out"] = diff_path;
    }
  }
  deliver_distribution(c, sim.empirical, summary, out);
  return 0;
}

int cmd_optimal(const RunConfig& c, std::ostream& out) {
  const NetworkParams params(c.p, c.q);
  const OptimalPolicy op = run_optimal(c, params);
  const DecisionMatrix& matrix = *op.policy.matrix();
  const Policy mw = Policy::max_weight();
  const int n = matrix.size();

  Json summary = make_summary(c);
  summary["op_truncated_gain"] = op.gain;
  summary["op_iterations"] = op.iterations;
  const auto violations = check_causality(op.policy, params, n);
  summary["causality_violations"] = violations.size();

  bool contains_mw = true;
  int op_two = 0, mw_two = 0;
  Distribution overlay;
  overlay.grid = Grid(n);
  overlay.params = params;
  overlay.policy_id = "overlay:mw+op";
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const bool m2 = mw.decide({x, y}, params) == Agent::kTwo;
      const bool o2 = matrix.at({x, y}) == Agent::kTwo;
      mw_two += m2;
      op_two += o2;
      if (m2 && !o2) contains_mw = false;
      overlay.grid(x, y) = (m2 ? 1.0 : 0.0) + (o2 ? 2.0 : 0.0);
    }
  }
  summary["op_agent2_states"] = op_two;
  summary["mw_agent2_states"] = mw_two;
  summary["op_agent2_contains_mw"] = contains_mw;

  try {
    const double avg_mw = average_aoi(solve(mw, params, SolverConfig{c.y_hat})).value;
    const double avg_op = average_aoi(solve(op.policy, params, SolverConfig{c.y_hat})).value;
    summary["avg_aoi_mw"] = avg_mw;
    summary["avg_aoi_op"] = avg_op;
    summary["gain_percent"] = 100.0 * (avg_mw - avg_op) / avg_mw;
  } catch (const SolverError& e) {
    summary["exact_error"] = e.what();
  }

  std::string overlay_path = c.overlay;
  if (overlay_path.empty() && !c.out.empty()) overlay_path = c.out + ".overlay";
  if (!overlay_path.empty()) {
    std::vector<std::string> header = header_lines(c, summary);
    header.push_back(" value [MW activates agent 2] + 2 [OP activates agent 2]");
    write_grid_file(overlay_path, GridFile{overlay, header});
    summary["overlay_out"] = overlay_path;
  }

  const std::string format = resolved_format(c);
  write_to(c.out, out, [&](std::ostream& s) {
    if (format == "json") {
      emit_json(s, summary);
    } else if (format == "csv") {
      s << "x,y,agent\n";
      for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) s << x << ',' << y << ',' << static_cast<int>(matrix.at({x, y})) << '\n';
    } else {
      write_policy(s, PolicyFile{header_lines(c, summary), matrix});
    }
  });
  if (!c.out.empty() && format != "json") print_summary(out, c, summary);
  return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  SweepSpec spec;
  spec.p_values = parse_range(c.p_range);
  spec.q_values = parse_range(c.q_range);
  for (double p : spec.p_values) NetworkParams(p, 0.5);
  for (double q : spec.q_values) NetworkParams(0.5, q);
  spec.y_hat = c.y_hat;
  spec.n_trunc = c.n_trunc;
  spec.include_optimal = c.policy != "mw";
  spec.threads = c.threads;
  spec.tol = c.tol;
  spec.max_iter = c.max_iter;
  const SweepTable table = sweep(spec);

  Json summary = make_summary(c);
  int failed = 0;
  Json rows = Json::array();
  for (const SweepRow& r : table.rows) {
    Json row;
    row["p"] = r.p;
    row["q"] = r.q;
    row["avg_mw"] = r.avg_mw;
    row["avg_op"] = r.avg_op;
    row["gain_percent"] = r.gain_percent;
    if (!r.error.empty()) {
      row["error"] = r.error;
      ++failed;
    }
    rows.push_back(std::move(row));
  }
  summary["cells"] = table.rows.size();
  summary["failed_cells"] = failed;

  std::vector<std::string> header = header_lines(c, summary);
  header.push_back(" value gain_percent");
  if (!c.surface.empty())
    write_to(c.surface, out, [&](std::ostream& s) { write_sweep_surface(s, table, header); });

  const std::string format = resolved_format(c);
  write_to(c.out, out, [&](std::ostream& s) {
    if (format == "json") {
      Json full = summary;
      full["rows"] = rows;
      emit_json(s, full);
    } else if (format == "grid") {
      write_sweep_surface(s, table, header);
    } else {
      write_sweep_csv(s, table);
    }
  });
  if (!c.out.empty() && format != "json") print_summary(out, c, summary);
  return failed == 0 ? 0 : kExitFailure;
}

struct CheckResult {
  std::string name;
  std::string status;  // PASS | FAIL | SKIP
  std::string detail;
};

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const NetworkParams params(c.p, c.q);
  const ResolvedPolicy resolved = resolve_policy(c, params);
  const Policy& policy = resolved.policy;
  const std::vector<std::string>& checks = c.checks.empty() ? kAllChecks : c.checks;
  auto wanted = [&](const std::string& name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };

  std::optional<Distribution> dist;
  std::string solve_error;
  try {
    dist = solve(policy, params, SolverConfig{c.y_hat});
  } catch (const SolverError& e) {
    solve_error = e.what();
  }
  auto no_distribution = [&](const std::string& name) {
    return CheckResult{name, "SKIP", "no distribution: " + solve_error};
  };

  std::vector<CheckResult> results;
  for (const std::string& name : kAllChecks) {
    if (!wanted(name)) continue;
    std::ostringstream detail;
    if (name == "causality") {
      const int bound = policy.matrix() ? std::max(2, policy.matrix()->size()) : std::min(c.y_hat, 512);
      const auto violations = check_causality(policy, params, bound);
      detail << violations.size() << " violating state(s) in [1," << bound << "]^2";
      for (std::size_t i = 0; i < violations.size() && i < 50; ++i) detail << (i == 0 ? ": " : " ") << violations[i];
      if (violations.size() > 50) detail << " ...";
      results.push_back({name, violations.empty() ? "PASS" : "FAIL", detail.str()});
    } else if (!dist) {
      results.push_back(no_distribution(name));
    } else if (name == "normalization") {
      const double err = std::fabs(dist->grid.sum() - 1.0);
      detail << "|sum - 1| = " << format_real(err) << " (limit 1e-12)";
      results.push_back({name, err <= 1e-12 ? "PASS" : "FAIL", detail.str()});
    } else if (name == "diagonal") {
      int nonzero = 0;
      for (int k = 1; k <= dist->y_hat(); ++k) nonzero += dist->grid(k, k) != 0.0;
      detail << nonzero << " nonzero diagonal entr" << (nonzero == 1 ? "y" : "ies");
      results.push_back({name, nonzero == 0 ? "PASS" : "FAIL", detail.str()});
    } else if (name == "pantograph") {
      const double ratio = c.p / c.q;
      if (!policy.is_max_weight()) {
        results.push_back({name, "SKIP", "applies to MaxWeight only"});
      } else if (ratio < 0.5 || std::fabs(ratio - std::round(ratio)) > 1e-9) {
        detail << "non-integer ratio p/q = " << short_real(ratio);
        results.push_back({name, "SKIP", detail.str()});
      } else {
        const double residual = pantograph_residual(*dist);
        detail << "max residual " << format_real(residual) << " (limit 1e-13)";
        results.push_back({name, residual <= 1e-13 ? "PASS" : "FAIL", detail.str()});
      }
    } else if (name == "oracle") {
      int n_oracle = c.oracle_n;
      if (n_oracle == 0) n_oracle = std::max(120, policy.matrix() ? policy.matrix()->size() : 0);
      const int window = std::min({c.window, c.y_hat, n_oracle});
      const Distribution law = stationary(build_operator(policy, params, n_oracle));
      const double diff = max_abs_difference(renormalized_window(dist->grid, window),
                                             renormalized_window(law.grid, window), window);
      detail << "max |exact - oracle| on [1," << window << "]^2 = " << format_real(diff) << " (N = " << n_oracle
             << ", limit 1e-8)";
      results.push_back({name, diff <= 1e-8 ? "PASS" : "FAIL", detail.str()});
    }
  }

  bool failed = false;
  Json summary = make_summary(c);
  Json list = Json::array();
  for (const CheckResult& r : results) {
    failed = failed || r.status == "FAIL";
    list.push_back(Json{{"check", r.name}, {"status", r.status}, {"detail", r.detail}});
  }
  summary["passed"] = !failed;
  summary["checks"] = list;

  write_to(c.out, out, [&](std::ostream& s) {
    if (resolved_format(c) == "json") {
      emit_json(s, summary);
      return;
    }
    s << "# config " << describe(c) << '\n';
    for (const CheckResult& r : results) s << r.status << ' ' << r.name << ": " << r.detail << '\n';
    s << (failed ? "FAIL" : "PASS") << " overall\n";
  });
  return failed ? kExitFailure : 0;
}

void add_common(CLI::App& sub, RunConfig& c, bool scalar_pq) {
  if (scalar_pq) {
    sub.add_option("--p", c.p, "Success probability of agent 1, in (0, 1]")->required();
    sub.add_option("--q", c.q, "Success probability of agent 2, in (0, 1]")->required();
  }
  sub.add_option("--size", c.y_hat, "Grid size y_hat")->capture_default_str();
  sub.add_option("--n", c.n_trunc, "MDP truncation N for the optimal policy")->capture_default_str();
  sub.add_option("--out", c.out, "Output file (default: standard output)");
  sub.add_option("--format", c.format, "grid | csv | json")->check(CLI::IsMember({"grid", "csv", "json"}));
  sub.add_option("--tol", c.tol, "Policy-iteration tolerance")->capture_default_str();
  sub.add_option("--max-iter", c.max_iter, "Policy-iteration iteration cap")->capture_default_str();
  sub.add_option("--method", c.method, "pi | rvi")->check(CLI::IsMember({"pi", "rvi"}))->capture_default_str();
}

}  // namespace

std::string describe(const RunConfig& c) {
  std::ostringstream s;
  s << "command=" << c.command;
  if (c.command == "sweep")
    s << " p=" << c.p_range << " q=" << c.q_range;
  else
    s << " p=" << short_real(c.p) << " q=" << short_real(c.q);
  if (c.command != "optimal") s << " policy=" << c.policy;
  s << " size=" << c.y_hat << " n=" << c.n_trunc;
  if (c.command == "simulate") s << " steps=" << c.steps << " seed=" << c.seed << " burn_in=" << c.burn_in;
  s << " format=" << resolved_format(c) << " tol=" << short_real(c.tol) << " max_iter=" << c.max_iter
    << " method=" << c.method;
  if (c.command == "sweep") s << " threads=" << c.threads;
  if (!c.diff_against.empty()) s << " diff_against=" << c.diff_against;
  if (c.command == "validate") {
    s << " checks=";
    const auto& checks = c.checks.empty() ? kAllChecks : c.checks;
    for (std::size_t i = 0; i < checks.size(); ++i) s << (i ? "," : "") << checks[i];
    s << " window=" << c.window << " oracle_n=" << c.oracle_n;
  }
  if (!c.out.empty()) s << " out=" << c.out;
  return s.str();
}

void validate_config(const RunConfig& c) {
  static const std::vector<std::string> commands = {"solve", "simulate", "optimal", "sweep", "validate"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw ValidationError("unknown command '" + c.command + "'");
  if (c.command != "sweep") NetworkParams(c.p, c.q);
  const bool file_policy = c.policy.rfind("file:", 0) == 0;
  if (file_policy && c.policy.size() == 5) throw ValidationError("--policy file: needs a path");
  if (c.policy != "mw" && c.policy != "op" && !file_policy && !(c.command == "sweep" && c.policy == "both"))
    throw ValidationError("--policy must be mw, op or file:<path>, got '" + c.policy + "'");
  if (c.command == "sweep" && file_policy) throw ValidationError("sweep supports --policy mw or both");
  if (c.y_hat < 4) throw ValidationError("--size must be >= 4");
  if (c.n_trunc < 4) throw ValidationError("--n must be >= 4");
  if (c.command == "simulate" && c.steps < 1) throw ValidationError("--steps must be >= 1");
  if (!(c.tol > 0.0)) throw ValidationError("--tol must be positive");
  if (c.max_iter < 1) throw ValidationError("--max-iter must be >= 1");
  if (c.threads < 1) throw ValidationError("--threads must be >= 1");
  if (c.window < 1) throw ValidationError("--window must be >= 1");
  if (c.oracle_n != 0 && c.oracle_n < 4) throw ValidationError("--oracle-n must be >= 4");
  if (c.command == "sweep" && (c.p_range.empty() || c.q_range.empty()))
    throw ValidationError("sweep needs --p and --q");
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate_config(c);
    if (c.command == "solve") return cmd_solve(c, out);
    if (c.command == "simulate") return cmd_simulate(c, out);
    if (c.command == "optimal") return cmd_optimal(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    return cmd_validate(c, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact stationary AoI distributions for two-agent scheduling"};
  app.name("aoi");
  app.require_subcommand(1);

  RunConfig c;
  auto* solve_cmd = app.add_subcommand("solve", "Exact stationary distribution of a policy");
  add_common(*solve_cmd, c, true);
  solve_cmd->add_option("--policy", c.policy, "mw | op | file:<path>")->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo visit frequencies");
  add_common(*sim_cmd, c, true);
  sim_cmd->add_option("--policy", c.policy, "mw | op | file:<path>")->capture_default_str();
  sim_cmd->add_option("--steps", c.steps, "Recorded slots")->capture_default_str();
  sim_cmd->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  sim_cmd->add_option("--burn-in", c.burn_in, "Discarded initial slots")->capture_default_str();
  sim_cmd->add_option("--diff-against", c.diff_against, "Exact grid file to compare with");
  sim_cmd->add_option("--diff-out", c.diff_out, "Difference grid file (default: <out>.diff)");

  auto* opt_cmd = app.add_subcommand("optimal", "Optimal policy of the truncated MDP");
  add_common(*opt_cmd, c, true);
  opt_cmd->add_option("--overlay", c.overlay, "MW/OP region overlay grid (default: <out>.overlay)");

  auto* sweep_cmd = app.add_subcommand("sweep", "MaxWeight vs. optimal over a (p, q) grid");
  add_common(*sweep_cmd, c, false);
  sweep_cmd->add_option("--p", c.p_range, "start:step:end or a single value")->required();
  sweep_cmd->add_option("--q", c.q_range, "start:step:end or a single value")->required();
  sweep_cmd->add_option("--policy", c.policy, "mw | both")->capture_default_str();
  sweep_cmd->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--surface", c.surface, "Gain surface grid file");

  auto* val_cmd = app.add_subcommand("validate", "Pass/fail report of solver checks");
  add_common(*val_cmd, c, true);
  val_cmd->add_option("--policy", c.policy, "mw | op | file:<path>")->capture_default_str();
  val_cmd->add_option("--check", c.checks, "causality | normalization | diagonal | pantograph | oracle")
      ->check(CLI::IsMember(kAllChecks));
  val_cmd->add_option("--window", c.window, "Oracle comparison window")->capture_default_str();
  val_cmd->add_option("--oracle-n", c.oracle_n, "Oracle truncation (0: automatic)")->capture_default_str();

  bool sweep_policy_defaulted = true;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    sweep_policy_defaulted = sweep_cmd->count("--policy") == 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInvalid;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "sweep" && sweep_policy_defaulted) c.policy = "both";
  return execute(c, out, err);
}

}  // namespace aoi::cli
