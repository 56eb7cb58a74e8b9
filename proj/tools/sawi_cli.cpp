// Batch front end over the sawi C API: ml, solve and validate subcommands emitting CSV.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sawi/format.hpp"
#include "sawi/sawi.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitTruncation = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library failure carrying its status for exit-code mapping.
struct ApiError : std::runtime_error {
  sawi_status status;
  ApiError(sawi_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(sawi_status s) {
  if (s != SAWI_OK) throw ApiError(s, std::string(sawi_status_name(s)) + ": " + sawi_last_error());
}

// Invalid input maps to the parse exit code, non-convergence to its own, anything else to 1.
int exit_code(sawi_status s) {
  switch (s) {
    case SAWI_INVALID_ARGUMENT:
    case SAWI_INVALID_ORDER:
    case SAWI_OUT_OF_SUPPORTED_RANGE:
    case SAWI_OUT_OF_REGION:
      return kExitParse;
    case SAWI_NON_CONVERGENCE:
      return kExitNonConvergence;
    default:
      return kExitFail;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// `key = value` lines with `#` comments, returned in file order.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

// Moves `--config FILE` out of argv and inserts its pairs as `--key=value` right
// after the subcommand, so explicit flags (parsed later, last one wins) override the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!path) return args;
  if (args.empty() || args[0].rfind("-", 0) == 0) throw UsageError("--config must follow a subcommand");
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(*path)) injected.push_back("--" + key + "=" + value);
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

// start:stop:count, endpoints included.
std::vector<double> parse_grid(const std::string& spec, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError(flag + " expects start:stop:count");
  double a = 0.0, b = 0.0;
  long n = 0;
  try {
    std::size_t pa = 0, pb = 0, pn = 0;
    a = std::stod(parts[0], &pa);
    b = std::stod(parts[1], &pb);
    n = std::stol(parts[2], &pn);
    if (pa != parts[0].size() || pb != parts[1].size() || pn != parts[2].size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw UsageError(flag + ": cannot parse '" + spec + "'");
  }
  if (n < 1 || n > 10'000'000 || !std::isfinite(a) || !std::isfinite(b)) throw UsageError(flag + ": invalid grid");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> axis(const std::optional<double>& point, const std::string& grid, const std::string& name,
                         std::optional<double> fallback) {
  if (point && !grid.empty()) throw UsageError("--" + name + " and --" + name + "-grid are exclusive");
  if (point) return {*point};
  if (!grid.empty()) return parse_grid(grid, "--" + name + "-grid");
  if (fallback) return {*fallback};
  throw UsageError("one of --" + name + " or --" + name + "-grid is required");
}

// CSV sink: the --output file when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct MlArgs {
  double alpha = 0.0, rho = 0.0, gamma = 0.0;
  std::optional<double> z;
  std::string z_grid;
  double tol = 0.0;
  std::string output;
};

int run_ml(const MlArgs& a) {
  const auto zs = axis(a.z, a.z_grid, "z", std::nullopt);
  std::ostringstream csv;
  csv << "z,re,im,est_error,terms\n";
  for (double z : zs) {
    sawi_complex v{};
    double err = 0.0;
    int terms = 0;
    check(sawi_ml3(a.alpha, a.rho, a.gamma, {z, 0.0}, a.tol, &v, &err, &terms));
    csv << sawi::shortest(z) << ',' << sawi::shortest(v.re) << ',' << sawi::shortest(v.im) << ','
        << sawi::shortest(err) << ',' << terms << '\n';
  }
  Sink sink(a.output);
  sink.out() << csv.str();
  return 0;
}

// Problem flags; each maps to the same-named key of the C API problem.
const char* const kProblemKeys[] = {"alpha", "rho",    "gamma",   "omega", "nu",     "p",
                                    "theta", "lap-order", "diffusivity", "sigma", "lambda", "delta",
                                    "m-init", "dt",    "n-terms", "k-max", "k-nodes"};

struct SolveArgs {
  std::string problem;
  std::map<std::string, std::optional<double>> values;
  std::string forcing;
  std::optional<double> x, t;
  std::string x_grid, t_grid;
  bool strict = false;
  bool serial = false;
  std::string output;
};

using ProblemPtr = std::unique_ptr<sawi_problem, decltype(&sawi_problem_destroy)>;

int run_solve(const SolveArgs& a) {
  sawi_problem* raw = nullptr;
  check(sawi_problem_create(a.problem.c_str(), &raw));
  ProblemPtr problem(raw, &sawi_problem_destroy);
  for (const auto& [key, value] : a.values) {
    if (!value) continue;
    if (!sawi_problem_accepts(problem.get(), key.c_str())) {
      throw UsageError("--" + key + " does not apply to problem " + a.problem);
    }
    check(sawi_problem_set(problem.get(), key.c_str(), *value));
  }
  if (!a.forcing.empty()) {
    if (!sawi_problem_accepts(problem.get(), "forcing")) {
      throw UsageError("--forcing does not apply to problem " + a.problem);
    }
    check(sawi_problem_set_forcing(problem.get(), a.forcing.c_str()));
  }
  const auto xs = axis(a.x, a.x_grid, "x", 0.0);
  const auto ts = axis(a.t, a.t_grid, "t", std::nullopt);
  std::vector<sawi_complex> out(xs.size() * ts.size());
  int warn = 0;
  check(sawi_solve(problem.get(), xs.data(), xs.size(), ts.data(), ts.size(), out.data(), &warn));
  if (warn) {
    std::cerr << "warning: series truncation error above the warning ratio; raise --n-terms or lower --k-max\n";
    if (a.strict) return kExitTruncation;
  }
  std::ostringstream csv;
  csv << "x,t,re,im\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const auto& v = out[i * ts.size() + j];
      csv << sawi::shortest(xs[i]) << ',' << sawi::shortest(ts[j]) << ',' << sawi::shortest(v.re) << ','
          << sawi::shortest(v.im) << '\n';
    }
  }
  Sink sink(a.output);
  sink.out() << csv.str();
  return 0;
}

struct ValidateArgs {
  std::string suite = "all";
  std::optional<double> dt, tol;
  bool serial = false;
  std::string output;
};

using ReportPtr = std::unique_ptr<sawi_report, decltype(&sawi_report_destroy)>;

int run_validate(const ValidateArgs& a) {
  sawi_report* raw = nullptr;
  check(sawi_validate(a.suite.c_str(), a.dt.value_or(0.0), a.tol.value_or(0.0), a.serial ? 1 : 0, &raw));
  ReportPtr report(raw, &sawi_report_destroy);
  std::ostringstream text;
  bool all_pass = true;
  for (std::size_t i = 0; i < sawi_report_size(report.get()); ++i) {
    const char* name = nullptr;
    const char* note = nullptr;
    double measured = 0.0, bound = 0.0;
    int at_least = 0, pass = 0;
    check(sawi_report_check(report.get(), i, &name, &measured, &bound, &at_least, &pass, &note));
    all_pass = all_pass && pass;
    text << (pass ? "PASS " : "FAIL ") << name << ' ' << sawi::shortest(measured) << ' ' << sawi::shortest(bound)
         << '\n';
    if (note && *note) std::cerr << name << ": " << note << '\n';
  }
  Sink sink(a.output);
  sink.out() << text.str();
  return all_pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sawi-transform solutions of Prabhakar and Hilfer-Prabhakar Cauchy problems"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "sawi_cli 1.0");
  app.footer("--config FILE (after the subcommand) reads `key = value` lines; keys are the long flag names.");

  MlArgs ml;
  auto* ml_cmd = app.add_subcommand("ml", "Evaluate E^gamma_{alpha,rho}(z) on real arguments");
  ml_cmd->add_option("--alpha", ml.alpha, "alpha > 0")->required();
  ml_cmd->add_option("--rho", ml.rho, "rho")->required();
  ml_cmd->add_option("--gamma", ml.gamma, "gamma")->required();
  ml_cmd->add_option("--z", ml.z, "single argument");
  ml_cmd->add_option("--z-grid", ml.z_grid, "start:stop:count");
  ml_cmd->add_option("--tol", ml.tol, "series tolerance (default 1e-15)");
  ml_cmd->add_option("--output", ml.output, "CSV file (stdout when absent)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Evaluate a Cauchy-problem solution on an x/t grid");
  solve_cmd->add_option("--problem", solve.problem, "problem kind")
      ->required()
      ->check(CLI::IsMember({"advdisp", "advdisp-reg", "heat-reg", "heat-hp", "pointwise", "integro"}));
  for (const char* key : kProblemKeys) solve_cmd->add_option(std::string("--") + key, solve.values[key]);
  solve_cmd->add_option("--forcing", solve.forcing, "integro forcing: const:c, exp:a or power:p");
  solve_cmd->add_option("--x", solve.x, "single x (default 0)");
  solve_cmd->add_option("--x-grid", solve.x_grid, "start:stop:count");
  solve_cmd->add_option("--t", solve.t, "single t");
  solve_cmd->add_option("--t-grid", solve.t_grid, "start:stop:count");
  solve_cmd->add_flag("--strict", solve.strict, "exit 4 when the truncation warning is raised");
  solve_cmd->add_flag("--serial", solve.serial, "sequential evaluation (solve is always sequential)");
  solve_cmd->add_option("--output", solve.output, "CSV file (stdout when absent)");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Run a validation suite");
  validate_cmd->add_option("--suite", validate.suite, "ml, sawi, ops, solutions or all")
      ->check(CLI::IsMember({"ml", "sawi", "ops", "solutions", "all"}));
  validate_cmd->add_option("--dt", validate.dt, "time step override");
  validate_cmd->add_option("--tol", validate.tol, "series tolerance override");
  validate_cmd->add_flag("--serial", validate.serial, "run mode loops on one thread");
  validate_cmd->add_option("--output", validate.output, "report file (stdout when absent)");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (ml_cmd->parsed()) return run_ml(ml);
    if (solve_cmd->parsed()) return run_solve(solve);
    return run_validate(validate);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
