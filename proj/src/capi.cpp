#include "sawi/sawi.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sawi/analytic_solutions.hpp"
#include "sawi/error.hpp"
#include "sawi/ml_kernels.hpp"
#include "sawi/validation.hpp"

namespace {

thread_local std::string g_last_error;

enum class Kind { AdvDisp, AdvDispReg, HeatReg, HeatHp, Pointwise, Integro };

struct KindInfo {
  const char* name;
  Kind kind;
};

constexpr KindInfo kKinds[] = {
    {"advdisp", Kind::AdvDisp},   {"advdisp-reg", Kind::AdvDispReg}, {"heat-reg", Kind::HeatReg},
    {"heat-hp", Kind::HeatHp},    {"pointwise", Kind::Pointwise},    {"integro", Kind::Integro},
};

bool is_adv(Kind k) { return k == Kind::AdvDisp || k == Kind::AdvDispReg; }
bool is_heat(Kind k) { return k == Kind::HeatReg || k == Kind::HeatHp; }

// Key -> required flag; optional keys carry their defaults in sawi_problem::values.
std::map<std::string, bool> keys_for(Kind k) {
  std::map<std::string, bool> keys{{"alpha", true}, {"rho", true},   {"gamma", true},
                                   {"omega", true}, {"nu", true},    {"n-terms", false}};
  if (is_adv(k) || is_heat(k)) {
    keys.insert({{"sigma", false}, {"k-max", false}, {"k-nodes", false}});
  }
  if (is_adv(k)) keys.insert({{"p", true}, {"theta", true}, {"lap-order", true}});
  if (is_heat(k)) keys.insert({"diffusivity", true});
  if (k == Kind::Pointwise) keys.insert({"lambda", true});
  if (k == Kind::Integro) {
    keys.insert({{"lambda", true}, {"delta", true}, {"m-init", true}, {"dt", false}});
  }
  return keys;
}

sawi_status fail_with(sawi_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs f, mapping exceptions to status codes and the thread-local message.
template <class F>
sawi_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const sawi::Error& e) {
    return fail_with(static_cast<sawi_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail_with(SAWI_INTERNAL, e.what());
  } catch (...) {
    return fail_with(SAWI_INTERNAL, "unknown exception");
  }
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    sawi::fail(sawi::ErrorCode::InvalidArgument, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

int as_int(double v, const char* key) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    sawi::fail(sawi::ErrorCode::InvalidArgument, std::string(key) + " must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

struct sawi_problem {
  Kind kind;
  std::map<std::string, bool> keys;
  std::map<std::string, double> values;
  std::string forcing;

  double get(const std::string& key) const { return values.at(key); }

  sawi::HilferSpec hilfer() const {
    sawi::HilferSpec h;
    h.kernel.alpha = get("alpha");
    h.kernel.rho = get("rho");
    h.kernel.gamma = get("gamma");
    h.kernel.omega = get("omega");
    h.nu = get("nu");
    return h;
  }

  sawi::ModeQuadrature quadrature() const {
    sawi::ModeQuadrature mq;
    mq.k_max = get("k-max");
    mq.nodes = as_int(get("k-nodes"), "k-nodes");
    return mq;
  }

  void require_complete() const {
    std::string missing;
    for (const auto& [key, required] : keys) {
      if (required && !values.count(key)) missing += (missing.empty() ? "" : ", ") + key;
    }
    if (kind == Kind::Integro && forcing.empty()) missing += std::string(missing.empty() ? "" : ", ") + "forcing";
    if (!missing.empty()) sawi::fail(sawi::ErrorCode::InvalidArgument, "missing required keys: " + missing);
  }
};

struct sawi_report {
  std::vector<sawi::CheckResult> checks;
};

namespace {

// Forcing samples y(t) on grid from "const:c", "exp:a" or "power:p".
sawi::Samples forcing_samples(const std::string& expr, const sawi::Grid& grid) {
  const auto colon = expr.find(':');
  if (colon == std::string::npos) {
    sawi::fail(sawi::ErrorCode::InvalidArgument, "forcing must be const:c, exp:a or power:p");
  }
  const std::string head = expr.substr(0, colon);
  const double v = parse_number(std::string_view(expr).substr(colon + 1));
  if (head == "const") return sawi::Samples::constant(grid, v);
  if (head == "exp") return sawi::Samples::from_function(grid, [v](double t) { return sawi::cplx(std::exp(v * t)); });
  if (head == "power") {
    if (v < 0.0) sawi::fail(sawi::ErrorCode::InvalidArgument, "power forcing needs p >= 0");
    return sawi::Samples::from_function(grid, [v](double t) { return sawi::cplx(std::pow(t, v)); });
  }
  sawi::fail(sawi::ErrorCode::InvalidArgument, "unknown forcing kind '" + head + "'");
}

void check_finite(const double* v, std::size_t n, const char* what) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) sawi::fail(sawi::ErrorCode::InvalidArgument, std::string(what) + " must be finite");
  }
}

void solve_fourier(const sawi_problem& p, const std::vector<double>& xs, const std::vector<double>& ts,
                   std::vector<sawi::cplx>& out, bool& warn) {
  const auto g = sawi::InitialProfile::gaussian(p.get("sigma"));
  const int n_terms = as_int(p.get("n-terms"), "n-terms");
  const auto mq = p.quadrature();
  const std::size_t nt = ts.size();
  for (std::size_t j = 0; j < nt; ++j) {
    sawi::ProfileResult r;
    if (is_adv(p.kind)) {
      sawi::AdvDispSpec spec;
      spec.hspec = p.hilfer();
      spec.p = p.get("p");
      spec.theta = p.get("theta");
      spec.lap_order = p.get("lap-order");
      spec.regularized = p.kind == Kind::AdvDispReg;
      r = sawi::solve_adv_disp_profile(spec, g, xs, ts[j], n_terms, mq);
    } else {
      sawi::HeatSpec spec;
      spec.hspec = p.hilfer();
      spec.diffusivity = p.get("diffusivity");
      spec.regularized = p.kind == Kind::HeatReg;
      r = sawi::solve_heat_profile(spec, g, xs, ts[j], n_terms, mq);
    }
    warn = warn || r.truncation_warning;
    for (std::size_t i = 0; i < xs.size(); ++i) out[i * nt + j] = r.values[i];
  }
}

void solve_pointwise(const sawi_problem& p, const std::vector<double>& xs, const std::vector<double>& ts,
                     std::vector<sawi::cplx>& out, bool& warn) {
  const int n_terms = as_int(p.get("n-terms"), "n-terms");
  const std::size_t nt = ts.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sawi::PointwiseSpec spec;
    spec.hspec = p.hilfer();
    spec.lambda_coef = p.get("lambda");
    spec.x = xs[i];
    for (std::size_t j = 0; j < nt; ++j) {
      const auto r = sawi::solve_pointwise(spec, ts[j], n_terms);
      warn = warn || r.truncation_warning;
      out[i * nt + j] = r.value;
    }
  }
}

void solve_integro(const sawi_problem& p, const std::vector<double>& xs, const std::vector<double>& ts,
                   std::vector<sawi::cplx>& out, bool& warn) {
  const double t_max = *std::max_element(ts.begin(), ts.end());
  for (double t : ts) {
    if (t < 0.0) sawi::fail(sawi::ErrorCode::InvalidArgument, "integro times must be >= 0");
  }
  const double dt = p.get("dt");
  const auto grid = sawi::Grid::covering(std::max(t_max + dt, 2.0 * dt), dt);
  sawi::IntegroSpec spec;
  spec.hspec = p.hilfer();
  spec.lambda_coef = p.get("lambda");
  spec.delta = p.get("delta");
  spec.M_init = p.get("m-init");
  spec.forcing = forcing_samples(p.forcing, grid);
  const auto r = sawi::solve_integro_grid(spec, as_int(p.get("n-terms"), "n-terms"));
  warn = warn || r.truncation_warning;
  const std::size_t nt = ts.size();
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = ts[j];
    const sawi::cplx v = (t == 0.0 && r.solution.lead) ? r.solution.at(0) : r.solution.interpolate(t);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i * nt + j] = v;
  }
}

}  // namespace

extern "C" {

const char* sawi_status_name(sawi_status status) {
  if (status == SAWI_OK) return "OK";
  const int code = static_cast<int>(status);
  if ((code >= 1 && code <= 13) || code == 99) {
    return sawi::to_string(static_cast<sawi::ErrorCode>(code)).data();
  }
  return "Unknown";
}

const char* sawi_last_error(void) { return g_last_error.c_str(); }

sawi_status sawi_ml3(double alpha, double rho, double gamma, sawi_complex z, double tol, sawi_complex* value,
                     double* est_error, int* terms) {
  return guarded([&] {
    if (!value) return fail_with(SAWI_INVALID_ARGUMENT, "value must not be NULL");
    const auto r = tol > 0.0 ? sawi::ml3(alpha, rho, gamma, {z.re, z.im}, tol)
                             : sawi::ml3(alpha, rho, gamma, {z.re, z.im});
    *value = {r.value.real(), r.value.imag()};
    if (est_error) *est_error = r.est_error;
    if (terms) *terms = r.terms_used;
    return SAWI_OK;
  });
}

sawi_status sawi_problem_create(const char* kind, sawi_problem** out) {
  return guarded([&] {
    if (!kind || !out) return fail_with(SAWI_INVALID_ARGUMENT, "kind and out must not be NULL");
    *out = nullptr;
    for (const auto& k : kKinds) {
      if (std::string_view(kind) == k.name) {
        auto* p = new sawi_problem{k.kind, keys_for(k.kind), {}, {}};
        p->values = {{"n-terms", sawi::kDefaultSeriesTerms}};
        if (is_adv(k.kind) || is_heat(k.kind)) {
          p->values.insert({{"sigma", 1.0}, {"k-max", 0.0}, {"k-nodes", 2048.0}});
        }
        if (k.kind == Kind::Integro) p->values.insert({"dt", 1.0 / 512.0});
        *out = p;
        return SAWI_OK;
      }
    }
    return fail_with(SAWI_INVALID_ARGUMENT, "unknown problem kind '" + std::string(kind) + "'");
  });
}

void sawi_problem_destroy(sawi_problem* problem) { delete problem; }

int sawi_problem_accepts(const sawi_problem* problem, const char* key) {
  if (!problem || !key) return 0;
  return (problem->keys.count(key) || (problem->kind == Kind::Integro && std::string_view(key) == "forcing")) ? 1 : 0;
}

sawi_status sawi_problem_set(sawi_problem* problem, const char* key, double value) {
  return guarded([&] {
    if (!problem || !key) return fail_with(SAWI_INVALID_ARGUMENT, "problem and key must not be NULL");
    if (!problem->keys.count(key)) {
      return fail_with(SAWI_INVALID_ARGUMENT, "key '" + std::string(key) + "' not accepted by this problem");
    }
    if (!std::isfinite(value)) return fail_with(SAWI_INVALID_ARGUMENT, std::string(key) + " must be finite");
    problem->values[key] = value;
    return SAWI_OK;
  });
}

sawi_status sawi_problem_set_forcing(sawi_problem* problem, const char* expr) {
  return guarded([&] {
    if (!problem || !expr) return fail_with(SAWI_INVALID_ARGUMENT, "problem and expr must not be NULL");
    if (problem->kind != Kind::Integro) return fail_with(SAWI_INVALID_ARGUMENT, "only integro problems take a forcing");
    forcing_samples(expr, sawi::Grid{0.5, 2});
    problem->forcing = expr;
    return SAWI_OK;
  });
}

sawi_status sawi_solve(const sawi_problem* problem, const double* xs, size_t nx, const double* ts, size_t nt,
                       sawi_complex* out, int* truncation_warning) {
  return guarded([&] {
    if (!problem || !xs || !ts || !out) return fail_with(SAWI_INVALID_ARGUMENT, "NULL argument");
    if (nx == 0 || nt == 0) return fail_with(SAWI_INVALID_ARGUMENT, "empty x or t grid");
    check_finite(xs, nx, "x");
    check_finite(ts, nt, "t");
    problem->require_complete();
    const std::vector<double> x(xs, xs + nx), t(ts, ts + nt);
    std::vector<sawi::cplx> values(nx * nt);
    bool warn = false;
    if (is_adv(problem->kind) || is_heat(problem->kind)) {
      solve_fourier(*problem, x, t, values, warn);
    } else if (problem->kind == Kind::Pointwise) {
      solve_pointwise(*problem, x, t, values, warn);
    } else {
      solve_integro(*problem, x, t, values, warn);
    }
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = {values[i].real(), values[i].imag()};
    if (truncation_warning) *truncation_warning = warn ? 1 : 0;
    return SAWI_OK;
  });
}

sawi_status sawi_validate(const char* suite, double dt, double tol, int serial, sawi_report** out) {
  return guarded([&] {
    if (!suite || !out) return fail_with(SAWI_INVALID_ARGUMENT, "suite and out must not be NULL");
    *out = nullptr;
    sawi::ValidateOptions opts;
    if (dt > 0.0) opts.dt = dt;
    if (tol > 0.0) opts.tol = tol;
    opts.serial = serial != 0;
    auto checks = sawi::run_suite(sawi::parse_suite(suite), opts);
    *out = new sawi_report{std::move(checks)};
    return SAWI_OK;
  });
}

size_t sawi_report_size(const sawi_report* report) { return report ? report->checks.size() : 0; }

sawi_status sawi_report_check(const sawi_report* report, size_t i, const char** name, double* measured, double* bound,
                              int* at_least, int* pass, const char** note) {
  return guarded([&] {
    if (!report) return fail_with(SAWI_INVALID_ARGUMENT, "report must not be NULL");
    if (i >= report->checks.size()) return fail_with(SAWI_INVALID_ARGUMENT, "check index out of range");
    const auto& c = report->checks[i];
    if (name) *name = c.name.c_str();
    if (measured) *measured = c.measured;
    if (bound) *bound = c.bound;
    if (at_least) *at_least = c.at_least ? 1 : 0;
    if (pass) *pass = c.pass ? 1 : 0;
    if (note) *note = c.note.c_str();
    return SAWI_OK;
  });
}

void sawi_report_destroy(sawi_report* report) { delete report; }

}  // extern "C"
