#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace sawi {

using cplx = std::complex<double>;

/// Uniform time grid t_j = j * dt, j = 0 .. n-1.
struct Grid {
  double dt = 0.0;
  std::size_t n = 0;

  double t(std::size_t j) const noexcept { return static_cast<double>(j) * dt; }
  double t_end() const noexcept { return n == 0 ? 0.0 : t(n - 1); }

  /// Grid covering [0, t_end] with step dt (t_end rounded to the nearest node).
  static Grid covering(double t_end, double dt);

  /// Throws InvalidArgument unless dt > 0 and n >= 2.
  void validate() const;
};

/// Weakly singular leading behaviour coef * t^{-exponent}, 0 < exponent < 1.
///
/// When present, a Samples object represents lead(t) + interpolant(values).
/// The t = 0 entry of values then holds the finite limit of the remainder.
struct SingularLead {
  cplx coef{0.0, 0.0};
  double exponent = 0.0;

  cplx operator()(double t) const { return coef * std::pow(t, -exponent); }
};

/// A function sampled on a uniform grid, piecewise linear between nodes.
struct Samples {
  Grid grid;
  std::vector<cplx> values;
  std::optional<SingularLead> lead;

  static Samples from_function(const Grid& grid, const std::function<cplx(double)>& f);
  static Samples constant(const Grid& grid, cplx c);

  /// Full value at node j (lead included; node 0 with a lead is infinite).
  cplx at(std::size_t j) const;

  /// Piecewise-linear evaluation at t in [0, t_end]; zero beyond the grid.
  cplx interpolate(double t) const;

  /// Throws InvalidArgument on size mismatch or a malformed lead.
  void validate() const;
};

}  // namespace sawi
