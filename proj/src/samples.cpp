#include "sawi/samples.hpp"

#include <cmath>
#include <limits>

#include "sawi/error.hpp"

namespace sawi {

Grid Grid::covering(double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "Grid: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    fail(ErrorCode::InvalidArgument, "Grid: t_end must be nonnegative");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  return Grid{dt, std::max<std::size_t>(steps + 1, 2)};
}

void Grid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "Grid: dt must be positive");
  if (n < 2) fail(ErrorCode::InvalidArgument, "Grid: at least two nodes are required");
}

Samples Samples::from_function(const Grid& grid, const std::function<cplx(double)>& f) {
  grid.validate();
  Samples s{grid, std::vector<cplx>(grid.n), std::nullopt};
  for (std::size_t j = 0; j < grid.n; ++j) s.values[j] = f(grid.t(j));
  return s;
}

Samples Samples::constant(const Grid& grid, cplx c) {
  grid.validate();
  return Samples{grid, std::vector<cplx>(grid.n, c), std::nullopt};
}

cplx Samples::at(std::size_t j) const {
  if (!lead) return values[j];
  if (j == 0) return {std::numeric_limits<double>::infinity(), 0.0};
  return values[j] + (*lead)(grid.t(j));
}

cplx Samples::interpolate(double t) const {
  if (t < 0.0 || t > grid.t_end() * (1.0 + 1e-14)) return {0.0, 0.0};
  const double u = t / grid.dt;
  auto i = static_cast<std::size_t>(std::floor(u));
  if (i >= grid.n - 1) i = grid.n - 2;
  const double theta = u - static_cast<double>(i);
  cplx v = values[i] * (1.0 - theta) + values[i + 1] * theta;
  if (lead && t > 0.0) v += (*lead)(t);
  return v;
}

void Samples::validate() const {
  grid.validate();
  if (values.size() != grid.n) {
    fail(ErrorCode::InvalidArgument, "Samples: values length must equal grid.n");
  }
  if (lead && !(lead->exponent > 0.0 && lead->exponent < 1.0)) {
    fail(ErrorCode::InvalidArgument, "Samples: singular lead exponent must lie in (0, 1)");
  }
}

}  // namespace sawi
