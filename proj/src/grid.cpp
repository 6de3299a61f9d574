#include "entdist/grid.hpp"

#include <stdexcept>

namespace entdist {

QuadratureGrid midpoint_grid(double center, double half_width, Eigen::Index n_points) {
  if (n_points < 1) throw std::invalid_argument("midpoint_grid: n_points must be >= 1");
  if (half_width < 0.0) throw std::invalid_argument("midpoint_grid: half_width must be >= 0");

  QuadratureGrid g;
  g.center = center;
  g.half_width = half_width;
  const double spacing = 2.0 * half_width / static_cast<double>(n_points);
  g.points = center - half_width +
             spacing * (Eigen::ArrayXd::LinSpaced(n_points, 0.0, static_cast<double>(n_points - 1)) + 0.5);
  g.weight = spacing / two_pi;
  return g;
}

}  // namespace entdist
