#ifndef ENTDIST_GRID_HPP
#define ENTDIST_GRID_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>

namespace entdist {

inline constexpr double two_pi = 6.28318530717958647692528676656;

// Compensated (Neumaier) accumulator.  Sums are taken in a fixed traversal
// order so results are bit-reproducible; the compensation term keeps the
// rounding error independent of the number of quadrature points.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Uniform midpoint-rule quadrature grid over one frequency interval.
//
// All frequencies are angular detunings (rad/s) from a declared carrier
// (the signal, idler, or post-conversion channel center): absolute optical
// frequencies ~2*pi*200 THz would waste double precision needed at GHz
// scales.  The weight absorbs the spectral measure d(omega)/(2*pi), so
//
//   Integral f(omega) d(omega)/(2*pi)  ~=  weight * Sum_i f(points[i]),
//
// with weight = spacing/(2*pi) in Hz, identical for every point.
struct QuadratureGrid {
  double center = 0.0;      // interval midpoint, rad/s detuning
  double half_width = 0.0;  // half extent of the interval, rad/s
  Eigen::ArrayXd points;    // midpoints, ascending, strictly inside the interval
  double weight = 0.0;      // spacing/(2*pi), Hz

  Eigen::Index n_points() const { return points.size(); }
  double spacing() const { return weight * two_pi; }
};

// Midpoint rule: n uniform points, first/last offset half a spacing from the
// interval edges.  No half-weight edge points, so discontinuous (brickwall)
// integrands are handled without ambiguity.
QuadratureGrid midpoint_grid(double center, double half_width, Eigen::Index n_points);

}  // namespace entdist

#endif  // ENTDIST_GRID_HPP
