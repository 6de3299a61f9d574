#ifndef ENTDIST_SOURCE_HPP
#define ENTDIST_SOURCE_HPP

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>

#include "entdist/errors.hpp"
#include "entdist/grid.hpp"

namespace entdist {

// Pump / phase-matching scales of the downconversion source.  The carriers
// are bookkeeping only: every grid stores detunings from its own carrier, so
// the carrier values never enter the numerics.
struct SourceParams {
  double sigma_P = 0.0;        // pump duration sigma_P (s)
  double omega_PM = 0.0;       // phase-matching bandwidth Omega_PM (rad/s)
  double signal_center = 0.0;  // omega_S0 carrier (rad/s), bookkeeping
  double idler_center = 0.0;   // omega_I0 carrier (rad/s), bookkeeping

  double pump_center() const { return signal_center + idler_center; }
  void validate() const {
    if (!(sigma_P > 0.0)) throw std::domain_error("SourceParams: sigma_P must be > 0");
    if (!(omega_PM > 0.0)) throw std::domain_error("SourceParams: omega_PM must be > 0");
  }
};

// Brickwall wavelength-division channel plan.  Channel n transmits
//   signal: |dws + 2*pi*n*Delta_B| <= pi*delta_B   (center -2*pi*n*Delta_B)
//   idler : |dwi - 2*pi*n*Delta_B| <= pi*delta_B   (center +2*pi*n*Delta_B)
// so that signal channel n is the energy-conserving partner of idler
// channel n (dws ~= -dwi along the pump ridge).
struct ChannelPlan {
  double delta_B = 0.0;  // channel bandwidth deltaB (Hz)
  double Delta_B = 0.0;  // channel spacing DeltaB (Hz)
  int N = 0;             // odd channel count, indices -(N-1)/2 .. (N-1)/2

  int max_index() const { return (N - 1) / 2; }
  bool in_range(int n) const { return std::abs(n) <= max_index(); }
  void validate() const {
    if (!(delta_B > 0.0)) throw std::domain_error("ChannelPlan: delta_B must be > 0");
    if (!(Delta_B > delta_B)) throw std::domain_error("ChannelPlan: Delta_B must exceed delta_B (guard bands)");
    if (N < 1 || N % 2 == 0) throw std::domain_error("ChannelPlan: N must be odd and >= 1");
  }
};

enum class Side { signal, idler };

// Quadrature grid spanning exactly the brickwall passband of one channel.
QuadratureGrid channel_grid(int channel_index, const ChannelPlan& plan, Side side,
                            Eigen::Index n_points);

// Energy-conserving signal window paired with an idler grid: the band where
// the pump envelope exp(-(dws+dwi)^2 sigma_P^2/16) is non-negligible, i.e.
// dws in [-dwi_max - k_sigma/sigma_P, -dwi_min + k_sigma/sigma_P].
QuadratureGrid signal_window(const QuadratureGrid& idler_grid, const SourceParams& source,
                             double k_sigma, Eigen::Index n_points);

// A two-argument spectral amplitude sampled on a signal x idler grid pair:
// values(i, j) = Psi(signal.points[i], idler.points[j]).
struct SpectralAmplitude2D {
  QuadratureGrid signal;
  QuadratureGrid idler;
  Eigen::MatrixXcd values;
};

// Sum_ij w_S w_I f(values_ij): the discrete Integral f(Psi) d^2omega/(2*pi)^2.
// Fixed row-major traversal with compensated accumulation.
template <class F>
std::complex<double> integrate_2d(const SpectralAmplitude2D& amp, F&& f) {
  if (amp.values.rows() != amp.signal.n_points() || amp.values.cols() != amp.idler.n_points())
    throw std::invalid_argument("integrate_2d: matrix shape does not match grids");
  NeumaierSum re, im;
  for (Eigen::Index i = 0; i < amp.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < amp.values.cols(); ++j) {
      const std::complex<double> v = f(amp.values(i, j));
      re.add(v.real());
      im.add(v.imag());
    }
  }
  const double w = amp.signal.weight * amp.idler.weight;
  return {w * re.value(), w * im.value()};
}

// Integral |Psi|^2 d^2omega/(2*pi)^2 over the sampled grids.
double integrate_abs2(const SpectralAmplitude2D& amp);

// Joint spectral amplitude as a lazy callable on (signal, idler) detunings.
// Only requested windows are ever materialized; the full source band at
// channel resolution would be far too large to hold densely.
class BiphotonAmplitude {
 public:
  using Fn = std::function<std::complex<double>(double, double)>;

  BiphotonAmplitude() = default;
  BiphotonAmplitude(SourceParams params, Fn amplitude)
      : params_(params), amp_(std::move(amplitude)) {}

  const SourceParams& params() const { return params_; }

  std::complex<double> operator()(double dws, double dwi) const { return amp_(dws, dwi); }

  SpectralAmplitude2D sample(const QuadratureGrid& signal, const QuadratureGrid& idler) const;

 private:
  SourceParams params_{};
  Fn amp_;
  bool gaussian_closed_form_ = false;  // enables vectorized sampling

  friend BiphotonAmplitude gaussian_amplitude(const SourceParams& params);
};

// All-Gaussian amplitude
//   Psi(dws, dwi) = sqrt(8 pi sigma_P / Omega_PM)
//                   * exp(-(dws + dwi)^2 sigma_P^2 / 16)    (pump envelope)
//                   * exp(-4 (dws - dwi)^2 / Omega_PM^2)    (phase matching),
// normalized analytically: Integral |Psi|^2 d^2omega/(2*pi)^2 = 1.
BiphotonAmplitude gaussian_amplitude(const SourceParams& params);

// Rotated-coordinate quadrature domain used to normalize generic amplitudes:
// u = dws + dwi (pump direction, units of 1/sigma_P), v = dws - dwi
// (phase-matching direction, units of Omega_PM).  The pump extent must reach
// far into the Gaussian tail for the normalization to hold at 1e-12.
struct NormalizationDomain {
  double pump_half_width = 24.0;   // +- extent of u, units of 1/sigma_P
  double pm_half_width = 4.0;      // +- extent of v, units of Omega_PM
  Eigen::Index pump_points = 513;
  Eigen::Index pm_points = 1025;
};

// Generic amplitude proportional to pump(dws + dwi) * phase_match(dws, dwi),
// renormalized numerically on the rotated reference domain.
BiphotonAmplitude generic_amplitude(const SourceParams& params,
                                    const std::function<std::complex<double>(double)>& pump,
                                    const std::function<std::complex<double>(double, double)>& phase_match,
                                    const NormalizationDomain& domain = {});

// Grid resolution knobs shared by all per-channel computations.
struct GridOptions {
  int points_per_channel = 257;  // quadrature points across one passband
  double k_sigma = 8.0;          // signal-window half-extent, units of 1/sigma_P
  double svd_cutoff = 1e-8;      // relative Schmidt truncation threshold

  void validate() const {
    if (points_per_channel < 2) throw std::domain_error("GridOptions: points_per_channel must be >= 2");
    if (!(k_sigma > 0.0)) throw std::domain_error("GridOptions: k_sigma must be > 0");
    if (!(svd_cutoff >= 0.0 && svd_cutoff < 1.0))
      throw std::domain_error("GridOptions: svd_cutoff must lie in [0, 1)");
  }
};

enum class ChannelizeMode { idler_only, both };

// Apply the brickwall filters of channel n by restricting the sampling grids
// (the filters are exactly 1 on the passband, so restriction is exact):
//   idler_only: idler on channel n, signal on the energy-conserving window
//   both      : signal and idler both on their channel-n passbands.
SpectralAmplitude2D channelize(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                               ChannelizeMode mode, const GridOptions& opt = {});

// Convenience samplers mirroring channelize() for explicit grids.
SpectralAmplitude2D gaussian_wavefunction(const SourceParams& params, const QuadratureGrid& signal,
                                          const QuadratureGrid& idler);
SpectralAmplitude2D generic_wavefunction(const SourceParams& params,
                                         const std::function<std::complex<double>(double)>& pump,
                                         const std::function<std::complex<double>(double, double)>& phase_match,
                                         const QuadratureGrid& signal, const QuadratureGrid& idler,
                                         const NormalizationDomain& domain = {});

}  // namespace entdist

#endif  // ENTDIST_SOURCE_HPP
