#include "entdist/source.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace entdist {

QuadratureGrid channel_grid(int channel_index, const ChannelPlan& plan, Side side,
                            Eigen::Index n_points) {
  plan.validate();
  if (!plan.in_range(channel_index))
    throw std::out_of_range("channel_grid: channel index " + std::to_string(channel_index) +
                            " outside plan range +-" + std::to_string(plan.max_index()));
  if (n_points < 2) throw std::invalid_argument("channel_grid: n_points must be >= 2");

  // Signal channels step down in frequency as n grows, idler channels step
  // up, so the pair (S_n, I_n) straddles the pump ridge dws = -dwi.
  const double sign = (side == Side::signal) ? -1.0 : +1.0;
  const double center = sign * two_pi * static_cast<double>(channel_index) * plan.Delta_B;
  const double half_width = 0.5 * two_pi * plan.delta_B;  // pi * deltaB
  return midpoint_grid(center, half_width, n_points);
}

QuadratureGrid signal_window(const QuadratureGrid& idler_grid, const SourceParams& source,
                             double k_sigma, Eigen::Index n_points) {
  source.validate();
  if (!(k_sigma > 0.0)) throw std::invalid_argument("signal_window: k_sigma must be > 0");

  const double pad = k_sigma / source.sigma_P;
  const double lo = -idler_grid.points.maxCoeff() - pad;
  const double hi = -idler_grid.points.minCoeff() + pad;
  return midpoint_grid(0.5 * (lo + hi), 0.5 * (hi - lo), n_points);
}

double integrate_abs2(const SpectralAmplitude2D& amp) {
  return integrate_2d(amp, [](const std::complex<double>& z) {
           return std::complex<double>(std::norm(z), 0.0);
         })
      .real();
}

SpectralAmplitude2D BiphotonAmplitude::sample(const QuadratureGrid& signal,
                                              const QuadratureGrid& idler) const {
  SpectralAmplitude2D out;
  out.signal = signal;
  out.idler = idler;
  const Eigen::Index ns = signal.n_points();
  const Eigen::Index ni = idler.n_points();

  if (gaussian_closed_form_) {
    // Vectorized closed form: both exponents are real, so build the two
    // quadratic forms with array broadcasts and exponentiate once.
    const double pref = std::sqrt(4.0 * two_pi * params_.sigma_P / params_.omega_PM);
    const double cp = params_.sigma_P * params_.sigma_P / 16.0;
    const double cm = 4.0 / (params_.omega_PM * params_.omega_PM);
    Eigen::ArrayXXd sum = signal.points.replicate(1, ni).rowwise() + idler.points.transpose();
    Eigen::ArrayXXd dif = signal.points.replicate(1, ni).rowwise() - idler.points.transpose();
    out.values = (pref * (-cp * sum.square() - cm * dif.square()).exp()).cast<std::complex<double>>();
    return out;
  }

  out.values.resize(ns, ni);
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < ns; ++i)
      out.values(i, j) = amp_(signal.points[i], idler.points[j]);
  return out;
}

BiphotonAmplitude gaussian_amplitude(const SourceParams& params) {
  params.validate();
  const double pref = std::sqrt(4.0 * two_pi * params.sigma_P / params.omega_PM);
  const double cp = params.sigma_P * params.sigma_P / 16.0;
  const double cm = 4.0 / (params.omega_PM * params.omega_PM);
  BiphotonAmplitude amp(params, [pref, cp, cm](double dws, double dwi) {
    const double sum = dws + dwi;
    const double dif = dws - dwi;
    return std::complex<double>(pref * std::exp(-cp * sum * sum - cm * dif * dif), 0.0);
  });
  amp.gaussian_closed_form_ = true;
  return amp;
}

BiphotonAmplitude generic_amplitude(const SourceParams& params,
                                    const std::function<std::complex<double>(double)>& pump,
                                    const std::function<std::complex<double>(double, double)>& phase_match,
                                    const NormalizationDomain& domain) {
  params.validate();

  // Normalization integral in rotated coordinates u = dws+dwi, v = dws-dwi:
  // d(dws) d(dwi) = du dv / 2.  The reference domain is chosen from the
  // declared source scales so the result is resolution-independent for any
  // amplitude that actually lives on those scales.
  const QuadratureGrid gu =
      midpoint_grid(0.0, domain.pump_half_width / params.sigma_P, domain.pump_points);
  const QuadratureGrid gv =
      midpoint_grid(0.0, domain.pm_half_width * params.omega_PM, domain.pm_points);

  NeumaierSum acc;
  for (Eigen::Index iu = 0; iu < gu.n_points(); ++iu) {
    const double u = gu.points[iu];
    const std::complex<double> pu = pump(u);
    for (Eigen::Index iv = 0; iv < gv.n_points(); ++iv) {
      const double v = gv.points[iv];
      acc.add(std::norm(pu * phase_match(0.5 * (u + v), 0.5 * (u - v))));
    }
  }
  const double norm_sq = 0.5 * gu.weight * gv.weight * acc.value();
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq))
    throw degenerate_error("generic_amplitude: pump x phase-matching product has zero norm");

  const double scale = 1.0 / std::sqrt(norm_sq);
  return BiphotonAmplitude(params, [pump, phase_match, scale](double dws, double dwi) {
    return scale * pump(dws + dwi) * phase_match(dws, dwi);
  });
}

namespace {

Eigen::Index scaled_window_points(const ChannelPlan& plan, const SourceParams& source,
                                  const GridOptions& opt) {
  // Keep the window spacing equal to the channel spacing so that
  // points_per_channel is the single resolution knob for every integral.
  const double channel_hw = 0.5 * two_pi * plan.delta_B;
  const double window_hw = channel_hw + opt.k_sigma / source.sigma_P;
  const double ratio = window_hw / channel_hw;
  return std::max<Eigen::Index>(opt.points_per_channel,
                                static_cast<Eigen::Index>(std::ceil(opt.points_per_channel * ratio)));
}

}  // namespace

SpectralAmplitude2D channelize(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                               ChannelizeMode mode, const GridOptions& opt) {
  opt.validate();
  const QuadratureGrid idler = channel_grid(n, plan, Side::idler, opt.points_per_channel);
  if (mode == ChannelizeMode::both) {
    const QuadratureGrid signal = channel_grid(n, plan, Side::signal, opt.points_per_channel);
    return amp.sample(signal, idler);
  }
  const QuadratureGrid window =
      signal_window(idler, amp.params(), opt.k_sigma, scaled_window_points(plan, amp.params(), opt));
  return amp.sample(window, idler);
}

SpectralAmplitude2D gaussian_wavefunction(const SourceParams& params, const QuadratureGrid& signal,
                                          const QuadratureGrid& idler) {
  return gaussian_amplitude(params).sample(signal, idler);
}

SpectralAmplitude2D generic_wavefunction(const SourceParams& params,
                                         const std::function<std::complex<double>(double)>& pump,
                                         const std::function<std::complex<double>(double, double)>& phase_match,
                                         const QuadratureGrid& signal, const QuadratureGrid& idler,
                                         const NormalizationDomain& domain) {
  return generic_amplitude(params, pump, phase_match, domain).sample(signal, idler);
}

}  // namespace entdist
