#ifndef ENTDIST_METRICS_HPP
#define ENTDIST_METRICS_HPP

#include <Eigen/Dense>

#include "entdist/schmidt.hpp"
#include "entdist/source.hpp"

namespace entdist {

// Reduced signal-photon kernel of one heralded channel,
//   Phi(w, w') = Integral Psi(w, w_I) Psi*(w', w_I) d(w_I)/(2*pi),
// sampled on the signal channel grid.  Hermitian; diagonal real >= 0; the
// weighted trace equals the joint probability Pr(S_n, I_n).
struct PhiKernel {
  QuadratureGrid grid;
  Eigen::MatrixXcd values;

  double weighted_trace() const { return grid.weight * values.diagonal().real().sum(); }
};

// Pr(I_n): probability that the idler lands in channel n (signal unfiltered,
// integrated over the energy-conserving window).
double heralding_probability(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                             const GridOptions& opt = {});

// Pr(S_n, I_n): probability that signal and idler land in the paired channels.
double joint_probability(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                         const GridOptions& opt = {});

// Pr(S_n | I_n) = Pr(S_n, I_n) / Pr(I_n).
double heralding_efficiency(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                            const GridOptions& opt = {});

// Build Phi from a both-sides channelized amplitude: values = M W_I M^dagger.
PhiKernel phi_kernel(const SpectralAmplitude2D& psi_both);

// Tr(rho^2) of the heralded signal photon by direct quadrature:
// (weighted Frobenius norm^2 of Phi) / (weighted trace of Phi)^2.
double purity_direct(const PhiKernel& phi);

}  // namespace entdist

#endif  // ENTDIST_METRICS_HPP
