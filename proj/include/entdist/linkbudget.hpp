#ifndef ENTDIST_LINKBUDGET_HPP
#define ENTDIST_LINKBUDGET_HPP

#include <map>
#include <vector>

#include "entdist/source.hpp"

namespace entdist {

// Fixed multiplicative efficiencies of the link and the pump strength.
struct EfficiencyBudget {
  double eta_qtx = 1.0;   // transmitter (source-side) efficiency
  double eta_prop = 1.0;  // one-arm propagation efficiency (enters squared)
  double eta_qrx = 1.0;   // receiver efficiency (enters squared)
  double E_Np = 1.0;      // expected photon pairs per pump pulse

  void validate() const {
    const auto in_unit = [](double x) { return x > 0.0 && x <= 1.0; };
    if (!in_unit(eta_qtx) || !in_unit(eta_prop) || !in_unit(eta_qrx))
      throw std::domain_error("EfficiencyBudget: efficiencies must lie in (0, 1]");
    if (!(E_Np > 0.0)) throw std::domain_error("EfficiencyBudget: E_Np must be > 0");
  }
};

// Per-channel entanglement-distribution rate (per pump pulse):
//   R_n = E_Np * (eta_qtx Pr(psi-+_n)) * (eta_prop^2 Pr(S1,S2|psi-+_n))
//         * (eta_qrx^2 eta_cavity) * (F_a + F_b)/2.
double channel_rate(const EfficiencyBudget& budget, double pr_bsm_herald, double bsm_efficiency,
                    double eta_cavity, double fidelity_a, double fidelity_b);

// Channels usable under a guard-band stride: every stride-th index of the
// symmetric set, always including n = 0.
std::vector<int> guard_band_channels(const ChannelPlan& plan, int stride);

// Sum of per-channel rates over a selected channel subset.
double total_rate(const std::map<int, double>& rate_by_channel, const std::vector<int>& selected);

// Pr(S_m, I_n): signal through channel m while the idler heralds channel n.
double cross_channel_probability(const BiphotonAmplitude& amp, int m, int n,
                                 const ChannelPlan& plan, const GridOptions& opt = {});

// chi_k(n) = Pr(S_{n+k}, I_n) / Pr(S_n, I_n): relative spectral mass a
// channel-n herald leaks into the k-th neighboring signal channel.
double interference_ratio(const BiphotonAmplitude& amp, int n, int k, const ChannelPlan& plan,
                          const GridOptions& opt = {});

// Poisson pair-number model: Pr(N_p = 2) = exp(-mu) mu^2 / 2 at mu = E_Np.
// The distribution is a modeling assumption documented in the README, used
// only for this diagnostic output.
double two_pair_probability(double E_Np);

}  // namespace entdist

#endif  // ENTDIST_LINKBUDGET_HPP
