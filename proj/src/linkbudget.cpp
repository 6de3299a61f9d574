#include "entdist/linkbudget.hpp"

#include <cmath>
#include <string>

#include "entdist/errors.hpp"

namespace entdist {

double channel_rate(const EfficiencyBudget& budget, double pr_bsm_herald, double bsm_efficiency,
                    double eta_cavity, double fidelity_a, double fidelity_b) {
  budget.validate();
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(pr_bsm_herald) || !in_unit(bsm_efficiency) || !in_unit(eta_cavity) ||
      !in_unit(fidelity_a) || !in_unit(fidelity_b))
    throw std::domain_error("channel_rate: probabilities and fidelities must lie in [0, 1]");

  return budget.E_Np * (budget.eta_qtx * pr_bsm_herald) *
         (budget.eta_prop * budget.eta_prop * bsm_efficiency) *
         (budget.eta_qrx * budget.eta_qrx * eta_cavity) * 0.5 * (fidelity_a + fidelity_b);
}

std::vector<int> guard_band_channels(const ChannelPlan& plan, int stride) {
  plan.validate();
  if (stride < 1) throw std::invalid_argument("guard_band_channels: stride must be >= 1");
  std::vector<int> out;
  for (int n = -plan.max_index(); n <= plan.max_index(); ++n)
    if (n % stride == 0) out.push_back(n);
  return out;
}

double total_rate(const std::map<int, double>& rate_by_channel, const std::vector<int>& selected) {
  NeumaierSum sum;
  for (int n : selected) {
    const auto it = rate_by_channel.find(n);
    if (it == rate_by_channel.end())
      throw std::out_of_range("total_rate: no rate for channel " + std::to_string(n));
    sum.add(it->second);
  }
  return sum.value();
}

double cross_channel_probability(const BiphotonAmplitude& amp, int m, int n,
                                 const ChannelPlan& plan, const GridOptions& opt) {
  opt.validate();
  const QuadratureGrid signal = channel_grid(m, plan, Side::signal, opt.points_per_channel);
  const QuadratureGrid idler = channel_grid(n, plan, Side::idler, opt.points_per_channel);
  return integrate_abs2(amp.sample(signal, idler));
}

double interference_ratio(const BiphotonAmplitude& amp, int n, int k, const ChannelPlan& plan,
                          const GridOptions& opt) {
  const double diagonal = cross_channel_probability(amp, n, n, plan, opt);
  if (!(diagonal > 0.0)) throw degenerate_error("interference_ratio: Pr(S_n, I_n) vanishes");
  return cross_channel_probability(amp, n + k, n, plan, opt) / diagonal;
}

double two_pair_probability(double E_Np) {
  if (!(E_Np > 0.0)) throw std::domain_error("two_pair_probability: E_Np must be > 0");
  return 0.5 * std::exp(-E_Np) * E_Np * E_Np;
}

}  // namespace entdist
