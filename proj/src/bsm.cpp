#include "entdist/bsm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entdist/errors.hpp"

namespace entdist {

double bsm_herald_probability(double pr_In) {
  if (!(pr_In >= 0.0 && pr_In <= 1.0))
    throw std::domain_error("bsm_herald_probability: Pr(I_n) must lie in [0, 1]");
  return 0.25 * pr_In * pr_In;
}

double bsm_heralding_efficiency(double pr_SnIn, double pr_In) {
  if (!(pr_In > 0.0)) throw degenerate_error("bsm_heralding_efficiency: Pr(I_n) vanishes");
  if (pr_SnIn > pr_In)
    throw std::invalid_argument("bsm_heralding_efficiency: Pr(S_n,I_n) exceeds Pr(I_n)");
  const double eff = pr_SnIn / pr_In;
  return eff * eff;
}

double bsm_purity(double single_purity) {
  if (!(single_purity > 0.0 && single_purity <= 1.0))
    throw std::domain_error("bsm_purity: single-source purity must lie in (0, 1]");
  return single_purity * single_purity;
}

FidelityError bsm_fidelity_and_error(double purity) {
  if (!(purity >= 0.0 && purity <= 1.0))
    throw std::domain_error("bsm_fidelity_and_error: purity must lie in [0, 1]");
  FidelityError fe;
  fe.pr_c = 0.5 * (1.0 + std::sqrt(purity));
  // Pr(c) lies in [1/2, 1], so 1 - Pr(c) is exact (Sterbenz) and the pair
  // sums to 1 bit-for-bit.
  fe.pr_e = 1.0 - fe.pr_c;
  return fe;
}

BsmKernels bsm_kernels(const PhiKernel& phi) {
  const Eigen::Index n = phi.values.rows();
  if (n != phi.values.cols() || n != phi.grid.n_points())
    throw std::invalid_argument("bsm_kernels: kernel must be square on its grid");

  BsmKernels k;
  k.grid = phi.grid;
  const Eigen::ArrayXd d = phi.values.diagonal().real().array();
  const Eigen::ArrayXXd outer = d.matrix() * d.matrix().transpose();
  const Eigen::ArrayXXd cross = phi.values.array().abs2();
  k.diag_c = outer + cross;
  k.diag_e = outer - cross;

  const double w2 = phi.grid.weight * phi.grid.weight;
  NeumaierSum tc, te;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      tc.add(k.diag_c(i, j));
      te.add(k.diag_e(i, j));
    }
  }
  k.trace_c = w2 * tc.value();
  k.trace_e = w2 * te.value();
  return k;
}

Eigen::MatrixXcd KernelEigensystem::xi(Eigen::Index idx) const {
  const auto [m1, m2] = mu_modes.at(static_cast<std::size_t>(idx));
  const Eigen::VectorXcd a = signal_modes.col(m1);
  const Eigen::VectorXcd b = signal_modes.col(m2);
  if (m1 == m2) return a * a.transpose();
  return (a * b.transpose() + b * a.transpose()) / std::sqrt(2.0);
}

Eigen::MatrixXcd KernelEigensystem::zeta(Eigen::Index idx) const {
  const auto [m1, m2] = nu_modes.at(static_cast<std::size_t>(idx));
  const Eigen::VectorXcd a = signal_modes.col(m1);
  const Eigen::VectorXcd b = signal_modes.col(m2);
  return (a * b.transpose() - b * a.transpose()) / std::sqrt(2.0);
}

KernelEigensystem kernel_eigensystem(const SchmidtDecomposition& d) {
  if (d.empty()) throw degenerate_error("kernel_eigensystem: empty decomposition");

  KernelEigensystem es;
  es.signal_modes = d.signal_modes;
  es.grid = d.signal_grid;

  const Eigen::ArrayXd lam_sq = d.singular_values.square();
  const int L = static_cast<int>(lam_sq.size());

  std::vector<double> mu, nu;
  std::vector<std::array<int, 2>> mu_modes, nu_modes;
  for (int m1 = 0; m1 < L; ++m1) {
    mu.push_back(2.0 * lam_sq[m1] * lam_sq[m1]);
    mu_modes.push_back({m1, m1});
    for (int m2 = 0; m2 < m1; ++m2) {
      const double v = 2.0 * lam_sq[m1] * lam_sq[m2];
      mu.push_back(v);
      mu_modes.push_back({m1, m2});
      nu.push_back(v);
      nu_modes.push_back({m1, m2});
    }
  }

  const auto sort_by_value = [](std::vector<double>& vals, std::vector<std::array<int, 2>>& modes) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&vals](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    Eigen::ArrayXd sorted(static_cast<Eigen::Index>(vals.size()));
    std::vector<std::array<int, 2>> sorted_modes(modes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted[static_cast<Eigen::Index>(i)] = vals[order[i]];
      sorted_modes[i] = modes[order[i]];
    }
    modes = std::move(sorted_modes);
    return sorted;
  };

  es.mu = sort_by_value(mu, mu_modes);
  es.mu_modes = std::move(mu_modes);
  es.nu = sort_by_value(nu, nu_modes);
  es.nu_modes = std::move(nu_modes);
  return es;
}

}  // namespace entdist
