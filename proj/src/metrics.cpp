#include "entdist/metrics.hpp"

#include "entdist/errors.hpp"

namespace entdist {

double heralding_probability(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                             const GridOptions& opt) {
  return integrate_abs2(channelize(amp, n, plan, ChannelizeMode::idler_only, opt));
}

double joint_probability(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                         const GridOptions& opt) {
  return integrate_abs2(channelize(amp, n, plan, ChannelizeMode::both, opt));
}

double heralding_efficiency(const BiphotonAmplitude& amp, int n, const ChannelPlan& plan,
                            const GridOptions& opt) {
  const double pr_In = heralding_probability(amp, n, plan, opt);
  if (!(pr_In > 0.0)) throw degenerate_error("heralding_efficiency: Pr(I_n) vanishes");
  return joint_probability(amp, n, plan, opt) / pr_In;
}

PhiKernel phi_kernel(const SpectralAmplitude2D& psi_both) {
  if (psi_both.values.rows() != psi_both.signal.n_points() ||
      psi_both.values.cols() != psi_both.idler.n_points())
    throw std::invalid_argument("phi_kernel: matrix shape does not match grids");

  PhiKernel phi;
  phi.grid = psi_both.signal;
  const Eigen::MatrixXcd p = psi_both.idler.weight * (psi_both.values * psi_both.values.adjoint());
  // Symmetrize away the last-bit GEMM asymmetry so downstream code can rely
  // on exact Hermiticity and a real diagonal.
  phi.values = 0.5 * (p + p.adjoint());
  return phi;
}

double purity_direct(const PhiKernel& phi) {
  const double trace = phi.weighted_trace();
  if (!(trace > 0.0)) throw degenerate_error("purity_direct: kernel trace vanishes");

  NeumaierSum frob;
  for (Eigen::Index i = 0; i < phi.values.rows(); ++i)
    for (Eigen::Index j = 0; j < phi.values.cols(); ++j) frob.add(std::norm(phi.values(i, j)));
  const double w = phi.grid.weight;
  return w * w * frob.value() / (trace * trace);
}

}  // namespace entdist
