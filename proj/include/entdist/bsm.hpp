#ifndef ENTDIST_BSM_HPP
#define ENTDIST_BSM_HPP

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "entdist/metrics.hpp"
#include "entdist/schmidt.hpp"

namespace entdist {

// Diagonals and traces of the two-signal "correct" / "error" kernels of a
// dual-source Bell-state measurement.  Only the diagonals
//   diag_c(w1, w2) = Phi(w1,w1) Phi(w2,w2) + |Phi(w1,w2)|^2
//   diag_e(w1, w2) = Phi(w1,w1) Phi(w2,w2) - |Phi(w1,w2)|^2
// are ever needed downstream; the full four-index kernels (n^4 entries) are
// never materialized.  Weighted 2-D sums give the traces
//   trace_c = Pr(S_n,I_n)^2 + Sum lambda^4   (= Sum mu)
//   trace_e = Pr(S_n,I_n)^2 - Sum lambda^4   (= Sum nu).
struct BsmKernels {
  QuadratureGrid grid;     // signal grid shared by both kernel arguments
  Eigen::ArrayXXd diag_c;  // correct-kernel diagonal, real >= 0
  Eigen::ArrayXXd diag_e;  // error-kernel diagonal, real >= -eps (Cauchy-Schwarz)
  double trace_c = 0.0;
  double trace_e = 0.0;
};

// Pr(psi-+_n) = Pr(I_n)^2 / 4: both sources herald in channel n and the
// idler pair projects onto one of the two partial-BSM-distinguishable Bell
// states with probability 1/4.
double bsm_herald_probability(double pr_In);

// Pr(S_1n, S_2n | psi-+_n) = [Pr(S_n, I_n) / Pr(I_n)]^2.
double bsm_heralding_efficiency(double pr_SnIn, double pr_In);

// Heralded-biphoton purity = product of the two identical source purities.
double bsm_purity(double single_purity);

struct FidelityError {
  double pr_c = 0.0;  // probability the heralded Bell state is the intended one
  double pr_e = 0.0;  // probability of the orthogonal (error) Bell state
};

// Pr(c) = (1 + sqrt(purity)) / 2; Pr(e) computed as 1 - Pr(c) so the pair
// sums to 1 exactly in floating point.
FidelityError bsm_fidelity_and_error(double bsm_purity);

// Kernel diagonals and traces from the channelized Phi kernel.
BsmKernels bsm_kernels(const PhiKernel& phi);

// Spectral decomposition of the correct/error kernels in terms of Schmidt
// values: mu = {2 lambda_m^4 (m1 = m2)} u {2 lambda_m1^2 lambda_m2^2 (m1 > m2)},
// nu = {2 lambda_m1^2 lambda_m2^2 (m1 > m2)}; eigenfunctions are the
// symmetrized (xi) / antisymmetrized (zeta) products of Schmidt signal modes.
struct KernelEigensystem {
  Eigen::ArrayXd mu;                            // descending
  Eigen::ArrayXd nu;                            // descending
  std::vector<std::array<int, 2>> mu_modes;     // Schmidt index pair per mu entry
  std::vector<std::array<int, 2>> nu_modes;     // Schmidt index pair per nu entry
  Eigen::MatrixXcd signal_modes;                // phi_l columns on `grid`
  QuadratureGrid grid;

  // Symmetric eigenfunction xi_m(w1, w2) for mu[idx] on grid x grid.
  Eigen::MatrixXcd xi(Eigen::Index idx) const;
  // Antisymmetric eigenfunction zeta_m(w1, w2) for nu[idx].
  Eigen::MatrixXcd zeta(Eigen::Index idx) const;
};

KernelEigensystem kernel_eigensystem(const SchmidtDecomposition& d);

}  // namespace entdist

#endif  // ENTDIST_BSM_HPP
