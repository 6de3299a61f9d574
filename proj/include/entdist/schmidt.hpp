#ifndef ENTDIST_SCHMIDT_HPP
#define ENTDIST_SCHMIDT_HPP

#include <Eigen/Dense>

#include "entdist/source.hpp"

namespace entdist {

// Schmidt (weighted singular-value) decomposition of a sampled two-photon
// amplitude:  Psi(w_S, w_I) = Sum_l lambda_l phi_l(w_S) psi_l(w_I), with the
// modes orthonormal under the grid quadrature Sum_i w phi_l phi_l'* = delta.
struct SchmidtDecomposition {
  Eigen::ArrayXd singular_values;    // lambda_l, descending, truncated
  Eigen::ArrayXd normalized_values;  // lambda-tilde_l, Sum lambda-tilde^2 = 1
  Eigen::MatrixXcd signal_modes;     // column l = phi_l on signal_grid
  Eigen::MatrixXcd idler_modes;      // column l = psi_l on idler_grid
  QuadratureGrid signal_grid;
  QuadratureGrid idler_grid;

  Eigen::Index size() const { return singular_values.size(); }
  bool empty() const { return singular_values.size() == 0; }
  // Sum_l lambda_l^2 = joint probability mass of the decomposed amplitude.
  double total_power() const { return singular_values.square().sum(); }
};

// Decompose the weight-scaled matrix B = D_S^(1/2) M D_I^(1/2) (D = diagonal
// grid-weight matrices; uniform here, so scalar sqrt(w_S w_I)).  Scaling by
// the weights makes the discrete singular values converge to their continuum
// counterparts instead of drifting with grid spacing.  Modes are recovered as
// phi_l(i) = U_il / sqrt(w_S), psi_l(j) = conj(V_jl) / sqrt(w_I); values with
// lambda_l / lambda_1 <= rel_cutoff are discarded.  An all-zero input yields
// an empty decomposition.
SchmidtDecomposition decompose(const SpectralAmplitude2D& psi, double rel_cutoff = 1e-8);

// Purity of the reduced single-photon state: Sum_l lambda-tilde_l^4.
double purity_from_schmidt(const SchmidtDecomposition& d);

}  // namespace entdist

#endif  // ENTDIST_SCHMIDT_HPP
