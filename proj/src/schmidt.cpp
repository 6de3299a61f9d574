#include "entdist/schmidt.hpp"

#include <cmath>

#include "entdist/errors.hpp"

namespace entdist {

SchmidtDecomposition decompose(const SpectralAmplitude2D& psi, double rel_cutoff) {
  if (!(rel_cutoff >= 0.0 && rel_cutoff < 1.0))
    throw std::invalid_argument("decompose: rel_cutoff must lie in [0, 1)");
  if (psi.values.rows() != psi.signal.n_points() || psi.values.cols() != psi.idler.n_points())
    throw std::invalid_argument("decompose: matrix shape does not match grids");

  SchmidtDecomposition d;
  d.signal_grid = psi.signal;
  d.idler_grid = psi.idler;
  if (psi.values.size() == 0 || psi.values.isZero(0.0)) return d;  // empty decomposition

  const double ws = psi.signal.weight;
  const double wi = psi.idler.weight;
  const Eigen::MatrixXcd b = std::sqrt(ws * wi) * psi.values;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  Eigen::Index keep = 0;
  while (keep < sv.size() && sv[keep] > rel_cutoff * sv[0]) ++keep;

  d.singular_values = sv.head(keep).array();
  d.normalized_values = d.singular_values / std::sqrt(d.singular_values.square().sum());
  d.signal_modes = svd.matrixU().leftCols(keep) / std::sqrt(ws);
  d.idler_modes = svd.matrixV().leftCols(keep).conjugate() / std::sqrt(wi);
  return d;
}

double purity_from_schmidt(const SchmidtDecomposition& d) {
  if (d.empty()) throw degenerate_error("purity_from_schmidt: empty decomposition");
  return d.normalized_values.square().square().sum();
}

}  // namespace entdist
