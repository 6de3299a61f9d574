#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "entdist/bsm.hpp"
#include "entdist/errors.hpp"
#include "entdist/metrics.hpp"
#include "entdist/schmidt.hpp"

using namespace entdist;

namespace {

SourceParams long_pump() { return {160e-12, two_pi * 6.37e12, 0.0, 0.0}; }
SourceParams short_pump() { return {16e-12, two_pi * 6.37e12, 0.0, 0.0}; }
ChannelPlan dense_plan() { return {25e9, 30e9, 81}; }
GridOptions grid_opt() { return {257, 8.0, 1e-8}; }

struct ChannelZero {
  PhiKernel phi;
  SchmidtDecomposition schmidt;
  BsmKernels kernels;
  double pr_joint = 0.0;
};

ChannelZero make_channel(const SourceParams& p, int n_points = 257) {
  GridOptions opt = grid_opt();
  opt.points_per_channel = n_points;
  const BiphotonAmplitude amp = gaussian_amplitude(p);
  const SpectralAmplitude2D both = channelize(amp, 0, dense_plan(), ChannelizeMode::both, opt);
  ChannelZero out;
  out.phi = phi_kernel(both);
  out.schmidt = decompose(both, opt.svd_cutoff);
  out.kernels = bsm_kernels(out.phi);
  out.pr_joint = out.phi.weighted_trace();
  return out;
}

}  // namespace

TEST_CASE("scalar BSM figures") {
  CHECK(bsm_herald_probability(0.2) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(bsm_heralding_efficiency(0.09, 0.3) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(bsm_purity(0.5) == 0.25);
  CHECK_THROWS_AS(bsm_herald_probability(-0.1), std::domain_error);
  CHECK_THROWS_AS(bsm_herald_probability(1.5), std::domain_error);
  CHECK_THROWS_AS(bsm_heralding_efficiency(0.2, 0.0), degenerate_error);
  CHECK_THROWS_AS(bsm_heralding_efficiency(0.2, 0.1), std::invalid_argument);  // ratio > 1
  CHECK_THROWS_AS(bsm_purity(0.0), std::domain_error);
}

TEST_CASE("herald fidelity and error sum to one exactly") {
  for (double p : {1e-6, 0.01, 0.074995, 0.3, 0.5, 0.969, 0.999, 1.0}) {
    const FidelityError fe = bsm_fidelity_and_error(p);
    CHECK(fe.pr_c == (1.0 + std::sqrt(p)) / 2.0);
    CHECK(fe.pr_c + fe.pr_e == 1.0);  // exact in floating point
    CHECK(fe.pr_e >= 0.0);
  }
}

TEST_CASE("frozen biphoton figures for both presets") {
  {
    const ChannelZero c = make_channel(long_pump());
    const double purity = purity_direct(c.phi);
    CHECK(bsm_purity(purity) == doctest::Approx(0.07500).epsilon(2e-3));
    CHECK(bsm_fidelity_and_error(bsm_purity(purity)).pr_e ==
          doctest::Approx(0.36307).epsilon(1e-3));
  }
  {
    const ChannelZero c = make_channel(short_pump());
    const double purity = purity_direct(c.phi);
    CHECK(bsm_purity(purity) == doctest::Approx(0.98459).epsilon(1e-3));
    CHECK(bsm_fidelity_and_error(bsm_purity(purity)).pr_e ==
          doctest::Approx(3.8672e-3).epsilon(2e-3));
  }
}

TEST_CASE("kernel diagonals follow from the channel kernel entrywise") {
  const ChannelZero c = make_channel(long_pump(), 97);
  const Eigen::Index n = c.phi.values.rows();
  REQUIRE(c.kernels.diag_c.rows() == n);
  for (Eigen::Index i : {Eigen::Index(0), n / 2, n - 1})
    for (Eigen::Index j : {Eigen::Index(1), n / 3, n - 2}) {
      const double dd = c.phi.values(i, i).real() * c.phi.values(j, j).real();
      const double cross = std::norm(c.phi.values(i, j));
      CHECK(c.kernels.diag_c(i, j) == doctest::Approx(dd + cross).epsilon(1e-13));
      CHECK(c.kernels.diag_e(i, j) == doctest::Approx(dd - cross).epsilon(1e-13));
    }
}

TEST_CASE("kernel traces meet the Schmidt two-path identity") {
  for (const SourceParams& p : {long_pump(), short_pump()}) {
    const ChannelZero c = make_channel(p);
    const double pr2 = c.pr_joint * c.pr_joint;
    const double lambda4 = c.schmidt.singular_values.square().square().sum();
    CHECK(c.kernels.trace_c == doctest::Approx(pr2 + lambda4).epsilon(1e-9));
    CHECK(c.kernels.trace_e == doctest::Approx(pr2 - lambda4).epsilon(1e-9));
    // Completeness: the two kernels exhaust the two-copy probability mass.
    CHECK((c.kernels.trace_c + c.kernels.trace_e) / 2.0 ==
          doctest::Approx(pr2).epsilon(1e-10));
  }
}

TEST_CASE("eigenvalue lists are the pairwise Schmidt products") {
  const ChannelZero c = make_channel(long_pump(), 129);
  const KernelEigensystem es = kernel_eigensystem(c.schmidt);
  const Eigen::ArrayXd& sv = c.schmidt.singular_values;
  const Eigen::Index m = sv.size();

  std::vector<double> mu_expect, nu_expect;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double v = 2.0 * sv(a) * sv(a) * sv(b) * sv(b);
      mu_expect.push_back(v);
      if (a != b) nu_expect.push_back(v);
    }
  std::sort(mu_expect.rbegin(), mu_expect.rend());
  std::sort(nu_expect.rbegin(), nu_expect.rend());

  REQUIRE(es.mu.size() == static_cast<Eigen::Index>(mu_expect.size()));
  REQUIRE(es.nu.size() == static_cast<Eigen::Index>(nu_expect.size()));
  for (std::size_t k = 0; k < std::min<std::size_t>(mu_expect.size(), 200); ++k)
    CHECK(es.mu(static_cast<Eigen::Index>(k)) ==
          doctest::Approx(mu_expect[k]).epsilon(1e-12));
  for (std::size_t k = 0; k < std::min<std::size_t>(nu_expect.size(), 200); ++k)
    CHECK(es.nu(static_cast<Eigen::Index>(k)) ==
          doctest::Approx(nu_expect[k]).epsilon(1e-12));

  // Descending order; largest mu is the dominant-mode pair (0, 0).
  CHECK(es.mu(0) == doctest::Approx(2.0 * std::pow(sv(0), 4)).epsilon(1e-12));
  CHECK(es.mu_modes.front()[0] == 0);
  CHECK(es.mu_modes.front()[1] == 0);

  // Two-path identity: eigenvalue sums reproduce the quadrature traces.
  CHECK(es.mu.sum() == doctest::Approx(c.kernels.trace_c).epsilon(1e-9));
  CHECK(es.nu.sum() == doctest::Approx(c.kernels.trace_e).epsilon(1e-9));
}

TEST_CASE("eigenfunctions are weight-orthonormal and exchange-(anti)symmetric") {
  const ChannelZero c = make_channel(short_pump(), 97);
  const KernelEigensystem es = kernel_eigensystem(c.schmidt);
  const double w2 = es.grid.weight * es.grid.weight;
  const Eigen::Index n_check = std::min<Eigen::Index>(es.mu.size(), 6);

  std::vector<Eigen::MatrixXcd> xis, zetas;
  for (Eigen::Index a = 0; a < n_check; ++a) xis.push_back(es.xi(a));
  for (Eigen::Index a = 0; a < std::min<Eigen::Index>(es.nu.size(), 6); ++a)
    zetas.push_back(es.zeta(a));

  for (std::size_t a = 0; a < xis.size(); ++a) {
    CHECK((xis[a] - xis[a].transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (std::size_t b = 0; b <= a; ++b) {
      const std::complex<double> ip = w2 * (xis[a].conjugate().cwiseProduct(xis[b])).sum();
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
  for (std::size_t a = 0; a < zetas.size(); ++a) {
    CHECK((zetas[a] + zetas[a].transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (std::size_t b = 0; b <= a; ++b) {
      const std::complex<double> ip = w2 * (zetas[a].conjugate().cwiseProduct(zetas[b])).sum();
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("kernel diagonals equal their eigenfunction expansions") {
  // diag_c(i, j) = Sum_m mu_m |xi_m(i, j)|^2 and likewise for diag_e with
  // (nu, zeta): the quadrature diagonals and the Schmidt eigensystem are
  // independent computational paths to the same kernels.
  const ChannelZero c = make_channel(short_pump(), 97);
  const KernelEigensystem es = kernel_eigensystem(c.schmidt);
  const Eigen::Index n = es.grid.n_points();
  Eigen::ArrayXXd dc = Eigen::ArrayXXd::Zero(n, n), de = Eigen::ArrayXXd::Zero(n, n);
  for (Eigen::Index m = 0; m < es.mu.size(); ++m) dc += es.mu(m) * es.xi(m).cwiseAbs2().array();
  for (Eigen::Index m = 0; m < es.nu.size(); ++m) de += es.nu(m) * es.zeta(m).cwiseAbs2().array();
  const double scale = c.kernels.diag_c.maxCoeff();
  CHECK((dc - c.kernels.diag_c).abs().maxCoeff() <= 1e-8 * scale);
  CHECK((de - c.kernels.diag_e).abs().maxCoeff() <= 1e-8 * scale);
}

TEST_CASE("eigenfunctions diagonalize the two-copy kernels") {
  // Action of the correct kernel on X:  Phi W X W Phi^T + Phi W X^T W Phi^T;
  // the error kernel flips the exchange sign.  xi must return mu * xi and be
  // annihilated by the error kernel (and dually for zeta).
  const ChannelZero c = make_channel(long_pump(), 65);
  const KernelEigensystem es = kernel_eigensystem(c.schmidt);
  const double w = es.grid.weight;
  const Eigen::MatrixXcd& phi = c.phi.values;
  const auto direct = [&](const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd {
    return w * w * (phi * x * phi.transpose());
  };
  const Eigen::Index n_check = std::min<Eigen::Index>({es.mu.size(), es.nu.size(), 8});
  for (Eigen::Index k = 0; k < n_check; ++k) {
    const Eigen::MatrixXcd xi = es.xi(k);
    const double xi_scale = es.mu(0) * xi.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd act_c = direct(xi) + direct(xi.transpose());
    const Eigen::MatrixXcd act_e = direct(xi) - direct(xi.transpose());
    CHECK((act_c - es.mu(k) * xi).cwiseAbs().maxCoeff() <= 1e-8 * xi_scale);
    CHECK(act_e.cwiseAbs().maxCoeff() <= 1e-8 * xi_scale);

    const Eigen::MatrixXcd zeta = es.zeta(k);
    const double zeta_scale = es.mu(0) * zeta.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd zact_e = direct(zeta) - direct(zeta.transpose());
    const Eigen::MatrixXcd zact_c = direct(zeta) + direct(zeta.transpose());
    CHECK((zact_e - es.nu(k) * zeta).cwiseAbs().maxCoeff() <= 1e-8 * zeta_scale);
    CHECK(zact_c.cwiseAbs().maxCoeff() <= 1e-8 * zeta_scale);
  }
}
