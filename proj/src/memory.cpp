#include "entdist/memory.hpp"

#include <cmath>

#include "entdist/errors.hpp"

namespace entdist {

namespace {
using cd = std::complex<double>;
}

ModeConversionParams conversion_from_bandwidths(double delta_B, double delta_B_tilde) {
  if (!(delta_B > 0.0) || !(delta_B_tilde > 0.0))
    throw std::domain_error("conversion_from_bandwidths: bandwidths must be > 0");
  ModeConversionParams mc;
  mc.beta = delta_B / delta_B_tilde;
  mc.delta_B_tilde = delta_B_tilde;
  mc.validate();
  return mc;
}

PhiKernel mode_convert_phi(const PhiKernel& phi, const ModeConversionParams& mc) {
  mc.validate();
  PhiKernel out;
  out.grid = midpoint_grid(0.0, phi.grid.half_width / mc.beta, phi.grid.n_points());
  out.values = mc.beta * phi.values;
  return out;
}

std::complex<double> reflectivity(const MemoryParams& params, int transition, double detuning) {
  params.validate();
  if (transition != 1 && transition != 2)
    throw std::invalid_argument("reflectivity: transition must be 1 or 2");

  const double sign = (transition == 1) ? +1.0 : -1.0;
  const cd atom(params.gamma, sign * 0.5 * params.Delta_12 - detuning);
  const double g_sq = params.g * params.g;
  const cd num = atom * cd(params.kappa - params.kappa_J, detuning) - g_sq;
  const cd den = atom * cd(params.kappa + params.kappa_J, -detuning) + g_sq;
  if (den == cd(0.0, 0.0))
    throw std::domain_error("reflectivity: exact pole (unphysical parameter set)");
  return num / den;
}

CooperativityPi cooperativity_pi(const MemoryParams& params) {
  params.validate();
  if (!(params.kappa > params.kappa_J))
    throw std::domain_error("cooperativity_pi: requires kappa > kappa_J");
  if (!(params.gamma > 0.0))
    throw std::domain_error("cooperativity_pi: requires gamma > 0");

  const double kj_ratio = params.kappa_J / params.kappa;
  const double a = 0.5 * params.Delta_12 / params.gamma;
  CooperativityPi out;
  out.c_pi = std::sqrt(1.0 + (1.0 - kj_ratio * kj_ratio) * a * a) - kj_ratio;
  out.g = std::sqrt(out.c_pi * params.kappa * params.gamma);
  return out;
}

double cavity_efficiency(const MemoryParams& params) {
  return std::norm(reflectivity(params, 1, 0.0));
}

double ideal_loading_fidelity(const BsmKernels& kernels) {
  const double total = kernels.trace_c + kernels.trace_e;
  if (!(total > 0.0)) throw degenerate_error("ideal_loading_fidelity: kernel traces vanish");
  return kernels.trace_c / total;
}

NarrowbandFidelities narrowband_fidelities(const BsmKernels& kernels, std::complex<double> r1_0) {
  const double a = kernels.trace_c;
  const double b = kernels.trace_e;
  if (!(a + b > 0.0)) throw degenerate_error("narrowband_fidelities: kernel traces vanish");

  const double im_sq = r1_0.imag() * r1_0.imag();
  const double re_sq = r1_0.real() * r1_0.real();
  const double den_a = a * im_sq + b * (2.0 * re_sq + im_sq);
  const double den_b = a * (2.0 * re_sq + im_sq) + b * im_sq;
  if (!(den_a > 0.0) || !(den_b > 0.0))
    throw degenerate_error("narrowband_fidelities: no surviving coincidence amplitude (r1 = 0?)");

  NarrowbandFidelities f;
  f.f_a = a * im_sq / den_a;
  f.f_b = a * im_sq / den_b;
  return f;
}

CoincidenceClass coincidence_class(Herald herald, DetectorSignature s) {
  const bool equal_signs = (s == DetectorSignature::pp || s == DetectorSignature::mm);
  if (herald == Herald::psi_minus)
    return equal_signs ? CoincidenceClass::a : CoincidenceClass::b;
  return equal_signs ? CoincidenceClass::b : CoincidenceClass::a;
}

ReflectivityPair push_pull_reflectivities(const MemoryParams& params) {
  return {[params](double dw) { return reflectivity(params, 1, dw); },
          [params](double dw) { return reflectivity(params, 2, dw); }};
}

ReflectivityPair ideal_reflectivities() {
  return {[](double) { return cd(1.0, 0.0); }, [](double) { return cd(-1.0, 0.0); }};
}

ReflectivityPair constant_reflectivities(std::complex<double> r1_0) {
  const cd r2_0 = std::conj(r1_0);
  return {[r1_0](double) { return r1_0; }, [r2_0](double) { return r2_0; }};
}

std::array<double, 4> broadband_bell_weights(const BsmKernels& kernels,
                                             const ReflectivityPair& refl, double T,
                                             CoincidenceClass cls) {
  const Eigen::Index n = kernels.grid.n_points();
  if (kernels.diag_c.rows() != n || kernels.diag_c.cols() != n || kernels.diag_e.rows() != n ||
      kernels.diag_e.cols() != n)
    throw std::invalid_argument("broadband_bell_weights: kernel diagonals must be square on the grid");

  Eigen::VectorXcd r1v(n), r2v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r1v[i] = refl.r1(kernels.grid.points[i]);
    r2v[i] = refl.r2(kernels.grid.points[i]);
  }

  // Bell-component amplitudes for one (w1, w2) pair.  The delay phase
  // u = e^{i d}, d = (w2 - w1) T / 2, dresses the per-photon push (r1 + r2)
  // and pull (r1 - r2) responses
  //   p = u (r1 - r2)(w1),  q = u* (r1 - r2)(w2),
  //   P = u (r1 + r2)(w1),  Q = u* (r1 + r2)(w2).
  // On the symmetric (mu) / antisymmetric (nu) kernel sectors the four Bell
  // coefficients (each /4) are
  //   class a: mu = {P-Q, p-q, P-Q, p+q},  nu = {P+Q, p+q, P+Q, p-q}
  //   class b: mu = {P+Q, p-q, P+Q, p+q},  nu = {P-Q, p+q, P-Q, p-q}
  // (order phi+, phi-, psi+, psi-): the pull coefficients are shared by both
  // coincidence classes, while the detector-sign parity decides which push
  // combination couples to which exchange sector.  Constant reflectivities
  // with T = 0 collapse these to the narrowband closed forms for both
  // classes, and r1 = -r2 = 1 recovers perfect loading with the residual
  // error mass entirely in phi-.
  std::array<NeumaierSum, 4> acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = 0.5 * (kernels.grid.points[j] - kernels.grid.points[i]) * T;
      const cd u(std::cos(d), std::sin(d));
      const cd p = u * (r1v[i] - r2v[i]);
      const cd q = std::conj(u) * (r1v[j] - r2v[j]);
      const cd push_1 = u * (r1v[i] + r2v[i]);
      const cd push_2 = std::conj(u) * (r1v[j] + r2v[j]);

      const cd push_minus = push_1 - push_2;
      const cd push_plus = push_1 + push_2;
      const cd mu_push = (cls == CoincidenceClass::a) ? push_minus : push_plus;
      const cd nu_push = (cls == CoincidenceClass::a) ? push_plus : push_minus;

      const std::array<cd, 4> c_mu = {mu_push, p - q, mu_push, p + q};
      const std::array<cd, 4> c_nu = {nu_push, p + q, nu_push, p - q};

      const double kc = kernels.diag_c(i, j);
      const double ke = kernels.diag_e(i, j);
      for (int x = 0; x < 4; ++x)
        acc[static_cast<std::size_t>(x)].add(kc * std::norm(c_mu[static_cast<std::size_t>(x)]) +
                                             ke * std::norm(c_nu[static_cast<std::size_t>(x)]));
    }
  }

  const double scale = kernels.grid.weight * kernels.grid.weight / 16.0;  // the /4 per amplitude
  std::array<double, 4> weights{};
  for (int x = 0; x < 4; ++x) weights[static_cast<std::size_t>(x)] = scale * acc[static_cast<std::size_t>(x)].value();
  return weights;
}

double broadband_fidelity(const BsmKernels& kernels, const ReflectivityPair& refl, double T,
                          Herald herald, DetectorSignature s) {
  const auto w = broadband_bell_weights(kernels, refl, T, coincidence_class(herald, s));
  const double total = w[0] + w[1] + w[2] + w[3];
  if (!(total > 0.0) || !std::isfinite(total))
    throw degenerate_error("broadband_fidelity: all Bell-component weights vanish");
  return w[bell_psi_minus] / total;
}

double broadband_fidelity(const BsmKernels& kernels, const MemoryParams& params, Herald herald,
                          DetectorSignature s) {
  return broadband_fidelity(kernels, push_pull_reflectivities(params), params.T, herald, s);
}

}  // namespace entdist
