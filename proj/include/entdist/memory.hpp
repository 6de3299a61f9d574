#ifndef ENTDIST_MEMORY_HPP
#define ENTDIST_MEMORY_HPP

#include <array>
#include <complex>
#include <functional>

#include "entdist/bsm.hpp"

namespace entdist {

// Bandwidth compression applied between the source channels and the memory
// cavities.  Detunings compress by 1/beta about the new carrier; the carrier
// value itself is bookkeeping and never enters the numerics.
struct ModeConversionParams {
  double beta = 1.0;           // compression factor deltaB / deltaB-tilde, >= 1
  double delta_B_tilde = 0.0;  // compressed channel bandwidth (Hz), informational
  double target_center = 0.0;  // post-conversion carrier (rad/s), bookkeeping

  void validate() const {
    if (!(beta >= 1.0)) throw std::domain_error("ModeConversionParams: beta must be >= 1");
  }
};

ModeConversionParams conversion_from_bandwidths(double delta_B, double delta_B_tilde);

// Compress a channel kernel onto the memory band: new detunings are the old
// grid offsets divided by beta, values scale by beta, the quadrature weight
// scales by 1/beta.  The weighted trace and the weighted eigenvalue spectrum
// are preserved exactly; only the frequency axis changes.
PhiKernel mode_convert_phi(const PhiKernel& phi, const ModeConversionParams& mc);

// Single-sided cavity with one spin, two optical transitions split by
// Delta_12, driven midway between them (push-pull).  All rates are field
// rates in rad/s.
struct MemoryParams {
  double gamma = 0.0;     // spontaneous-emission rate
  double kappa = 0.0;     // output-coupler rate
  double kappa_J = 0.0;   // parasitic-loss rate
  double g = 0.0;         // single-photon Rabi coupling
  double Delta_12 = 0.0;  // transition splitting (rad/s)
  double T = 0.0;         // interferometer time delay (s)

  void validate() const {
    if (gamma < 0.0 || kappa < 0.0 || kappa_J < 0.0 || g < 0.0)
      throw std::domain_error("MemoryParams: rates must be >= 0");
  }
};

// State-dependent reflectivity at detuning dw from the drive frequency:
//   r1(dw) = [(gamma + i Delta_12/2 - i dw)(kappa - kappa_J + i dw) - g^2] /
//            [(gamma + i Delta_12/2 - i dw)(kappa + kappa_J - i dw) + g^2]
// and r2 with the sign of Delta_12/2 flipped; r2(+dw) = conj(r1(-dw)).
std::complex<double> reflectivity(const MemoryParams& params, int transition, double detuning);

struct CooperativityPi {
  double c_pi = 0.0;  // cooperativity g^2/(kappa gamma) giving Re r1(0) = 0
  double g = 0.0;     // coupling achieving it
};

// C_pi = sqrt(1 + (1 - kappa_J^2/kappa^2) Delta_12^2 / (4 gamma^2)) - kappa_J/kappa:
// the operating point where both on-resonance reflectivities are pure
// imaginary with a pi relative phase.
CooperativityPi cooperativity_pi(const MemoryParams& params);

// eta_cavity = |r1(0)|^2, the loading-efficiency factor of the cavities.
double cavity_efficiency(const MemoryParams& params);

// Loading fidelity with perfect reflectivities: trace_c / (trace_c + trace_e),
// independent of herald and detector signature.
double ideal_loading_fidelity(const BsmKernels& kernels);

struct NarrowbandFidelities {
  double f_a = 0.0;  // type-a coincidences
  double f_b = 0.0;  // type-b coincidences
};

// Closed-form fidelities when the photon bandwidth is narrow enough that the
// reflectivities are constant r1(0) across it.  With A = trace_c,
// B = trace_e, I = Im^2 r1(0), R = Re^2 r1(0):
//   F_a = A I / (A I + B (2R + I)),  F_b = A I / (A (2R + I) + B I).
NarrowbandFidelities narrowband_fidelities(const BsmKernels& kernels, std::complex<double> r1_0);

enum class Herald { psi_minus, psi_plus };
enum class DetectorSignature { pp, pm, mp, mm };  // (s1, s2) detector signs
enum class CoincidenceClass { a, b };

// {psi-, (+,+)/(-,-)} and {psi+, (+,-)/(-,+)} share one loaded density
// operator (class a); the complementary four combinations share the other.
CoincidenceClass coincidence_class(Herald herald, DetectorSignature s);

// Frequency-dependent reflectivity pair seen by the two memories.
struct ReflectivityPair {
  std::function<std::complex<double>(double)> r1;
  std::function<std::complex<double>(double)> r2;
};

ReflectivityPair push_pull_reflectivities(const MemoryParams& params);
ReflectivityPair ideal_reflectivities();      // r1 = +1, r2 = -1
ReflectivityPair constant_reflectivities(std::complex<double> r1_0);  // r2 = conj(r1_0)

// Bell components of the loaded two-memory state, indexed
// 0: phi+, 1: phi-, 2: psi+, 3: psi-.
inline constexpr int bell_phi_plus = 0;
inline constexpr int bell_phi_minus = 1;
inline constexpr int bell_psi_plus = 2;
inline constexpr int bell_psi_minus = 3;

// Unnormalized weights of the four memory Bell components after loading a
// broadband heralded biphoton through frequency-dependent reflectivities.
// Kernel diagonals carry the full mode sums because the reflection
// coefficients do not depend on the mode index; only the difference phase
// exp(+-i (w2 - w1) T / 2) of the time delay enters.
std::array<double, 4> broadband_bell_weights(const BsmKernels& kernels,
                                             const ReflectivityPair& refl, double T,
                                             CoincidenceClass cls);

// Fidelity to the target singlet component for one (herald, signature) pair.
double broadband_fidelity(const BsmKernels& kernels, const ReflectivityPair& refl, double T,
                          Herald herald, DetectorSignature s);

// Push-pull wrapper: reflectivities and time delay taken from params.
double broadband_fidelity(const BsmKernels& kernels, const MemoryParams& params, Herald herald,
                          DetectorSignature s);

}  // namespace entdist

#endif  // ENTDIST_MEMORY_HPP
