#ifndef ENTDIST_PIPELINE_HPP
#define ENTDIST_PIPELINE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "entdist/config.hpp"

namespace entdist {

// Every figure of merit of one heralded channel.
struct ChannelReport {
  int n = 0;
  double pr_herald = 0.0;      // Pr(I_n)
  double efficiency = 0.0;     // Pr(S_n | I_n)
  double pr_joint = 0.0;       // Pr(S_n, I_n)
  double purity_single = 0.0;  // direct-quadrature path (reported)
  double purity_schmidt = 0.0; // SVD path (cross-check)
  double pr_bsm_herald = 0.0;  // Pr(psi-+_n)
  double bsm_efficiency = 0.0;
  double bsm_purity = 0.0;
  double pr_c = 0.0;
  double pr_e = 0.0;
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
  double eta_cavity = 0.0;
  double rate = 0.0;                      // R_n
  std::array<double, 3> chi{};            // chi_1..chi_3; NaN when n+k leaves the plan
  double trace_c = 0.0, trace_e = 0.0;    // kernel traces (not emitted; test hooks)
};

struct RunResult {
  RunConfig config;
  std::vector<ChannelReport> rows;  // ascending channel order
  std::vector<int> selected;        // channels contributing rows and the total
  double total_rate = 0.0;
  double two_pair_prob = 0.0;
};

// Resolve run-time parameter derivations (currently: g from cooperativity_pi
// when requested and a memory mode is active).
RunConfig resolve(const RunConfig& cfg);

// All figures of merit for one channel of a resolved config.
ChannelReport evaluate_channel(const BiphotonAmplitude& amp, int n, const RunConfig& resolved);

// Full table: channels evaluated concurrently (each channel's computation is
// internally sequential, so results do not depend on scheduling), rows
// assembled in ascending channel order.
RunResult run(const RunConfig& cfg);

// 2x-resolution convergence check of an existing result.
struct GridDriftReport {
  double tolerance = 1e-3;
  double max_rel_drift = 0.0;
  int worst_channel = 0;
  std::string worst_metric;
  std::map<int, double> drift_by_channel;  // max relative drift over metrics
  std::vector<int> flagged;                // channels exceeding the tolerance

  bool flagged_channel(int n) const;
};

GridDriftReport verify_grid(const RunResult& base, double tolerance = 1e-3);

struct SweepResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<RunResult> runs;  // one per value, in order
};

SweepResult sweep(const RunConfig& base, const std::string& parameter,
                  const std::vector<double>& values);

}  // namespace entdist

#endif  // ENTDIST_PIPELINE_HPP
