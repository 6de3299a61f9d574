#include "entdist/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "entdist/bsm.hpp"
#include "entdist/errors.hpp"
#include "entdist/metrics.hpp"
#include "entdist/schmidt.hpp"

namespace entdist {

namespace {

// Run fn(0..count-1) on a small worker pool.  The first exception wins and is
// rethrown on the calling thread after every worker has joined.
void parallel_for(int count, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(std::max(count, 1)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

RunConfig resolve(const RunConfig& cfg) {
  cfg.validate();
  RunConfig r = cfg;
  if (r.memory_mode != MemoryMode::ideal && r.memory_g_auto) {
    try {
      r.memory.g = cooperativity_pi(r.memory).g;
    } catch (const std::domain_error& e) {
      throw config_error(std::string("cannot derive g from cooperativity_pi: ") + e.what());
    }
    r.memory_g_auto = false;
  }
  return r;
}

ChannelReport evaluate_channel(const BiphotonAmplitude& amp, int n, const RunConfig& cfg) {
  ChannelReport row;
  row.n = n;

  row.pr_herald = heralding_probability(amp, n, cfg.plan, cfg.grid);
  const SpectralAmplitude2D psi_both = channelize(amp, n, cfg.plan, ChannelizeMode::both, cfg.grid);
  row.pr_joint = integrate_abs2(psi_both);
  if (!(row.pr_herald > 0.0))
    throw degenerate_error("evaluate_channel: Pr(I_n) vanishes on channel " + std::to_string(n));
  row.efficiency = row.pr_joint / row.pr_herald;

  const PhiKernel phi = phi_kernel(psi_both);
  row.purity_single = purity_direct(phi);
  row.purity_schmidt = purity_from_schmidt(decompose(psi_both, cfg.grid.svd_cutoff));

  const BsmKernels kernels = bsm_kernels(phi);
  row.trace_c = kernels.trace_c;
  row.trace_e = kernels.trace_e;

  row.pr_bsm_herald = bsm_herald_probability(row.pr_herald);
  row.bsm_efficiency = bsm_heralding_efficiency(row.pr_joint, row.pr_herald);
  row.bsm_purity = bsm_purity(row.purity_single);
  const FidelityError fe = bsm_fidelity_and_error(row.bsm_purity);
  row.pr_c = fe.pr_c;
  row.pr_e = fe.pr_e;

  switch (cfg.memory_mode) {
    case MemoryMode::ideal: {
      row.eta_cavity = 1.0;
      row.fidelity_a = row.fidelity_b = ideal_loading_fidelity(kernels);
      break;
    }
    case MemoryMode::narrowband: {
      const std::complex<double> r1_0 = reflectivity(cfg.memory, 1, 0.0);
      const NarrowbandFidelities nf = narrowband_fidelities(kernels, r1_0);
      row.fidelity_a = nf.f_a;
      row.fidelity_b = nf.f_b;
      row.eta_cavity = std::norm(r1_0);
      break;
    }
    case MemoryMode::broadband: {
      const ModeConversionParams mc =
          conversion_from_bandwidths(cfg.plan.delta_B, cfg.compressed_bandwidth);
      const BsmKernels converted = bsm_kernels(mode_convert_phi(phi, mc));
      row.fidelity_a = broadband_fidelity(converted, cfg.memory, Herald::psi_minus,
                                          DetectorSignature::pp);
      row.fidelity_b = broadband_fidelity(converted, cfg.memory, Herald::psi_minus,
                                          DetectorSignature::pm);
      row.eta_cavity = cavity_efficiency(cfg.memory);
      break;
    }
  }

  row.rate = channel_rate(cfg.budget, row.pr_bsm_herald, row.bsm_efficiency, row.eta_cavity,
                          row.fidelity_a, row.fidelity_b);

  for (int k = 1; k <= 3; ++k) {
    if (cfg.plan.in_range(n + k))
      row.chi[static_cast<std::size_t>(k - 1)] = interference_ratio(amp, n, k, cfg.plan, cfg.grid);
    else
      row.chi[static_cast<std::size_t>(k - 1)] = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

RunResult run(const RunConfig& cfg) {
  RunResult result;
  result.config = resolve(cfg);
  result.selected = result.config.selected_channels();

  const BiphotonAmplitude amp = gaussian_amplitude(result.config.source);
  result.rows.resize(result.selected.size());
  parallel_for(static_cast<int>(result.selected.size()), [&](int i) {
    result.rows[static_cast<std::size_t>(i)] =
        evaluate_channel(amp, result.selected[static_cast<std::size_t>(i)], result.config);
  });

  std::map<int, double> rate_by_channel;
  for (const ChannelReport& row : result.rows) rate_by_channel[row.n] = row.rate;
  result.total_rate = total_rate(rate_by_channel, result.selected);
  result.two_pair_prob = two_pair_probability(result.config.budget.E_Np);
  return result;
}

bool GridDriftReport::flagged_channel(int n) const {
  return std::find(flagged.begin(), flagged.end(), n) != flagged.end();
}

GridDriftReport verify_grid(const RunResult& base, double tolerance) {
  RunConfig doubled = base.config;
  doubled.grid.points_per_channel *= 2;
  const RunResult fine = run(doubled);

  // Metrics whose convergence is checked; chi ratios are covered through the
  // listed probabilities they are built from.
  struct Probe {
    const char* name;
    double ChannelReport::*field;
  };
  static constexpr Probe probes[] = {
      {"pr_herald", &ChannelReport::pr_herald},   {"efficiency", &ChannelReport::efficiency},
      {"pr_joint", &ChannelReport::pr_joint},     {"purity_single", &ChannelReport::purity_single},
      {"pr_e", &ChannelReport::pr_e},             {"fidelity_a", &ChannelReport::fidelity_a},
      {"fidelity_b", &ChannelReport::fidelity_b}, {"rate", &ChannelReport::rate},
  };

  GridDriftReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    const ChannelReport& coarse_row = base.rows[i];
    const ChannelReport& fine_row = fine.rows[i];
    double worst = 0.0;
    const char* worst_metric = "";
    for (const Probe& p : probes) {
      const double a = coarse_row.*(p.field);
      const double b = fine_row.*(p.field);
      const double scale = std::max(std::abs(a), std::abs(b));
      if (scale == 0.0) continue;
      const double drift = std::abs(a - b) / scale;
      if (drift > worst) {
        worst = drift;
        worst_metric = p.name;
      }
    }
    report.drift_by_channel[coarse_row.n] = worst;
    if (worst > tolerance) report.flagged.push_back(coarse_row.n);
    if (worst > report.max_rel_drift) {
      report.max_rel_drift = worst;
      report.worst_channel = coarse_row.n;
      report.worst_metric = worst_metric;
    }
  }
  return report;
}

SweepResult sweep(const RunConfig& base, const std::string& parameter,
                  const std::vector<double>& values) {
  if (values.empty()) throw config_error("sweep: no values given");
  SweepResult result;
  result.parameter = parameter;
  result.values = values;
  result.runs.reserve(values.size());
  for (double v : values) result.runs.push_back(run(apply_parameter(base, parameter, v)));
  return result;
}

}  // namespace entdist
