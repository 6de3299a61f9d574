#ifndef ENTDIST_CONFIG_HPP
#define ENTDIST_CONFIG_HPP

#include <string>
#include <vector>

#include "entdist/linkbudget.hpp"
#include "entdist/memory.hpp"
#include "entdist/source.hpp"

namespace entdist {

enum class MemoryMode { ideal, narrowband, broadband };

MemoryMode memory_mode_from_string(const std::string& text);
std::string to_string(MemoryMode mode);

// Output row selection and column filtering.
struct OutputOptions {
  bool all_channels = true;          // overridden by an explicit channel list
  std::vector<int> channels;         // explicit subset (used when !all_channels)
  int guard_stride = 1;              // keep every stride-th channel (always incl. 0)
  std::vector<std::string> metrics;  // empty = every column
};

// Complete, validated description of one computation.
struct RunConfig {
  SourceParams source;
  ChannelPlan plan;
  GridOptions grid;
  MemoryMode memory_mode = MemoryMode::ideal;
  MemoryParams memory;                   // narrowband / broadband cavity parameters
  bool memory_g_auto = true;             // derive g from cooperativity_pi at run time
  double compressed_bandwidth = 600e6;   // deltaB-tilde (Hz) for broadband conversion
  EfficiencyBudget budget;
  OutputOptions outputs;

  void validate() const;
  // Channel rows to evaluate: (explicit subset or all) intersected with the
  // guard-band stride, ascending.
  std::vector<int> selected_channels() const;
};

// Built-in parameter sets: "case1" (long pump, high heralding efficiency)
// and "case2" (short pump, high purity); identical channel plans.
RunConfig preset(const std::string& name);

// JSON config loading.  Schema is documented in the README; unknown keys are
// rejected so typos cannot silently fall back to defaults.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);

// Parse "a..b" or "n" into an explicit channel list (bounds-checked later
// against the plan by RunConfig::validate).
std::vector<int> parse_channel_range(const std::string& text);

// Apply one swept parameter value to a config copy.  Valid names: sigma_P,
// delta_B, Delta_B, guard_stride, gamma, kappa, kappa_J, g, Delta_12, T,
// delta_B_tilde.
RunConfig apply_parameter(const RunConfig& base, const std::string& name, double value);

}  // namespace entdist

#endif  // ENTDIST_CONFIG_HPP
