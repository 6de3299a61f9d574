#ifndef ENTDIST_EMIT_HPP
#define ENTDIST_EMIT_HPP

#include <string>
#include <vector>

#include "entdist/pipeline.hpp"

namespace entdist {

// Locale-independent scientific formatting with 13 significant digits —
// enough to round-trip a double through text at well below every tolerance
// used here.  NaN renders as an empty field (metric undefined).
std::string format_number(double value);

// Names of the per-channel metric columns (excluding the leading n).
const std::vector<std::string>& metric_names();

// CSV table: header, one row per channel, then two labeled footer rows with
// the total rate over the selected channels and the two-pair probability.
// `metrics` filters the value columns (empty = all); `drift` appends a
// grid_warn column (1 = metric moved more than the tolerance at double
// resolution).
std::string to_csv(const RunResult& result, const std::vector<std::string>& metrics = {},
                   const GridDriftReport* drift = nullptr);

// Long-format sweep CSV: leading column carries the swept value.
std::string to_csv(const SweepResult& result, const std::vector<std::string>& metrics = {});

// Per-figure plot files: two columns (n, metric) each, except the combined
// interference file which carries chi_1..chi_3.
struct PlotFile {
  std::string name;
  std::string contents;
};
std::vector<PlotFile> to_plotdata(const RunResult& result);

// Write helpers; create the directory if needed and fail loudly on I/O errors.
void write_file(const std::string& directory, const std::string& filename,
                const std::string& contents);

}  // namespace entdist

#endif  // ENTDIST_EMIT_HPP
