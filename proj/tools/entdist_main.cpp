#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entdist/emit.hpp"
#include "entdist/errors.hpp"
#include "entdist/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string preset_name;
  std::string config_path;
  std::string channels;
  std::string memory_mode;
  int guard_stride = 0;  // 0 = keep config value
  std::string out_dir;
  std::string format = "csv";
  bool verify_grid = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  auto* preset_opt =
      cmd->add_option("--preset", args.preset_name, "Built-in parameter set (case1|case2)");
  auto* config_opt = cmd->add_option("--config", args.config_path, "JSON config file path");
  preset_opt->excludes(config_opt);
  cmd->add_option("--channels", args.channels, "Channel subset, e.g. 0, -4..4");
  cmd->add_option("--memory", args.memory_mode, "Memory loading model")
      ->check(CLI::IsMember({"ideal", "narrowband", "broadband"}));
  cmd->add_option("--guard-stride", args.guard_stride, "Keep every k-th channel")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", args.out_dir, "Output directory (default: CSV to stdout)");
  cmd->add_option("--format", args.format, "Output format")
      ->check(CLI::IsMember({"csv", "plotdata"}));
  cmd->add_flag("--verify-grid", args.verify_grid,
                "Re-run at 2x resolution and flag metrics drifting > 0.1%");
}

entdist::RunConfig build_config(const CommonArgs& args) {
  if (args.preset_name.empty() && args.config_path.empty())
    throw entdist::config_error("either --preset or --config is required");

  entdist::RunConfig cfg = args.config_path.empty() ? entdist::preset(args.preset_name)
                                                    : entdist::load_config(args.config_path);
  if (!args.channels.empty()) {
    if (args.channels == "all") {
      cfg.outputs.all_channels = true;
      cfg.outputs.channels.clear();
    } else {
      cfg.outputs.channels = entdist::parse_channel_range(args.channels);
      cfg.outputs.all_channels = false;
    }
  }
  if (!args.memory_mode.empty())
    cfg.memory_mode = entdist::memory_mode_from_string(args.memory_mode);
  if (args.guard_stride > 0) cfg.outputs.guard_stride = args.guard_stride;
  cfg.validate();
  return cfg;
}

void emit_run(const entdist::RunResult& result, const entdist::GridDriftReport* drift,
              const CommonArgs& args) {
  if (args.format == "plotdata") {
    if (args.out_dir.empty())
      throw entdist::config_error("--format plotdata requires --out <dir>");
    for (const entdist::PlotFile& f : entdist::to_plotdata(result))
      entdist::write_file(args.out_dir, f.name, f.contents);
    std::cerr << "wrote plot data for " << result.rows.size() << " channels to " << args.out_dir
              << "\n";
    return;
  }

  const std::string csv = entdist::to_csv(result, result.config.outputs.metrics, drift);
  if (args.out_dir.empty()) {
    std::cout << csv;
    if (!std::cout) throw std::ios_base::failure("write to stdout failed");
  } else {
    entdist::write_file(args.out_dir, "report.csv", csv);
    std::cerr << "wrote " << result.rows.size() << " channel rows to " << args.out_dir
              << "/report.csv\n";
  }
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw entdist::config_error("bad sweep value '" + token + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

int dispatch(const CLI::App& app, const CommonArgs& args, const std::string& sweep_param,
             const std::string& sweep_values) {
  if (app.got_subcommand("run")) {
    const entdist::RunConfig cfg = build_config(args);
    const entdist::RunResult result = entdist::run(cfg);
    if (args.verify_grid) {
      const entdist::GridDriftReport drift = entdist::verify_grid(result);
      std::cerr << "grid check: max relative drift " << entdist::format_number(drift.max_rel_drift)
                << " (channel " << drift.worst_channel << ", " << drift.worst_metric << "), "
                << drift.flagged.size() << " channel(s) above tolerance\n";
      emit_run(result, &drift, args);
    } else {
      emit_run(result, nullptr, args);
    }
    return 0;
  }

  // sweep
  const entdist::RunConfig cfg = build_config(args);
  const entdist::SweepResult result =
      entdist::sweep(cfg, sweep_param, parse_values(sweep_values));
  if (args.format != "csv")
    throw entdist::config_error("sweep output supports --format csv only");
  const std::string csv = entdist::to_csv(result, cfg.outputs.metrics);
  if (args.out_dir.empty()) {
    std::cout << csv;
    if (!std::cout) throw std::ios_base::failure("write to stdout failed");
  } else {
    entdist::write_file(args.out_dir, "sweep.csv", csv);
    std::cerr << "wrote sweep of " << result.values.size() << " values to " << args.out_dir
              << "/sweep.csv\n";
  }
  return 0;
}

void print_diagnostic(const char* kind, const std::string& message) {
  // One-line machine-readable diagnostic on stderr.
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += ' ';
      continue;
    }
    escaped += c;
  }
  std::cerr << "{\"error\":\"" << kind << "\",\"message\":\"" << escaped << "\"}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Figures of merit for channelized biphoton entanglement distribution"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string sweep_param, sweep_values;

  CLI::App* run_cmd = app.add_subcommand("run", "Per-channel report for one configuration");
  add_common_options(run_cmd, args);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Re-run the report across parameter values");
  add_common_options(sweep_cmd, args);
  sweep_cmd->add_option("--param", sweep_param, "Swept parameter name")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_diagnostic("usage", e.what());
    return 1;
  }

  try {
    return dispatch(app, args, sweep_param, sweep_values);
  } catch (const entdist::degenerate_error& e) {
    print_diagnostic("degenerate", e.what());
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    print_diagnostic("io", e.what());
    return 3;
  } catch (const std::ios_base::failure& e) {
    print_diagnostic("io", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_diagnostic("config", e.what());
    return 1;
  }
}
