#include "entdist/emit.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "entdist/errors.hpp"

namespace entdist {

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 12);
  return std::string(buf, res.ptr);
}

namespace {

struct Column {
  const char* name;
  std::function<double(const ChannelReport&)> get;
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"pr_herald", [](const ChannelReport& r) { return r.pr_herald; }},
      {"efficiency", [](const ChannelReport& r) { return r.efficiency; }},
      {"pr_joint", [](const ChannelReport& r) { return r.pr_joint; }},
      {"purity_single", [](const ChannelReport& r) { return r.purity_single; }},
      {"pr_bsm_herald", [](const ChannelReport& r) { return r.pr_bsm_herald; }},
      {"bsm_efficiency", [](const ChannelReport& r) { return r.bsm_efficiency; }},
      {"bsm_purity", [](const ChannelReport& r) { return r.bsm_purity; }},
      {"pr_c", [](const ChannelReport& r) { return r.pr_c; }},
      {"pr_e", [](const ChannelReport& r) { return r.pr_e; }},
      {"fidelity_a", [](const ChannelReport& r) { return r.fidelity_a; }},
      {"fidelity_b", [](const ChannelReport& r) { return r.fidelity_b; }},
      {"eta_cavity", [](const ChannelReport& r) { return r.eta_cavity; }},
      {"rate", [](const ChannelReport& r) { return r.rate; }},
      {"chi_1", [](const ChannelReport& r) { return r.chi[0]; }},
      {"chi_2", [](const ChannelReport& r) { return r.chi[1]; }},
      {"chi_3", [](const ChannelReport& r) { return r.chi[2]; }},
  };
  return cols;
}

std::vector<const Column*> select_columns(const std::vector<std::string>& metrics) {
  std::vector<const Column*> out;
  if (metrics.empty()) {
    for (const Column& c : columns()) out.push_back(&c);
    return out;
  }
  for (const std::string& name : metrics) {
    const Column* found = nullptr;
    for (const Column& c : columns())
      if (name == c.name) found = &c;
    if (!found) throw config_error("unknown metric '" + name + "'");
    out.push_back(found);
  }
  return out;
}

void append_row(std::string& out, const ChannelReport& row,
                const std::vector<const Column*>& cols) {
  out += std::to_string(row.n);
  for (const Column* c : cols) {
    out += ',';
    out += format_number(c->get(row));
  }
}

}  // namespace

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Column& c : columns()) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

std::string to_csv(const RunResult& result, const std::vector<std::string>& metrics,
                   const GridDriftReport* drift) {
  const std::vector<const Column*> cols = select_columns(metrics);

  std::string out = "n";
  for (const Column* c : cols) {
    out += ',';
    out += c->name;
  }
  if (drift) out += ",grid_warn";
  out += '\n';

  for (const ChannelReport& row : result.rows) {
    append_row(out, row, cols);
    if (drift) out += drift->flagged_channel(row.n) ? ",1" : ",0";
    out += '\n';
  }

  out += "total_rate," + format_number(result.total_rate) + '\n';
  out += "two_pair_probability," + format_number(result.two_pair_prob) + '\n';
  return out;
}

std::string to_csv(const SweepResult& result, const std::vector<std::string>& metrics) {
  const std::vector<const Column*> cols = select_columns(metrics);

  std::string out = result.parameter + ",n";
  for (const Column* c : cols) {
    out += ',';
    out += c->name;
  }
  out += '\n';

  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const std::string value = format_number(result.values[i]);
    for (const ChannelReport& row : result.runs[i].rows) {
      out += value;
      out += ',';
      append_row(out, row, cols);
      out += '\n';
    }
  }
  return out;
}

std::vector<PlotFile> to_plotdata(const RunResult& result) {
  struct Figure {
    const char* filename;
    const char* header;
    std::function<std::string(const ChannelReport&)> fields;
  };
  const auto single = [](double (*get)(const ChannelReport&)) {
    return [get](const ChannelReport& r) { return format_number(get(r)); };
  };
  const std::vector<Figure> figures = {
      {"fig6_heralding.csv", "n,pr_herald", single([](const ChannelReport& r) { return r.pr_herald; })},
      {"fig7_efficiency.csv", "n,efficiency", single([](const ChannelReport& r) { return r.efficiency; })},
      {"fig8_purity.csv", "n,purity_single", single([](const ChannelReport& r) { return r.purity_single; })},
      {"fig9_bsm_heralding.csv", "n,pr_bsm_herald", single([](const ChannelReport& r) { return r.pr_bsm_herald; })},
      {"fig10_bsm_efficiency.csv", "n,bsm_efficiency", single([](const ChannelReport& r) { return r.bsm_efficiency; })},
      {"fig11_bsm_purity.csv", "n,bsm_purity", single([](const ChannelReport& r) { return r.bsm_purity; })},
      {"fig12_bsm_error.csv", "n,pr_e", single([](const ChannelReport& r) { return r.pr_e; })},
      {"fig13_memory_fidelity.csv", "n,loading_fidelity",
       single([](const ChannelReport& r) { return 0.5 * (r.fidelity_a + r.fidelity_b); })},
      {"fig14_rate.csv", "n,rate", single([](const ChannelReport& r) { return r.rate; })},
      {"fig17_chi.csv", "n,chi_1,chi_2,chi_3",
       [](const ChannelReport& r) {
         return format_number(r.chi[0]) + ',' + format_number(r.chi[1]) + ',' +
                format_number(r.chi[2]);
       }},
  };

  std::vector<PlotFile> files;
  files.reserve(figures.size());
  for (const Figure& fig : figures) {
    std::string contents = std::string(fig.header) + '\n';
    for (const ChannelReport& row : result.rows)
      contents += std::to_string(row.n) + ',' + fig.fields(row) + '\n';
    files.push_back({fig.filename, std::move(contents)});
  }
  return files;
}

void write_file(const std::string& directory, const std::string& filename,
                const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  fs::create_directories(dir);  // throws fs::filesystem_error on failure
  const fs::path path = dir / filename;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

}  // namespace entdist
