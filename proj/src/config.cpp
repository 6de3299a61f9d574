#include "entdist/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entdist/errors.hpp"

namespace entdist {

using nlohmann::json;

MemoryMode memory_mode_from_string(const std::string& text) {
  if (text == "ideal") return MemoryMode::ideal;
  if (text == "narrowband") return MemoryMode::narrowband;
  if (text == "broadband") return MemoryMode::broadband;
  throw config_error("unknown memory mode '" + text + "' (expected ideal|narrowband|broadband)");
}

std::string to_string(MemoryMode mode) {
  switch (mode) {
    case MemoryMode::ideal: return "ideal";
    case MemoryMode::narrowband: return "narrowband";
    case MemoryMode::broadband: return "broadband";
  }
  return "ideal";
}

void RunConfig::validate() const {
  try {
    source.validate();
    plan.validate();
    grid.validate();
    budget.validate();
    if (memory_mode != MemoryMode::ideal) {
      memory.validate();
      if (!(compressed_bandwidth > 0.0))
        throw std::domain_error("compressed bandwidth must be > 0");
      if (memory_mode == MemoryMode::broadband && compressed_bandwidth > plan.delta_B)
        throw std::domain_error("compressed bandwidth must not exceed the channel bandwidth");
    }
  } catch (const std::domain_error& e) {
    throw config_error(e.what());
  }
  if (outputs.guard_stride < 1) throw config_error("guard_stride must be >= 1");
  if (!outputs.all_channels)
    for (int n : outputs.channels)
      if (!plan.in_range(n))
        throw config_error("channel " + std::to_string(n) + " outside plan range +-" +
                           std::to_string(plan.max_index()));
}

std::vector<int> RunConfig::selected_channels() const {
  std::set<int> pool;
  if (outputs.all_channels) {
    for (int n = -plan.max_index(); n <= plan.max_index(); ++n) pool.insert(n);
  } else {
    pool.insert(outputs.channels.begin(), outputs.channels.end());
  }
  std::vector<int> out;
  for (int n : pool)
    if (n % outputs.guard_stride == 0) out.push_back(n);
  return out;
}

namespace {

// Illustrative single-sided cavity parameters for the narrowband/broadband
// memory modes (field rates, rad/s).  No published reference values exist
// for this stage; these defaults give a well-conditioned push-pull point and
// are meant to be overridden from the config file.
MemoryParams default_memory_params() {
  MemoryParams m;
  m.gamma = two_pi * 100e6;
  m.kappa = two_pi * 5e9;
  m.kappa_J = two_pi * 0.5e9;
  m.Delta_12 = two_pi * 46e9;
  m.g = 0.0;  // resolved from cooperativity_pi unless set explicitly
  m.T = 0.0;
  return m;
}

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end())
      throw config_error("unknown key '" + item.key() + "' in section '" + section + "'");
  }
}

double require_number(const json& j, const std::string& section, const char* key) {
  if (!j.contains(key))
    throw config_error("missing key '" + std::string(key) + "' in section '" + section + "'");
  if (!j[key].is_number())
    throw config_error("key '" + std::string(key) + "' in section '" + section + "' must be a number");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& section, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw config_error("key '" + std::string(key) + "' in section '" + section + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

RunConfig preset(const std::string& name) {
  RunConfig c;
  if (name == "case1")
    c.source.sigma_P = 160e-12;
  else if (name == "case2")
    c.source.sigma_P = 16e-12;
  else
    throw config_error("unknown preset '" + name + "' (expected case1 or case2)");
  c.source.omega_PM = two_pi * 6.37e12;
  c.plan = ChannelPlan{25e9, 30e9, 81};
  c.memory = default_memory_params();
  return c;
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be a JSON object");
  check_keys(j, "root", {"preset", "source", "plan", "grid", "memory", "budget", "outputs"});

  RunConfig c;
  c.memory = default_memory_params();
  bool have_source = false;
  bool have_plan = false;

  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw config_error("'preset' must be a string");
    c = preset(j["preset"].get<std::string>());
    have_source = have_plan = true;
  }

  if (j.contains("source")) {
    const json& s = j["source"];
    check_keys(s, "source", {"pump_duration_s", "phase_matching_bandwidth_hz"});
    c.source.sigma_P = require_number(s, "source", "pump_duration_s");
    c.source.omega_PM = two_pi * require_number(s, "source", "phase_matching_bandwidth_hz");
    have_source = true;
  }
  if (j.contains("plan")) {
    const json& p = j["plan"];
    check_keys(p, "plan", {"channel_bandwidth_hz", "channel_spacing_hz", "channel_count"});
    c.plan.delta_B = require_number(p, "plan", "channel_bandwidth_hz");
    c.plan.Delta_B = require_number(p, "plan", "channel_spacing_hz");
    const double n = require_number(p, "plan", "channel_count");
    if (n != std::floor(n)) throw config_error("channel_count must be an integer");
    c.plan.N = static_cast<int>(n);
    have_plan = true;
  }
  if (!have_source) throw config_error("missing section 'source' (or a 'preset')");
  if (!have_plan) throw config_error("missing section 'plan' (or a 'preset')");

  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid", {"points_per_channel", "k_sigma", "svd_cutoff"});
    const double ppc = number_or(g, "grid", "points_per_channel", c.grid.points_per_channel);
    if (ppc != std::floor(ppc)) throw config_error("points_per_channel must be an integer");
    c.grid.points_per_channel = static_cast<int>(ppc);
    c.grid.k_sigma = number_or(g, "grid", "k_sigma", c.grid.k_sigma);
    c.grid.svd_cutoff = number_or(g, "grid", "svd_cutoff", c.grid.svd_cutoff);
  }

  if (j.contains("memory")) {
    const json& m = j["memory"];
    check_keys(m, "memory",
               {"mode", "gamma_rad_s", "kappa_rad_s", "kappa_j_rad_s", "g_rad_s",
                "delta_12_rad_s", "time_delay_s", "compressed_bandwidth_hz"});
    if (m.contains("mode")) {
      if (!m["mode"].is_string()) throw config_error("'memory.mode' must be a string");
      c.memory_mode = memory_mode_from_string(m["mode"].get<std::string>());
    }
    c.memory.gamma = number_or(m, "memory", "gamma_rad_s", c.memory.gamma);
    c.memory.kappa = number_or(m, "memory", "kappa_rad_s", c.memory.kappa);
    c.memory.kappa_J = number_or(m, "memory", "kappa_j_rad_s", c.memory.kappa_J);
    c.memory.Delta_12 = number_or(m, "memory", "delta_12_rad_s", c.memory.Delta_12);
    c.memory.T = number_or(m, "memory", "time_delay_s", c.memory.T);
    c.compressed_bandwidth =
        number_or(m, "memory", "compressed_bandwidth_hz", c.compressed_bandwidth);
    if (m.contains("g_rad_s")) {
      if (m["g_rad_s"].is_string() && m["g_rad_s"].get<std::string>() == "auto") {
        c.memory_g_auto = true;
      } else if (m["g_rad_s"].is_number()) {
        c.memory.g = m["g_rad_s"].get<double>();
        c.memory_g_auto = false;
      } else {
        throw config_error("'memory.g_rad_s' must be a number or \"auto\"");
      }
    }
  }

  if (j.contains("budget")) {
    const json& b = j["budget"];
    check_keys(b, "budget", {"eta_qtx", "eta_prop", "eta_qrx", "pairs_per_pulse"});
    c.budget.eta_qtx = number_or(b, "budget", "eta_qtx", c.budget.eta_qtx);
    c.budget.eta_prop = number_or(b, "budget", "eta_prop", c.budget.eta_prop);
    c.budget.eta_qrx = number_or(b, "budget", "eta_qrx", c.budget.eta_qrx);
    c.budget.E_Np = number_or(b, "budget", "pairs_per_pulse", c.budget.E_Np);
  }

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, "outputs", {"channels", "guard_stride", "metrics"});
    if (o.contains("channels")) {
      const json& ch = o["channels"];
      if (ch.is_string()) {
        const std::string text = ch.get<std::string>();
        if (text == "all") {
          c.outputs.all_channels = true;
        } else {
          c.outputs.channels = parse_channel_range(text);
          c.outputs.all_channels = false;
        }
      } else if (ch.is_array()) {
        c.outputs.all_channels = false;
        c.outputs.channels.clear();
        for (const auto& e : ch) {
          if (!e.is_number_integer()) throw config_error("'outputs.channels' must hold integers");
          c.outputs.channels.push_back(e.get<int>());
        }
      } else {
        throw config_error("'outputs.channels' must be \"all\", \"a..b\", or an integer array");
      }
    }
    const double stride = number_or(o, "outputs", "guard_stride", c.outputs.guard_stride);
    if (stride != std::floor(stride)) throw config_error("guard_stride must be an integer");
    c.outputs.guard_stride = static_cast<int>(stride);
    if (o.contains("metrics")) {
      if (!o["metrics"].is_array()) throw config_error("'outputs.metrics' must be an array");
      c.outputs.metrics.clear();
      for (const auto& e : o["metrics"]) {
        if (!e.is_string()) throw config_error("'outputs.metrics' must hold strings");
        c.outputs.metrics.push_back(e.get<std::string>());
      }
    }
  }

  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("cannot read config file '" + path + "'");
  return config_from_json_text(buf.str());
}

std::vector<int> parse_channel_range(const std::string& text) {
  const auto parse_int = [&](const std::string& token) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(token, &pos);
    } catch (const std::exception&) {
      throw config_error("bad channel token '" + token + "' in '" + text + "'");
    }
    if (pos != token.size()) throw config_error("bad channel token '" + token + "' in '" + text + "'");
    return value;
  };

  const std::size_t sep = text.find("..");
  if (sep == std::string::npos) return {parse_int(text)};
  const int a = parse_int(text.substr(0, sep));
  const int b = parse_int(text.substr(sep + 2));
  if (b < a) throw config_error("empty channel range '" + text + "'");
  std::vector<int> out;
  for (int n = a; n <= b; ++n) out.push_back(n);
  return out;
}

RunConfig apply_parameter(const RunConfig& base, const std::string& name, double value) {
  RunConfig c = base;
  if (name == "sigma_P") {
    c.source.sigma_P = value;
  } else if (name == "delta_B") {
    c.plan.delta_B = value;
  } else if (name == "Delta_B") {
    c.plan.Delta_B = value;
  } else if (name == "guard_stride") {
    if (value != std::floor(value) || value < 1.0)
      throw config_error("guard_stride sweep values must be integers >= 1");
    c.outputs.guard_stride = static_cast<int>(value);
  } else if (name == "gamma") {
    c.memory.gamma = value;
  } else if (name == "kappa") {
    c.memory.kappa = value;
  } else if (name == "kappa_J") {
    c.memory.kappa_J = value;
  } else if (name == "g") {
    c.memory.g = value;
    c.memory_g_auto = false;
  } else if (name == "Delta_12") {
    c.memory.Delta_12 = value;
  } else if (name == "T") {
    c.memory.T = value;
  } else if (name == "delta_B_tilde") {
    c.compressed_bandwidth = value;
  } else {
    throw config_error("unknown sweep parameter '" + name + "'");
  }
  c.validate();
  return c;
}

}  // namespace entdist
