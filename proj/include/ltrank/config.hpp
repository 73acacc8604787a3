#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltrank/centrality.hpp"
#include "ltrank/diffusion.hpp"
#include "ltrank/format.hpp"

namespace ltrank {

struct NetworkEntry {
  std::string name;
  std::string edges_path;
  std::string partition_path;  // empty: fall back to label propagation
};

/// Expected post-LCC size, checked within a relative tolerance so dataset
/// version drift fails loudly instead of skewing results.
struct ExpectedStats {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
};

struct ExperimentConfig {
  std::vector<NetworkEntry> networks;
  std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<double> thresholds_fixed{0.4, 0.7};
  bool threshold_random = true;
  unsigned runs = 50;  // random-threshold repetitions
  std::uint64_t master_seed = 2024;
  MeasureParams params;
  std::string output_dir = "ltrank_out";
  bool allow_fallback_partition = false;
  std::uint64_t lp_seed = 1;
  std::map<std::string, ExpectedStats> expected;  // keyed by network name
  std::size_t fraction_count = 100;
  double fraction_max = 0.5;
  bool include_zero_fraction = false;
  double expected_tolerance = 0.02;

  std::vector<double> fraction_grid() const {
    std::vector<double> grid;
    if (include_zero_fraction) grid.push_back(0.0);
    for (std::size_t i = 1; i <= fraction_count; ++i)
      grid.push_back(fraction_max * static_cast<double>(i) /
                     static_cast<double>(fraction_count));
    return grid;
  }

  std::vector<ThresholdSpec> threshold_specs() const {
    std::vector<ThresholdSpec> specs;
    for (double t : thresholds_fixed) specs.push_back(ThresholdSpec::fixed(t));
    if (threshold_random)
      specs.push_back(ThresholdSpec::uniform_random(master_seed));
    return specs;
  }

  void validate() const {
    if (networks.empty()) throw std::runtime_error("config: no networks");
    if (measures.empty()) throw std::runtime_error("config: no measures");
    if (thresholds_fixed.empty() && !threshold_random)
      throw std::runtime_error("config: no thresholds");
    if (runs < 1) throw std::runtime_error("config: runs must be >= 1");
    if (fraction_count < 1) throw std::runtime_error("config: empty fraction grid");
    if (!(fraction_max > 0.0 && fraction_max <= 0.5))
      throw std::runtime_error("config: fraction_max must be in (0, 0.5]");
    if (!(params.comm_r > 0)) throw std::runtime_error("config: comm_r must be > 0");
    if (!(params.ksc_delta >= 0 && params.ksc_delta <= 1))
      throw std::runtime_error("config: ksc_delta must be in [0, 1]");
    for (double t : thresholds_fixed)
      if (!(t >= 0 && t <= 1))
        throw std::runtime_error("config: fixed threshold outside [0, 1]");
    for (std::size_t i = 0; i < thresholds_fixed.size(); ++i)
      for (std::size_t j = i + 1; j < thresholds_fixed.size(); ++j)
        if (thresholds_fixed[i] == thresholds_fixed[j])
          throw std::runtime_error("config: duplicate fixed threshold");
    for (std::size_t i = 0; i < networks.size(); ++i)
      for (std::size_t j = i + 1; j < networks.size(); ++j)
        if (networks[i].name == networks[j].name)
          throw std::runtime_error("config: duplicate network name '" +
                                   networks[i].name + "'");
    for (const auto& net : networks) {
      if (net.name.empty() || net.edges_path.empty())
        throw std::runtime_error("config: network entry missing name or path");
      for (char c : net.name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' &&
            c != '_' && c != '-')
          throw std::runtime_error("config: network name '" + net.name +
                                   "' must be [A-Za-z0-9._-]");
      if (net.partition_path.empty() && !allow_fallback_partition)
        throw std::runtime_error(
            "config: network '" + net.name +
            "' has no partition and allow_fallback_partition is false");
    }
  }
};

/// Flat `key = value` format; `#` starts a comment line; `network` and
/// `expect` keys repeat, all others overwrite. Documented in the README.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool measures_set = false, thresholds_set = false;
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error("config line " + std::to_string(line_no) + ": " + what);
  };
  auto words = [](const std::string& text) {
    std::istringstream ss(text);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
  };
  auto parse_bool = [&](const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw fail("expected true/false, got '" + v + "'");
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos) throw fail("expected `key = value`");
    const std::string key{trim(sv.substr(0, eq))};
    const std::string value{trim(sv.substr(eq + 1))};
    if (key.empty() || value.empty()) throw fail("empty key or value");

    if (key == "network") {
      auto w = words(value);
      if (w.size() < 2 || w.size() > 3)
        throw fail("network expects `name edges-path [partition-path]`");
      cfg.networks.push_back({w[0], w[1], w.size() == 3 ? w[2] : ""});
    } else if (key == "expect") {
      auto w = words(value);
      if (w.size() != 3) throw fail("expect expects `name n_nodes n_edges`");
      cfg.expected[w[0]] = {static_cast<std::size_t>(parse_u64(w[1])),
                            static_cast<std::size_t>(parse_u64(w[2]))};
    } else if (key == "measures") {
      cfg.measures.clear();
      measures_set = true;
      for (const auto& w : words(value)) {
        auto m = parse_measure(w);
        if (!m) throw fail("unknown measure '" + w + "'");
        cfg.measures.push_back(*m);
      }
    } else if (key == "thresholds") {
      cfg.thresholds_fixed.clear();
      cfg.threshold_random = false;
      thresholds_set = true;
      for (const auto& w : words(value)) {
        if (w == "random")
          cfg.threshold_random = true;
        else
          cfg.thresholds_fixed.push_back(parse_double(w));
      }
    } else if (key == "runs") {
      cfg.runs = static_cast<unsigned>(parse_u64(value));
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value);
    } else if (key == "lp_seed") {
      cfg.lp_seed = parse_u64(value);
    } else if (key == "comm_r") {
      cfg.params.comm_r = parse_double(value);
    } else if (key == "ksc_delta") {
      cfg.params.ksc_delta = parse_double(value);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "allow_fallback_partition") {
      cfg.allow_fallback_partition = parse_bool(value);
    } else if (key == "include_zero_fraction") {
      cfg.include_zero_fraction = parse_bool(value);
    } else if (key == "fraction_count") {
      cfg.fraction_count = static_cast<std::size_t>(parse_u64(value));
    } else if (key == "fraction_max") {
      cfg.fraction_max = parse_double(value);
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  (void)measures_set;
  (void)thresholds_set;
  cfg.validate();
  return cfg;
}

}  // namespace ltrank
