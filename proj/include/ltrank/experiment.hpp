#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltrank/centrality.hpp"
#include "ltrank/config.hpp"
#include "ltrank/diffusion.hpp"
#include "ltrank/format.hpp"
#include "ltrank/graph.hpp"
#include "ltrank/partition.hpp"
#include "ltrank/stats.hpp"
#include "ltrank/svg.hpp"
#include "ltrank/voting.hpp"

namespace ltrank {

inline std::string threshold_tag(const ThresholdSpec& spec) {
  return spec.is_fixed() ? "theta" + format_double(spec.theta) : "random";
}

inline std::string threshold_kind_name(const ThresholdSpec& spec) {
  return spec.is_fixed() ? "fixed" : "random";
}

inline std::string theta_or_seed(const ThresholdSpec& spec) {
  return spec.is_fixed() ? format_double(spec.theta)
                         : std::to_string(spec.master_seed);
}

struct ThresholdOutcome {
  ThresholdSpec spec;
  std::string tag;
  std::vector<SweepTable> by_measure;  // aligned with the measure list
};

struct NetworkRun {
  NetworkEntry entry;
  std::size_t loaded_nodes = 0;  // before LCC restriction
  NetworkStats stats;
  std::uint64_t fingerprint = 0;
  std::string partition_source;
  std::vector<ThresholdOutcome> thresholds;
};

/// One threshold's ballot profile grouped for the elections: cells sorted by
/// network name, fractions ascending, candidate means aligned with
/// `candidates`.
struct VotingInput {
  std::string tag;
  std::vector<Measure> candidates;
  std::vector<std::pair<std::string,
                        std::vector<std::pair<double, std::vector<double>>>>>
      cells;
};

struct ThresholdElections {
  std::string tag;
  std::vector<Measure> candidates;
  std::vector<std::pair<std::string, SchulzeResult>> per_network;
  SchulzeResult global;
  std::vector<Ballot> ballots;
};

/// Runs one election per network (voters: fractions) and one pooled election
/// (voters: network x fraction). Every cell must provide every candidate.
inline ThresholdElections run_elections(const VotingInput& in) {
  ThresholdElections out;
  out.tag = in.tag;
  out.candidates = in.candidates;
  const int n_cand = static_cast<int>(in.candidates.size());
  for (const auto& [network, fractions] : in.cells) {
    std::vector<Ballot> network_ballots;
    for (const auto& [fraction, means] : fractions) {
      if (static_cast<int>(means.size()) != n_cand)
        throw std::runtime_error("ballot cell (" + in.tag + ", " + network +
                                 ", f=" + format_double(fraction) +
                                 ") is missing a measure");
      network_ballots.push_back(
          ballot_from_scores(network + "@f=" + format_double(fraction), means));
    }
    if (network_ballots.empty())
      throw std::runtime_error("no ballots for network " + network);
    auto margins = margin_matrix(network_ballots);
    out.per_network.emplace_back(
        network, schulze_order(strongest_paths(margins), n_cand));
    out.ballots.insert(out.ballots.end(), network_ballots.begin(),
                       network_ballots.end());
  }
  if (out.ballots.empty()) throw std::runtime_error("election has no ballots");
  auto margins = margin_matrix(out.ballots);
  out.global = schulze_order(strongest_paths(margins), n_cand);
  return out;
}

struct ExperimentResult {
  std::filesystem::path dir;
  std::vector<std::string> files;  // relative paths, in write order
  std::vector<NetworkRun> networks;
  std::vector<ThresholdElections> elections;
  std::vector<Measure> measures;
};

namespace expdetail {

inline void write_file(const std::filesystem::path& dir,
                       const std::string& rel, const std::string& content,
                       std::vector<std::string>& files) {
  const auto path = dir / rel;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  files.push_back(rel);
}

inline std::string ballot_string(const Ballot& ballot,
                                 const std::vector<Measure>& candidates) {
  std::vector<int> by_tier(candidates.size());
  std::iota(by_tier.begin(), by_tier.end(), 0);
  std::sort(by_tier.begin(), by_tier.end(), [&](int a, int b) {
    if (ballot.tier[a] != ballot.tier[b]) return ballot.tier[a] < ballot.tier[b];
    return a < b;
  });
  std::string s;
  for (std::size_t i = 0; i < by_tier.size(); ++i) {
    if (i > 0)
      s += ballot.tier[by_tier[i]] == ballot.tier[by_tier[i - 1]] ? "=" : ">";
    s += std::string(measure_name(candidates[by_tier[i]]));
  }
  return s;
}

/// Ballot, election, consensus CSVs and the rank boxplot for one threshold.
inline void write_election_outputs(const std::filesystem::path& dir,
                                   const VotingInput& input,
                                   const ThresholdElections& elections,
                                   std::vector<std::string>& files) {
  std::string ballots = "threshold,network,fraction,ballot\n";
  std::size_t b = 0;
  for (const auto& [network, fractions] : input.cells)
    for (const auto& [fraction, means] : fractions)
      ballots += input.tag + "," + network + "," + format_double(fraction) +
                 "," + ballot_string(elections.ballots[b++], input.candidates) +
                 "\n";
  write_file(dir, "ballots_" + input.tag + ".csv", ballots, files);

  std::string rows = "threshold,network,measure,schulze_rank,beat_count\n";
  for (const auto& [network, result] : elections.per_network)
    for (int pos = 0; pos < static_cast<int>(input.candidates.size()); ++pos) {
      const int cand = result.order[pos];
      rows += input.tag + "," + network + "," +
              std::string(measure_name(input.candidates[cand])) + "," +
              std::to_string(pos + 1) + "," +
              std::to_string(result.beat_count[cand]) + "\n";
    }
  write_file(dir, "elections_" + input.tag + ".csv", rows, files);

  std::string consensus = "threshold,measure,schulze_rank,beat_count\n";
  for (int pos = 0; pos < static_cast<int>(input.candidates.size()); ++pos) {
    const int cand = elections.global.order[pos];
    consensus += input.tag + "," +
                 std::string(measure_name(input.candidates[cand])) + "," +
                 std::to_string(pos + 1) + "," +
                 std::to_string(elections.global.beat_count[cand]) + "\n";
  }
  write_file(dir, "consensus_" + input.tag + ".csv", consensus, files);

  std::vector<std::pair<std::string, BoxStats>> boxes;
  for (std::size_t c = 0; c < input.candidates.size(); ++c) {
    std::vector<double> ranks;
    for (const auto& [network, result] : elections.per_network)
      ranks.push_back(result.rank[c]);
    boxes.emplace_back(std::string(measure_name(input.candidates[c])),
                       box_stats(std::move(ranks)));
  }
  const double top = static_cast<double>(input.candidates.size()) + 0.5;
  write_file(dir, "ranks_" + input.tag + ".svg",
             render_boxplot_svg("Schulze ranks per network, " + input.tag,
                                boxes, 0.5, top, "Schulze rank (1 = best)"),
             files);
}

}  // namespace expdetail

/// End-to-end pipeline: load + LCC + stats, partitions, the centrality
/// rankings, LT sweeps per threshold, Schulze elections, and a reproducible
/// on-disk bundle. Re-running with the same config and seed rewrites the
/// byte-identical bundle, for any worker count.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       unsigned workers = 1) {
  namespace fs = std::filesystem;
  cfg.validate();
  if (workers < 1) workers = 1;

  std::vector<Measure> measures = cfg.measures;
  std::sort(measures.begin(), measures.end());
  measures.erase(std::unique(measures.begin(), measures.end()), measures.end());

  // Every referenced file must be readable before any output is produced.
  for (const auto& net : cfg.networks) {
    for (const std::string& path : {net.edges_path, net.partition_path}) {
      if (path.empty()) continue;
      std::ifstream probe(path);
      if (!probe)
        throw std::runtime_error("network '" + net.name + "': cannot read " + path);
    }
  }

  ExperimentResult result;
  result.dir = fs::path(cfg.output_dir);
  result.measures = measures;
  fs::create_directories(result.dir);
  const auto specs = cfg.threshold_specs();
  const auto fractions = cfg.fraction_grid();

  for (const auto& net : cfg.networks) {
    NetworkRun run;
    run.entry = net;

    std::ifstream edges(net.edges_path);
    LoadedGraph loaded = load_edge_list(edges);
    run.loaded_nodes = loaded.graph.num_nodes();
    auto lcc = largest_connected_component_with_map(loaded.graph);
    const Graph& g = lcc.graph;
    const LabelMap labels = restrict_labels(loaded.labels, lcc.kept);

    if (auto it = cfg.expected.find(net.name); it != cfg.expected.end()) {
      const auto check = [&](const char* what, std::size_t got, std::size_t want) {
        const double rel = std::abs(static_cast<double>(got) -
                                    static_cast<double>(want)) /
                           static_cast<double>(want);
        if (rel > cfg.expected_tolerance)
          throw std::runtime_error(
              "network '" + net.name + "': " + what + " after LCC is " +
              std::to_string(got) + ", expected " + std::to_string(want) +
              " (±" + format_double(cfg.expected_tolerance * 100) +
              "%): the dataset file likely comes from a different version");
      };
      check("node count", g.num_nodes(), it->second.n_nodes);
      check("edge count", g.num_edges(), it->second.n_edges);
    }

    Partition partition;
    std::string lp_partition_text;
    if (!net.partition_path.empty()) {
      std::ifstream pin(net.partition_path);
      partition = load_partition(pin, labels);
      run.partition_source = "file:" + net.partition_path;
    } else {
      partition = detect_label_propagation(g, cfg.lp_seed);
      run.partition_source =
          "label-propagation(seed=" + std::to_string(cfg.lp_seed) + ")";
      lp_partition_text = "# generated by label propagation, seed=" +
                          std::to_string(cfg.lp_seed) + "\n";
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        lp_partition_text +=
            labels.label_of(v) + " " + std::to_string(partition.of(v)) + "\n";
    }
    run.fingerprint = partition_fingerprint(partition);
    const LinkCensus census = link_census(g, partition);
    run.stats = network_stats(g, workers);

    std::string labels_csv = "label,index\n";
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      labels_csv += labels.label_of(v) + "," + std::to_string(v) + "\n";
    expdetail::write_file(result.dir, net.name + "/labels.csv", labels_csv,
                          result.files);
    if (!lp_partition_text.empty())
      expdetail::write_file(result.dir, net.name + "/partition.txt",
                            lp_partition_text, result.files);

    std::vector<Ranking> rankings;
    for (Measure m : measures) {
      CentralityScores scores;
      try {
        scores = compute_centrality(m, g, partition, census, cfg.params);
      } catch (const std::exception& e) {
        throw std::runtime_error("network '" + net.name + "', measure " +
                                 std::string(measure_name(m)) + ": " + e.what());
      }
      Ranking ranking = rank(scores);
      std::string csv;
      csv += "# network=" + net.name + "\n";
      csv += "# measure=" + std::string(measure_name(m)) + "\n";
      csv += "# comm_r=" + format_double(cfg.params.comm_r) + "\n";
      csv += "# ksc_delta=" + format_double(cfg.params.ksc_delta) + "\n";
      csv += "# partition_fingerprint=" + fingerprint_hex(run.fingerprint) + "\n";
      csv += "node_label,measure,score,rank\n";
      std::vector<std::size_t> position(g.num_nodes());
      for (std::size_t i = 0; i < ranking.order.size(); ++i)
        position[ranking.order[i]] = i + 1;
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        csv += labels.label_of(v) + "," + std::string(measure_name(m)) + "," +
               format_double(scores.values[v]) + "," +
               std::to_string(position[v]) + "\n";
      expdetail::write_file(result.dir,
                            net.name + "/scores_" +
                                std::string(measure_name(m)) + ".csv",
                            csv, result.files);
      rankings.push_back(std::move(ranking));
    }

    for (const auto& spec : specs) {
      ThresholdOutcome outcome{spec, threshold_tag(spec), {}};
      std::string csv =
          "network,measure,threshold_kind,theta_or_seed,fraction,"
          "mean_activation,std_activation,seed_count,runs,mean_final_active\n";
      std::vector<CurveSeries> series;
      for (std::size_t mi = 0; mi < measures.size(); ++mi) {
        const Measure m = measures[mi];
        const std::uint64_t salt =
            mix_seed({fnv1a64(net.name), static_cast<std::uint64_t>(m)});
        SweepTable table;
        try {
          table = lt_sweep(g, rankings[mi], fractions, spec, cfg.runs, salt,
                           workers);
        } catch (const std::exception& e) {
          throw std::runtime_error("sweep cell (network=" + net.name +
                                   ", measure=" +
                                   std::string(measure_name(m)) +
                                   ", threshold=" + outcome.tag + "): " +
                                   e.what());
        }
        CurveSeries sr{std::string(measure_name(m)), static_cast<int>(m),
                       {}, {}, {}};
        for (const SweepRow& row : table.rows) {
          csv += net.name + "," + std::string(measure_name(m)) + "," +
                 threshold_kind_name(spec) + "," + theta_or_seed(spec) + "," +
                 format_double(row.fraction) + "," +
                 format_double(row.mean_activation) + "," +
                 format_double(row.std_activation) + "," +
                 std::to_string(row.seed_count) + "," +
                 std::to_string(row.runs) + "," +
                 format_double(row.mean_final_active) + "\n";
          sr.x.push_back(row.fraction);
          sr.y.push_back(row.mean_activation);
          if (!spec.is_fixed()) sr.band.push_back(row.std_activation);
        }
        series.push_back(std::move(sr));
        outcome.by_measure.push_back(std::move(table));
      }
      expdetail::write_file(result.dir, net.name + "/sweep_" + outcome.tag + ".csv",
                            csv, result.files);
      expdetail::write_file(
          result.dir, net.name + "/curves_" + outcome.tag + ".svg",
          render_curves_svg(net.name + ", " + outcome.tag, series,
                            cfg.fraction_max),
          result.files);
      run.thresholds.push_back(std::move(outcome));
    }
    result.networks.push_back(std::move(run));
  }

  std::string stats_csv =
      "network,n_nodes,n_edges,avg_degree,avg_distance,density,transitivity,"
      "assortativity\n";
  for (const NetworkRun& run : result.networks) {
    const NetworkStats& s = run.stats;
    stats_csv += run.entry.name + "," + std::to_string(s.n_nodes) + "," +
                 std::to_string(s.n_edges) + "," + format_double(s.avg_degree) +
                 "," + format_double(s.avg_distance) + "," +
                 format_double(s.density) + "," + format_double(s.transitivity) +
                 "," + format_double(s.assortativity) + "\n";
  }
  expdetail::write_file(result.dir, "stats.csv", stats_csv, result.files);

  // Elections per threshold: cells sorted by network name, fractions ascending.
  for (std::size_t si = 0; si < specs.size(); ++si) {
    VotingInput input;
    input.tag = threshold_tag(specs[si]);
    input.candidates = measures;
    std::vector<const NetworkRun*> by_name;
    for (const NetworkRun& run : result.networks) by_name.push_back(&run);
    std::sort(by_name.begin(), by_name.end(), [](auto* a, auto* b) {
      return a->entry.name < b->entry.name;
    });
    for (const NetworkRun* run : by_name) {
      std::vector<std::pair<double, std::vector<double>>> cells;
      const ThresholdOutcome& outcome = run->thresholds[si];
      for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
        std::vector<double> means;
        for (std::size_t mi = 0; mi < measures.size(); ++mi)
          means.push_back(outcome.by_measure[mi].rows[fi].mean_activation);
        cells.emplace_back(fractions[fi], std::move(means));
      }
      input.cells.emplace_back(run->entry.name, std::move(cells));
    }
    ThresholdElections elections = run_elections(input);
    expdetail::write_election_outputs(result.dir, input, elections, result.files);
    result.elections.push_back(std::move(elections));
  }

  // Machine-readable run description; key order is sorted, hence stable.
  nlohmann::json meta;
  meta["format"] = "ltrank-bundle-v1";
  meta["master_seed"] = cfg.master_seed;
  meta["runs_random"] = cfg.runs;
  meta["comm_r"] = cfg.params.comm_r;
  meta["ksc_delta"] = cfg.params.ksc_delta;
  meta["seed_rounding"] = "half-up";
  meta["fractions"] = fractions;
  {
    std::vector<std::string> names;
    for (Measure m : measures) names.emplace_back(measure_name(m));
    meta["measures"] = names;
  }
  {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& spec : specs) {
      nlohmann::json one;
      one["kind"] = threshold_kind_name(spec);
      if (spec.is_fixed())
        one["theta"] = spec.theta;
      else
        one["master_seed"] = spec.master_seed;
      one["tag"] = threshold_tag(spec);
      t.push_back(one);
    }
    meta["thresholds"] = t;
  }
  {
    nlohmann::json nets = nlohmann::json::array();
    for (const NetworkRun& run : result.networks) {
      nlohmann::json one;
      one["name"] = run.entry.name;
      one["edges_path"] = run.entry.edges_path;
      one["nodes_loaded"] = run.loaded_nodes;
      one["n_nodes"] = run.stats.n_nodes;
      one["n_edges"] = run.stats.n_edges;
      one["partition_source"] = run.partition_source;
      one["partition_fingerprint"] = fingerprint_hex(run.fingerprint);
      nets.push_back(one);
    }
    meta["networks"] = nets;
  }
  expdetail::write_file(result.dir, "metadata.json", meta.dump(2) + "\n",
                        result.files);
  return result;
}

/// Rebuilds ballots and elections from the sweep CSVs of an existing bundle
/// and writes election outputs next to them (or into `out_dir`). Produces the
/// same bytes as the original run.
inline std::vector<std::string> rank_from_sweep_dir(
    const std::filesystem::path& dir, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> sweep_files;
  if (!fs::exists(dir))
    throw std::runtime_error("no such directory: " + dir.string());
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.starts_with("sweep_") && name.ends_with(".csv"))
      sweep_files.push_back(entry.path());
  }
  if (sweep_files.empty())
    throw std::runtime_error("no sweep_*.csv files under " + dir.string());
  std::sort(sweep_files.begin(), sweep_files.end());

  // tag -> network -> fraction -> measure -> mean activation
  std::map<std::string,
           std::map<std::string, std::map<double, std::map<Measure, double>>>>
      cells;
  for (const fs::path& path : sweep_files) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line_no == 1 || trim(line).empty()) continue;  // header
      const auto f = split(trim(line), ',');
      if (f.size() < 10)
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": malformed sweep row");
      const std::string network{f[0]};
      const auto measure = parse_measure(f[1]);
      if (!measure)
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": unknown measure '" + std::string(f[1]) + "'");
      const std::string tag = f[2] == "fixed"
                                  ? "theta" + std::string(f[3])
                                  : std::string(f[2]);
      auto& cell = cells[tag][network][parse_double(f[4])];
      if (!cell.emplace(*measure, parse_double(f[5])).second)
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": duplicate sweep row for cell (" + tag +
                                 ", " + network + ", f=" + std::string(f[4]) +
                                 ", " + std::string(f[1]) + ")");
    }
  }

  std::vector<std::string> files;
  for (const auto& [tag, networks] : cells) {
    std::set<Measure> universe;
    for (const auto& [network, fractions] : networks)
      for (const auto& [fraction, means] : fractions)
        for (const auto& [m, v] : means) universe.insert(m);

    VotingInput input;
    input.tag = tag;
    input.candidates.assign(universe.begin(), universe.end());
    for (const auto& [network, fractions] : networks) {
      std::vector<std::pair<double, std::vector<double>>> network_cells;
      for (const auto& [fraction, means] : fractions) {
        std::vector<double> row;
        for (Measure m : input.candidates) {
          auto it = means.find(m);
          if (it == means.end())
            throw std::runtime_error(
                "cell (" + tag + ", " + network + ", f=" +
                format_double(fraction) + ") is missing measure " +
                std::string(measure_name(m)));
          row.push_back(it->second);
        }
        network_cells.emplace_back(fraction, std::move(row));
      }
      input.cells.emplace_back(network, std::move(network_cells));
    }
    ThresholdElections elections = run_elections(input);
    fs::create_directories(out_dir);
    expdetail::write_election_outputs(out_dir, input, elections, files);
  }
  return files;
}

}  // namespace ltrank
