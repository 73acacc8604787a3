// ltrank command line: network statistics, community detection, community-aware
// centralities, linear-threshold simulation, experiment sweeps, and Schulze
// rank aggregation. LTRANK_WORKERS controls parallelism (results never depend
// on it).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ltrank/ltrank.hpp"

namespace {

using namespace ltrank;

struct LoadedNetwork {
  Graph graph;
  LabelMap labels;
  std::size_t nodes_before_lcc = 0;
};

LoadedNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read edge list: " + path);
  LoadedGraph loaded = load_edge_list(in);
  if (loaded.weight_column_seen)
    std::cerr << "warning: " << path
              << ": third column ignored (graphs are unweighted)\n";
  LoadedNetwork net;
  net.nodes_before_lcc = loaded.graph.num_nodes();
  auto lcc = largest_connected_component_with_map(loaded.graph);
  if (lcc.graph.num_nodes() != loaded.graph.num_nodes())
    std::cerr << "note: " << path << ": keeping largest connected component ("
              << lcc.graph.num_nodes() << " of " << loaded.graph.num_nodes()
              << " nodes)\n";
  net.labels = restrict_labels(loaded.labels, lcc.kept);
  net.graph = std::move(lcc.graph);
  return net;
}

Partition load_partition_file(const std::string& path, const LabelMap& labels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read partition: " + path);
  return load_partition(in, labels);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write: " + path);
  return file;
}

int run(int argc, char** argv) {
  CLI::App app{"community-aware centrality under the Linear Threshold model"};
  app.require_subcommand(1);

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand(
      "stats", "macroscopic statistics of a network's largest component");
  std::string stats_edges, stats_csv, stats_labels;
  stats_cmd->add_option("edgelist", stats_edges, "edge list file")->required();
  stats_cmd->add_option("--csv", stats_csv, "also write a one-row CSV");
  stats_cmd->add_option("--labels", stats_labels, "write the label,index map CSV");
  stats_cmd->callback([&] {
    LoadedNetwork net = load_network(stats_edges);
    NetworkStats s = network_stats(net.graph, worker_count_from_env());
    std::cout << "nodes          " << s.n_nodes << "\n"
              << "edges          " << s.n_edges << "\n"
              << "avg degree     " << format_double(s.avg_degree) << "\n"
              << "avg distance   " << format_double(s.avg_distance) << "\n"
              << "density        " << format_double(s.density) << "\n"
              << "transitivity   " << format_double(s.transitivity) << "\n"
              << "assortativity  " << format_double(s.assortativity) << "\n";
    if (!stats_csv.empty()) {
      std::ofstream f;
      auto& out = open_output(f, stats_csv);
      out << "n_nodes,n_edges,avg_degree,avg_distance,density,transitivity,"
             "assortativity\n"
          << s.n_nodes << "," << s.n_edges << "," << format_double(s.avg_degree)
          << "," << format_double(s.avg_distance) << ","
          << format_double(s.density) << "," << format_double(s.transitivity)
          << "," << format_double(s.assortativity) << "\n";
    }
    if (!stats_labels.empty()) {
      std::ofstream f;
      auto& out = open_output(f, stats_labels);
      out << "label,index\n";
      for (NodeId v = 0; v < net.graph.num_nodes(); ++v)
        out << net.labels.label_of(v) << "," << v << "\n";
    }
  });

  // ---- communities ----
  auto* comm_cmd = app.add_subcommand(
      "communities", "label-propagation fallback partition of the LCC");
  std::string comm_edges, comm_out;
  std::uint64_t comm_seed = 1;
  comm_cmd->add_option("edgelist", comm_edges, "edge list file")->required();
  comm_cmd->add_option("--seed", comm_seed, "label propagation seed");
  comm_cmd->add_option("--out", comm_out, "partition file (default stdout)");
  comm_cmd->callback([&] {
    LoadedNetwork net = load_network(comm_edges);
    Partition p = detect_label_propagation(net.graph, comm_seed);
    std::ofstream f;
    auto& out = open_output(f, comm_out);
    out << "# label propagation, seed=" << comm_seed << "\n";
    for (NodeId v = 0; v < net.graph.num_nodes(); ++v)
      out << net.labels.label_of(v) << " " << p.of(v) << "\n";
    std::cerr << "communities=" << p.n_communities
              << " modularity=" << format_double(modularity(net.graph, p))
              << " fingerprint=" << fingerprint_hex(partition_fingerprint(p))
              << "\n";
  });

  // ---- centrality ----
  auto* cent_cmd =
      app.add_subcommand("centrality", "one community-aware centrality, as CSV");
  std::string cent_edges, cent_part, cent_measure, cent_out;
  double cent_r = 1.0, cent_delta = 0.5;
  bool cent_signed_mv = false;
  cent_cmd->add_option("edgelist", cent_edges, "edge list file")->required();
  cent_cmd->add_option("partition", cent_part, "partition file")->required();
  cent_cmd->add_option("--measure", cent_measure,
                       "COMM|CBC|CBM|CHB|MV|PC|KSC")->required();
  cent_cmd->add_option("--R", cent_r, "Comm Centrality scaling factor");
  cent_cmd->add_option("--delta", cent_delta, "K-shell intra/inter weight");
  cent_cmd->add_flag("--signed-mv", cent_signed_mv,
                     "report signed Modularity Vitality instead of |dM|");
  cent_cmd->add_option("--out", cent_out, "output CSV (default stdout)");
  cent_cmd->callback([&] {
    auto measure = parse_measure(cent_measure);
    if (!measure)
      throw std::runtime_error("unknown measure '" + cent_measure + "'");
    LoadedNetwork net = load_network(cent_edges);
    Partition p = load_partition_file(cent_part, net.labels);
    LinkCensus census = link_census(net.graph, p);
    MeasureParams params{cent_r, cent_delta};
    CentralityScores scores =
        (*measure == Measure::kMV && cent_signed_mv)
            ? modularity_vitality(net.graph, p, false)
            : compute_centrality(*measure, net.graph, p, census, params);
    Ranking ranking = rank(scores);
    std::vector<std::size_t> position(net.graph.num_nodes());
    for (std::size_t i = 0; i < ranking.order.size(); ++i)
      position[ranking.order[i]] = i + 1;
    std::ofstream f;
    auto& out = open_output(f, cent_out);
    out << "# measure=" << measure_name(*measure) << "\n"
        << "# comm_r=" << format_double(cent_r) << "\n"
        << "# ksc_delta=" << format_double(cent_delta) << "\n"
        << "# partition_fingerprint="
        << fingerprint_hex(partition_fingerprint(p)) << "\n"
        << "node_label,measure,score,rank\n";
    for (NodeId v = 0; v < net.graph.num_nodes(); ++v)
      out << net.labels.label_of(v) << "," << measure_name(*measure) << ","
          << format_double(scores.values[v]) << "," << position[v] << "\n";
  });

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand(
      "simulate", "LT diffusion from the top-f nodes of one measure");
  std::string sim_edges, sim_part, sim_measure;
  double sim_theta = -1, sim_fraction = 0.1, sim_r = 1.0, sim_delta = 0.5;
  bool sim_random = false;
  unsigned sim_runs = 50;
  std::uint64_t sim_seed = 2024;
  sim_cmd->add_option("edgelist", sim_edges, "edge list file")->required();
  sim_cmd->add_option("partition", sim_part, "partition file")->required();
  sim_cmd->add_option("--measure", sim_measure, "COMM|CBC|CBM|CHB|MV|PC|KSC")
      ->required();
  auto* theta_opt =
      sim_cmd->add_option("--theta", sim_theta, "fixed threshold in [0,1]");
  auto* random_opt = sim_cmd->add_flag("--random", sim_random,
                                       "uniform random thresholds per run");
  theta_opt->excludes(random_opt);
  sim_cmd->add_option("--fraction", sim_fraction, "seed fraction in [0,0.5]")
      ->required();
  sim_cmd->add_option("--runs", sim_runs, "runs for --random (default 50)");
  sim_cmd->add_option("--seed", sim_seed, "master seed for --random");
  sim_cmd->add_option("--R", sim_r, "Comm Centrality scaling factor");
  sim_cmd->add_option("--delta", sim_delta, "K-shell intra/inter weight");
  sim_cmd->callback([&] {
    if (!sim_random && sim_theta < 0)
      throw std::runtime_error("need --theta <x> or --random");
    auto measure = parse_measure(sim_measure);
    if (!measure)
      throw std::runtime_error("unknown measure '" + sim_measure + "'");
    LoadedNetwork net = load_network(sim_edges);
    Partition p = load_partition_file(sim_part, net.labels);
    LinkCensus census = link_census(net.graph, p);
    MeasureParams params{sim_r, sim_delta};
    Ranking ranking =
        rank(compute_centrality(*measure, net.graph, p, census, params));
    ThresholdSpec spec = sim_random ? ThresholdSpec::uniform_random(sim_seed)
                                    : ThresholdSpec::fixed(sim_theta);
    std::vector<double> fractions{sim_fraction};
    SweepTable table = lt_sweep(net.graph, ranking, fractions, spec, sim_runs,
                                0, worker_count_from_env());
    const SweepRow& row = table.rows[0];
    std::cout << "measure          " << measure_name(*measure) << "\n"
              << "fraction         " << format_double(row.fraction) << "\n"
              << "seed_count       " << row.seed_count << "\n"
              << "runs             " << row.runs << "\n"
              << "mean_activation  " << format_double(row.mean_activation) << "\n"
              << "std_activation   " << format_double(row.std_activation) << "\n"
              << "mean_final_active " << format_double(row.mean_final_active)
              << "\n";
    if (spec.is_fixed()) {
      auto seeds = select_seeds(ranking, sim_fraction);
      std::vector<double> theta(net.graph.num_nodes(), spec.theta);
      LTOutcome o = lt_simulate(net.graph, seeds, theta);
      std::cout << "rounds           " << o.rounds << "\n";
    }
  });

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "full experiment pipeline from a config file");
  std::string sweep_config;
  sweep_cmd->add_option("--config", sweep_config, "key = value config file")
      ->required();
  sweep_cmd->callback([&] {
    std::ifstream in(sweep_config);
    if (!in) throw std::runtime_error("cannot read config: " + sweep_config);
    ExperimentConfig cfg = parse_config(in);
    ExperimentResult result = run_experiment(cfg, worker_count_from_env());
    std::cout << "bundle: " << result.dir.string() << " (" << result.files.size()
              << " files)\n";
    for (const auto& e : result.elections) {
      std::cout << "consensus " << e.tag << ":";
      for (int cand : e.global.order)
        std::cout << " " << measure_name(e.candidates[cand]);
      std::cout << "\n";
    }
  });

  // ---- rank ----
  auto* rank_cmd = app.add_subcommand(
      "rank", "rebuild ballots and elections from sweep CSVs");
  std::string rank_from, rank_out;
  rank_cmd->add_option("--from", rank_from, "bundle directory with sweep_*.csv")
      ->required();
  rank_cmd->add_option("--out", rank_out, "output directory (default: --from)");
  rank_cmd->callback([&] {
    const std::filesystem::path from(rank_from);
    const std::filesystem::path out = rank_out.empty() ? from
                                                       : std::filesystem::path(rank_out);
    auto files = rank_from_sweep_dir(from, out);
    for (const auto& fpath : files)
      std::cout << (out / fpath).string() << "\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
