#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ltrank/experiment.hpp"

using namespace ltrank;
namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("ltrank_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// two triangles bridged by one edge; communities left/right
const char* kToyEdges = "a b\nb c\na c\nd e\ne f\nd f\nc d\n";
const char* kToyPartition = "a L\nb L\nc L\nd R\ne R\nf R\n";
// a 5-cycle with a chord
const char* kOtherEdges = "p q\nq r\nr s\ns t\nt p\np r\n";

std::map<std::string, std::string> bundle_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file())
      out[fs::relative(entry.path(), dir).string()] = read_text(entry.path());
  return out;
}

ExperimentConfig toy_config(const TempDir& data, const fs::path& out_dir) {
  ExperimentConfig cfg;
  cfg.networks = {{"toy", (data.path / "toy.edges").string(),
                   (data.path / "toy.part").string()}};
  cfg.measures = {Measure::kComm, Measure::kMV};
  cfg.thresholds_fixed = {0.4};
  cfg.threshold_random = false;
  cfg.fraction_count = 5;
  cfg.output_dir = out_dir.string();
  return cfg;
}

}  // namespace

TEST_CASE("toy bundle inventory") {
  TempDir data("data");
  write_text(data.path / "toy.edges", kToyEdges);
  write_text(data.path / "toy.part", kToyPartition);
  TempDir out("bundle");
  ExperimentConfig cfg = toy_config(data, out.path / "run");

  ExperimentResult result = run_experiment(cfg);
  const std::vector<std::string> expected = {
      "stats.csv",
      "metadata.json",
      "toy/labels.csv",
      "toy/scores_COMM.csv",
      "toy/scores_MV.csv",
      "toy/sweep_theta0.4.csv",
      "toy/curves_theta0.4.svg",
      "ballots_theta0.4.csv",
      "elections_theta0.4.csv",
      "consensus_theta0.4.csv",
      "ranks_theta0.4.svg",
  };
  for (const auto& rel : expected) {
    CAPTURE(rel);
    CHECK(fs::exists(result.dir / rel));
  }
  CHECK(result.files.size() == expected.size());
  // partition came from a file: nothing to emit
  CHECK_FALSE(fs::exists(result.dir / "toy" / "partition.txt"));

  SECTION("sweep csv covers every cell exactly once") {
    std::istringstream in(read_text(result.dir / "toy" / "sweep_theta0.4.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "network,measure,threshold_kind,theta_or_seed,fraction,"
          "mean_activation,std_activation,seed_count,runs,mean_final_active");
    std::map<std::string, int> cells;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = split(line, ',');
      REQUIRE(f.size() == 10);
      ++cells[std::string(f[0]) + "|" + std::string(f[1]) + "|" +
              std::string(f[4])];
    }
    CHECK(cells.size() == 2 * 5);  // measures x fractions
    for (const auto& [cell, count] : cells) CHECK(count == 1);
  }

  SECTION("metadata records the partition fingerprint and grid") {
    auto meta = nlohmann::json::parse(read_text(result.dir / "metadata.json"));
    CHECK(meta["networks"][0]["name"] == "toy");
    CHECK(meta["networks"][0]["partition_fingerprint"] ==
          fingerprint_hex(result.networks[0].fingerprint));
    CHECK(meta["fractions"].size() == 5);
    CHECK(meta["measures"] == nlohmann::json({"COMM", "MV"}));
    CHECK(meta["seed_rounding"] == "half-up");
  }

  SECTION("stats row is the toy graph") {
    CHECK(result.networks[0].stats.n_nodes == 6);
    CHECK(result.networks[0].stats.n_edges == 7);
  }
}

TEST_CASE("bundles are byte-identical across runs and worker counts") {
  TempDir data("data");
  write_text(data.path / "toy.edges", kToyEdges);
  write_text(data.path / "toy.part", kToyPartition);
  write_text(data.path / "other.edges", kOtherEdges);
  TempDir out("det");

  ExperimentConfig cfg;
  cfg.networks = {{"toy", (data.path / "toy.edges").string(),
                   (data.path / "toy.part").string()},
                  {"other", (data.path / "other.edges").string(), ""}};
  cfg.allow_fallback_partition = true;
  cfg.lp_seed = 3;
  cfg.measures = {Measure::kComm, Measure::kCBM, Measure::kKSC};
  cfg.thresholds_fixed = {0.4};
  cfg.threshold_random = true;
  cfg.runs = 4;
  cfg.fraction_count = 6;
  cfg.master_seed = 11;

  cfg.output_dir = (out.path / "a").string();
  run_experiment(cfg, 1);
  cfg.output_dir = (out.path / "b").string();
  run_experiment(cfg, 1);
  cfg.output_dir = (out.path / "c").string();
  run_experiment(cfg, 4);

  auto a = bundle_bytes(out.path / "a");
  auto b = bundle_bytes(out.path / "b");
  auto c = bundle_bytes(out.path / "c");
  REQUIRE(a.size() > 0);
  CHECK(a == b);
  CHECK(a == c);
  // the fallback partition is persisted so the run is attributable
  CHECK(a.count("other/partition.txt") == 1);
}

TEST_CASE("rank --from reproduces the election outputs byte for byte") {
  TempDir data("data");
  write_text(data.path / "toy.edges", kToyEdges);
  write_text(data.path / "toy.part", kToyPartition);
  write_text(data.path / "other.edges", kOtherEdges);
  TempDir out("rank");

  ExperimentConfig cfg;
  cfg.networks = {{"toy", (data.path / "toy.edges").string(),
                   (data.path / "toy.part").string()},
                  {"other", (data.path / "other.edges").string(), ""}};
  cfg.allow_fallback_partition = true;
  cfg.measures = {Measure::kComm, Measure::kCBC, Measure::kMV};
  cfg.thresholds_fixed = {0.4, 0.7};
  cfg.threshold_random = true;
  cfg.runs = 3;
  cfg.fraction_count = 8;
  cfg.output_dir = (out.path / "bundle").string();
  run_experiment(cfg, 2);

  const fs::path rederived = out.path / "rederived";
  rank_from_sweep_dir(out.path / "bundle", rederived);
  for (const char* tag : {"theta0.4", "theta0.7", "random"}) {
    for (const std::string prefix : {"ballots_", "elections_", "consensus_"}) {
      const std::string rel = prefix + tag + ".csv";
      CAPTURE(rel);
      CHECK(read_text(out.path / "bundle" / rel) == read_text(rederived / rel));
    }
  }
}

TEST_CASE("experiment failure modes") {
  TempDir data("data");
  write_text(data.path / "toy.edges", kToyEdges);
  write_text(data.path / "toy.part", kToyPartition);
  TempDir out("fail");

  SECTION("missing input file fails before any output exists") {
    ExperimentConfig cfg = toy_config(data, out.path / "run");
    cfg.networks[0].edges_path = (data.path / "nope.edges").string();
    CHECK_THROWS_WITH(run_experiment(cfg), ContainsSubstring("cannot read"));
    CHECK_FALSE(fs::exists(out.path / "run"));
  }
  SECTION("expected-size mismatch names the dataset-version suspicion") {
    ExperimentConfig cfg = toy_config(data, out.path / "run");
    cfg.expected["toy"] = {600, 700};
    CHECK_THROWS_WITH(run_experiment(cfg), ContainsSubstring("version"));
  }
  SECTION("expected sizes within tolerance pass") {
    ExperimentConfig cfg = toy_config(data, out.path / "run");
    cfg.expected["toy"] = {6, 7};
    CHECK_NOTHROW(run_experiment(cfg));
  }
  SECTION("no partition and no fallback is a config error") {
    ExperimentConfig cfg = toy_config(data, out.path / "run");
    cfg.networks[0].partition_path.clear();
    CHECK_THROWS_WITH(run_experiment(cfg),
                      ContainsSubstring("allow_fallback_partition"));
  }
  SECTION("rank --from on an empty directory") {
    CHECK_THROWS_WITH(rank_from_sweep_dir(out.path, out.path),
                      ContainsSubstring("no sweep_"));
  }
}

TEST_CASE("elections read back the curves: best measure wins the toy profile") {
  // hand-built sweep csv: COMM dominates, MV second, CBC last at every cell
  TempDir dir("madeup");
  std::string csv =
      "network,measure,threshold_kind,theta_or_seed,fraction,mean_activation,"
      "std_activation,seed_count,runs,mean_final_active\n";
  for (const char* net : {"n1", "n2"}) {
    for (const char* frac : {"0.1", "0.2"}) {
      csv += std::string(net) + ",COMM,fixed,0.4," + frac + ",0.9,0,1,1,9\n";
      csv += std::string(net) + ",MV,fixed,0.4," + frac + ",0.5,0,1,1,5\n";
      csv += std::string(net) + ",CBC,fixed,0.4," + frac + ",0.1,0,1,1,1\n";
    }
  }
  write_text(dir.path / "sweep_theta0.4.csv", csv);
  rank_from_sweep_dir(dir.path, dir.path);
  const std::string consensus = read_text(dir.path / "consensus_theta0.4.csv");
  CHECK_THAT(consensus, ContainsSubstring("theta0.4,COMM,1"));
  CHECK_THAT(consensus, ContainsSubstring("theta0.4,MV,2"));
  CHECK_THAT(consensus, ContainsSubstring("theta0.4,CBC,3"));

  SECTION("a missing measure in one cell is reported with the cell id") {
    std::string broken = csv;
    broken += "n9,COMM,fixed,0.4,0.3,0.9,0,1,1,9\n";
    broken += "n9,MV,fixed,0.4,0.3,0.5,0,1,1,5\n";  // CBC missing
    write_text(dir.path / "sweep_theta0.4.csv", broken);
    CHECK_THROWS_WITH(rank_from_sweep_dir(dir.path, dir.path),
                      ContainsSubstring("n9"));
  }
}
