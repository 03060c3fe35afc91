#include <filesystem>
#include <fstream>
#include <sstream>
#include <doctest.h>

#include "bcl/experiment.hpp"

using namespace bcl;
namespace fs = std::filesystem;

namespace {

/// Small, fast configuration shared by the experiment tests.
ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.synthetic.num_nodes = 120;
  c.synthetic.num_blocks = 2;
  c.synthetic.feature_dim = 6;
  c.synthetic.intra_edge_prob = 0.12;
  c.synthetic.inter_edge_prob = 0.02;
  c.synthetic.anomaly_rate = 0.1;
  c.hidden = 8;
  c.t_homo = 5;
  c.t_hete = 5;
  c.patience = 5;
  c.max_epochs = 25;
  c.gae_hidden = 6;
  c.gae_embed = 3;
  c.gae_epochs = 40;
  c.seeds = {1, 2};
  c.deterministic = true;
  return c;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
  const std::string text = R"(# experiment
dataset = synthetic
synthetic.nodes = 200
synthetic.anomaly_kind = structural
detector = sage
hidden = 16
alpha = 0.3
lambda0.homo = 0.6
lambda0.hete = 0.4
t.homo = 12
t.hete = 9
seeds = 3, 5, 8
pacing = root
threshold = 0.4
deterministic = true
)";
  const ExperimentConfig c = parse_config_text(text);
  CHECK(c.use_synthetic);
  CHECK(c.synthetic.num_nodes == 200);
  CHECK(c.synthetic.anomaly_kind == AnomalyKind::structural);
  CHECK(c.detector == DetectorKind::sage);
  CHECK(c.hidden == 16);
  CHECK(c.alpha == 0.3);
  CHECK(c.lambda0_homo == 0.6);
  CHECK(c.lambda0_hete == 0.4);
  CHECK(c.t_homo == 12);
  CHECK(c.t_hete == 9);
  CHECK(c.seeds == std::vector<std::uint64_t>{3, 5, 8});
  CHECK(c.pacing == PacingKind::root);
  CHECK(c.f1_threshold == 0.4);
  CHECK(c.deterministic);
}

TEST_CASE("config parsing rejects bad inputs") {
  SUBCASE("unknown key") {
    CHECK_THROWS_WITH_AS(parse_config_text("lamda0.homo = 0.5\n"),
                         doctest::Contains("unknown config key"),
                         std::runtime_error);
  }
  SUBCASE("bad value") {
    CHECK_THROWS_AS(parse_config_text("alpha = high\n"), std::runtime_error);
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_config_text("alpha = 0.5\nalpha = 0.4\n"),
                    std::runtime_error);
  }
  SUBCASE("out-of-range curriculum values") {
    CHECK_THROWS_AS(parse_config_text("lambda0.homo = 0\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("alpha = 1.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("seeds =\n"), std::runtime_error);
  }
  SUBCASE("files dataset requires paths") {
    CHECK_THROWS_AS(parse_config_text("dataset = files\n"),
                    std::invalid_argument);
  }
}

TEST_CASE("run_bcl report structure and ablation identities") {
  ExperimentConfig config = tiny_config();
  const ExperimentReport report = run_bcl(config);

  REQUIRE(report.results.size() == 2);
  for (const SeedResult& r : report.results) {
    for (const char* variant : {"baseline", "homo", "hete", "fused"}) {
      REQUIRE(r.variants.count(variant) == 1);
      const VariantMetrics& m = r.variants.at(variant);
      CHECK(m.auc >= 0.0);
      CHECK(m.auc <= 1.0);
      CHECK(m.macro_f1 >= 0.0);
      CHECK(m.macro_f1 <= 1.0);
    }
  }

  SUBCASE("alpha = 1 makes fused metrics equal homo metrics bitwise") {
    config.alpha = 1.0;
    const ExperimentReport r = run_bcl(config);
    for (const SeedResult& s : r.results) {
      CHECK(s.variants.at("fused").auc == s.variants.at("homo").auc);
      CHECK(s.variants.at("fused").macro_f1 == s.variants.at("homo").macro_f1);
    }
  }
  SUBCASE("alpha = 0 makes fused metrics equal hete metrics bitwise") {
    config.alpha = 0.0;
    const ExperimentReport r = run_bcl(config);
    for (const SeedResult& s : r.results) {
      CHECK(s.variants.at("fused").auc == s.variants.at("hete").auc);
      CHECK(s.variants.at("fused").macro_f1 == s.variants.at("hete").macro_f1);
    }
  }
}

TEST_CASE("run_bcl determinism") {
  const ExperimentConfig config = tiny_config();
  const ExperimentReport a = run_bcl(config);
  const ExperimentReport b = run_bcl(config);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    for (const char* variant : {"baseline", "homo", "hete", "fused"}) {
      CHECK(a.results[i].variants.at(variant).auc ==
            b.results[i].variants.at(variant).auc);
      CHECK(a.results[i].variants.at(variant).macro_f1 ==
            b.results[i].variants.at(variant).macro_f1);
    }
  }
  CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
}

TEST_CASE("run_bcl threaded and deterministic modes agree") {
  ExperimentConfig config = tiny_config();
  config.seeds = {4};
  config.deterministic = false;
  const ExperimentReport threaded = run_bcl(config);
  config.deterministic = true;
  const ExperimentReport sequential = run_bcl(config);
  for (const char* variant : {"homo", "hete", "fused"}) {
    CHECK(threaded.results[0].variants.at(variant).auc ==
          sequential.results[0].variants.at(variant).auc);
  }
}

TEST_CASE("run_bcl writes report and side files") {
  TempDir dir("bcl_run_out");
  ExperimentConfig config = tiny_config();
  config.seeds = {1};
  const ExperimentReport report = run_bcl(config, dir.path.string());
  CHECK(fs::exists(dir.path / "report.json"));
  CHECK(!fs::exists(dir.path / "report.json.tmp"));
  CHECK(fs::exists(dir.path / "bds_seed1.csv"));
  CHECK(fs::exists(dir.path / "curriculum_seed1_homo.csv"));
  CHECK(fs::exists(dir.path / "curriculum_seed1_hete.csv"));
  CHECK(fs::exists(dir.path / "curriculum_seed1_baseline.csv"));
  CHECK(fs::exists(dir.path / "model_seed1_homo.txt"));

  std::ifstream in(dir.path / "report.json");
  nlohmann::json j;
  in >> j;
  CHECK(j.contains("config"));
  CHECK(j["results"].size() == 1);
  CHECK(j["results"][0]["variants"].contains("fused"));
  // Deterministic mode leaves timings out of the report.
  CHECK(!j.contains("timings_s"));
}

TEST_CASE("write_json_atomic leaves no partial file on failure") {
  TempDir dir("bcl_atomic_out");
  nlohmann::json j = {{"ok", true}};
  const std::string good = (dir.path / "x.json").string();
  write_json_atomic(j, good);
  CHECK(fs::exists(good));
  CHECK(!fs::exists(good + ".tmp"));

  const std::string bad =
      (dir.path / "missing_subdir_that_is_a_file" / "x.json").string();
  std::ofstream(dir.path / "missing_subdir_that_is_a_file") << "occupied";
  CHECK_THROWS(write_json_atomic(j, bad));
  CHECK(!fs::exists(bad));
}

TEST_CASE("sweep") {
  ExperimentConfig config = tiny_config();
  config.seeds = {1};
  config.max_epochs = 12;
  config.gae_epochs = 15;

  SUBCASE("pacing sweep yields one report per kind") {
    TempDir dir("bcl_sweep_out");
    const auto reports = sweep(config, SweepAxis::pacing,
                               {"linear", "root", "geometric"},
                               dir.path.string());
    CHECK(reports.size() == 3);
    std::ifstream in(dir.path / "sweep_summary.csv");
    std::string line;
    int rows = 0;
    std::getline(in, line);
    CHECK(line ==
          "axis,value,auc_baseline,auc_homo,auc_hete,auc_fused,f1_fused");
    while (std::getline(in, line)) {
      if (!line.empty()) ++rows;
    }
    CHECK(rows == 3);
  }

  SUBCASE("alpha sweep respects the tuning range") {
    CHECK_THROWS_AS(sweep(config, SweepAxis::alpha, {"0.95"}),
                    std::invalid_argument);
    const auto reports = sweep(config, SweepAxis::alpha, {"0.3", "0.7"});
    CHECK(reports.size() == 2);
    CHECK(reports[0].config.alpha == 0.3);
  }

  SUBCASE("T sweep scales max_epochs") {
    const auto reports = sweep(config, SweepAxis::t_fraction, {"0.5"});
    CHECK(reports[0].config.t_homo == 6);
    CHECK(reports[0].config.t_hete == 6);
  }

  SUBCASE("empty value list throws") {
    CHECK_THROWS_AS(sweep(config, SweepAxis::alpha, {}),
                    std::invalid_argument);
  }
}

TEST_CASE("gen-style save/load round trip through run_bcl inputs") {
  TempDir dir("bcl_gen_out");
  SyntheticSpec spec;
  spec.num_nodes = 80;
  spec.feature_dim = 4;
  const AttributedGraph g = generate_synthetic(spec, 13);
  const std::string edge = (dir.path / "edges.txt").string();
  const std::string feat = (dir.path / "features.txt").string();
  const std::string label = (dir.path / "labels.txt").string();
  save_graph(g, edge, feat, label);

  ExperimentConfig config = tiny_config();
  config.use_synthetic = false;
  config.edge_path = edge;
  config.feature_path = feat;
  config.label_path = label;
  config.seeds = {2};
  config.max_epochs = 10;
  config.gae_epochs = 10;
  const ExperimentReport report = run_bcl(config);
  CHECK(report.results.size() == 1);
}
