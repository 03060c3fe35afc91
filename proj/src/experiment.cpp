#include "bcl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bcl/metrics.hpp"
#include "bcl/rng.hpp"

namespace fs = std::filesystem;

namespace bcl {

CurriculumConfig ExperimentConfig::homo_config() const {
  CurriculumConfig c;
  c.pacing = pacing;
  c.lambda0 = lambda0_homo;
  c.t_max = t_homo;
  c.post_t_patience = patience;
  c.alpha = alpha;
  c.max_epochs = max_epochs;
  return c;
}

CurriculumConfig ExperimentConfig::hete_config() const {
  CurriculumConfig c = homo_config();
  c.lambda0 = lambda0_hete;
  c.t_max = t_hete;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

class KeyValueParser {
 public:
  KeyValueParser(const std::string& text, const std::string& origin)
      : origin_(origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos) {
        fail(line_no, "expected key = value");
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(line_no, "empty key");
      if (!entries_.emplace(key, Entry{value, line_no}).second) {
        fail(line_no, "duplicate key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    it->second.consumed = true;
    return true;
  }

  std::string get_string(const std::string& key, std::string fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.consumed = true;
    return it->second.value;
  }

  double get_double(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.consumed = true;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second.value, &used);
      if (used != it->second.value.size()) throw std::invalid_argument("junk");
      return v;
    } catch (const std::exception&) {
      fail(it->second.line_no, "bad real value for '" + key + "'");
    }
  }

  int get_int(const std::string& key, int fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.consumed = true;
    try {
      std::size_t used = 0;
      const int v = std::stoi(it->second.value, &used);
      if (used != it->second.value.size()) throw std::invalid_argument("junk");
      return v;
    } catch (const std::exception&) {
      fail(it->second.line_no, "bad integer value for '" + key + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.consumed = true;
    if (it->second.value == "true") return true;
    if (it->second.value == "false") return false;
    fail(it->second.line_no, "expected true/false for '" + key + "'");
  }

  std::vector<std::uint64_t> get_seed_list(const std::string& key,
                                           std::vector<std::uint64_t> fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.consumed = true;
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(it->second.value);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      try {
        std::size_t used = 0;
        seeds.push_back(std::stoull(cell, &used));
        if (used != cell.size()) throw std::invalid_argument("junk");
      } catch (const std::exception&) {
        fail(it->second.line_no, "bad seed '" + cell + "'");
      }
    }
    if (seeds.empty()) fail(it->second.line_no, "empty seed list");
    return seeds;
  }

  /// Typo protection: any key the schema never consumed is an error.
  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.consumed) {
        throw std::runtime_error(origin_ + " line " +
                                 std::to_string(entry.line_no) +
                                 ": unknown config key '" + key + "'");
      }
    }
  }

 private:
  struct Entry {
    std::string value;
    std::size_t line_no = 0;
    bool consumed = false;
  };

  [[noreturn]] void fail(std::size_t line_no, const std::string& what) const {
    throw std::runtime_error(origin_ + " line " + std::to_string(line_no) +
                             ": " + what);
  }

  std::string origin_;
  std::map<std::string, Entry> entries_;
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  KeyValueParser p(text, origin);
  ExperimentConfig c;

  const std::string dataset = p.get_string("dataset", "synthetic");
  if (dataset == "synthetic") {
    c.use_synthetic = true;
  } else if (dataset == "files") {
    c.use_synthetic = false;
  } else {
    throw std::runtime_error(origin +
                             ": dataset must be 'synthetic' or 'files'");
  }
  c.edge_path = p.get_string("edge_path", "");
  c.feature_path = p.get_string("feature_path", "");
  c.label_path = p.get_string("label_path", "");

  c.synthetic.num_nodes = p.get_int("synthetic.nodes", c.synthetic.num_nodes);
  c.synthetic.num_blocks =
      p.get_int("synthetic.blocks", c.synthetic.num_blocks);
  c.synthetic.intra_edge_prob =
      p.get_double("synthetic.intra_edge_prob", c.synthetic.intra_edge_prob);
  c.synthetic.inter_edge_prob =
      p.get_double("synthetic.inter_edge_prob", c.synthetic.inter_edge_prob);
  c.synthetic.feature_dim =
      p.get_int("synthetic.feature_dim", c.synthetic.feature_dim);
  c.synthetic.anomaly_rate =
      p.get_double("synthetic.anomaly_rate", c.synthetic.anomaly_rate);
  c.synthetic.anomaly_kind = anomaly_kind_from_string(
      p.get_string("synthetic.anomaly_kind", to_string(c.synthetic.anomaly_kind)));
  c.synthetic.noise_scale =
      p.get_double("synthetic.noise_scale", c.synthetic.noise_scale);

  c.detector = detector_kind_from_string(
      p.get_string("detector", to_string(c.detector)));
  c.hidden = p.get_int("hidden", c.hidden);

  c.split_ratios[0] = p.get_double("split.train", c.split_ratios[0]);
  c.split_ratios[1] = p.get_double("split.val", c.split_ratios[1]);
  c.split_ratios[2] = p.get_double("split.test", c.split_ratios[2]);

  c.pacing = pacing_from_string(p.get_string("pacing", to_string(c.pacing)));
  c.alpha = p.get_double("alpha", c.alpha);
  c.lambda0_homo = p.get_double("lambda0.homo", c.lambda0_homo);
  c.lambda0_hete = p.get_double("lambda0.hete", c.lambda0_hete);
  c.t_homo = p.get_int("t.homo", c.t_homo);
  c.t_hete = p.get_int("t.hete", c.t_hete);
  c.patience = p.get_int("patience", c.patience);
  c.max_epochs = p.get_int("max_epochs", c.max_epochs);

  c.adam.learning_rate = p.get_double("adam.lr", c.adam.learning_rate);
  c.adam.beta1 = p.get_double("adam.beta1", c.adam.beta1);
  c.adam.beta2 = p.get_double("adam.beta2", c.adam.beta2);
  c.adam.epsilon = p.get_double("adam.epsilon", c.adam.epsilon);

  c.gae_hidden = p.get_int("gae.hidden", c.gae_hidden);
  c.gae_embed = p.get_int("gae.embed", c.gae_embed);
  c.gae_epochs = p.get_int("gae.epochs", c.gae_epochs);
  const std::string norm = p.get_string(
      "bds.norm", c.bds_norm == BdsNorm::l1 ? "l1" : "l2");
  if (norm == "l1") {
    c.bds_norm = BdsNorm::l1;
  } else if (norm == "l2") {
    c.bds_norm = BdsNorm::l2;
  } else {
    throw std::runtime_error(origin + ": bds.norm must be 'l1' or 'l2'");
  }

  c.seeds = p.get_seed_list("seeds", c.seeds);
  c.f1_threshold = p.get_double("threshold", c.f1_threshold);
  c.deterministic = p.get_bool("deterministic", c.deterministic);

  p.reject_unknown();
  validate(c);
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void validate(const ExperimentConfig& config) {
  if (config.use_synthetic) {
    validate(config.synthetic);
  } else if (config.edge_path.empty() || config.feature_path.empty() ||
             config.label_path.empty()) {
    throw std::invalid_argument(
        "config: dataset=files requires edge_path, feature_path and "
        "label_path");
  }
  if (config.hidden < 1) {
    throw std::invalid_argument("config: hidden must be >= 1");
  }
  if (config.seeds.empty()) {
    throw std::invalid_argument("config: at least one seed required");
  }
  if (config.gae_hidden < 1 || config.gae_embed < 1 || config.gae_epochs < 1) {
    throw std::invalid_argument("config: GAE sizes and epochs must be >= 1");
  }
  if (config.max_epochs < 0) {
    throw std::invalid_argument("config: max_epochs must be >= 0");
  }
  validate(config.homo_config());
  validate(config.hete_config());
}

double ExperimentReport::mean_auc(const std::string& variant) const {
  double sum = 0.0;
  for (const SeedResult& r : results) sum += r.variants.at(variant).auc;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

double ExperimentReport::mean_f1(const std::string& variant) const {
  double sum = 0.0;
  for (const SeedResult& r : results) sum += r.variants.at(variant).macro_f1;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

VariantMetrics evaluate_on_test(const std::vector<double>& scores,
                                const AttributedGraph& graph,
                                const NodeSplit& split, double threshold) {
  std::vector<double> test_scores(split.test.size());
  std::vector<int> test_labels(split.test.size());
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    test_scores[i] = scores[static_cast<std::size_t>(split.test[i])];
    test_labels[i] = graph.labels[static_cast<std::size_t>(split.test[i])];
  }
  VariantMetrics m;
  m.auc = roc_auc(test_scores, test_labels);
  m.macro_f1 = macro_f1(test_scores, test_labels, threshold);
  return m;
}

std::vector<double> model_scores(const DetectorModel& model,
                                 const AttributedGraph& graph,
                                 const NormalizedAdjacency& adj) {
  return anomaly_score(detector_forward(model, graph, adj));
}

template <typename Fn>
auto run_stage(const std::string& stage, std::uint64_t seed, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error("run_bcl: stage '" + stage + "' failed for seed " +
                             std::to_string(seed) + ": " + e.what());
  }
}

}  // namespace

ExperimentReport run_bcl(const ExperimentConfig& config,
                         const std::string& out_dir) {
  validate(config);
  const auto total_start = Clock::now();

  ExperimentReport report;
  report.config = config;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
  }

  // File-backed datasets are seed-independent; load them once.
  AttributedGraph file_graph;
  if (!config.use_synthetic) {
    file_graph = load_graph(config.edge_path, config.feature_path,
                            config.label_path);
  }

  std::map<std::string, double> timings;
  for (const std::uint64_t seed : config.seeds) {
    SeedResult result;
    result.seed = seed;

    const AttributedGraph graph =
        config.use_synthetic
            ? run_stage("generate", seed,
                        [&] { return generate_synthetic(config.synthetic, seed); })
            : file_graph;
    const NormalizedAdjacency adj =
        run_stage("normalize", seed, [&] { return normalize_adjacency(graph); });
    const NodeSplit split = run_stage(
        "split", seed, [&] { return make_split(graph, config.split_ratios, seed); });

    // Difficulty measurer sizes are clipped to the feature dimension at toy
    // scale.
    const int hidden_dim = std::min(config.gae_hidden, graph.feature_dim());
    const int embed_dim = std::min(config.gae_embed, graph.feature_dim());

    auto stage_start = Clock::now();
    const GaeTrainResult gae = run_stage("gae", seed, [&] {
      return gae_train(graph, adj, hidden_dim, embed_dim, config.gae_epochs,
                       derive_seed(seed, "gae"), config.adam);
    });
    timings["gae_s"] += seconds_since(stage_start);
    result.gae_epochs_run = gae.epochs_run;

    const DifficultyRanking ranking = run_stage("rank", seed, [&] {
      return rank_nodes(
          compute_bds(gae_embed(gae.model, graph, adj), config.bds_norm));
    });

    const DetectorModel init = run_stage("init", seed, [&] {
      return detector_init(config.detector, graph.feature_dim(), config.hidden,
                           derive_seed(seed, "detector"));
    });

    stage_start = Clock::now();
    const TrainResult baseline = run_stage("baseline", seed, [&] {
      return train_plain(init, graph, adj, split, config.max_epochs, seed,
                         config.adam, config.patience);
    });
    timings["baseline_s"] += seconds_since(stage_start);

    // The two directions are independent; run them concurrently unless the
    // deterministic flag forces single-threaded execution.
    stage_start = Clock::now();
    TrainResult homo;
    TrainResult hete;
    if (config.deterministic) {
      homo = run_stage("train_homo", seed, [&] {
        return train_with_curriculum(init, graph, adj, split, ranking.q_homo,
                                     config.homo_config(), seed, config.adam);
      });
      hete = run_stage("train_hete", seed, [&] {
        return train_with_curriculum(init, graph, adj, split, ranking.q_hete,
                                     config.hete_config(), seed, config.adam);
      });
    } else {
      std::exception_ptr homo_error;
      std::exception_ptr hete_error;
      std::thread homo_thread([&] {
        try {
          homo = train_with_curriculum(init, graph, adj, split, ranking.q_homo,
                                       config.homo_config(), seed, config.adam);
        } catch (...) {
          homo_error = std::current_exception();
        }
      });
      std::thread hete_thread([&] {
        try {
          hete = train_with_curriculum(init, graph, adj, split, ranking.q_hete,
                                       config.hete_config(), seed, config.adam);
        } catch (...) {
          hete_error = std::current_exception();
        }
      });
      homo_thread.join();
      hete_thread.join();
      run_stage("train_homo", seed, [&] {
        if (homo_error) std::rethrow_exception(homo_error);
        return 0;
      });
      run_stage("train_hete", seed, [&] {
        if (hete_error) std::rethrow_exception(hete_error);
        return 0;
      });
    }
    timings["directions_s"] += seconds_since(stage_start);

    const auto metrics = run_stage("metrics", seed, [&] {
      std::map<std::string, VariantMetrics> variants;
      const std::vector<double> baseline_scores =
          model_scores(baseline.model, graph, adj);
      const std::vector<double> homo_scores =
          model_scores(homo.model, graph, adj);
      const std::vector<double> hete_scores =
          model_scores(hete.model, graph, adj);
      const FusedScore fused =
          fuse_scores(config.alpha, homo_scores, hete_scores);
      variants["baseline"] = evaluate_on_test(baseline_scores, graph, split,
                                              config.f1_threshold);
      variants["homo"] =
          evaluate_on_test(homo_scores, graph, split, config.f1_threshold);
      variants["hete"] =
          evaluate_on_test(hete_scores, graph, split, config.f1_threshold);
      variants["fused"] = evaluate_on_test(fused.score_final, graph, split,
                                           config.f1_threshold);
      return variants;
    });
    result.variants = metrics;

    if (!out_dir.empty()) {
      run_stage("side_files", seed, [&] {
        const std::string tag = "seed" + std::to_string(seed);
        const std::string bds_name = "bds_" + tag + ".csv";
        write_bds_csv(ranking, (fs::path(out_dir) / bds_name).string());
        result.side_files["bds"] = bds_name;
        const struct {
          const char* name;
          const std::vector<EpochRecord>* log;
        } logs[] = {{"baseline", &baseline.log},
                    {"homo", &homo.log},
                    {"hete", &hete.log}};
        for (const auto& entry : logs) {
          const std::string name =
              std::string("curriculum_") + tag + "_" + entry.name + ".csv";
          write_train_log_csv(*entry.log,
                              (fs::path(out_dir) / name).string());
          result.side_files[std::string("log_") + entry.name] = name;
        }
        const struct {
          const char* name;
          const DetectorModel* model;
        } models[] = {{"baseline", &baseline.model},
                      {"homo", &homo.model},
                      {"hete", &hete.model}};
        for (const auto& entry : models) {
          const std::string name =
              std::string("model_") + tag + "_" + entry.name + ".txt";
          save_params(entry.model->params,
                      (fs::path(out_dir) / name).string());
          result.side_files[std::string("model_") + entry.name] = name;
        }
        return 0;
      });
    }

    report.results.push_back(std::move(result));
  }

  timings["total_s"] = seconds_since(total_start);
  if (!config.deterministic) {
    report.timings_s = timings;
  }

  if (!out_dir.empty()) {
    const std::string path = (fs::path(out_dir) / "report.json").string();
    write_json_atomic(report_to_json(report), path);
    report.report_path = path;
  }
  return report;
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "alpha") return SweepAxis::alpha;
  if (s == "lambda0") return SweepAxis::lambda0;
  if (s == "T") return SweepAxis::t_fraction;
  if (s == "pacing") return SweepAxis::pacing;
  throw std::invalid_argument("unknown sweep axis '" + s +
                              "' (expected alpha, lambda0, T or pacing)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::lambda0: return "lambda0";
    case SweepAxis::t_fraction: return "T";
    case SweepAxis::pacing: return "pacing";
  }
  throw std::logic_error("unreachable sweep axis");
}

namespace {

double parse_axis_number(const std::string& value, SweepAxis axis) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("sweep: bad " + to_string(axis) + " value '" +
                                value + "'");
  }
  // Tuning ranges: alpha and lambda0 in {0.1..0.9}, T as a fraction of the
  // baseline epoch budget in [0.1, 0.9].
  if (v < 0.1 - 1e-12 || v > 0.9 + 1e-12) {
    throw std::invalid_argument("sweep: " + to_string(axis) + " value " +
                                value + " outside [0.1, 0.9]");
  }
  return v;
}

std::string format_csv_double(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << v;
  return ss.str();
}

}  // namespace

std::vector<ExperimentReport> sweep(const ExperimentConfig& base,
                                    SweepAxis axis,
                                    const std::vector<std::string>& values,
                                    const std::string& out_dir) {
  if (values.empty()) {
    throw std::invalid_argument("sweep: empty value list");
  }
  std::vector<ExperimentReport> reports;
  reports.reserve(values.size());
  for (const std::string& value : values) {
    ExperimentConfig config = base;
    switch (axis) {
      case SweepAxis::alpha:
        config.alpha = parse_axis_number(value, axis);
        break;
      case SweepAxis::lambda0:
        config.lambda0_homo = parse_axis_number(value, axis);
        config.lambda0_hete = config.lambda0_homo;
        break;
      case SweepAxis::t_fraction: {
        const double fraction = parse_axis_number(value, axis);
        const int t = std::max(
            1, static_cast<int>(std::lround(fraction * config.max_epochs)));
        config.t_homo = t;
        config.t_hete = t;
        break;
      }
      case SweepAxis::pacing:
        config.pacing = pacing_from_string(value);
        break;
    }
    const std::string run_dir =
        out_dir.empty() ? ""
                        : (fs::path(out_dir) /
                           ("sweep_" + to_string(axis) + "_" + value))
                              .string();
    reports.push_back(run_bcl(config, run_dir));
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path summary_path = fs::path(out_dir) / "sweep_summary.csv";
    std::ofstream out(summary_path);
    if (!out) {
      throw std::runtime_error("sweep: cannot open '" + summary_path.string() +
                               "'");
    }
    out << "axis,value,auc_baseline,auc_homo,auc_hete,auc_fused,f1_fused\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const ExperimentReport& r = reports[i];
      out << to_string(axis) << "," << values[i] << ","
          << format_csv_double(r.mean_auc("baseline")) << ","
          << format_csv_double(r.mean_auc("homo")) << ","
          << format_csv_double(r.mean_auc("hete")) << ","
          << format_csv_double(r.mean_auc("fused")) << ","
          << format_csv_double(r.mean_f1("fused")) << "\n";
    }
  }
  return reports;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["dataset"] = c.use_synthetic ? "synthetic" : "files";
  if (!c.use_synthetic) {
    j["edge_path"] = c.edge_path;
    j["feature_path"] = c.feature_path;
    j["label_path"] = c.label_path;
  } else {
    j["synthetic"] = {{"nodes", c.synthetic.num_nodes},
                      {"blocks", c.synthetic.num_blocks},
                      {"intra_edge_prob", c.synthetic.intra_edge_prob},
                      {"inter_edge_prob", c.synthetic.inter_edge_prob},
                      {"feature_dim", c.synthetic.feature_dim},
                      {"anomaly_rate", c.synthetic.anomaly_rate},
                      {"anomaly_kind", to_string(c.synthetic.anomaly_kind)},
                      {"noise_scale", c.synthetic.noise_scale}};
  }
  j["detector"] = to_string(c.detector);
  j["hidden"] = c.hidden;
  j["split"] = {{"train", c.split_ratios[0]},
                {"val", c.split_ratios[1]},
                {"test", c.split_ratios[2]}};
  j["pacing"] = to_string(c.pacing);
  j["alpha"] = c.alpha;
  j["lambda0"] = {{"homo", c.lambda0_homo}, {"hete", c.lambda0_hete}};
  j["t"] = {{"homo", c.t_homo}, {"hete", c.t_hete}};
  j["patience"] = c.patience;
  j["max_epochs"] = c.max_epochs;
  j["adam"] = {{"lr", c.adam.learning_rate},
               {"beta1", c.adam.beta1},
               {"beta2", c.adam.beta2},
               {"epsilon", c.adam.epsilon}};
  j["gae"] = {{"hidden", c.gae_hidden},
              {"embed", c.gae_embed},
              {"epochs", c.gae_epochs}};
  j["bds_norm"] = c.bds_norm == BdsNorm::l1 ? "l1" : "l2";
  j["seeds"] = c.seeds;
  j["threshold"] = c.f1_threshold;
  j["deterministic"] = c.deterministic;
  return j;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  nlohmann::json results = nlohmann::json::array();
  for (const SeedResult& r : report.results) {
    nlohmann::json jr;
    jr["seed"] = r.seed;
    jr["gae_epochs_run"] = r.gae_epochs_run;
    for (const auto& [name, metrics] : r.variants) {
      jr["variants"][name] = {{"auc", metrics.auc},
                              {"macro_f1", metrics.macro_f1}};
    }
    if (!r.side_files.empty()) {
      jr["side_files"] = r.side_files;
    }
    results.push_back(std::move(jr));
  }
  j["results"] = std::move(results);
  nlohmann::json means;
  for (const char* variant : {"baseline", "homo", "hete", "fused"}) {
    means[variant] = {{"auc", report.mean_auc(variant)},
                      {"macro_f1", report.mean_f1(variant)}};
  }
  j["means"] = std::move(means);
  if (!report.timings_s.empty()) {
    j["timings_s"] = report.timings_s;
  }
  return j;
}

void write_json_atomic(const nlohmann::json& j, const std::string& path) {
  const fs::path final_path(path);
  if (final_path.has_parent_path()) {
    fs::create_directories(final_path.parent_path());
  }
  const fs::path tmp_path = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp_path);
    if (!out) {
      throw std::runtime_error("write_json_atomic: cannot open '" +
                               tmp_path.string() + "'");
    }
    out << j.dump(2) << "\n";
    if (!out) {
      throw std::runtime_error("write_json_atomic: write failed for '" +
                               tmp_path.string() + "'");
    }
  }
  fs::rename(tmp_path, final_path);
}

}  // namespace bcl
