#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcl/curriculum.hpp"
#include "bcl/gae.hpp"
#include "bcl/graph.hpp"
#include "bcl/synthetic.hpp"

namespace bcl {

/// One experiment: dataset, host detector, per-direction curriculum settings
/// and fusion weight. Parsed from a flat key=value file; unknown keys are
/// errors.
struct ExperimentConfig {
  // dataset
  bool use_synthetic = true;
  SyntheticSpec synthetic;
  std::string edge_path;
  std::string feature_path;
  std::string label_path;

  // detector
  DetectorKind detector = DetectorKind::gcn;
  int hidden = 32;

  // split: train, val, test fractions
  std::array<double, 3> split_ratios{0.4, 0.2, 0.4};

  // curriculum (shared pacing/alpha, per-direction lambda0 and T)
  PacingKind pacing = PacingKind::linear;
  double alpha = 0.5;
  double lambda0_homo = 0.5;
  double lambda0_hete = 0.5;
  int t_homo = 20;
  int t_hete = 20;
  int patience = 20;
  int max_epochs = 300;

  // optimizer
  AdamConfig adam;

  // difficulty measurer
  int gae_hidden = 64;
  int gae_embed = 32;
  int gae_epochs = 200;
  BdsNorm bds_norm = BdsNorm::l1;

  std::vector<std::uint64_t> seeds{1};
  double f1_threshold = 0.5;
  bool deterministic = false;

  CurriculumConfig homo_config() const;
  CurriculumConfig hete_config() const;
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<config>");
ExperimentConfig parse_config_file(const std::string& path);
void validate(const ExperimentConfig& config);

struct VariantMetrics {
  double auc = 0.0;
  double macro_f1 = 0.0;
};

/// Metric blocks for one seed: the plain baseline, the two single-direction
/// ablations, and the fused result.
struct SeedResult {
  std::uint64_t seed = 0;
  std::map<std::string, VariantMetrics> variants;  // baseline/homo/hete/fused
  int gae_epochs_run = 0;
  std::map<std::string, std::string> side_files;   // relative CSV paths
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SeedResult> results;
  std::map<std::string, double> timings_s;  // omitted in deterministic mode
  std::string report_path;                  // empty when not persisted

  double mean_auc(const std::string& variant) const;
  double mean_f1(const std::string& variant) const;
};

/// Full pipeline per seed: GAE pretraining, difficulty ranking, both
/// directional trainings (concurrent unless config.deterministic), plain
/// baseline, fusion and test metrics. When out_dir is non-empty, writes
/// report.json (atomically) plus BDS and per-epoch CSV side files. Errors are
/// annotated with the failing stage and seed.
ExperimentReport run_bcl(const ExperimentConfig& config,
                         const std::string& out_dir = "");

enum class SweepAxis { alpha, lambda0, t_fraction, pacing };

SweepAxis sweep_axis_from_string(const std::string& s);
std::string to_string(SweepAxis axis);

/// One run_bcl per axis value (shared seeds); writes per-value reports under
/// out_dir plus a summary CSV of metric-vs-value. Numeric axis values must
/// lie in [0.1, 0.9]; t_fraction scales max_epochs; pacing values name the
/// three pacing kinds.
std::vector<ExperimentReport> sweep(const ExperimentConfig& base,
                                    SweepAxis axis,
                                    const std::vector<std::string>& values,
                                    const std::string& out_dir = "");

nlohmann::json config_to_json(const ExperimentConfig& config);
nlohmann::json report_to_json(const ExperimentReport& report);

/// Writes to a temp file in the target directory, then renames; a crashed
/// run never leaves a partial file at the final path.
void write_json_atomic(const nlohmann::json& j, const std::string& path);

}  // namespace bcl
