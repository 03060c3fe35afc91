#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcl/detectors.hpp"
#include "bcl/graph.hpp"
#include "bcl/params.hpp"

namespace bcl {

enum class PacingKind { linear, root, geometric };

PacingKind pacing_from_string(const std::string& s);
std::string to_string(PacingKind kind);

/// Fraction of easiest curriculum nodes available at epoch t:
///   linear:    min(1, l0 + (1 - l0) t/T)
///   root:      min(1, sqrt(l0^2 + (1 - l0^2) t/T))
///   geometric: min(1, 2^(log2 l0 - log2 l0 * t/T))
/// g(0) == l0 and g(t) == 1 for every t >= T, both exact.
double pacing_value(PacingKind kind, double lambda0, int t_max, int t);

/// One direction of the scheduler. t_max is the epoch at which the pacing
/// function first reaches 1; training then continues on the full train set
/// until the validation AUC has not improved for post_t_patience consecutive
/// epochs. max_epochs is a hard cap on the total number of epochs.
struct CurriculumConfig {
  PacingKind pacing = PacingKind::linear;
  double lambda0 = 0.5;
  int t_max = 20;
  int post_t_patience = 20;
  double alpha = 0.5;
  int max_epochs = 500;
};

void validate(const CurriculumConfig& config);

/// The first ceil(lambda_t * |train|) train-set nodes encountered along the
/// curriculum ordering (at least one). `ordered` keeps curriculum order,
/// `sorted` is the same set ascending for use as a loss mask.
struct SubsetSelection {
  std::vector<int> ordered;
  std::vector<int> sorted;
};

SubsetSelection select_subset(const std::vector<int>& ordering,
                              const std::vector<int>& train, double lambda_t);

struct EpochRecord {
  int epoch = 0;
  double lambda = 1.0;
  int subset_size = 0;
  double loss = 0.0;
  double val_auc = 0.0;
};

struct TrainResult {
  /// Parameters from the best-validation-AUC epoch of the continuous phase
  /// (t >= t_max); the final epoch's parameters when that phase is empty.
  DetectorModel model;
  std::vector<EpochRecord> log;
  int best_epoch = -1;
  double best_val_auc = 0.0;
};

/// Easy-to-hard training of one detector along the given node ordering.
/// Per epoch: lambda_t = g(t), curriculum subset, one full-batch Adam step on
/// the class-weighted masked loss, then validation AUC. Stops once t >= t_max
/// and the validation AUC has stalled for post_t_patience epochs (or at
/// max_epochs). The seed parameter is reserved; the loop itself is
/// deterministic.
TrainResult train_with_curriculum(const DetectorModel& detector,
                                  const AttributedGraph& graph,
                                  const NormalizedAdjacency& adj,
                                  const NodeSplit& split,
                                  const std::vector<int>& ordering,
                                  const CurriculumConfig& config,
                                  std::uint64_t seed, AdamConfig opt = {});

/// No-curriculum baseline: the identical loop with lambda0 = 1 and t_max = 0,
/// capped at `epochs`.
TrainResult train_plain(const DetectorModel& detector,
                        const AttributedGraph& graph,
                        const NormalizedAdjacency& adj, const NodeSplit& split,
                        int epochs, std::uint64_t seed, AdamConfig opt = {},
                        int patience = 20);

/// Per-epoch log as CSV: epoch, lambda_t, subset_size, loss, val_auc.
void write_train_log_csv(const std::vector<EpochRecord>& log,
                         const std::string& path);

}  // namespace bcl
