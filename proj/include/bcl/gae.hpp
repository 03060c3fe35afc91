#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcl/graph.hpp"
#include "bcl/params.hpp"

namespace bcl {

/// Graph autoencoder: two-layer GCN encoder (relu after each propagation
/// step) plus a single linear decoder back to the feature dimension. Trained
/// with feature-reconstruction MSE.
struct GaeModel {
  int feature_dim = 0;
  int hidden = 0;
  int embed = 0;
  ParamStore params;  // "enc1" (f x h), "enc2" (h x d), "dec" (d x f)
};

struct GaeTrainResult {
  GaeModel model;
  std::vector<double> loss_per_epoch;
  int epochs_run = 0;
};

/// Unsupervised pretraining over all nodes with Adam. Deterministic in the
/// seed. Stops early when the per-epoch loss improvement stays below 1e-6 for
/// 20 consecutive epochs; throws (with the epoch number) if the loss goes
/// non-finite.
GaeTrainResult gae_train(const AttributedGraph& graph,
                         const NormalizedAdjacency& adj, int hidden, int embed,
                         int epochs, std::uint64_t seed,
                         AdamConfig opt = {});

/// Encoder output only (decoder not applied); row i is the embedding of
/// node i.
DenseMatrix gae_embed(const GaeModel& model, const AttributedGraph& graph,
                      const NormalizedAdjacency& adj);

/// Reconstruction loss at the model's current parameters; fills the gradient
/// buffers when requested. This is the exact loss/backward pair the trainer
/// uses, exposed so it can be gradient-checked.
double gae_loss(GaeModel& model, const AttributedGraph& graph,
                const NormalizedAdjacency& adj, bool with_grads);

enum class BdsNorm { l1, l2 };

/// Per-node difficulty: distance of each embedding row from the column-wise
/// mean embedding. L1 by default, L2 available as a config option.
std::vector<double> compute_bds(const DenseMatrix& embeddings,
                                BdsNorm norm = BdsNorm::l1);

/// Ascending/descending curriculum orderings derived from the difficulty
/// scores. q_hete is exactly the reverse of q_homo.
struct DifficultyRanking {
  std::vector<double> bds;
  std::vector<int> q_homo;  // ascending difficulty, ties by ascending index
  std::vector<int> q_hete;  // reverse(q_homo)
};

DifficultyRanking rank_nodes(const std::vector<double>& bds);

/// CSV dump with columns node_id, bds, rank_homo (position in q_homo).
void write_bds_csv(const DifficultyRanking& ranking, const std::string& path);

}  // namespace bcl
