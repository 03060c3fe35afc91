#pragma once

#include <cstdint>
#include <string>

#include "bcl/graph.hpp"

namespace bcl {

enum class AnomalyKind { contextual, structural, mixed };

AnomalyKind anomaly_kind_from_string(const std::string& s);
std::string to_string(AnomalyKind kind);

/// Stochastic-block-model graph with per-block Gaussian feature centers and
/// injected anomalies. Block of node i is i % num_blocks.
///   contextual: anomaly features resampled around a center pushed 6x
///               noise_scale away from the node's block center
///   structural: anomaly nodes rewired into small dense cliques (original
///               edges dropped), features left normal
///   mixed:      alternating contextual/structural
/// The number of anomalies is ceil(anomaly_rate * num_nodes).
struct SyntheticSpec {
  int num_nodes = 500;
  int num_blocks = 4;
  double intra_edge_prob = 0.05;
  double inter_edge_prob = 0.005;
  int feature_dim = 16;
  double anomaly_rate = 0.05;
  AnomalyKind anomaly_kind = AnomalyKind::contextual;
  double noise_scale = 1.0;
};

void validate(const SyntheticSpec& spec);

AttributedGraph generate_synthetic(const SyntheticSpec& spec,
                                   std::uint64_t seed);

}  // namespace bcl
