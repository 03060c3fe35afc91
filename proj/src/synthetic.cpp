#include "bcl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bcl/rng.hpp"

namespace bcl {

AnomalyKind anomaly_kind_from_string(const std::string& s) {
  if (s == "contextual") return AnomalyKind::contextual;
  if (s == "structural") return AnomalyKind::structural;
  if (s == "mixed") return AnomalyKind::mixed;
  throw std::invalid_argument("unknown anomaly kind '" + s +
                              "' (expected contextual, structural or mixed)");
}

std::string to_string(AnomalyKind kind) {
  switch (kind) {
    case AnomalyKind::contextual: return "contextual";
    case AnomalyKind::structural: return "structural";
    case AnomalyKind::mixed: return "mixed";
  }
  throw std::logic_error("unreachable anomaly kind");
}

void validate(const SyntheticSpec& spec) {
  if (spec.num_nodes < 2) {
    throw std::invalid_argument("SyntheticSpec: need at least 2 nodes");
  }
  if (spec.num_blocks < 1 || spec.num_blocks > spec.num_nodes) {
    throw std::invalid_argument("SyntheticSpec: bad block count");
  }
  if (spec.intra_edge_prob < 0.0 || spec.intra_edge_prob > 1.0 ||
      spec.inter_edge_prob < 0.0 || spec.inter_edge_prob > 1.0) {
    throw std::invalid_argument(
        "SyntheticSpec: edge probabilities must lie in [0, 1]");
  }
  if (spec.feature_dim < 1) {
    throw std::invalid_argument("SyntheticSpec: feature_dim must be >= 1");
  }
  if (!(spec.anomaly_rate > 0.0 && spec.anomaly_rate < 0.5)) {
    throw std::invalid_argument(
        "SyntheticSpec: anomaly_rate must lie in (0, 0.5)");
  }
  if (!(spec.noise_scale > 0.0)) {
    throw std::invalid_argument("SyntheticSpec: noise_scale must be positive");
  }
}

namespace {

constexpr double kContextualShiftFactor = 6.0;  // > the 5x contract
constexpr double kBlockCenterScale = 2.0;       // relative to noise_scale
constexpr int kCliqueSize = 6;

}  // namespace

AttributedGraph generate_synthetic(const SyntheticSpec& spec,
                                   std::uint64_t seed) {
  validate(spec);
  const int n = spec.num_nodes;
  const int f = spec.feature_dim;

  // Anomaly count: ceil(rate * n), with a tiny slack so that mathematically
  // integral products (e.g. 0.1 * 300) do not round up past the integer.
  const int num_anomalies = static_cast<int>(
      std::ceil(spec.anomaly_rate * static_cast<double>(n) - 1e-9));

  Rng label_rng(derive_seed(seed, "synthetic_labels"));
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  label_rng.shuffle(ids);
  std::vector<int> anomaly_ids(ids.begin(), ids.begin() + num_anomalies);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  // 0 = normal, 1 = contextual anomaly, 2 = structural anomaly
  std::vector<int> role(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < anomaly_ids.size(); ++k) {
    const int node = anomaly_ids[k];
    labels[static_cast<std::size_t>(node)] = 1;
    switch (spec.anomaly_kind) {
      case AnomalyKind::contextual:
        role[static_cast<std::size_t>(node)] = 1;
        break;
      case AnomalyKind::structural:
        role[static_cast<std::size_t>(node)] = 2;
        break;
      case AnomalyKind::mixed:
        role[static_cast<std::size_t>(node)] = (k % 2 == 0) ? 1 : 2;
        break;
    }
  }

  // Block-model edges; structural anomalies lose their organic edges below.
  Rng edge_rng(derive_seed(seed, "synthetic_edges"));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_block = (i % spec.num_blocks) == (j % spec.num_blocks);
      const double p = same_block ? spec.intra_edge_prob : spec.inter_edge_prob;
      if (edge_rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  const bool has_structural =
      std::any_of(role.begin(), role.end(), [](int r) { return r == 2; });
  if (has_structural) {
    std::vector<int> clique_nodes;
    for (int node : anomaly_ids) {
      if (role[static_cast<std::size_t>(node)] == 2) {
        clique_nodes.push_back(node);
      }
    }
    std::erase_if(edges, [&](const std::pair<int, int>& e) {
      return role[static_cast<std::size_t>(e.first)] == 2 ||
             role[static_cast<std::size_t>(e.second)] == 2;
    });
    std::set<std::pair<int, int>> existing(edges.begin(), edges.end());
    for (std::size_t base = 0; base < clique_nodes.size();
         base += kCliqueSize) {
      const std::size_t end =
          std::min(base + kCliqueSize, clique_nodes.size());
      for (std::size_t a = base; a < end; ++a) {
        for (std::size_t b = a + 1; b < end; ++b) {
          int u = clique_nodes[a];
          int v = clique_nodes[b];
          if (u > v) std::swap(u, v);
          if (existing.insert({u, v}).second) edges.emplace_back(u, v);
        }
      }
    }
  }

  // Features: per-block Gaussian centers. Contextual anomalies are resampled
  // from a single far-off Gaussian whose center sits a fixed multiple of the
  // noise scale away from the node's block center, along one direction shared
  // by the whole graph.
  Rng feat_rng(derive_seed(seed, "synthetic_features"));
  DenseMatrix centers(spec.num_blocks, f);
  for (double& v : centers.values) {
    v = kBlockCenterScale * spec.noise_scale * feat_rng.normal();
  }

  std::vector<double> direction(static_cast<std::size_t>(f));
  double norm_sq = 0.0;
  for (double& d : direction) {
    d = feat_rng.normal();
    norm_sq += d * d;
  }
  const double inv_norm = 1.0 / std::sqrt(std::max(norm_sq, 1e-300));
  const double shift = kContextualShiftFactor * spec.noise_scale;

  DenseMatrix features(n, f);
  for (int i = 0; i < n; ++i) {
    const int block = i % spec.num_blocks;
    const bool contextual = role[static_cast<std::size_t>(i)] == 1;
    for (int k = 0; k < f; ++k) {
      features(i, k) = centers(block, k) +
                       spec.noise_scale * feat_rng.normal();
      if (contextual) {
        features(i, k) +=
            shift * direction[static_cast<std::size_t>(k)] * inv_norm;
      }
    }
  }

  return make_graph(n, std::move(edges), std::move(features),
                    std::move(labels));
}

}  // namespace bcl
