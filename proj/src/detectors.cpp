#include "bcl/detectors.hpp"

#include <cmath>
#include <stdexcept>

#include "bcl/rng.hpp"

namespace bcl {

DetectorKind detector_kind_from_string(const std::string& s) {
  if (s == "mlp") return DetectorKind::mlp;
  if (s == "gcn") return DetectorKind::gcn;
  if (s == "sage") return DetectorKind::sage;
  throw std::invalid_argument("unknown detector kind '" + s +
                              "' (expected mlp, gcn or sage)");
}

std::string to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::mlp: return "mlp";
    case DetectorKind::gcn: return "gcn";
    case DetectorKind::sage: return "sage";
  }
  throw std::logic_error("unreachable detector kind");
}

DetectorModel detector_init(DetectorKind kind, int feature_dim, int hidden,
                            std::uint64_t seed) {
  if (feature_dim < 1 || hidden < 1) {
    throw std::invalid_argument(
        "detector_init: feature_dim and hidden must be >= 1");
  }
  DetectorModel model;
  model.kind = kind;
  model.feature_dim = feature_dim;
  model.hidden = hidden;
  const int in1 = kind == DetectorKind::sage ? 2 * feature_dim : feature_dim;
  const int in2 = kind == DetectorKind::sage ? 2 * hidden : hidden;
  model.params.add("w1", DenseMatrix(in1, hidden));
  model.params.add("w2", DenseMatrix(in2, 2));
  glorot_init(model.params, derive_seed(seed, "detector_init"));
  return model;
}

DetectorTrace detector_forward_trace(const DetectorModel& model,
                                     const DenseMatrix& features,
                                     const NormalizedAdjacency& adj,
                                     const MeanAggregator* mean) {
  if (features.cols != model.feature_dim) {
    throw std::invalid_argument(
        "detector_forward: feature dim " + std::to_string(features.cols) +
        " does not match model feature dim " +
        std::to_string(model.feature_dim));
  }
  DetectorTrace t;
  switch (model.kind) {
    case DetectorKind::mlp:
      t.in1 = features;
      t.p1 = dense_matmul(t.in1, model.params.value("w1"));
      t.h1 = relu(t.p1);
      t.in2 = t.h1;
      break;
    case DetectorKind::gcn:
      t.in1 = spmm(adj, features);
      t.p1 = dense_matmul(t.in1, model.params.value("w1"));
      t.h1 = relu(t.p1);
      t.in2 = spmm(adj, t.h1);
      break;
    case DetectorKind::sage: {
      if (mean == nullptr) {
        throw std::invalid_argument(
            "detector_forward: sage requires a mean aggregator");
      }
      t.in1 = hconcat(features, spmm(mean->forward, features));
      t.p1 = dense_matmul(t.in1, model.params.value("w1"));
      t.h1 = relu(t.p1);
      t.in2 = hconcat(t.h1, spmm(mean->forward, t.h1));
      break;
    }
  }
  t.logits = dense_matmul(t.in2, model.params.value("w2"));
  return t;
}

void detector_backward(DetectorModel& model, const DetectorTrace& trace,
                       const DenseMatrix& d_logits,
                       const NormalizedAdjacency& adj,
                       const MeanAggregator* mean) {
  model.params.grad("w2") = dense_matmul(transpose(trace.in2), d_logits);
  const DenseMatrix d_in2 =
      dense_matmul(d_logits, transpose(model.params.value("w2")));

  DenseMatrix d_h1;
  switch (model.kind) {
    case DetectorKind::mlp:
      d_h1 = d_in2;
      break;
    case DetectorKind::gcn:
      d_h1 = spmm(adj, d_in2);  // adjacency is symmetric
      break;
    case DetectorKind::sage: {
      const int h = model.hidden;
      const DenseMatrix left = slice_cols(d_in2, 0, h);
      const DenseMatrix right = slice_cols(d_in2, h, 2 * h);
      d_h1 = add(left, spmm(mean->transposed, right));
      break;
    }
  }
  const DenseMatrix d_p1 = relu_backward(d_h1, trace.p1);
  model.params.grad("w1") = dense_matmul(transpose(trace.in1), d_p1);
}

DenseMatrix detector_forward(const DetectorModel& model,
                             const AttributedGraph& graph,
                             const NormalizedAdjacency& adj) {
  if (model.kind == DetectorKind::sage) {
    const MeanAggregator mean = build_mean_aggregator(graph);
    return detector_forward_trace(model, graph.features, adj, &mean).logits;
  }
  return detector_forward_trace(model, graph.features, adj, nullptr).logits;
}

std::vector<double> anomaly_score(const DenseMatrix& logits) {
  if (logits.cols != 2) {
    throw std::invalid_argument("anomaly_score: logits must have 2 columns");
  }
  std::vector<double> scores(static_cast<std::size_t>(logits.rows));
  for (int i = 0; i < logits.rows; ++i) {
    const double l0 = logits(i, 0);
    const double l1 = logits(i, 1);
    if (!std::isfinite(l0) || !std::isfinite(l1)) {
      throw std::invalid_argument("anomaly_score: non-finite logit");
    }
    const double shift = std::max(l0, l1);
    const double e0 = std::exp(l0 - shift);
    const double e1 = std::exp(l1 - shift);
    scores[static_cast<std::size_t>(i)] = e1 / (e0 + e1);
  }
  return scores;
}

}  // namespace bcl
