#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcl/graph.hpp"
#include "bcl/params.hpp"

namespace bcl {

enum class DetectorKind { mlp, gcn, sage };

DetectorKind detector_kind_from_string(const std::string& s);
std::string to_string(DetectorKind kind);

/// Two-layer host detector with a 2-wide output head (normal, anomaly).
///   mlp:  relu(X W1) W2
///   gcn:  A relu(A X W1) W2
///   sage: [H1 | M H1] W2 with H1 = relu([X | M X] W1), M = mean aggregator
struct DetectorModel {
  DetectorKind kind = DetectorKind::mlp;
  int feature_dim = 0;
  int hidden = 0;
  ParamStore params;  // "w1", "w2"
};

/// Glorot-uniform initialization, deterministic in the seed.
DetectorModel detector_init(DetectorKind kind, int feature_dim, int hidden,
                            std::uint64_t seed);

/// Forward intermediates kept around for the backward pass.
struct DetectorTrace {
  DenseMatrix in1;  // layer-1 input (X, A*X, or [X | M X])
  DenseMatrix p1;   // in1 * w1
  DenseMatrix h1;   // relu(p1)
  DenseMatrix in2;  // layer-2 input (h1, A*h1, or [h1 | M h1])
  DenseMatrix logits;
};

DetectorTrace detector_forward_trace(const DetectorModel& model,
                                     const DenseMatrix& features,
                                     const NormalizedAdjacency& adj,
                                     const MeanAggregator* mean);

/// Fills the model's gradient buffers from d(loss)/d(logits).
void detector_backward(DetectorModel& model, const DetectorTrace& trace,
                       const DenseMatrix& d_logits,
                       const NormalizedAdjacency& adj,
                       const MeanAggregator* mean);

/// N x 2 logits. The sage detector builds its mean aggregator on the fly;
/// training code uses detector_forward_trace with a prebuilt one instead.
DenseMatrix detector_forward(const DetectorModel& model,
                             const AttributedGraph& graph,
                             const NormalizedAdjacency& adj);

/// Softmax probability of the anomaly class for every row of an Nx2 logit
/// matrix; monotone in logits[1] - logits[0].
std::vector<double> anomaly_score(const DenseMatrix& logits);

}  // namespace bcl
