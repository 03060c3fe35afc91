#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcl/matrix.hpp"
#include "bcl/sparse.hpp"

namespace bcl {

/// Undirected attributed graph with binary anomaly labels. Edges are stored
/// once in canonical (i < j) order, sorted and deduplicated; self-loops are
/// rejected. Immutable after construction.
struct AttributedGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  DenseMatrix features;     // num_nodes x feature_dim
  std::vector<int> labels;  // 0 = normal, 1 = anomaly

  int feature_dim() const { return features.cols; }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_anomalies() const;
  double anomaly_ratio() const;
};

/// Validates and canonicalizes the pieces of a graph; throws
/// std::invalid_argument on self-loops, duplicate edges, dangling endpoints
/// or shape mismatches.
AttributedGraph make_graph(int num_nodes, std::vector<std::pair<int, int>> edges,
                           DenseMatrix features, std::vector<int> labels);

/// Reads the three-file dataset format:
///   edge file:    one edge per line, two whitespace-separated node ids,
///                 '#'-prefixed lines ignored
///   feature file: one node per line, comma-separated decimal reals
///   label file:   one 0/1 per line
/// Parse failures report the offending file and line number.
AttributedGraph load_graph(const std::string& edge_path,
                           const std::string& feature_path,
                           const std::string& label_path);

/// Writes the canonical representation; integers bit-for-bit, reals in
/// shortest round-trip decimal, so load_graph(save_graph(g)) == g.
void save_graph(const AttributedGraph& graph, const std::string& edge_path,
                const std::string& feature_path,
                const std::string& label_path);

/// Disjoint train/val/test node index sets, each sorted ascending.
struct NodeSplit {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;
};

/// Label-stratified split with the given (train, val, test) fractions.
/// Deterministic in the seed. Throws when the train split would miss either
/// class entirely.
NodeSplit make_split(const AttributedGraph& graph,
                     std::array<double, 3> ratios, std::uint64_t seed);

/// Symmetric GCN propagation operator D^{-1/2} (A + I) D^{-1/2} where D is
/// the degree matrix of A + I. Isolated nodes get a diagonal entry of exactly
/// 1.
struct NormalizedAdjacency {
  CsrMatrix matrix;
};

NormalizedAdjacency normalize_adjacency(const AttributedGraph& graph);

DenseMatrix spmm(const NormalizedAdjacency& adj, const DenseMatrix& h);

/// Row-normalized neighbor averaging operator (no self-loop) and its
/// transpose, used by the mean-aggregator SAGE detector. Isolated nodes get
/// an all-zero row.
struct MeanAggregator {
  CsrMatrix forward;
  CsrMatrix transposed;
};

MeanAggregator build_mean_aggregator(const AttributedGraph& graph);

}  // namespace bcl
