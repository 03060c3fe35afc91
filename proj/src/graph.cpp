#include "bcl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcl/rng.hpp"

namespace bcl {

int AttributedGraph::num_anomalies() const {
  int n = 0;
  for (int y : labels) n += (y == 1);
  return n;
}

double AttributedGraph::anomaly_ratio() const {
  if (num_nodes == 0) return 0.0;
  return static_cast<double>(num_anomalies()) /
         static_cast<double>(num_nodes);
}

AttributedGraph make_graph(int num_nodes,
                           std::vector<std::pair<int, int>> edges,
                           DenseMatrix features, std::vector<int> labels) {
  if (num_nodes <= 0) {
    throw std::invalid_argument("make_graph: graph must have at least 1 node");
  }
  if (features.rows != num_nodes) {
    throw std::invalid_argument(
        "make_graph: feature matrix has " + std::to_string(features.rows) +
        " rows but graph has " + std::to_string(num_nodes) + " nodes");
  }
  if (static_cast<int>(labels.size()) != num_nodes) {
    throw std::invalid_argument(
        "make_graph: label count " + std::to_string(labels.size()) +
        " does not match node count " + std::to_string(num_nodes));
  }
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw std::invalid_argument("make_graph: labels must be 0 or 1");
    }
  }
  if (!features.all_finite()) {
    throw std::invalid_argument("make_graph: non-finite feature value");
  }
  for (auto& [u, v] : edges) {
    if (u == v) {
      throw std::invalid_argument("make_graph: self-loop edge at node " +
                                  std::to_string(u));
    }
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw std::invalid_argument(
          "make_graph: dangling edge endpoint (" + std::to_string(u) + ", " +
          std::to_string(v) + ") with " + std::to_string(num_nodes) +
          " nodes");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      throw std::invalid_argument(
          "make_graph: duplicate edge (" + std::to_string(edges[i].first) +
          ", " + std::to_string(edges[i].second) + ")");
    }
  }
  AttributedGraph g;
  g.num_nodes = num_nodes;
  g.edges = std::move(edges);
  g.features = std::move(features);
  g.labels = std::move(labels);
  return g;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  throw std::runtime_error("parse error in '" + path + "' line " +
                           std::to_string(line_no) + ": " + what);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

AttributedGraph load_graph(const std::string& edge_path,
                           const std::string& feature_path,
                           const std::string& label_path) {
  std::ifstream feat_in(feature_path);
  if (!feat_in) {
    throw std::runtime_error("load_graph: cannot open '" + feature_path + "'");
  }
  std::vector<std::vector<double>> feature_rows;
  std::string line;
  std::size_t line_no = 0;
  int feature_dim = -1;
  while (std::getline(feat_in, line)) {
    ++line_no;
    if (blank(line)) parse_fail(feature_path, line_no, "blank feature line");
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() &&
               (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t'))
          ++used;
        if (used != cell.size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        parse_fail(feature_path, line_no, "bad real value '" + cell + "'");
      }
    }
    if (row.empty()) parse_fail(feature_path, line_no, "no feature values");
    if (feature_dim < 0) {
      feature_dim = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != feature_dim) {
      parse_fail(feature_path, line_no,
                 "expected " + std::to_string(feature_dim) +
                     " values, found " + std::to_string(row.size()));
    }
    feature_rows.push_back(std::move(row));
  }
  const int num_nodes = static_cast<int>(feature_rows.size());
  if (num_nodes == 0) {
    throw std::runtime_error("load_graph: feature file '" + feature_path +
                             "' is empty");
  }
  DenseMatrix features(num_nodes, feature_dim);
  for (int i = 0; i < num_nodes; ++i) {
    for (int j = 0; j < feature_dim; ++j) {
      features(i, j) = feature_rows[static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(j)];
    }
  }

  std::ifstream label_in(label_path);
  if (!label_in) {
    throw std::runtime_error("load_graph: cannot open '" + label_path + "'");
  }
  std::vector<int> labels;
  line_no = 0;
  while (std::getline(label_in, line)) {
    ++line_no;
    if (blank(line)) parse_fail(label_path, line_no, "blank label line");
    std::stringstream ss(line);
    int y = -1;
    std::string extra;
    if (!(ss >> y) || (ss >> extra) || (y != 0 && y != 1)) {
      parse_fail(label_path, line_no, "expected a single 0 or 1");
    }
    labels.push_back(y);
  }
  if (static_cast<int>(labels.size()) != num_nodes) {
    throw std::runtime_error(
        "load_graph: dimension mismatch: " + std::to_string(num_nodes) +
        " feature rows vs " + std::to_string(labels.size()) + " labels");
  }

  std::ifstream edge_in(edge_path);
  if (!edge_in) {
    throw std::runtime_error("load_graph: cannot open '" + edge_path + "'");
  }
  std::vector<std::pair<int, int>> edges;
  line_no = 0;
  while (std::getline(edge_in, line)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::stringstream ss(line);
    int u = -1;
    int v = -1;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra)) {
      parse_fail(edge_path, line_no, "expected two node ids");
    }
    if (u == v) {
      parse_fail(edge_path, line_no,
                 "self-loop edge at node " + std::to_string(u));
    }
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      parse_fail(edge_path, line_no,
                 "dangling endpoint (" + std::to_string(u) + ", " +
                     std::to_string(v) + ") with " + std::to_string(num_nodes) +
                     " nodes");
    }
    edges.emplace_back(u, v);
  }

  return make_graph(num_nodes, std::move(edges), std::move(features),
                    std::move(labels));
}

void save_graph(const AttributedGraph& graph, const std::string& edge_path,
                const std::string& feature_path,
                const std::string& label_path) {
  std::ofstream edge_out(edge_path);
  if (!edge_out) {
    throw std::runtime_error("save_graph: cannot open '" + edge_path + "'");
  }
  for (const auto& [u, v] : graph.edges) {
    edge_out << u << " " << v << "\n";
  }
  std::ofstream feat_out(feature_path);
  if (!feat_out) {
    throw std::runtime_error("save_graph: cannot open '" + feature_path + "'");
  }
  for (int i = 0; i < graph.num_nodes; ++i) {
    for (int j = 0; j < graph.feature_dim(); ++j) {
      if (j > 0) feat_out << ",";
      feat_out << format_double(graph.features(i, j));
    }
    feat_out << "\n";
  }
  std::ofstream label_out(label_path);
  if (!label_out) {
    throw std::runtime_error("save_graph: cannot open '" + label_path + "'");
  }
  for (int y : graph.labels) {
    label_out << y << "\n";
  }
  if (!edge_out || !feat_out || !label_out) {
    throw std::runtime_error("save_graph: write failed");
  }
}

namespace {

/// Largest-remainder allocation of n items over the three split fractions.
std::array<int, 3> allocate_counts(int n, const std::array<double, 3>& ratios) {
  std::array<int, 3> counts{};
  std::array<double, 3> remainders{};
  int assigned = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const double exact = ratios[s] * static_cast<double>(n);
    counts[s] = static_cast<int>(std::floor(exact));
    remainders[s] = exact - std::floor(exact);
    assigned += counts[s];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (int left = n - assigned, i = 0; left > 0; --left, ++i) {
    counts[order[static_cast<std::size_t>(i)]]++;
  }
  return counts;
}

}  // namespace

NodeSplit make_split(const AttributedGraph& graph,
                     std::array<double, 3> ratios, std::uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (r <= 0.0) {
      throw std::invalid_argument("make_split: fractions must be positive");
    }
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("make_split: fractions must sum to 1");
  }

  std::vector<int> normal_nodes;
  std::vector<int> anomaly_nodes;
  for (int i = 0; i < graph.num_nodes; ++i) {
    (graph.labels[static_cast<std::size_t>(i)] == 1 ? anomaly_nodes
                                                    : normal_nodes)
        .push_back(i);
  }

  Rng rng(derive_seed(seed, "split"));
  NodeSplit split;
  for (std::vector<int>* group : {&normal_nodes, &anomaly_nodes}) {
    rng.shuffle(*group);
    const auto counts = allocate_counts(static_cast<int>(group->size()), ratios);
    std::size_t pos = 0;
    for (int k = 0; k < counts[0]; ++k) split.train.push_back((*group)[pos++]);
    for (int k = 0; k < counts[1]; ++k) split.val.push_back((*group)[pos++]);
    for (int k = 0; k < counts[2]; ++k) split.test.push_back((*group)[pos++]);
  }

  int train_anomalies = 0;
  int train_normals = 0;
  for (int node : split.train) {
    (graph.labels[static_cast<std::size_t>(node)] == 1 ? train_anomalies
                                                       : train_normals)++;
  }
  if (train_anomalies < 1 || train_normals < 1) {
    throw std::invalid_argument(
        "make_split: train split needs at least one anomaly and one normal "
        "node (got " +
        std::to_string(train_anomalies) + " anomalies, " +
        std::to_string(train_normals) + " normals)");
  }

  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

NormalizedAdjacency normalize_adjacency(const AttributedGraph& graph) {
  const int n = graph.num_nodes;
  std::vector<double> degree(static_cast<std::size_t>(n), 1.0);  // A + I
  for (const auto& [u, v] : graph.edges) {
    degree[static_cast<std::size_t>(u)] += 1.0;
    degree[static_cast<std::size_t>(v)] += 1.0;
  }
  std::vector<std::tuple<int, int, double>> triplets;
  triplets.reserve(graph.edges.size() * 2 + static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, 1.0 / degree[static_cast<std::size_t>(i)]);
  }
  for (const auto& [u, v] : graph.edges) {
    const double w = 1.0 / std::sqrt(degree[static_cast<std::size_t>(u)] *
                                     degree[static_cast<std::size_t>(v)]);
    triplets.emplace_back(u, v, w);
    triplets.emplace_back(v, u, w);
  }
  NormalizedAdjacency adj;
  adj.matrix = csr_from_triplets(n, n, std::move(triplets));
  return adj;
}

DenseMatrix spmm(const NormalizedAdjacency& adj, const DenseMatrix& h) {
  return spmm(adj.matrix, h);
}

MeanAggregator build_mean_aggregator(const AttributedGraph& graph) {
  const int n = graph.num_nodes;
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  for (const auto& [u, v] : graph.edges) {
    degree[static_cast<std::size_t>(u)] += 1.0;
    degree[static_cast<std::size_t>(v)] += 1.0;
  }
  std::vector<std::tuple<int, int, double>> triplets;
  triplets.reserve(graph.edges.size() * 2);
  for (const auto& [u, v] : graph.edges) {
    triplets.emplace_back(u, v, 1.0 / degree[static_cast<std::size_t>(u)]);
    triplets.emplace_back(v, u, 1.0 / degree[static_cast<std::size_t>(v)]);
  }
  MeanAggregator agg;
  agg.forward = csr_from_triplets(n, n, std::move(triplets));
  agg.transposed = transpose(agg.forward);
  return agg;
}

}  // namespace bcl
