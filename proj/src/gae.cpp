#include "bcl/gae.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bcl/losses.hpp"
#include "bcl/rng.hpp"

namespace bcl {

namespace {

struct GaeTrace {
  DenseMatrix z1, p1, h1;  // z1 = A*x, p1 = z1*W1, h1 = relu(p1)
  DenseMatrix z2, p2, h2;  // z2 = A*h1, p2 = z2*W2, h2 = relu(p2)
  DenseMatrix recon;       // h2 * Wdec
};

GaeTrace gae_forward(const GaeModel& model, const DenseMatrix& x,
                     const NormalizedAdjacency& adj) {
  GaeTrace t;
  t.z1 = spmm(adj, x);
  t.p1 = dense_matmul(t.z1, model.params.value("enc1"));
  t.h1 = relu(t.p1);
  t.z2 = spmm(adj, t.h1);
  t.p2 = dense_matmul(t.z2, model.params.value("enc2"));
  t.h2 = relu(t.p2);
  t.recon = dense_matmul(t.h2, model.params.value("dec"));
  return t;
}

void gae_backward(GaeModel& model, const GaeTrace& t,
                  const DenseMatrix& d_recon, const NormalizedAdjacency& adj) {
  model.params.grad("dec") = dense_matmul(transpose(t.h2), d_recon);
  const DenseMatrix d_h2 =
      dense_matmul(d_recon, transpose(model.params.value("dec")));
  const DenseMatrix d_p2 = relu_backward(d_h2, t.p2);
  model.params.grad("enc2") = dense_matmul(transpose(t.z2), d_p2);
  const DenseMatrix d_z2 =
      dense_matmul(d_p2, transpose(model.params.value("enc2")));
  const DenseMatrix d_h1 = spmm(adj, d_z2);  // adjacency is symmetric
  const DenseMatrix d_p1 = relu_backward(d_h1, t.p1);
  model.params.grad("enc1") = dense_matmul(transpose(t.z1), d_p1);
}

}  // namespace

GaeTrainResult gae_train(const AttributedGraph& graph,
                         const NormalizedAdjacency& adj, int hidden, int embed,
                         int epochs, std::uint64_t seed, AdamConfig opt) {
  if (epochs < 1) {
    throw std::invalid_argument("gae_train: epochs must be >= 1");
  }
  if (hidden < 1 || embed < 1) {
    throw std::invalid_argument("gae_train: hidden and embed must be >= 1");
  }

  GaeTrainResult res;
  GaeModel& model = res.model;
  model.feature_dim = graph.feature_dim();
  model.hidden = hidden;
  model.embed = embed;
  model.params.add("enc1", DenseMatrix(model.feature_dim, hidden));
  model.params.add("enc2", DenseMatrix(hidden, embed));
  model.params.add("dec", DenseMatrix(embed, model.feature_dim));
  glorot_init(model.params, derive_seed(seed, "gae_init"));

  AdamState optimizer(opt);
  constexpr double kImprovementTol = 1e-6;
  constexpr int kStallWindow = 20;
  int stalled = 0;
  double prev_loss = std::numeric_limits<double>::infinity();

  for (int epoch = 0; epoch < epochs; ++epoch) {
    const GaeTrace trace = gae_forward(model, graph.features, adj);
    const LossResult loss = mse_loss(trace.recon, graph.features);
    if (!std::isfinite(loss.loss)) {
      throw std::runtime_error("gae_train: loss diverged at epoch " +
                               std::to_string(epoch));
    }
    res.loss_per_epoch.push_back(loss.loss);
    gae_backward(model, trace, loss.grad, adj);
    adam_step(model.params, optimizer);
    ++res.epochs_run;

    stalled = (prev_loss - loss.loss < kImprovementTol) ? stalled + 1 : 0;
    prev_loss = loss.loss;
    if (stalled >= kStallWindow) break;
  }
  return res;
}

DenseMatrix gae_embed(const GaeModel& model, const AttributedGraph& graph,
                      const NormalizedAdjacency& adj) {
  if (graph.feature_dim() != model.feature_dim) {
    throw std::invalid_argument(
        "gae_embed: graph feature dim " + std::to_string(graph.feature_dim()) +
        " does not match model feature dim " +
        std::to_string(model.feature_dim));
  }
  return gae_forward(model, graph.features, adj).h2;
}

double gae_loss(GaeModel& model, const AttributedGraph& graph,
                const NormalizedAdjacency& adj, bool with_grads) {
  const GaeTrace trace = gae_forward(model, graph.features, adj);
  const LossResult loss = mse_loss(trace.recon, graph.features);
  if (with_grads) {
    gae_backward(model, trace, loss.grad, adj);
  }
  return loss.loss;
}

std::vector<double> compute_bds(const DenseMatrix& embeddings, BdsNorm norm) {
  const int n = embeddings.rows;
  const int d = embeddings.cols;
  if (n == 0 || d == 0) {
    throw std::invalid_argument("compute_bds: empty embedding matrix");
  }
  std::vector<double> mean(static_cast<std::size_t>(d));
  std::vector<double> column(static_cast<std::size_t>(n));
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] =
        embeddings(i, k);
    mean[static_cast<std::size_t>(k)] =
        pairwise_sum(column) / static_cast<double>(n);
  }
  std::vector<double> bds(static_cast<std::size_t>(n));
  std::vector<double> terms(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) {
      const double diff = embeddings(i, k) - mean[static_cast<std::size_t>(k)];
      terms[static_cast<std::size_t>(k)] =
          norm == BdsNorm::l1 ? std::abs(diff) : diff * diff;
    }
    const double acc = pairwise_sum(terms);
    bds[static_cast<std::size_t>(i)] =
        norm == BdsNorm::l1 ? acc : std::sqrt(acc);
  }
  return bds;
}

DifficultyRanking rank_nodes(const std::vector<double>& bds) {
  for (double s : bds) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("rank_nodes: non-finite difficulty score");
    }
  }
  DifficultyRanking ranking;
  ranking.bds = bds;
  ranking.q_homo.resize(bds.size());
  std::iota(ranking.q_homo.begin(), ranking.q_homo.end(), 0);
  std::stable_sort(ranking.q_homo.begin(), ranking.q_homo.end(),
                   [&](int a, int b) {
                     return bds[static_cast<std::size_t>(a)] <
                            bds[static_cast<std::size_t>(b)];
                   });
  ranking.q_hete.assign(ranking.q_homo.rbegin(), ranking.q_homo.rend());
  return ranking;
}

void write_bds_csv(const DifficultyRanking& ranking, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_bds_csv: cannot open '" + path + "'");
  }
  std::vector<int> rank_of(ranking.q_homo.size());
  for (std::size_t pos = 0; pos < ranking.q_homo.size(); ++pos) {
    rank_of[static_cast<std::size_t>(ranking.q_homo[pos])] =
        static_cast<int>(pos);
  }
  out << "node_id,bds,rank_homo\n";
  for (std::size_t i = 0; i < ranking.bds.size(); ++i) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), ranking.bds[i]);
    out << i << "," << std::string(buf, res.ptr) << "," << rank_of[i] << "\n";
  }
}

}  // namespace bcl
