#include "bcl/curriculum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "bcl/losses.hpp"
#include "bcl/metrics.hpp"

namespace bcl {

PacingKind pacing_from_string(const std::string& s) {
  if (s == "linear") return PacingKind::linear;
  if (s == "root") return PacingKind::root;
  if (s == "geometric") return PacingKind::geometric;
  throw std::invalid_argument("unknown pacing kind '" + s +
                              "' (expected linear, root or geometric)");
}

std::string to_string(PacingKind kind) {
  switch (kind) {
    case PacingKind::linear: return "linear";
    case PacingKind::root: return "root";
    case PacingKind::geometric: return "geometric";
  }
  throw std::logic_error("unreachable pacing kind");
}

double pacing_value(PacingKind kind, double lambda0, int t_max, int t) {
  if (!(lambda0 > 0.0 && lambda0 <= 1.0)) {
    throw std::invalid_argument("pacing_value: lambda0 must lie in (0, 1]");
  }
  if (t_max < 1) {
    throw std::invalid_argument("pacing_value: t_max must be >= 1");
  }
  if (t < 0) {
    throw std::invalid_argument("pacing_value: t must be >= 0");
  }
  // Boundary contract before any float noise.
  if (t == 0) return lambda0;
  if (t >= t_max) return 1.0;

  const double progress = static_cast<double>(t) / static_cast<double>(t_max);
  switch (kind) {
    case PacingKind::linear:
      return std::min(1.0, lambda0 + (1.0 - lambda0) * progress);
    case PacingKind::root:
      return std::min(
          1.0, std::sqrt(lambda0 * lambda0 +
                         (1.0 - lambda0 * lambda0) * progress));
    case PacingKind::geometric: {
      const double log_l0 = std::log2(lambda0);
      return std::min(1.0, std::exp2(log_l0 - log_l0 * progress));
    }
  }
  throw std::logic_error("unreachable pacing kind");
}

void validate(const CurriculumConfig& config) {
  if (!(config.lambda0 > 0.0 && config.lambda0 <= 1.0)) {
    throw std::invalid_argument("CurriculumConfig: lambda0 must lie in (0, 1]");
  }
  if (config.t_max < 1) {
    throw std::invalid_argument("CurriculumConfig: t_max must be >= 1");
  }
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("CurriculumConfig: alpha must lie in [0, 1]");
  }
  if (config.post_t_patience < 1) {
    throw std::invalid_argument("CurriculumConfig: patience must be >= 1");
  }
  if (config.max_epochs < 0) {
    throw std::invalid_argument("CurriculumConfig: max_epochs must be >= 0");
  }
}

SubsetSelection select_subset(const std::vector<int>& ordering,
                              const std::vector<int>& train, double lambda_t) {
  if (train.empty()) {
    throw std::invalid_argument("select_subset: empty train set");
  }
  if (!(lambda_t > 0.0 && lambda_t <= 1.0)) {
    throw std::invalid_argument("select_subset: lambda_t must lie in (0, 1]");
  }
  const int train_size = static_cast<int>(train.size());
  int k = static_cast<int>(
      std::ceil(lambda_t * static_cast<double>(train_size)));
  k = std::clamp(k, 1, train_size);

  std::vector<char> in_train(ordering.size(), 0);
  for (int node : train) {
    if (node < 0 || node >= static_cast<int>(ordering.size())) {
      throw std::invalid_argument(
          "select_subset: train node outside the ordering's node range");
    }
    in_train[static_cast<std::size_t>(node)] = 1;
  }

  SubsetSelection sel;
  sel.ordered.reserve(static_cast<std::size_t>(k));
  for (int node : ordering) {
    if (node < 0 || node >= static_cast<int>(ordering.size()) ||
        !in_train[static_cast<std::size_t>(node)]) {
      continue;
    }
    sel.ordered.push_back(node);
    if (static_cast<int>(sel.ordered.size()) == k) break;
  }
  if (static_cast<int>(sel.ordered.size()) != k) {
    throw std::invalid_argument(
        "select_subset: ordering does not cover the train set");
  }
  sel.sorted = sel.ordered;
  std::sort(sel.sorted.begin(), sel.sorted.end());
  return sel;
}

namespace {

/// Shared epoch loop. When `ordering` is null the full train set is used
/// every epoch (plain training, t_max = 0).
TrainResult run_train_loop(const DetectorModel& detector,
                           const AttributedGraph& graph,
                           const NormalizedAdjacency& adj,
                           const NodeSplit& split,
                           const std::vector<int>* ordering, PacingKind pacing,
                           double lambda0, int t_max, int patience,
                           int max_epochs, const AdamConfig& opt) {
  if (split.train.empty()) {
    throw std::invalid_argument("training requires a non-empty train set");
  }
  if (split.val.empty()) {
    throw std::invalid_argument("training requires a non-empty val set");
  }
  if (ordering != nullptr &&
      static_cast<int>(ordering->size()) != graph.num_nodes) {
    throw std::invalid_argument(
        "training ordering must cover all graph nodes");
  }

  TrainResult res;
  res.model = detector;
  DetectorModel best = detector;

  MeanAggregator mean;
  const MeanAggregator* mean_ptr = nullptr;
  if (detector.kind == DetectorKind::sage) {
    mean = build_mean_aggregator(graph);
    mean_ptr = &mean;
  }

  std::vector<int> val_labels(split.val.size());
  for (std::size_t i = 0; i < split.val.size(); ++i) {
    val_labels[i] =
        graph.labels[static_cast<std::size_t>(split.val[i])];
  }

  AdamState optimizer(opt);
  double best_val = -1.0;
  int stalled = 0;

  for (int t = 0; t < max_epochs; ++t) {
    double lambda_t = 1.0;
    SubsetSelection subset;
    if (ordering != nullptr) {
      lambda_t = pacing_value(pacing, lambda0, t_max, t);
      subset = select_subset(*ordering, split.train, lambda_t);
    } else {
      subset.ordered = split.train;
      subset.sorted = split.train;
    }

    const auto weights = inverse_frequency_weights(graph.labels, subset.sorted);
    DetectorTrace trace =
        detector_forward_trace(res.model, graph.features, adj, mean_ptr);
    const LossResult loss =
        softmax_ce_loss(trace.logits, graph.labels, subset.sorted, weights);
    if (!std::isfinite(loss.loss)) {
      throw std::runtime_error("training loss diverged at epoch " +
                               std::to_string(t));
    }
    detector_backward(res.model, trace, loss.grad, adj, mean_ptr);
    adam_step(res.model.params, optimizer);

    const DenseMatrix logits =
        detector_forward_trace(res.model, graph.features, adj, mean_ptr)
            .logits;
    const std::vector<double> scores = anomaly_score(logits);
    std::vector<double> val_scores(split.val.size());
    for (std::size_t i = 0; i < split.val.size(); ++i) {
      val_scores[i] = scores[static_cast<std::size_t>(split.val[i])];
    }
    const double val_auc = roc_auc(val_scores, val_labels);

    res.log.push_back({t, lambda_t, static_cast<int>(subset.sorted.size()),
                       loss.loss, val_auc});

    // Only continuous-phase epochs (t >= T, full train set) are checkpoint
    // candidates; mid-curriculum models are fitted to biased subsets.
    if (t >= t_max) {
      if (val_auc > best_val) {
        best_val = val_auc;
        best = res.model;
        res.best_epoch = t;
        stalled = 0;
      } else {
        ++stalled;
      }
    }
    // Algorithm contract: keep going while t < T or not yet converged.
    if (t >= t_max && stalled >= patience) break;
  }

  res.best_val_auc = best_val;
  if (res.best_epoch >= 0) {
    res.model = std::move(best);
  }
  return res;
}

}  // namespace

TrainResult train_with_curriculum(const DetectorModel& detector,
                                  const AttributedGraph& graph,
                                  const NormalizedAdjacency& adj,
                                  const NodeSplit& split,
                                  const std::vector<int>& ordering,
                                  const CurriculumConfig& config,
                                  std::uint64_t /*seed*/, AdamConfig opt) {
  validate(config);
  return run_train_loop(detector, graph, adj, split, &ordering, config.pacing,
                        config.lambda0, config.t_max, config.post_t_patience,
                        config.max_epochs, opt);
}

TrainResult train_plain(const DetectorModel& detector,
                        const AttributedGraph& graph,
                        const NormalizedAdjacency& adj, const NodeSplit& split,
                        int epochs, std::uint64_t /*seed*/, AdamConfig opt,
                        int patience) {
  if (epochs < 0) {
    throw std::invalid_argument("train_plain: epochs must be >= 0");
  }
  return run_train_loop(detector, graph, adj, split, nullptr,
                        PacingKind::linear, 1.0, 0, patience, epochs, opt);
}

void write_train_log_csv(const std::vector<EpochRecord>& log,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_train_log_csv: cannot open '" + path +
                             "'");
  }
  auto fmt = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  out << "epoch,lambda_t,subset_size,loss,val_auc\n";
  for (const EpochRecord& r : log) {
    out << r.epoch << "," << fmt(r.lambda) << "," << r.subset_size << ","
        << fmt(r.loss) << "," << fmt(r.val_auc) << "\n";
  }
}

}  // namespace bcl
