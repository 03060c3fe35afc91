#include "bcl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace bcl {

FusedScore fuse_scores(double alpha, const std::vector<double>& homo,
                       const std::vector<double>& hete) {
  if (homo.size() != hete.size()) {
    throw std::invalid_argument("fuse_scores: score length mismatch");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("fuse_scores: alpha must lie in [0, 1]");
  }
  FusedScore fused;
  fused.alpha = alpha;
  fused.score_homo = homo;
  fused.score_hete = hete;
  fused.score_final.resize(homo.size());
  for (std::size_t i = 0; i < homo.size(); ++i) {
    fused.score_final[i] = alpha * homo[i] + (1.0 - alpha) * hete[i];
  }
  return fused;
}

double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("roc_auc: scores/labels length mismatch");
  }
  std::uint64_t positives = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw std::invalid_argument("roc_auc: labels must be 0 or 1");
    }
    if (!std::isfinite(scores[i])) {
      throw std::invalid_argument("roc_auc: non-finite score");
    }
    positives += static_cast<std::uint64_t>(labels[i]);
  }
  const std::uint64_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("roc_auc: needs both classes present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Midranks over tie runs: twice the average 1-based rank of a run
  // [i, j] is (i + j + 2), an exact integer. Everything stays integral until
  // the final division, so the sorted statistic matches the brute-force
  // pairwise count bit-for-bit.
  std::uint64_t twice_rank_sum_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           scores[order[j + 1]] == scores[order[i]]) {
      ++j;
    }
    const std::uint64_t twice_avg_rank =
        static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(j) + 2;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) twice_rank_sum_pos += twice_avg_rank;
    }
    i = j + 1;
  }

  const std::uint64_t twice_numerator =
      twice_rank_sum_pos - positives * (positives + 1);
  return static_cast<double>(twice_numerator) /
         (2.0 * static_cast<double>(positives) *
          static_cast<double>(negatives));
}

double macro_f1(const std::vector<double>& scores,
                const std::vector<int>& labels, double threshold) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("macro_f1: scores/labels length mismatch");
  }
  std::uint64_t positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw std::invalid_argument("macro_f1: labels must be 0 or 1");
    }
    positives += static_cast<std::uint64_t>(y);
  }
  if (positives == 0 || positives == labels.size()) {
    throw std::invalid_argument("macro_f1: needs both classes present");
  }

  // confusion[actual][predicted]
  std::uint64_t confusion[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int pred = scores[i] > threshold ? 1 : 0;
    confusion[labels[i]][pred]++;
  }

  double f1_sum = 0.0;
  for (int c = 0; c < 2; ++c) {
    const double tp = static_cast<double>(confusion[c][c]);
    const double fp = static_cast<double>(confusion[1 - c][c]);
    const double fn = static_cast<double>(confusion[c][1 - c]);
    const double precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
    const double recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
    const double f1 = precision + recall > 0.0
                          ? 2.0 * precision * recall / (precision + recall)
                          : 0.0;
    f1_sum += f1;
  }
  return f1_sum / 2.0;
}

}  // namespace bcl
