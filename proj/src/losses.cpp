#include "bcl/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcl {

LossResult softmax_ce_loss(const DenseMatrix& logits,
                           const std::vector<int>& labels,
                           const std::vector<int>& mask,
                           std::array<double, 2> class_weights) {
  if (logits.cols != 2) {
    throw std::invalid_argument("softmax_ce_loss: logits must have 2 columns");
  }
  if (static_cast<int>(labels.size()) != logits.rows) {
    throw std::invalid_argument(
        "softmax_ce_loss: label count does not match logit rows");
  }
  if (mask.empty()) {
    throw std::invalid_argument("softmax_ce_loss: empty mask");
  }

  LossResult res;
  res.grad = DenseMatrix(logits.rows, 2);
  const double inv_count = 1.0 / static_cast<double>(mask.size());

  std::vector<double> terms;
  terms.reserve(mask.size());
  for (int node : mask) {
    if (node < 0 || node >= logits.rows) {
      throw std::invalid_argument("softmax_ce_loss: mask index out of range");
    }
    const int y = labels[static_cast<std::size_t>(node)];
    if (y != 0 && y != 1) {
      throw std::invalid_argument("softmax_ce_loss: labels must be 0 or 1");
    }
    const double l0 = logits(node, 0);
    const double l1 = logits(node, 1);
    const double shift = std::max(l0, l1);
    const double lse =
        shift + std::log(std::exp(l0 - shift) + std::exp(l1 - shift));
    const double w = class_weights[static_cast<std::size_t>(y)];
    terms.push_back(w * (lse - (y == 0 ? l0 : l1)));

    const double p0 = std::exp(l0 - lse);
    const double p1 = std::exp(l1 - lse);
    res.grad(node, 0) = w * (p0 - (y == 0 ? 1.0 : 0.0)) * inv_count;
    res.grad(node, 1) = w * (p1 - (y == 1 ? 1.0 : 0.0)) * inv_count;
  }
  res.loss = pairwise_sum(terms) * inv_count;
  return res;
}

LossResult mse_loss(const DenseMatrix& pred, const DenseMatrix& target) {
  if (!pred.same_shape(target)) {
    throw std::invalid_argument("mse_loss: shape mismatch");
  }
  const std::size_t n = pred.values.size();
  if (n == 0) {
    throw std::invalid_argument("mse_loss: empty matrices");
  }
  LossResult res;
  res.grad = DenseMatrix(pred.rows, pred.cols);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pred.values[i] - target.values[i];
    sq[i] = d * d;
    res.grad.values[i] = 2.0 * d * inv_n;
  }
  res.loss = pairwise_sum(sq) * inv_n;
  return res;
}

std::array<double, 2> inverse_frequency_weights(const std::vector<int>& labels,
                                                const std::vector<int>& mask) {
  std::array<int, 2> counts{0, 0};
  for (int node : mask) {
    counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(node)])]++;
  }
  const double total = static_cast<double>(mask.size());
  std::array<double, 2> w{1.0, 1.0};
  for (std::size_t c = 0; c < 2; ++c) {
    if (counts[c] > 0) w[c] = total / (2.0 * static_cast<double>(counts[c]));
  }
  return w;
}

}  // namespace bcl
