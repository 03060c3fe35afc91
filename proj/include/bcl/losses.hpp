#pragma once

#include <array>
#include <vector>

#include "bcl/matrix.hpp"

namespace bcl {

struct LossResult {
  double loss = 0.0;
  DenseMatrix grad;  // same shape as the prediction input
};

/// Class-weighted softmax cross-entropy over the masked node rows of an Nx2
/// logit matrix. Loss is the mean over masked nodes of w[y_i] * CE_i with a
/// log-sum-exp stable evaluation; gradient rows outside the mask are zero,
/// rows inside equal w[y_i] * (softmax - onehot) / |mask|. Per-node terms are
/// combined with a pairwise tree sum.
LossResult softmax_ce_loss(const DenseMatrix& logits,
                           const std::vector<int>& labels,
                           const std::vector<int>& mask,
                           std::array<double, 2> class_weights = {1.0, 1.0});

/// Mean squared error over all entries; grad = 2*(pred - target) / (rows*cols).
LossResult mse_loss(const DenseMatrix& pred, const DenseMatrix& target);

/// Inverse-frequency class weights for the two classes present in the masked
/// labels: w_c = |mask| / (2 * count_c). A class absent from the mask gets
/// weight 1 (it contributes no loss terms).
std::array<double, 2> inverse_frequency_weights(const std::vector<int>& labels,
                                                const std::vector<int>& mask);

}  // namespace bcl
