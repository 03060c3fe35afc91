#pragma once

#include <vector>

namespace bcl {

/// Convex combination of the two directional score vectors:
/// score_final[i] = alpha * score_homo[i] + (1 - alpha) * score_hete[i],
/// evaluated exactly in that order.
struct FusedScore {
  double alpha = 0.5;
  std::vector<double> score_homo;
  std::vector<double> score_hete;
  std::vector<double> score_final;
};

FusedScore fuse_scores(double alpha, const std::vector<double>& homo,
                       const std::vector<double>& hete);

/// ROC-AUC as the Mann-Whitney statistic with ties counted 1/2, computed by
/// sorting with midranks. Agrees exactly with the brute-force pairwise
/// definition. Throws when labels are single-class.
double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels);

/// Macro-averaged F1 at `score > threshold`; a class with zero precision and
/// recall contributes F1 = 0.
double macro_f1(const std::vector<double>& scores,
                const std::vector<int>& labels, double threshold = 0.5);

}  // namespace bcl
