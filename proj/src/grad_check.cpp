#include "bcl/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bcl/rng.hpp"

namespace bcl {

double grad_check(const LossFn& loss_fn, ParamStore& params,
                  double perturbation, std::uint64_t seed,
                  std::size_t max_entries) {
  if (perturbation < 1e-7 || perturbation > 1e-3) {
    throw std::invalid_argument(
        "grad_check: perturbation must lie in [1e-7, 1e-3]");
  }
  if (max_entries < 100) {
    throw std::invalid_argument("grad_check: subsample must be >= 100 entries");
  }

  params.zero_grads();
  const double base_loss = loss_fn(params, true);
  if (!std::isfinite(base_loss)) {
    throw std::runtime_error("grad_check: non-finite loss");
  }

  // Snapshot analytic gradients before the probing passes overwrite anything.
  std::vector<std::pair<std::string, DenseMatrix>> analytic;
  for (const auto& name : params.names()) {
    analytic.emplace_back(name, params.grad(name));
  }

  std::vector<std::pair<std::size_t, std::size_t>> entries;  // (param, flat)
  for (std::size_t p = 0; p < analytic.size(); ++p) {
    for (std::size_t i = 0; i < analytic[p].second.size(); ++i) {
      entries.emplace_back(p, i);
    }
  }
  if (entries.size() > max_entries) {
    Rng rng(derive_seed(seed, "grad_check"));
    rng.shuffle(entries);
    entries.resize(max_entries);
  }

  double max_rel = 0.0;
  for (const auto& [p, i] : entries) {
    const std::string& name = analytic[p].first;
    double& slot = params.value(name).values[i];
    const double original = slot;

    slot = original + perturbation;
    const double loss_hi = loss_fn(params, false);
    slot = original - perturbation;
    const double loss_lo = loss_fn(params, false);
    slot = original;

    if (!std::isfinite(loss_hi) || !std::isfinite(loss_lo)) {
      throw std::runtime_error("grad_check: non-finite loss at probe point");
    }
    const double numeric = (loss_hi - loss_lo) / (2.0 * perturbation);
    const double a = analytic[p].second.values[i];
    const double rel = std::abs(a - numeric) /
                       std::max({1.0, std::abs(a), std::abs(numeric)});
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

}  // namespace bcl
