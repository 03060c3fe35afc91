#pragma once

#include <cstdint>
#include <functional>

#include "bcl/params.hpp"

namespace bcl {

/// Scalar loss over a parameter store. When `compute_grads` is true the
/// callee must also fill the store's gradient buffers.
using LossFn = std::function<double(ParamStore&, bool compute_grads)>;

/// Central finite-difference check of analytic gradients. Checks every
/// parameter entry, or a random subsample of `max_entries` (>= 100) when the
/// store is larger. Returns max over checked entries of
/// |analytic - numeric| / max(1, |analytic|, |numeric|).
double grad_check(const LossFn& loss_fn, ParamStore& params,
                  double perturbation, std::uint64_t seed = 0,
                  std::size_t max_entries = 256);

}  // namespace bcl
