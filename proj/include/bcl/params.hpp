#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bcl/matrix.hpp"

namespace bcl {

/// Named parameter matrices plus same-shaped gradient accumulators. Iteration
/// is always in lexicographic name order, so every pass over a store is
/// deterministic.
class ParamStore {
 public:
  struct Entry {
    DenseMatrix value;
    DenseMatrix grad;
  };

  void add(const std::string& name, DenseMatrix initial);

  DenseMatrix& value(const std::string& name);
  const DenseMatrix& value(const std::string& name) const;
  DenseMatrix& grad(const std::string& name);
  const DenseMatrix& grad(const std::string& name) const;

  bool contains(const std::string& name) const {
    return entries_.count(name) > 0;
  }
  std::vector<std::string> names() const;
  std::size_t total_entries() const;
  void zero_grads();

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const ParamStore& a, const ParamStore& b);

 private:
  std::map<std::string, Entry> entries_;
};

/// Values of all parameters equal (gradients ignored).
bool operator==(const ParamStore& a, const ParamStore& b);

struct AdamConfig {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-parameter first/second moments plus the shared step counter.
class AdamState {
 public:
  explicit AdamState(AdamConfig config = {}) : config_(config) {}

  const AdamConfig& config() const { return config_; }
  long step() const { return step_; }

  /// Bias-corrected Adam update over all parameters in name order, then
  /// zeroes the gradients. Moments are allocated lazily on first use.
  void apply(ParamStore& params);

 private:
  struct Moments {
    DenseMatrix m;
    DenseMatrix v;
  };
  AdamConfig config_;
  long step_ = 0;
  std::map<std::string, Moments> moments_;
};

/// One optimizer step: params updated in place from their gradients.
void adam_step(ParamStore& params, AdamState& state);

/// Glorot-uniform initialization of every parameter in the store,
/// deterministic in the seed. Parameters are visited in name order.
void glorot_init(ParamStore& params, std::uint64_t seed);

/// Text serialization (name, shape, row-major values) with shortest
/// round-trip decimals, so load(save(p)) == p bit-for-bit.
void save_params(const ParamStore& params, const std::string& path);
ParamStore load_params(const std::string& path);

}  // namespace bcl
