#include "bcl/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcl/rng.hpp"

namespace bcl {

void ParamStore::add(const std::string& name, DenseMatrix initial) {
  if (entries_.count(name) > 0) {
    throw std::invalid_argument("ParamStore: duplicate parameter '" + name +
                                "'");
  }
  Entry e;
  e.grad = DenseMatrix(initial.rows, initial.cols);
  e.value = std::move(initial);
  entries_.emplace(name, std::move(e));
}

DenseMatrix& ParamStore::value(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("ParamStore: unknown parameter '" + name + "'");
  }
  return it->second.value;
}

const DenseMatrix& ParamStore::value(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("ParamStore: unknown parameter '" + name + "'");
  }
  return it->second.value;
}

DenseMatrix& ParamStore::grad(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("ParamStore: unknown parameter '" + name + "'");
  }
  return it->second.grad;
}

const DenseMatrix& ParamStore::grad(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("ParamStore: unknown parameter '" + name + "'");
  }
  return it->second.grad;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

std::size_t ParamStore::total_entries() const {
  std::size_t n = 0;
  for (const auto& [name, entry] : entries_) n += entry.value.size();
  return n;
}

void ParamStore::zero_grads() {
  for (auto& [name, entry] : entries_) {
    std::fill(entry.grad.values.begin(), entry.grad.values.end(), 0.0);
  }
}

bool operator==(const ParamStore& a, const ParamStore& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  for (; ia != a.entries_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(ia->second.value == ib->second.value)) return false;
  }
  return true;
}

void AdamState::apply(ParamStore& params) {
  ++step_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
  for (auto& [name, entry] : params) {
    auto it = moments_.find(name);
    if (it == moments_.end()) {
      Moments mom;
      mom.m = DenseMatrix(entry.value.rows, entry.value.cols);
      mom.v = DenseMatrix(entry.value.rows, entry.value.cols);
      it = moments_.emplace(name, std::move(mom)).first;
    }
    Moments& mom = it->second;
    if (!mom.m.same_shape(entry.value)) {
      throw std::invalid_argument("AdamState: moment shape mismatch for '" +
                                  name + "'");
    }
    for (std::size_t i = 0; i < entry.value.values.size(); ++i) {
      const double g = entry.grad.values[i];
      double& m = mom.m.values[i];
      double& v = mom.v.values[i];
      m = config_.beta1 * m + (1.0 - config_.beta1) * g;
      v = config_.beta2 * v + (1.0 - config_.beta2) * g * g;
      const double m_hat = m / bc1;
      const double v_hat = v / bc2;
      entry.value.values[i] -=
          config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
  params.zero_grads();
}

void adam_step(ParamStore& params, AdamState& state) { state.apply(params); }

void glorot_init(ParamStore& params, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& [name, entry] : params) {
    const double fan_in = entry.value.rows;
    const double fan_out = entry.value.cols;
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : entry.value.values) {
      v = rng.uniform(-bound, bound);
    }
  }
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void save_params(const ParamStore& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_params: cannot open '" + path + "'");
  }
  out << params.names().size() << "\n";
  for (const auto& [name, entry] : params) {
    out << name << " " << entry.value.rows << " " << entry.value.cols << "\n";
    const DenseMatrix& m = entry.value;
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        if (c > 0) out << " ";
        out << format_double(m(r, c));
      }
      out << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("save_params: write failed for '" + path + "'");
  }
}

ParamStore load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_params: cannot open '" + path + "'");
  }
  std::size_t count = 0;
  if (!(in >> count)) {
    throw std::runtime_error("load_params: bad header in '" + path + "'");
  }
  ParamStore store;
  for (std::size_t p = 0; p < count; ++p) {
    std::string name;
    int rows = 0;
    int cols = 0;
    if (!(in >> name >> rows >> cols) || rows < 0 || cols < 0) {
      throw std::runtime_error("load_params: bad parameter header in '" + path +
                               "'");
    }
    DenseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (!(in >> m(r, c))) {
          throw std::runtime_error("load_params: truncated values for '" +
                                   name + "'");
        }
      }
    }
    store.add(name, std::move(m));
  }
  return store;
}

}  // namespace bcl
