#include "bcl/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bcl {

DenseMatrix::DenseMatrix(int r, int c, double fill) : rows(r), cols(c) {
  if (r < 0 || c < 0) {
    throw std::invalid_argument("DenseMatrix: negative dimension");
  }
  values.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c),
                fill);
}

bool DenseMatrix::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.values == b.values;
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) {
    throw std::invalid_argument(
        "dense_matmul: shape mismatch (" + std::to_string(a.rows) + "x" +
        std::to_string(a.cols) + " times " + std::to_string(b.rows) + "x" +
        std::to_string(b.cols) + ")");
  }
  DenseMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    const double* arow = &a.values[static_cast<std::size_t>(i) * a.cols];
    double* orow = &out.values[static_cast<std::size_t>(i) * b.cols];
    for (int k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = &b.values[static_cast<std::size_t>(k) * b.cols];
      for (int j = 0; j < b.cols; ++j) {
        orow[j] += aik * brow[j];
      }
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      out(j, i) = m(i, j);
    }
  }
  return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("add: shape mismatch");
  }
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] += b.values[i];
  }
  return out;
}

DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows) {
    throw std::invalid_argument("hconcat: row count mismatch");
  }
  DenseMatrix out(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) out(i, a.cols + j) = b(i, j);
  }
  return out;
}

DenseMatrix slice_cols(const DenseMatrix& m, int col_begin, int col_end) {
  if (col_begin < 0 || col_end > m.cols || col_begin > col_end) {
    throw std::invalid_argument("slice_cols: column range out of bounds");
  }
  DenseMatrix out(m.rows, col_end - col_begin);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = col_begin; j < col_end; ++j) {
      out(i, j - col_begin) = m(i, j);
    }
  }
  return out;
}

DenseMatrix relu(const DenseMatrix& x) {
  DenseMatrix out = x;
  for (double& v : out.values) {
    if (v < 0.0) v = 0.0;
  }
  return out;
}

DenseMatrix relu_backward(const DenseMatrix& upstream,
                          const DenseMatrix& pre_activation) {
  if (!upstream.same_shape(pre_activation)) {
    throw std::invalid_argument("relu_backward: shape mismatch");
  }
  DenseMatrix out = upstream;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (pre_activation.values[i] <= 0.0) out.values[i] = 0.0;
  }
  return out;
}

}  // namespace bcl
