#pragma once

#include <span>
#include <vector>

namespace bcl {

/// Dense row-major matrix of 64-bit reals. All kernels in this toolkit use
/// fixed accumulation orders so results are reproducible bit-for-bit.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major, size rows*cols

  DenseMatrix() = default;
  DenseMatrix(int r, int c, double fill = 0.0);

  double& operator()(int r, int c) {
    return values[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return values[static_cast<std::size_t>(r) * cols + c];
  }

  bool same_shape(const DenseMatrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
  std::size_t size() const { return values.size(); }
  bool all_finite() const;
};

bool operator==(const DenseMatrix& a, const DenseMatrix& b);

/// Order-insensitive-in-error summation: pairwise tree reduction. Error grows
/// O(log n) instead of O(n), which the loss permutation invariants rely on.
double pairwise_sum(std::span<const double> xs);

/// a (r x k) times b (k x c); accumulation over k in ascending order.
DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& m);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);

/// [a | b] column-wise concatenation; a and b must share the row count.
DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b);

/// Columns [col_begin, col_end) of m.
DenseMatrix slice_cols(const DenseMatrix& m, int col_begin, int col_end);

/// Elementwise max(0, x).
DenseMatrix relu(const DenseMatrix& x);

/// Gradient of relu: passes `upstream` where pre_activation > 0, else 0
/// (subgradient 0 at 0).
DenseMatrix relu_backward(const DenseMatrix& upstream,
                          const DenseMatrix& pre_activation);

}  // namespace bcl
