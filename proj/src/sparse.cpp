#include "bcl/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace bcl {

CsrMatrix csr_from_triplets(
    int rows, int cols, std::vector<std::tuple<int, int, double>> triplets) {
  for (const auto& [r, c, v] : triplets) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw std::invalid_argument("csr_from_triplets: index out of range");
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  for (std::size_t i = 1; i < triplets.size(); ++i) {
    if (std::get<0>(triplets[i]) == std::get<0>(triplets[i - 1]) &&
        std::get<1>(triplets[i]) == std::get<1>(triplets[i - 1])) {
      throw std::invalid_argument("csr_from_triplets: duplicate entry");
    }
  }
  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.vals.reserve(triplets.size());
  for (const auto& [r, c, v] : triplets) {
    m.row_ptr[static_cast<std::size_t>(r) + 1]++;
    m.col_idx.push_back(c);
    m.vals.push_back(v);
  }
  for (int r = 0; r < rows; ++r) {
    m.row_ptr[static_cast<std::size_t>(r) + 1] += m.row_ptr[r];
  }
  return m;
}

CsrMatrix transpose(const CsrMatrix& m) {
  std::vector<std::tuple<int, int, double>> triplets;
  triplets.reserve(m.col_idx.size());
  for (int r = 0; r < m.rows; ++r) {
    for (int idx = m.row_ptr[r]; idx < m.row_ptr[r + 1]; ++idx) {
      triplets.emplace_back(m.col_idx[idx], r, m.vals[idx]);
    }
  }
  return csr_from_triplets(m.cols, m.rows, std::move(triplets));
}

DenseMatrix spmm(const CsrMatrix& a, const DenseMatrix& h) {
  if (a.cols != h.rows) {
    throw std::invalid_argument(
        "spmm: shape mismatch (" + std::to_string(a.rows) + "x" +
        std::to_string(a.cols) + " times " + std::to_string(h.rows) + "x" +
        std::to_string(h.cols) + ")");
  }
  DenseMatrix out(a.rows, h.cols);
  for (int i = 0; i < a.rows; ++i) {
    double* orow = &out.values[static_cast<std::size_t>(i) * h.cols];
    for (int idx = a.row_ptr[i]; idx < a.row_ptr[i + 1]; ++idx) {
      const double aij = a.vals[idx];
      const double* hrow =
          &h.values[static_cast<std::size_t>(a.col_idx[idx]) * h.cols];
      for (int j = 0; j < h.cols; ++j) {
        orow[j] += aij * hrow[j];
      }
    }
  }
  return out;
}

}  // namespace bcl
