#pragma once

#include <vector>

#include "bcl/matrix.hpp"

namespace bcl {

/// Compressed-row sparse matrix. Column indices are strictly ascending within
/// each row, which fixes the accumulation order of spmm.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;  // size rows+1
  std::vector<int> col_idx;
  std::vector<double> vals;

  int nnz() const { return static_cast<int>(col_idx.size()); }
};

/// Builds a CSR matrix from (row, col, value) triplets; triplets need not be
/// sorted but (row, col) pairs must be unique.
CsrMatrix csr_from_triplets(int rows, int cols,
                            std::vector<std::tuple<int, int, double>> triplets);

CsrMatrix transpose(const CsrMatrix& m);

/// Sparse-dense product a*h; per output row the accumulation walks the CSR
/// entries in ascending column order.
DenseMatrix spmm(const CsrMatrix& a, const DenseMatrix& h);

}  // namespace bcl
