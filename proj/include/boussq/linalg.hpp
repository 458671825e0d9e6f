#ifndef BOUSSQ_LINALG_HPP
#define BOUSSQ_LINALG_HPP

#include <span>
#include <vector>

namespace boussq {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and duplicates have been summed.
struct CsrMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_ptr;   // size n_rows + 1
  std::vector<int> col_idx;   // size nnz
  std::vector<double> values; // size nnz

  int nnz() const { return static_cast<int>(col_idx.size()); }
  double frobenius_norm() const;
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Canonical CSR from an unordered triplet list; duplicate (row, col)
/// entries are summed. Throws on out-of-range indices.
CsrMatrix from_triplets(int n_rows, int n_cols, std::span<const Triplet> triplets);

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x);

/// Solve a*x = b by sparse LU with partial pivoting (COLAMD fill-reducing
/// ordering). Throws on structural or numerical singularity, naming the
/// offending row/column, and if the residual exceeds
/// 1e-9 * (|a|_F |x|_2 + |b|_2).
std::vector<double> solve_direct(const CsrMatrix& a, std::span<const double> b);

}  // namespace boussq

#endif
