#include "boussq/linalg.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace boussq {

double CsrMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const double v : values) s += v * v;
  return std::sqrt(s);
}

CsrMatrix from_triplets(int n_rows, int n_cols, std::span<const Triplet> triplets) {
  if (n_rows < 0 || n_cols < 0)
    throw std::invalid_argument("negative matrix dimension");
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
      std::ostringstream msg;
      msg << "triplet (" << t.row << ", " << t.col << ") out of range for "
          << n_rows << "x" << n_cols << " matrix";
      throw std::out_of_range(msg.str());
    }
  }

  // Counting sort by row, then a stable in-row sort and merge; duplicates
  // are summed in input order, so identical triplet sequences produce
  // bitwise-identical values.
  std::vector<int> row_count(n_rows + 1, 0);
  for (const auto& t : triplets) ++row_count[t.row + 1];
  std::vector<int> row_start(n_rows + 1, 0);
  std::partial_sum(row_count.begin(), row_count.end(), row_start.begin());

  std::vector<std::pair<int, double>> slots(triplets.size());
  {
    std::vector<int> cursor(row_start.begin(), row_start.end() - 1);
    for (const auto& t : triplets) slots[cursor[t.row]++] = {t.col, t.value};
  }

  CsrMatrix a;
  a.n_rows = n_rows;
  a.n_cols = n_cols;
  a.row_ptr.assign(n_rows + 1, 0);
  a.col_idx.reserve(triplets.size());
  a.values.reserve(triplets.size());
  for (int r = 0; r < n_rows; ++r) {
    const auto begin = slots.begin() + row_start[r];
    const auto end = slots.begin() + row_start[r + 1];
    std::stable_sort(begin, end,
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto it = begin; it != end;) {
      const int col = it->first;
      double sum = 0.0;
      for (; it != end && it->first == col; ++it) sum += it->second;
      a.col_idx.push_back(col);
      a.values.push_back(sum);
    }
    a.row_ptr[r + 1] = static_cast<int>(a.col_idx.size());
  }
  return a;
}

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.n_cols)
    throw std::invalid_argument("matvec: vector length does not match columns");
  std::vector<double> y(a.n_rows, 0.0);
  for (int r = 0; r < a.n_rows; ++r) {
    double s = 0.0;
    for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
      s += a.values[k] * x[a.col_idx[k]];
    y[r] = s;
  }
  return y;
}

std::vector<double> solve_direct(const CsrMatrix& a, std::span<const double> b) {
  if (a.n_rows != a.n_cols)
    throw std::invalid_argument("solve_direct: matrix is not square");
  if (static_cast<int>(b.size()) != a.n_rows)
    throw std::invalid_argument("solve_direct: rhs length does not match");

  // Structurally empty rows make the factorization fail late with a less
  // specific message; report them up front.
  for (int r = 0; r < a.n_rows; ++r) {
    if (a.row_ptr[r] == a.row_ptr[r + 1]) {
      std::ostringstream msg;
      msg << "solve_direct: matrix is structurally singular, row " << r
          << " has no entries";
      throw std::runtime_error(msg.str());
    }
  }

  Eigen::SparseMatrix<double> m(a.n_rows, a.n_cols);
  {
    std::vector<Eigen::Triplet<double>> ts;
    ts.reserve(a.values.size());
    for (int r = 0; r < a.n_rows; ++r)
      for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
        ts.emplace_back(r, a.col_idx[k], a.values[k]);
    m.setFromTriplets(ts.begin(), ts.end());
  }
  m.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "solve_direct: LU factorization failed: " << lu.lastErrorMessage();
    throw std::runtime_error(msg.str());
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), b.size());
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("solve_direct: triangular solve failed");

  std::vector<double> out(x.data(), x.data() + x.size());
  const auto r = matvec(a, out);
  double res2 = 0.0, b2 = 0.0;
  for (size_t i = 0; i < out.size(); ++i) {
    const double d = r[i] - b[i];
    res2 += d * d;
    b2 += b[i] * b[i];
  }
  const double tol = 1e-9 * (a.frobenius_norm() * x.norm() + std::sqrt(b2));
  if (std::sqrt(res2) > tol && std::sqrt(res2) > 1e-300) {
    std::ostringstream msg;
    msg << "solve_direct: residual " << std::sqrt(res2)
        << " exceeds tolerance " << tol << " (near-singular system?)";
    throw std::runtime_error(msg.str());
  }
  return out;
}

}  // namespace boussq
