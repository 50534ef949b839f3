#include "tilecount/lattice.hpp"

#include <utility>

namespace tilecount {

namespace {

void column_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (IntVector& row : m) row[dst] -= q * row[src];
}

void column_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (IntVector& row : m) std::swap(row[a], row[b]);
}

void column_negate(IntMatrix& m, std::size_t c) {
  for (IntVector& row : m) row[c] = -row[c];
}

}  // namespace

ColumnReduction column_reduce(const IntMatrix& m, std::size_t cols) {
  ColumnReduction out;
  out.h = m;
  for (IntVector& row : out.h) {
    if (row.size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix");
  }
  out.u.assign(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.u[i][i] = 1;

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < out.h.size() && pivot < cols; ++r) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t c = pivot; c < cols; ++c) {
        if (out.h[r][c] == 0) continue;
        if (best == cols || abs(out.h[r][c]) < abs(out.h[r][best])) best = c;
      }
      if (best == cols) break;
      if (best != pivot) {
        column_swap(out.h, best, pivot);
        column_swap(out.u, best, pivot);
      }
      if (out.h[r][pivot] < 0) {
        column_negate(out.h, pivot);
        column_negate(out.u, pivot);
      }
      bool done = true;
      for (std::size_t c = pivot + 1; c < cols; ++c) {
        if (out.h[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), out.h[r][c].get_mpz_t(), out.h[r][pivot].get_mpz_t());
        column_axpy(out.h, c, pivot, q);
        column_axpy(out.u, c, pivot, q);
        if (out.h[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (out.h[r][pivot] != 0) ++pivot;
  }
  out.rank = pivot;
  return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m, std::size_t cols) {
  ColumnReduction red = column_reduce(m, cols);
  std::vector<IntVector> basis;
  for (std::size_t c = red.rank; c < cols; ++c) {
    IntVector v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = red.u[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

// Bareiss fraction-free elimination.
Integer determinant(IntMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace tilecount
