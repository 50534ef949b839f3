#pragma once

#include <cstddef>
#include <vector>

#include "tilecount/exactnum.hpp"

namespace tilecount {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major

// Column Hermite reduction M U = [H | 0] with U unimodular.
struct ColumnReduction {
  IntMatrix h;     // rows x cols, last cols - rank columns zero
  IntMatrix u;     // cols x cols
  std::size_t rank = 0;
};

ColumnReduction column_reduce(const IntMatrix& m, std::size_t cols);

// Basis of {z in Z^cols : M z = 0}, one vector per entry.
std::vector<IntVector> integer_kernel(const IntMatrix& m, std::size_t cols);

IntVector mat_vec(const IntMatrix& m, const IntVector& v);
Integer determinant(IntMatrix m);

}  // namespace tilecount
