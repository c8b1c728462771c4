#pragma once

#include <cstdint>
#include <vector>

namespace pq {

// Exact integer matrix for abelianization work. Entries are kept in int64
// with overflow detection; the Smith normal form routine escalates to
// arbitrary precision internally when the fast path overflows.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int64_t> a; // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  int64_t &at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  int64_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Elementary divisors d1 | d2 | ... (length min(rows, cols), zeros last).
// Invariant under row/column permutations of the input.
std::vector<int64_t> smith_normal_form(const IntMatrix &m);

// Sparse row set -> invariant factors of Z^cols / rowspace. Rows are
// (column, coefficient) lists. Unit pivots are eliminated sparsely first,
// the dense remainder goes through smith_normal_form.
struct SparseSnfResult {
  int64_t rank = 0;
  std::vector<int64_t> divisors; // the > 1 elementary divisors, sorted by divisibility
};
SparseSnfResult sparse_relation_snf(int cols,
                                    std::vector<std::vector<std::pair<int, int64_t>>> rows);

} // namespace pq
