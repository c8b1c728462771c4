#include "pq/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "pq/errors.hpp"

namespace pq {

namespace {

using BigInt = boost::multiprecision::cpp_int;

template <class I> struct Ops;

template <> struct Ops<int64_t> {
  static int64_t mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
      throw ArithmeticOverflow("snf multiply overflow");
    return r;
  }
  static int64_t add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
      throw ArithmeticOverflow("snf add overflow");
    return r;
  }
  static int64_t sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
      throw ArithmeticOverflow("snf subtract overflow");
    return r;
  }
  static int64_t abs(int64_t a) {
    if (a == INT64_MIN)
      throw ArithmeticOverflow("snf abs overflow");
    return std::llabs(a);
  }
};

template <> struct Ops<BigInt> {
  static BigInt mul(const BigInt &a, const BigInt &b) { return a * b; }
  static BigInt sub(const BigInt &a, const BigInt &b) { return a - b; }
  static BigInt abs(const BigInt &a) { return a < 0 ? BigInt(-a) : a; }
};

// Dense SNF by pivot reduction: move the smallest nonzero of the working
// submatrix to the pivot, kill its row and column by division steps, then
// enforce the divisibility chain.
template <class I>
std::vector<I> snf_impl(std::vector<std::vector<I>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int nmin = std::min(rows, cols);
  std::vector<I> d(nmin, I(0));

  for (int s = 0; s < nmin; ++s) {
    for (;;) {
      int pr = -1, pc = -1;
      I best(0);
      for (int r = s; r < rows; ++r)
        for (int c = s; c < cols; ++c)
          if (m[r][c] != 0) {
            I v = Ops<I>::abs(m[r][c]);
            if (pr < 0 || v < best) {
              best = v;
              pr = r;
              pc = c;
            }
          }
      if (pr < 0)
        break; // submatrix is zero
      std::swap(m[s], m[pr]);
      for (int r = 0; r < rows; ++r)
        std::swap(m[r][s], m[r][pc]);

      bool clean = true;
      for (int r = s + 1; r < rows; ++r)
        if (m[r][s] != 0) {
          I q = m[r][s] / m[s][s];
          if (q != 0)
            for (int c = s; c < cols; ++c)
              m[r][c] = Ops<I>::sub(m[r][c], Ops<I>::mul(q, m[s][c]));
          if (m[r][s] != 0)
            clean = false;
        }
      for (int c = s + 1; c < cols; ++c)
        if (m[s][c] != 0) {
          I q = m[s][c] / m[s][s];
          if (q != 0)
            for (int r = s; r < rows; ++r)
              m[r][c] = Ops<I>::sub(m[r][c], Ops<I>::mul(q, m[r][s]));
          if (m[s][c] != 0)
            clean = false;
        }
      if (!clean)
        continue;

      // pivot is lone; make sure it divides the remaining submatrix
      int br = -1, bc = -1;
      for (int r = s + 1; r < rows && br < 0; ++r)
        for (int c = s + 1; c < cols; ++c)
          if (m[r][c] % m[s][s] != 0) {
            br = r;
            bc = c;
            break;
          }
      if (br < 0)
        break;
      for (int c = s; c < cols; ++c)
        m[s][c] = Ops<I>::sub(m[s][c], Ops<I>::mul(I(-1), m[br][c])); // row s += row br
    }
    d[s] = Ops<I>::abs(m[s][s]);
  }
  return d;
}

std::vector<int64_t> narrow(const std::vector<BigInt> &v) {
  std::vector<int64_t> out;
  out.reserve(v.size());
  for (const auto &x : v) {
    if (x > BigInt(INT64_MAX))
      throw ArithmeticOverflow("elementary divisor exceeds int64");
    out.push_back(static_cast<int64_t>(x));
  }
  return out;
}

} // namespace

std::vector<int64_t> smith_normal_form(const IntMatrix &mat) {
  std::vector<std::vector<int64_t>> m(mat.rows, std::vector<int64_t>(mat.cols));
  for (int r = 0; r < mat.rows; ++r)
    for (int c = 0; c < mat.cols; ++c)
      m[r][c] = mat.at(r, c);
  try {
    return snf_impl<int64_t>(m);
  } catch (const ArithmeticOverflow &) {
    std::vector<std::vector<BigInt>> big(mat.rows, std::vector<BigInt>(mat.cols));
    for (int r = 0; r < mat.rows; ++r)
      for (int c = 0; c < mat.cols; ++c)
        big[r][c] = mat.at(r, c);
    return narrow(snf_impl<BigInt>(std::move(big)));
  }
}

namespace {

using SparseRow = std::vector<std::pair<int, int64_t>>; // sorted by column

void add_multiple(SparseRow &dst, const SparseRow &src, int64_t factor) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, Ops<int64_t>::mul(factor, src[j].second));
      ++j;
    } else {
      int64_t v = Ops<int64_t>::add(dst[i].second,
                                    Ops<int64_t>::mul(factor, src[j].second));
      if (v != 0)
        out.emplace_back(dst[i].first, v);
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

} // namespace

SparseSnfResult sparse_relation_snf(int cols,
                                    std::vector<SparseRow> rows) {
  for (auto &r : rows) {
    std::map<int, int64_t> acc;
    for (auto &[c, v] : r)
      acc[c] += v;
    r.clear();
    for (auto &[c, v] : acc)
      if (v != 0)
        r.emplace_back(c, v);
  }

  std::vector<bool> col_dead(cols, false);
  std::vector<bool> row_dead(rows.size(), false);
  int64_t unit_rank = 0;

  // repeatedly eliminate with a +-1 pivot, shortest row first
  try {
    for (;;) {
      int pivot_row = -1;
      size_t pivot_len = SIZE_MAX;
      int pivot_col = -1;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (row_dead[r] || rows[r].empty())
          continue;
        if (rows[r].size() >= pivot_len)
          continue;
        for (auto &[c, v] : rows[r])
          if ((v == 1 || v == -1) && !col_dead[c]) {
            pivot_row = static_cast<int>(r);
            pivot_len = rows[r].size();
            pivot_col = c;
            break;
          }
      }
      if (pivot_row < 0)
        break;
      const SparseRow piv = rows[pivot_row];
      int64_t pv = 0;
      for (auto &[c, v] : piv)
        if (c == pivot_col)
          pv = v;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(r) == pivot_row || row_dead[r])
          continue;
        int64_t entry = 0;
        for (auto &[c, v] : rows[r])
          if (c == pivot_col) {
            entry = v;
            break;
          }
        if (entry == INT64_MIN)
          throw ArithmeticOverflow("snf pivot factor overflow");
        if (entry != 0)
          add_multiple(rows[r], piv, pv == 1 ? -entry : entry);
      }
      row_dead[pivot_row] = true;
      col_dead[pivot_col] = true;
      ++unit_rank;
    }
  } catch (const ArithmeticOverflow &) {
    // fall through: remaining rows go to the dense big-int path unreduced
  }

  // dense core on the surviving columns
  std::vector<int> col_map(cols, -1);
  int core_cols = 0;
  for (int c = 0; c < cols; ++c)
    if (!col_dead[c])
      col_map[c] = core_cols++;
  std::vector<std::vector<BigInt>> core;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (row_dead[r] || rows[r].empty())
      continue;
    std::vector<BigInt> dense(core_cols, 0);
    bool nz = false;
    for (auto &[c, v] : rows[r])
      if (!col_dead[c]) {
        dense[col_map[c]] = v;
        nz = true;
      }
    if (nz)
      core.push_back(std::move(dense));
  }

  SparseSnfResult res;
  res.rank = unit_rank;
  if (!core.empty()) {
    auto d = narrow(snf_impl<BigInt>(std::move(core)));
    for (int64_t v : d) {
      if (v == 0)
        continue;
      ++res.rank;
      if (v > 1)
        res.divisors.push_back(v);
    }
  }
  std::sort(res.divisors.begin(), res.divisors.end());
  return res;
}

} // namespace pq
