#include "pq/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pq/errors.hpp"

namespace pq {

Signature::Signature(std::vector<int> p) : parts(std::move(p)) {
  for (int m : parts)
    if (m < 2)
      throw Error("signature part " + std::to_string(m) + " < 2");
  std::sort(parts.begin(), parts.end());
}

bool Signature::operator<(const Signature &o) const {
  if (parts.size() != o.parts.size())
    return parts.size() < o.parts.size();
  return parts < o.parts;
}

std::string Signature::str() const {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(parts[i]);
  }
  return out;
}

Signature Signature::parse(const std::string &text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    parts.push_back(std::stoi(tok));
  return Signature(std::move(parts));
}

Rational theta(const Signature &sig) {
  Rational t(-2);
  for (int m : sig.parts)
    t += Rational(m - 1, m);
  return t;
}

Rational alpha(const Signature &sig, const Rational &k_squared) {
  Rational th = theta(sig);
  if (th == Rational(0))
    throw ThetaZero("alpha undefined: Theta(" + sig.str() + ") = 0");
  return k_squared / (Rational(4) * th);
}

int64_t hurwitz_genus(int64_t group_order, const Signature &sig) {
  Rational x = Rational(group_order) * theta(sig); // 2g - 2
  if (!x.is_integer() || x.num() < 0 || x.num() % 2 != 0)
    throw NonIntegralGenus("no genus with 2g-2 = " + x.str() + " for |G| = " +
                           std::to_string(group_order) + ", signature (" +
                           sig.str() + ")");
  return x.num() / 2 + 1;
}

Rational group_order_for_pair(const Signature &t1, const Signature &t2,
                              const Rational &k2) {
  return Rational(8) * alpha(t1, k2) * alpha(t2, k2) / k2;
}

Rational k_squared(int64_t g1, int64_t g2, int64_t group_order) {
  return Rational(8 * (g1 - 1) * (g2 - 1), group_order);
}

SurfaceInvariants euler_and_chi(const Rational &k2, int64_t node_count) {
  SurfaceInvariants s;
  s.k_squared = k2;
  s.node_count = node_count;
  s.euler = k2 / Rational(2) + Rational(3 * node_count, 2);
  s.chi = (k2 + s.euler) / Rational(12);
  s.chi_is_one = (s.chi == Rational(1));
  return s;
}

HJData hj_string(int64_t n, int64_t a) {
  if (!(0 < a && a < n) || std::gcd(a, n) != 1)
    throw BadType("bad cyclic quotient type (1/" + std::to_string(n) + ")(1," +
                  std::to_string(a) + ")");
  HJData hj;
  hj.n = n;
  hj.a = a;
  // n/a = b - 1/(n'/a') with n' = a, a' = b*a - n
  int64_t cn = n, ca = a;
  while (ca > 0) {
    int64_t b = (cn + ca - 1) / ca; // ceil
    hj.string.push_back(b);
    int64_t nn = ca;
    ca = b * ca - cn;
    cn = nn;
  }
  return hj;
}

HJData discrepancies_and_index(const std::vector<int64_t> &string) {
  for (int64_t b : string)
    if (b < 2)
      throw BadType("HJ string entry < 2");
  int m = static_cast<int>(string.size());
  // Tridiagonal system: sum_i a_i (E_i . E_j) = b_j - 2, with E_j^2 = -b_j
  // and E_j . E_{j+1} = 1. Gaussian elimination over Q.
  std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m + 1, Rational(0)));
  for (int j = 0; j < m; ++j) {
    mat[j][j] = Rational(-string[j]);
    if (j > 0)
      mat[j][j - 1] = Rational(1);
    if (j + 1 < m)
      mat[j][j + 1] = Rational(1);
    mat[j][m] = Rational(string[j] - 2);
  }
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (mat[r][col] != Rational(0)) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw SingularSystem("HJ intersection matrix is singular");
    std::swap(mat[col], mat[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == col || mat[r][col] == Rational(0))
        continue;
      Rational f = mat[r][col] / mat[col][col];
      for (int c = col; c <= m; ++c)
        mat[r][c] -= f * mat[col][c];
    }
  }
  HJData hj;
  hj.string = string;
  int64_t idx = 1;
  for (int j = 0; j < m; ++j) {
    Rational aj = mat[j][m] / mat[j][j];
    hj.discrepancies.push_back(aj);
    idx = std::lcm(idx, aj.den());
  }
  hj.index = idx;
  // reconstruct (n, a) from the continued fraction for completeness
  Rational val(0);
  for (int j = m - 1; j >= 0; --j) {
    if (val != Rational(0))
      val = Rational(string[j]) - Rational(1) / val;
    else
      val = Rational(string[j]);
  }
  hj.n = val.num();
  hj.a = val.den();
  return hj;
}

Rational ftilde_square(const std::vector<int64_t> &node_types) {
  Rational sum(0);
  for (int64_t n : node_types) {
    if (n < 1)
      throw Error("singularity type A_n needs n >= 1");
    sum += Rational(n, n + 1);
  }
  return sum;
}

} // namespace pq
