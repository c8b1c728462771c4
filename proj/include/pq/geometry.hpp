#pragma once

#include <string>
#include <vector>

#include "pq/rational.hpp"

namespace pq {

// Numeric invariants of the covers and quotient surfaces, all in exact
// rational arithmetic. Integrality tests here decide candidate acceptance,
// so nothing may round.

// Branching data (m_1,...,m_r), kept sorted, every part >= 2.
struct Signature {
  std::vector<int> parts;

  Signature() = default;
  explicit Signature(std::vector<int> p);

  int arity() const { return static_cast<int>(parts.size()); }
  bool operator==(const Signature &o) const { return parts == o.parts; }
  bool operator!=(const Signature &o) const { return parts != o.parts; }
  // Shorter signatures first, lexicographic within a length.
  bool operator<(const Signature &o) const;

  std::string str() const; // "2,3,7"
  static Signature parse(const std::string &text);
};

struct CurveData {
  Signature signature;
  int64_t group_order = 0;
  int64_t genus = 0;
  Rational theta;
  Rational alpha;
};

// Hirzebruch-Jung resolution data for a cyclic quotient singularity
// of type (1/n)(1,a).
struct HJData {
  int64_t n = 0;
  int64_t a = 0;
  std::vector<int64_t> string;        // b_i >= 2
  std::vector<Rational> discrepancies; // a_i
  int64_t index = 0;                   // least lambda with lambda*a_i integral
  int length() const { return static_cast<int>(string.size()); }
};

struct SurfaceInvariants {
  Rational k_squared;
  int64_t node_count = 0;
  Rational euler;
  Rational chi;
  bool chi_is_one = false;
};

// Theta = -2 + sum (1 - 1/m_i).
Rational theta(const Signature &sig);

// alpha = K^2 / (4 * Theta); throws ThetaZero when Theta vanishes.
Rational alpha(const Signature &sig, const Rational &k_squared);

// Genus from 2g - 2 = |G| * Theta; throws NonIntegralGenus when the
// solution is not a non-negative even integer.
int64_t hurwitz_genus(int64_t group_order, const Signature &sig);

// |G| = 8 * alpha1 * alpha2 / K^2 as an exact rational (integrality is the
// caller's test).
Rational group_order_for_pair(const Signature &t1, const Signature &t2,
                              const Rational &k_squared);

// K^2 = 8 (g1 - 1)(g2 - 1) / |G|.
Rational k_squared(int64_t g1, int64_t g2, int64_t group_order);

// e = K^2/2 + 3t/2 and chi = (K^2 + e)/12 for a surface whose singular
// locus is t nodes; flags chi != 1.
SurfaceInvariants euler_and_chi(const Rational &k2, int64_t node_count);

// Continued fraction n/a = b1 - 1/(b2 - ...), all b_i >= 2.
// Requires 0 < a < n with gcd(a, n) = 1; throws BadType otherwise.
HJData hj_string(int64_t n, int64_t a);

// Solves (K + E_j)E_j = -2 exactly for the discrepancies and computes the
// singularity index.
HJData discrepancies_and_index(const std::vector<int64_t> &string);

// -F~^2 = sum over nodes (1 - 1/(n(p)+1)); integral iff the fibre
// configuration is possible.
Rational ftilde_square(const std::vector<int64_t> &node_types);

} // namespace pq
