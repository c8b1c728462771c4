#pragma once

#include <vector>

#include "pq/geometry.hpp"
#include "pq/permcore.hpp"
#include "pq/rational.hpp"

namespace pq {

// Ordered generating tuple (h_1,...,h_r) of G with h_1*...*h_r = 1 and
// ord(h_i) = m_i exactly. Elements are stored as indices into G's element
// table; the group reference is borrowed.
struct SphericalSystem {
  const PermGroup *group = nullptr;
  std::vector<int> elements;
  Signature signature;

  bool operator==(const SphericalSystem &o) const { return elements == o.elements; }
  bool operator<(const SphericalSystem &o) const { return elements < o.elements; }
};

// Validates product, orders and generation; throws Error on violation.
void validate_system(const SphericalSystem &s);

// True iff G admits a spherical system of generators of the given
// signature. Prunes by element-order spectrum, by the abelianized quotient
// test, and by fixing the first element up to conjugacy.
bool exists_spherical(const PermGroup &g, const Signature &sig);

// All spherical systems of the signature, one representative per
// simultaneous-conjugacy class, in canonical order.
std::vector<SphericalSystem> systems_up_to_conjugation(const PermGroup &g,
                                                       const Signature &sig);

// Every spherical system of the signature (no dedup), canonical order.
std::vector<SphericalSystem> all_spherical_systems(const PermGroup &g,
                                                   const Signature &sig);

enum class RejectionReason { None, WorseThanNode, TooManyNodes };

struct SingularityReport {
  bool accepted = false;
  Rational node_count;
  RejectionReason rejection_reason = RejectionReason::None;
};

// Scans all pairs of powers of system elements; a conjugate shared power of
// order >= 3 rejects, shared involutions accumulate |G|/(2*d1*d2*|class|)
// nodes. Accepts iff the total equals 8 - K^2.
SingularityReport check_sings(const PermGroup &g, const SphericalSystem &sys1,
                              const SphericalSystem &sys2, int k_squared);

} // namespace pq
