#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pq/catalog.hpp"
#include "pq/geometry.hpp"
#include "pq/spherical.hpp"

namespace pq {

// The classification sweep: signature enumeration, triple search over the
// catalog, nodal filtering, and equivalence classes of system pairs.

struct TypeEntry {
  Signature signature;
  int64_t alpha;
};

// All signatures satisfying: alpha a positive integer, every m_i divides
// 2*alpha, at most (8-K^2)/2 of the m_i do not divide alpha; arity <= 7 and
// m_i <= 3(K^2+2). Sorted by (arity, lex).
std::vector<TypeEntry> list_of_types(int k_squared);

struct Triple {
  int k_squared = 0;
  Signature t1, t2; // canonical: t1 <= t2 under (arity, lex)
  const CatalogEntry *entry = nullptr;
  int64_t group_order = 0;
  int64_t genus1 = 0, genus2 = 0; // genus over t1 resp. t2
};

struct SweepNote {
  int64_t order;
  std::string note;
};

// All triples (T1, T2, G): the pair order 8*alpha1*alpha2/K^2 is integral,
// not excluded, and G (from the catalog) admits spherical systems of both
// signatures. Ledger lines record excluded orders and best-effort sweeps.
std::vector<Triple> list_triples(int k_squared, const Catalog &cat,
                                 std::vector<SweepNote> *ledger = nullptr);

// Triples admitting at least one pair of systems with exactly 8 - K^2
// nodes and nothing worse, testing one system per conjugacy class.
std::vector<Triple> existing_nodal_surfaces(int k_squared, const Catalog &cat,
                                            std::vector<SweepNote> *ledger = nullptr);

struct FamilyClass {
  Triple triple;
  SphericalSystem sys1, sys2; // representative pair, accepted by check_sings
  int class_id = 0;
};

// One representative per orbit of accepting system pairs under Hurwitz
// moves on each factor and the simultaneous automorphism action,
// deterministically ordered.
std::vector<FamilyClass> find_all_components(const Triple &triple,
                                             int64_t orbit_cap = 1 << 22);

} // namespace pq
