#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pq/spherical.hpp"

namespace pq {

// Braid action on generating tuples:
// (..., x_i, x_{i+1}, ...) -> (..., x_{i+1}, x_{i+1}^-1 x_i x_{i+1}, ...).
// Preserves the product, the multiset of element orders and the generated
// subgroup.
SphericalSystem hurwitz_move(const SphericalSystem &sys, int idx);
std::vector<int> hurwitz_move_tuple(const PermGroup &g, const std::vector<int> &tuple,
                                    int idx);
// Inverse move: (x_i, x_{i+1}) -> (x_i x_{i+1} x_i^-1, x_i).
std::vector<int> hurwitz_move_inv_tuple(const PermGroup &g, const std::vector<int> &tuple,
                                        int idx);

// Full orbit under Hurwitz moves, filtered to tuples whose order sequence
// is non-decreasing. Throws OrbitCapExceeded past the cap.
std::vector<SphericalSystem> hurwitz_orbit(const SphericalSystem &sys,
                                           int64_t orbit_cap = 1 << 22);

// Memoized canonical representatives: minimum sorted-order tuple of each
// Hurwitz orbit. Systems of one signature share a cache.
class HurwitzCanonicalizer {
public:
  HurwitzCanonicalizer(const PermGroup &g, int64_t orbit_cap = 1 << 22)
      : group_(&g), cap_(orbit_cap) {}

  // Canonical representative of the orbit of a sorted-signature tuple.
  const std::vector<int> &canonical(const std::vector<int> &tuple);

private:
  const PermGroup *group_;
  int64_t cap_;
  std::map<std::vector<int>, std::vector<int>> canon_;
};

} // namespace pq
