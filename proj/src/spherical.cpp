#include "pq/spherical.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "pq/errors.hpp"
#include "pq/intmat.hpp"

namespace pq {

void validate_system(const SphericalSystem &s) {
  const PermGroup &g = *s.group;
  if (static_cast<int>(s.elements.size()) != s.signature.arity())
    throw Error("system length does not match signature");
  int prod = 0;
  for (size_t i = 0; i < s.elements.size(); ++i) {
    if (g.element_order(s.elements[i]) != s.signature.parts[i])
      throw Error("system element order mismatch at position " + std::to_string(i));
    prod = g.mult(prod, s.elements[i]);
  }
  if (prod != 0)
    throw Error("system product is not the identity");
  std::vector<Permutation> gens;
  for (int e : s.elements)
    gens.push_back(g.element(e));
  if (PermGroup(g.degree(), gens).order() != g.order())
    throw Error("system does not generate the group");
}

namespace {

// Surjection test for finite abelian groups given as invariant factor
// chains a_1 | a_2 | ... : a quotient map exists iff the k-th largest
// invariant of the source is divisible by the k-th largest of the target.
bool abelian_surjects(const std::vector<int64_t> &src, const std::vector<int64_t> &dst) {
  if (dst.size() > src.size())
    return false;
  for (size_t k = 0; k < dst.size(); ++k)
    if (src[src.size() - 1 - k] % dst[dst.size() - 1 - k] != 0)
      return false;
  return true;
}

// Invariant factors of the abelianized polygonal group
// Z^r / <m_i e_i, e_1 + ... + e_r>.
std::vector<int64_t> polygonal_abelianization(const Signature &sig) {
  int r = sig.arity();
  IntMatrix m(r + 1, r);
  for (int i = 0; i < r; ++i)
    m.at(i, i) = sig.parts[i];
  for (int i = 0; i < r; ++i)
    m.at(r, i) = 1;
  auto d = smith_normal_form(m);
  std::vector<int64_t> inv;
  for (int64_t v : d)
    if (v > 1)
      inv.push_back(v);
  return inv;
}

bool spectrum_admits(const PermGroup &g, const Signature &sig) {
  for (int m : sig.parts) {
    bool found = false;
    for (int i = 0; i < g.order() && !found; ++i)
      found = g.element_order(i) == m;
    if (!found)
      return false;
  }
  return true;
}

// Shared scaffolding for the spherical searches: iterates tuples
// (x_1,...,x_{r-1}) with prescribed orders, forcing x_r as the inverse of
// the partial product. first_candidates restricts position 0.
template <class Visit>
void search_tuples(const PermGroup &g, const Signature &sig,
                   const std::vector<int> &first_candidates, Visit &&visit) {
  int r = sig.arity();
  std::vector<std::vector<int>> pools(r - 1);
  pools[0] = first_candidates;
  for (int i = 1; i < r - 1; ++i)
    pools[i] = element_indices_of_order(g, sig.parts[i]);
  for (int i = 0; i < r - 1; ++i)
    if (pools[i].empty())
      return;
  int last_order = sig.parts[r - 1];

  std::vector<int> tuple(r);
  std::vector<int> partial(r); // partial[i] = product of tuple[0..i]
  std::vector<size_t> pos(r - 1, 0);
  int depth = 0;
  while (depth >= 0) {
    if (pos[depth] == pools[depth].size()) {
      pos[depth] = 0;
      --depth;
      if (depth >= 0)
        ++pos[depth];
      continue;
    }
    tuple[depth] = pools[depth][pos[depth]];
    partial[depth] = depth == 0 ? tuple[0] : g.mult(partial[depth - 1], tuple[depth]);
    if (depth + 1 < r - 1) {
      ++depth;
      continue;
    }
    int forced = g.inverse_of(partial[depth]);
    if (g.element_order(forced) == last_order) {
      tuple[r - 1] = forced;
      if (!visit(tuple))
        return;
    }
    ++pos[depth];
  }
}

bool tuple_generates(const PermGroup &g, const std::vector<int> &tuple) {
  std::vector<bool> seen(g.order(), false);
  std::vector<int> bfs{0};
  seen[0] = true;
  int count = 1;
  for (size_t at = 0; at < bfs.size(); ++at)
    for (int t : tuple) {
      int nxt = g.mult(bfs[at], t);
      if (!seen[nxt]) {
        seen[nxt] = true;
        bfs.push_back(nxt);
        ++count;
      }
    }
  return count == g.order();
}

std::vector<int> canonical_conjugate(const PermGroup &g, const std::vector<int> &tuple) {
  std::vector<int> best;
  std::vector<int> cand(tuple.size());
  for (int h = 0; h < g.order(); ++h) {
    int hi = g.inverse_of(h);
    for (size_t i = 0; i < tuple.size(); ++i)
      cand[i] = g.mult(g.mult(hi, tuple[i]), h);
    if (best.empty() || cand < best)
      best = cand;
  }
  return best;
}

} // namespace

bool exists_spherical(const PermGroup &g, const Signature &sig) {
  int r = sig.arity();
  if (r < 2)
    return false;
  if (!spectrum_admits(g, sig))
    return false;
  if (!abelian_surjects(polygonal_abelianization(sig), abelianization_invariants(g)))
    return false;

  // first element only up to conjugacy: conjugating a whole system is again
  // a system, so existence is decided on class representatives
  std::vector<int> firsts;
  {
    std::vector<bool> seen(g.order(), false);
    for (int i = 0; i < g.order(); ++i) {
      if (seen[i] || g.element_order(i) != sig.parts[0])
        continue;
      firsts.push_back(i);
      for (int h = 0; h < g.order(); ++h)
        seen[g.conjugate_index(i, h)] = true;
    }
  }

  bool found = false;
  search_tuples(g, sig, firsts, [&](const std::vector<int> &tuple) {
    if (tuple_generates(g, tuple)) {
      found = true;
      return false; // stop
    }
    return true;
  });
  return found;
}

std::vector<SphericalSystem> all_spherical_systems(const PermGroup &g,
                                                   const Signature &sig) {
  std::vector<SphericalSystem> out;
  if (sig.arity() < 2 || !spectrum_admits(g, sig))
    return out;
  search_tuples(g, sig, element_indices_of_order(g, sig.parts[0]),
                [&](const std::vector<int> &tuple) {
                  if (tuple_generates(g, tuple))
                    out.push_back(SphericalSystem{&g, tuple, sig});
                  return true;
                });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SphericalSystem> systems_up_to_conjugation(const PermGroup &g,
                                                       const Signature &sig) {
  std::vector<SphericalSystem> out;
  if (sig.arity() < 2 || !spectrum_admits(g, sig))
    return out;
  std::set<std::vector<int>> reps;
  search_tuples(g, sig, element_indices_of_order(g, sig.parts[0]),
                [&](const std::vector<int> &tuple) {
                  if (tuple_generates(g, tuple))
                    reps.insert(canonical_conjugate(g, tuple));
                  return true;
                });
  for (const auto &t : reps)
    out.push_back(SphericalSystem{&g, t, sig});
  return out;
}

SingularityReport check_sings(const PermGroup &g, const SphericalSystem &sys1,
                              const SphericalSystem &sys2, int k_squared) {
  SingularityReport rep;
  Rational target(8 - k_squared);
  std::vector<int64_t> class_size_cache(g.order(), -1);
  auto class_size = [&](int e) {
    if (class_size_cache[e] < 0)
      class_size_cache[e] = class_size_of(g, e);
    return class_size_cache[e];
  };

  for (int e1 : sys1.elements) {
    int o1 = g.element_order(e1);
    for (int e2 : sys2.elements) {
      int o2 = g.element_order(e2);
      int p1 = e1;
      for (int d1 = 1; d1 < o1; ++d1, p1 = g.mult(p1, e1)) {
        int p2 = e2;
        for (int d2 = 1; d2 < o2; ++d2, p2 = g.mult(p2, e2)) {
          if (g.element_order(p1) != g.element_order(p2))
            continue;
          if (!conjugate_indices(g, p1, p2))
            continue;
          if (g.element_order(p1) >= 3) {
            rep.rejection_reason = RejectionReason::WorseThanNode;
            rep.accepted = false;
            return rep;
          }
          // shared involution: contributes nodes
          rep.node_count +=
              Rational(g.order(), 2 * static_cast<int64_t>(d1) * d2 * class_size(p1));
          if (rep.node_count > target) {
            rep.rejection_reason = RejectionReason::TooManyNodes;
            rep.accepted = false;
            return rep;
          }
        }
      }
    }
  }
  rep.accepted = (rep.node_count == target);
  return rep;
}

} // namespace pq
