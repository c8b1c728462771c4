#include "pq/hurwitz.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "pq/errors.hpp"

namespace pq {

std::vector<int> hurwitz_move_tuple(const PermGroup &g, const std::vector<int> &tuple,
                                    int idx) {
  std::vector<int> out = tuple;
  int x = tuple[idx], y = tuple[idx + 1];
  out[idx] = y;
  out[idx + 1] = g.mult(g.mult(g.inverse_of(y), x), y);
  return out;
}

std::vector<int> hurwitz_move_inv_tuple(const PermGroup &g, const std::vector<int> &tuple,
                                        int idx) {
  std::vector<int> out = tuple;
  int x = tuple[idx], y = tuple[idx + 1];
  out[idx] = g.mult(g.mult(x, y), g.inverse_of(x));
  out[idx + 1] = x;
  return out;
}

SphericalSystem hurwitz_move(const SphericalSystem &sys, int idx) {
  if (idx < 0 || idx + 1 >= static_cast<int>(sys.elements.size()))
    throw Error("hurwitz move index out of range");
  SphericalSystem out = sys;
  out.elements = hurwitz_move_tuple(*sys.group, sys.elements, idx);
  std::vector<int> orders;
  for (int e : out.elements)
    orders.push_back(sys.group->element_order(e));
  out.signature.parts = orders; // may be unsorted mid-orbit
  return out;
}

namespace {

// BFS over both move directions; the orbit is closed under inverse moves,
// exploring them just reaches it faster.
std::set<std::vector<int>> orbit_tuples(const PermGroup &g, const std::vector<int> &seed,
                                        int64_t cap) {
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> frontier;
  seen.insert(seed);
  frontier.push_back(seed);
  int r = static_cast<int>(seed.size());
  while (!frontier.empty()) {
    std::vector<int> cur = frontier.front();
    frontier.pop_front();
    for (int i = 0; i + 1 < r; ++i) {
      for (auto nxt : {hurwitz_move_tuple(g, cur, i), hurwitz_move_inv_tuple(g, cur, i)}) {
        if (seen.insert(nxt).second) {
          if (static_cast<int64_t>(seen.size()) > cap)
            throw OrbitCapExceeded("hurwitz orbit exceeds cap " + std::to_string(cap));
          frontier.push_back(std::move(nxt));
        }
      }
    }
  }
  return seen;
}

bool orders_sorted(const PermGroup &g, const std::vector<int> &tuple) {
  for (size_t i = 0; i + 1 < tuple.size(); ++i)
    if (g.element_order(tuple[i]) > g.element_order(tuple[i + 1]))
      return false;
  return true;
}

} // namespace

std::vector<SphericalSystem> hurwitz_orbit(const SphericalSystem &sys, int64_t orbit_cap) {
  const PermGroup &g = *sys.group;
  auto orbit = orbit_tuples(g, sys.elements, orbit_cap);
  std::vector<SphericalSystem> out;
  for (const auto &t : orbit) {
    if (!orders_sorted(g, t))
      continue;
    SphericalSystem s;
    s.group = sys.group;
    s.elements = t;
    s.signature = sys.signature;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<int> &HurwitzCanonicalizer::canonical(const std::vector<int> &tuple) {
  auto it = canon_.find(tuple);
  if (it != canon_.end())
    return it->second;
  auto orbit = orbit_tuples(*group_, tuple, cap_);
  std::vector<int> best;
  for (const auto &t : orbit) {
    if (!orders_sorted(*group_, t))
      continue;
    if (best.empty() || t < best)
      best = t;
  }
  // every sorted member of the orbit maps to the same representative
  const std::vector<int> *ret = nullptr;
  for (const auto &t : orbit) {
    if (!orders_sorted(*group_, t))
      continue;
    auto [pos, fresh] = canon_.emplace(t, best);
    (void)fresh;
    if (t == tuple)
      ret = &pos->second;
  }
  if (!ret)
    throw Error("tuple missing from its own hurwitz orbit");
  return *ret;
}

} // namespace pq
