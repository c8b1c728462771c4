#include "pq/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pq/errors.hpp"
#include "pq/hurwitz.hpp"

namespace pq {

namespace {

void extend_types(int k_squared, std::vector<int> &parts, int min_part, int max_part,
                  std::vector<TypeEntry> &out) {
  if (parts.size() >= 3) {
    Signature sig;
    sig.parts = parts; // already sorted by construction
    Rational th = theta(sig);
    if (th > Rational(0)) {
      Rational a = Rational(k_squared) / (Rational(4) * th);
      if (a.is_integer() && a.num() >= 1) {
        int64_t av = a.num();
        bool all_div = true;
        int bads = 0;
        for (int m : parts) {
          if ((2 * av) % m != 0)
            all_div = false;
          if (av % m != 0)
            ++bads;
        }
        if (all_div && bads <= (8 - k_squared) / 2)
          out.push_back(TypeEntry{sig, av});
      }
    }
  }
  if (parts.size() == 7)
    return;
  for (int m = min_part; m <= max_part; ++m) {
    parts.push_back(m);
    extend_types(k_squared, parts, m, max_part, out);
    parts.pop_back();
  }
}

} // namespace

std::vector<TypeEntry> list_of_types(int k_squared) {
  if (k_squared != 2 && k_squared != 4 && k_squared != 6)
    throw Error("K^2 must be one of 2, 4, 6");
  std::vector<TypeEntry> out;
  std::vector<int> parts;
  extend_types(k_squared, parts, 2, 3 * (k_squared + 2), out);
  std::sort(out.begin(), out.end(), [](const TypeEntry &a, const TypeEntry &b) {
    return a.signature < b.signature;
  });
  return out;
}

std::vector<Triple> list_triples(int k_squared, const Catalog &cat,
                                 std::vector<SweepNote> *ledger) {
  auto types = list_of_types(k_squared);
  std::vector<Triple> out;
  std::set<int64_t> noted_excluded, noted_besteffort;

  for (size_t i = 0; i < types.size(); ++i) {
    for (size_t j = i; j < types.size(); ++j) {
      const Signature &t1 = types[i].signature;
      const Signature &t2 = types[j].signature;
      Rational ord = Rational(8) * Rational(types[i].alpha) * Rational(types[j].alpha) /
                     Rational(k_squared);
      if (!ord.is_integer())
        continue;
      int64_t n = ord.as_integer();
      if (order_is_excluded(n)) {
        if (ledger && noted_excluded.insert(n).second)
          ledger->push_back(
              {n, "order excluded from the sweep; closed out by case analysis"});
        continue;
      }
      auto groups = groups_of_order(cat, n);
      if (ledger && groups.verdict == CompletenessVerdict::BestEffort &&
          noted_besteffort.insert(n).second)
        ledger->push_back({n, "catalog not certified complete at this order"});
      for (const CatalogEntry *e : groups.entries) {
        if (!exists_spherical(*e->group, t1))
          continue;
        if (t1 != t2 && !exists_spherical(*e->group, t2))
          continue;
        Triple tr;
        tr.k_squared = k_squared;
        tr.t1 = t1;
        tr.t2 = t2;
        tr.entry = e;
        tr.group_order = n;
        tr.genus1 = hurwitz_genus(n, t1);
        tr.genus2 = hurwitz_genus(n, t2);
        out.push_back(std::move(tr));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Triple &a, const Triple &b) {
    if (a.t1 != b.t1)
      return a.t1 < b.t1;
    if (a.t2 != b.t2)
      return a.t2 < b.t2;
    return a.entry->label < b.entry->label;
  });
  return out;
}

std::vector<Triple> existing_nodal_surfaces(int k_squared, const Catalog &cat,
                                            std::vector<SweepNote> *ledger) {
  std::vector<Triple> out;
  for (const Triple &tr : list_triples(k_squared, cat, ledger)) {
    auto reps1 = systems_up_to_conjugation(*tr.entry->group, tr.t1);
    auto reps2 = tr.t1 == tr.t2 ? reps1 : systems_up_to_conjugation(*tr.entry->group, tr.t2);
    bool found = false;
    for (const auto &s1 : reps1) {
      for (const auto &s2 : reps2) {
        if (check_sings(*tr.entry->group, s1, s2, k_squared).accepted) {
          found = true;
          break;
        }
      }
      if (found)
        break;
    }
    if (found)
      out.push_back(tr);
  }
  return out;
}

std::vector<FamilyClass> find_all_components(const Triple &triple, int64_t orbit_cap) {
  const PermGroup &g = *triple.entry->group;
  auto auts = automorphisms(g);

  HurwitzCanonicalizer canon(g, orbit_cap);
  auto canonical_reps = [&](const Signature &sig) {
    std::set<std::vector<int>> reps;
    for (const auto &s : all_spherical_systems(g, sig))
      reps.insert(canon.canonical(s.elements));
    return std::vector<std::vector<int>>(reps.begin(), reps.end());
  };
  auto reps1 = canonical_reps(triple.t1);
  auto reps2 = triple.t1 == triple.t2 ? reps1 : canonical_reps(triple.t2);

  using Pair = std::pair<std::vector<int>, std::vector<int>>;
  std::map<Pair, int> ids;
  std::vector<Pair> pairs;
  for (const auto &r1 : reps1)
    for (const auto &r2 : reps2) {
      ids.emplace(Pair{r1, r2}, static_cast<int>(pairs.size()));
      pairs.emplace_back(r1, r2);
    }

  // union-find over canonical pairs under the simultaneous Aut(G) action
  std::vector<int> uf(pairs.size());
  for (size_t i = 0; i < uf.size(); ++i)
    uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x)
      x = uf[x] = uf[uf[x]];
    return x;
  };
  auto apply_aut = [&](const GroupMap &phi, const std::vector<int> &tuple) {
    std::vector<int> img(tuple.size());
    for (size_t k = 0; k < tuple.size(); ++k)
      img[k] = phi.image_table[tuple[k]];
    return canon.canonical(img);
  };
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (const auto &phi : auts) {
      Pair q{apply_aut(phi, pairs[i].first), apply_aut(phi, pairs[i].second)};
      auto it = ids.find(q);
      if (it == ids.end())
        throw Error("automorphism image escaped the canonical pair set");
      int a = find(static_cast<int>(i)), b = find(it->second);
      if (a != b)
        uf[std::max(a, b)] = std::min(a, b);
    }
  }

  std::map<int, Pair> class_min;
  for (size_t i = 0; i < pairs.size(); ++i) {
    int root = find(static_cast<int>(i));
    auto it = class_min.find(root);
    if (it == class_min.end() || pairs[i] < it->second)
      class_min[root] = pairs[i];
  }

  std::vector<FamilyClass> out;
  for (auto &[root, rep] : class_min) {
    SphericalSystem s1{&g, rep.first, triple.t1};
    SphericalSystem s2{&g, rep.second, triple.t2};
    if (!check_sings(g, s1, s2, triple.k_squared).accepted)
      continue;
    FamilyClass fc;
    fc.triple = triple;
    fc.sys1 = std::move(s1);
    fc.sys2 = std::move(s2);
    out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end(), [](const FamilyClass &a, const FamilyClass &b) {
    if (a.sys1.elements != b.sys1.elements)
      return a.sys1.elements < b.sys1.elements;
    return a.sys2.elements < b.sys2.elements;
  });
  for (size_t i = 0; i < out.size(); ++i)
    out[i].class_id = static_cast<int>(i);
  return out;
}

} // namespace pq
