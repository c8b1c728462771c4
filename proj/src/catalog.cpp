#include "pq/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "pq/enumerate.hpp"
#include "pq/errors.hpp"

namespace pq {

const CatalogEntry *Catalog::find(const std::string &label) const {
  for (const auto &e : entries)
    if (e.label == label)
      return &e;
  return nullptr;
}

std::string verdict_str(CompletenessVerdict v) {
  switch (v) {
  case CompletenessVerdict::Complete:
    return "complete";
  case CompletenessVerdict::BestEffort:
    return "best-effort";
  case CompletenessVerdict::Excluded:
    return "excluded";
  }
  return "?";
}

bool order_is_excluded(int64_t n) { return n == 1024 || n == 1152 || n > 2000; }

Catalog parse_catalog(const std::string &text) {
  Catalog cat;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;

  bool in_stanza = false;
  CatalogEntry cur;
  std::vector<std::string> gen_texts;

  auto finish = [&](int at_line) {
    if (cur.label.empty())
      throw ParseError("stanza missing label", at_line);
    if (cur.degree <= 0)
      throw ParseError("stanza missing degree", at_line);
    for (const auto &t : gen_texts)
      cur.generators.push_back(Permutation::parse_cycles(t, cur.degree));
    auto grp = std::make_shared<PermGroup>(cur.degree, cur.generators);
    if (cur.claimed_order && *cur.claimed_order != grp->order())
      throw OrderMismatch("group " + cur.label + " claims order " +
                          std::to_string(*cur.claimed_order) + " but closure has " +
                          std::to_string(grp->order()));
    cur.group = std::move(grp);
    for (const auto &e : cat.entries)
      if (e.label == cur.label)
        throw ParseError("duplicate label " + cur.label, at_line);
    cat.entries.push_back(std::move(cur));
    cur = CatalogEntry{};
    gen_texts.clear();
  };

  while (std::getline(ss, line)) {
    ++lineno;
    // trim
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#')
      continue;
    std::stringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ')
      rest = rest.substr(rest.find_first_not_of(' '));

    if (key == "group") {
      if (in_stanza)
        throw ParseError("nested group stanza", lineno);
      in_stanza = true;
      cur.label = rest;
      if (cur.label.empty())
        throw ParseError("group line without label", lineno);
    } else if (key == "degree") {
      if (!in_stanza)
        throw ParseError("degree outside stanza", lineno);
      try {
        cur.degree = std::stoi(rest);
      } catch (...) {
        throw ParseError("bad degree \"" + rest + "\"", lineno);
      }
    } else if (key == "order") {
      if (!in_stanza)
        throw ParseError("order outside stanza", lineno);
      try {
        cur.claimed_order = std::stoll(rest);
      } catch (...) {
        throw ParseError("bad order \"" + rest + "\"", lineno);
      }
    } else if (key == "gen") {
      if (!in_stanza)
        throw ParseError("gen outside stanza", lineno);
      gen_texts.push_back(rest);
    } else if (key == "end") {
      if (!in_stanza)
        throw ParseError("end outside stanza", lineno);
      try {
        finish(lineno);
      } catch (const OrderMismatch &) {
        throw;
      } catch (const ParseError &) {
        throw;
      } catch (const Error &err) {
        throw ParseError(err.what(), lineno);
      }
      in_stanza = false;
    } else if (key == "order-complete") {
      if (in_stanza)
        throw ParseError("order-complete inside stanza", lineno);
      int64_t n;
      try {
        n = std::stoll(rest);
      } catch (...) {
        throw ParseError("bad order-complete \"" + rest + "\"", lineno);
      }
      cat.order_complete.insert(n);
      cat.user_asserted.insert(n);
    } else {
      throw ParseError("unknown directive \"" + key + "\"", lineno);
    }
  }
  if (in_stanza)
    throw ParseError("unterminated group stanza", lineno);
  return cat;
}

std::string serialize_catalog(const Catalog &cat) {
  std::string out;
  for (int64_t n : cat.order_complete)
    out += "order-complete " + std::to_string(n) + "\n";
  for (const auto &e : cat.entries) {
    out += "group " + e.label + "\n";
    out += "degree " + std::to_string(e.degree) + "\n";
    if (e.claimed_order)
      out += "order " + std::to_string(*e.claimed_order) + "\n";
    for (const auto &g : e.generators)
      out += "gen " + g.cycle_str() + "\n";
    out += "end\n";
  }
  return out;
}

bool isomorphic(const PermGroup &a, const PermGroup &b) {
  if (a.order() != b.order())
    return false;
  std::map<int, int> spec_a, spec_b;
  for (int i = 0; i < a.order(); ++i)
    ++spec_a[a.element_order(i)];
  for (int i = 0; i < b.order(); ++i)
    ++spec_b[b.element_order(i)];
  if (spec_a != spec_b)
    return false;
  if (abelianization_invariants(a) != abelianization_invariants(b))
    return false;

  auto tuple = small_generating_tuple(a);
  if (tuple.empty())
    return true; // both trivial

  std::vector<int64_t> cls_a(tuple.size());
  for (size_t s = 0; s < tuple.size(); ++s)
    cls_a[s] = class_size_of(a, tuple[s]);
  std::vector<std::vector<int>> candidates(tuple.size());
  for (size_t s = 0; s < tuple.size(); ++s)
    for (int i = 0; i < b.order(); ++i)
      if (b.element_order(i) == a.element_order(tuple[s]) &&
          class_size_of(b, i) == cls_a[s])
        candidates[s].push_back(i);
  for (const auto &c : candidates)
    if (c.empty())
      return false;

  // BFS expression of every element of a over the tuple
  std::vector<int> parent(a.order(), -2), via(a.order(), -1), order_list;
  parent[0] = -1;
  order_list.push_back(0);
  for (size_t at = 0; at < order_list.size(); ++at)
    for (size_t s = 0; s < tuple.size(); ++s) {
      int nxt = a.mult(order_list[at], tuple[s]);
      if (parent[nxt] == -2) {
        parent[nxt] = order_list[at];
        via[nxt] = static_cast<int>(s);
        order_list.push_back(nxt);
      }
    }

  std::vector<int> images(tuple.size()), img(a.order());
  std::vector<size_t> pos(tuple.size(), 0);
  size_t depth = 0;
  while (true) {
    if (pos[depth] == candidates[depth].size()) {
      if (depth == 0)
        return false;
      pos[depth] = 0;
      --depth;
      ++pos[depth];
      continue;
    }
    images[depth] = candidates[depth][pos[depth]];
    if (depth + 1 < tuple.size()) {
      ++depth;
      continue;
    }
    bool ok = true;
    img[0] = 0;
    for (int e : order_list)
      if (e != 0)
        img[e] = b.mult(img[parent[e]], images[via[e]]);
    for (int e = 0; e < a.order() && ok; ++e)
      for (size_t s = 0; s < tuple.size(); ++s)
        if (img[a.mult(e, tuple[s])] != b.mult(img[e], images[s])) {
          ok = false;
          break;
        }
    if (ok) {
      std::vector<bool> hit(b.order(), false);
      for (int v : img) {
        if (hit[v]) {
          ok = false;
          break;
        }
        hit[v] = true;
      }
    }
    if (ok)
      return true;
    ++pos[depth];
  }
}

namespace {

struct Builder {
  Catalog cat;

  void add(const std::string &label, int degree, std::vector<std::string> gen_texts) {
    CatalogEntry e;
    e.label = label;
    e.degree = degree;
    for (const auto &t : gen_texts)
      e.generators.push_back(Permutation::parse_cycles(t, degree));
    e.group = std::make_shared<PermGroup>(degree, e.generators);
    cat.entries.push_back(std::move(e));
  }

  void add_perms(const std::string &label, int degree, std::vector<Permutation> gens) {
    CatalogEntry e;
    e.label = label;
    e.degree = degree;
    e.generators = std::move(gens);
    e.group = std::make_shared<PermGroup>(degree, e.generators);
    cat.entries.push_back(std::move(e));
  }

  bool has_order(int64_t n) const {
    for (const auto &e : cat.entries)
      if (e.order() == n)
        return true;
    return false;
  }

  // adds only if no isomorphic entry of the same order exists
  void add_dedup(const std::string &label, int degree, std::vector<Permutation> gens) {
    auto grp = std::make_shared<PermGroup>(degree, gens);
    for (const auto &e : cat.entries)
      if (e.order() == grp->order() && isomorphic(*e.group, *grp))
        return;
    CatalogEntry e;
    e.label = label;
    e.degree = degree;
    e.generators = std::move(gens);
    e.group = std::move(grp);
    cat.entries.push_back(std::move(e));
  }
};

Permutation cycle_on(int degree, int start, int len) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i)
    im[i] = i;
  for (int i = 0; i < len; ++i)
    im[start + i] = start + (i + 1) % len;
  return Permutation(std::move(im));
}

std::vector<Permutation> abelian_generators(const std::vector<int64_t> &type) {
  int degree = 0;
  for (int64_t d : type)
    degree += static_cast<int>(d);
  std::vector<Permutation> gens;
  int at = 0;
  for (int64_t d : type) {
    gens.push_back(cycle_on(degree, at, static_cast<int>(d)));
    at += static_cast<int>(d);
  }
  return gens;
}

std::string abelian_label(const std::vector<int64_t> &type) {
  std::string out;
  size_t i = 0;
  while (i < type.size()) {
    size_t j = i;
    while (j < type.size() && type[j] == type[i])
      ++j;
    if (!out.empty())
      out += "x";
    out += "Z" + std::to_string(type[i]);
    if (j - i > 1)
      out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// All abelian groups of order n: per-prime partitions of the exponent,
// combined into cyclic factor types (not invariant-factor form; the label
// reflects the primary decomposition).
std::vector<std::vector<int64_t>> abelian_types(int64_t n) {
  std::map<int64_t, int> fact;
  int64_t rest = n;
  for (int64_t p = 2; p * p <= rest; ++p)
    while (rest % p == 0) {
      ++fact[p];
      rest /= p;
    }
  if (rest > 1)
    ++fact[rest];

  std::vector<std::vector<int64_t>> types{{}};
  for (auto &[p, e] : fact) {
    // partitions of e
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (int k = std::min(left, maxp); k >= 1; --k) {
        cur.push_back(k);
        rec(left - k, k);
        cur.pop_back();
      }
    };
    rec(e, e);
    std::vector<std::vector<int64_t>> next;
    for (const auto &t : types)
      for (const auto &pt : parts) {
        auto nt = t;
        for (int k : pt) {
          int64_t pk = 1;
          for (int i = 0; i < k; ++i)
            pk *= p;
          nt.push_back(pk);
        }
        next.push_back(std::move(nt));
      }
    types = std::move(next);
  }
  for (auto &t : types)
    std::sort(t.begin(), t.end(), std::greater<>());
  std::sort(types.begin(), types.end());
  return types;
}

std::vector<Permutation> dihedral_generators(int n) {
  // rotation and reflection on n points
  std::vector<int> rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return {Permutation(std::move(rot)), Permutation(std::move(ref))};
}

std::vector<Permutation> symmetric_generators(int n) {
  std::vector<int> tr(n), cyc(n);
  for (int i = 0; i < n; ++i) {
    tr[i] = i;
    cyc[i] = (i + 1) % n;
  }
  std::swap(tr[0], tr[1]);
  return {Permutation(std::move(tr)), Permutation(std::move(cyc))};
}

std::vector<Permutation> alternating_generators(int n) {
  // (1 2 3) together with an n-cycle (n odd) or (2 .. n) (n even)
  std::vector<int> three(n), big(n);
  for (int i = 0; i < n; ++i) {
    three[i] = i;
    big[i] = i;
  }
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i)
      big[i] = (i + 1) % n;
  } else {
    for (int i = 1; i < n; ++i)
      big[i] = 1 + (i % (n - 1));
  }
  return {Permutation(std::move(three)), Permutation(std::move(big))};
}

std::vector<Permutation> product_generators(const CatalogEntry &a, const CatalogEntry &b) {
  int da = a.degree, db = b.degree;
  std::vector<Permutation> gens;
  for (const auto &p : a.generators) {
    std::vector<int> im(da + db);
    for (int i = 0; i < da; ++i)
      im[i] = p[i];
    for (int i = 0; i < db; ++i)
      im[da + i] = da + i;
    gens.push_back(Permutation(std::move(im)));
  }
  for (const auto &p : b.generators) {
    std::vector<int> im(da + db);
    for (int i = 0; i < da; ++i)
      im[i] = i;
    for (int i = 0; i < db; ++i)
      im[da + i] = da + p[i];
    gens.push_back(Permutation(std::move(im)));
  }
  return gens;
}

bool is_prime(int64_t n) {
  if (n < 2)
    return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Orders where {abelian, dihedral} provably exhausts all isomorphism
// classes: 1, primes, p^2, 2p, and pq with p not dividing q - 1.
bool certified_complete(int64_t n) {
  if (n == 1 || is_prime(n))
    return true;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0 || !is_prime(p))
      continue;
    int64_t q = n / p;
    if (q == p)
      return true; // p^2: two abelian groups
    if (is_prime(q)) {
      if (p == 2)
        return true; // 2q: cyclic and dihedral
      return (q - 1) % p != 0; // pq: cyclic only
    }
    return false;
  }
  return false;
}

Catalog build_builtin() {
  Builder b;

  // groups of the classification, with their published generator lists
  b.add("PSL(2,7)", 7, {"(3,4)(5,6)", "(1,2,3)(4,5,7)"});
  b.add("S4xZ2", 6, {"(1,2)", "(1,3)", "(1,4)", "(5,6)"});
  b.add("S3xS3", 6, {"(1,2)", "(1,3)", "(4,5)", "(4,6)"});
  b.add("D4xZ2", 6, {"(1,2,3,4)", "(1,4)(2,3)", "(5,6)"});
  b.add("Z2^4:Z2", 8, {"(1,2)(3,4)", "(1,4)(2,3)", "(5,6)(7,8)", "(5,8)(6,7)", "(1,3)(5,7)"});
  b.add("S3xZ3", 6, {"(1,2)", "(1,3)", "(4,5,6)"});
  b.add("Z3^2:Z2", 6, {"(1,2,3)", "(4,5,6)", "(1,2)(4,5)"});
  b.add("S5xZ2", 7, {"(1,2)", "(1,3)", "(1,4)", "(1,5)", "(6,7)"});

  // orders the sweep can reach: integral 8*a1*a2/K^2 below the cap
  std::set<int64_t> needed;
  for (int k2 : {2, 4, 6}) {
    auto types = list_of_types(k2);
    for (size_t i = 0; i < types.size(); ++i)
      for (size_t j = i; j < types.size(); ++j) {
        Rational ord = Rational(8) * Rational(types[i].alpha) *
                       Rational(types[j].alpha) / Rational(k2);
        if (ord.is_integer() && !order_is_excluded(ord.as_integer()))
          needed.insert(ord.as_integer());
      }
  }

  // symmetric / alternating up to degree 7 (inside the sweep cap)
  for (int n : {3, 4, 5, 6}) {
    int64_t ord = 1;
    for (int i = 2; i <= n; ++i)
      ord *= i;
    if (needed.count(ord))
      b.add_perms("S" + std::to_string(n), n, symmetric_generators(n));
  }
  for (int n : {4, 5, 6, 7}) {
    int64_t ord = 1;
    for (int i = 2; i <= n; ++i)
      ord *= i;
    ord /= 2;
    if (needed.count(ord))
      b.add_perms("A" + std::to_string(n), n, alternating_generators(n));
  }

  // non-abelian bases for the product construction: everything added so far
  size_t base_end = b.cat.entries.size();

  // dihedral
  for (int64_t n : needed)
    if (n % 2 == 0 && n >= 6 && n / 2 >= 3)
      b.add_dedup("D" + std::to_string(n / 2), static_cast<int>(n / 2),
                  dihedral_generators(static_cast<int>(n / 2)));
  size_t dihedral_end = b.cat.entries.size();

  // abelian families
  for (int64_t n : needed)
    for (const auto &type : abelian_types(n))
      b.add_dedup(abelian_label(type), [&] {
        int d = 0;
        for (int64_t v : type)
          d += static_cast<int>(v);
        return d;
      }(), abelian_generators(type));

  // direct products of the non-abelian bases with abelian groups
  // (abelian x abelian is already covered by the type enumeration)
  for (size_t i = 0; i < dihedral_end; ++i) {
    if (i >= base_end && b.cat.entries[i].label[0] != 'D')
      continue;
    const CatalogEntry a = b.cat.entries[i]; // copy; entries vector grows
    if (a.order() <= 1)
      continue;
    std::vector<int64_t> cofactors;
    for (int64_t n : needed)
      if (n % a.order() == 0 && n / a.order() > 1)
        cofactors.push_back(n / a.order());
    for (int64_t c : cofactors)
      for (const auto &type : abelian_types(c)) {
        CatalogEntry helper;
        helper.label = abelian_label(type);
        helper.degree = 0;
        for (int64_t v : type)
          helper.degree += static_cast<int>(v);
        helper.generators = abelian_generators(type);
        auto gens = product_generators(a, helper);
        b.add_dedup(a.label + "x" + helper.label, a.degree + helper.degree,
                    std::move(gens));
      }
  }

  for (int64_t n : needed)
    if (certified_complete(n))
      b.cat.order_complete.insert(n);
  b.cat.order_complete.insert(1);

  return b.cat;
}

} // namespace

const Catalog &builtin_catalog() {
  static const Catalog cat = build_builtin();
  return cat;
}

std::vector<Permutation> symmetric_gens(int n) { return symmetric_generators(n); }
std::vector<Permutation> alternating_gens(int n) { return alternating_generators(n); }
std::vector<Permutation> dihedral_gens(int n) { return dihedral_generators(n); }
std::vector<Permutation> abelian_gens(const std::vector<int64_t> &type) {
  return abelian_generators(type);
}
std::string abelian_type_label(const std::vector<int64_t> &type) {
  return abelian_label(type);
}
std::vector<std::vector<int64_t>> abelian_types_of_order(int64_t n) {
  return abelian_types(n);
}

std::vector<CatalogEntry> small_groups_upto(int64_t max_order) {
  Builder b;
  for (int64_t n = 2; n <= max_order; ++n)
    for (const auto &type : abelian_types(n)) {
      int d = 0;
      for (int64_t v : type)
        d += static_cast<int>(v);
      b.add_dedup(abelian_label(type), d, abelian_generators(type));
    }
  for (int n = 3; 2 * n <= max_order; ++n)
    b.add_dedup("D" + std::to_string(n), n, dihedral_generators(n));
  if (max_order >= 12)
    b.add_dedup("A4", 4, alternating_generators(4));
  if (max_order >= 24)
    b.add_dedup("S4", 4, symmetric_generators(4));
  if (max_order >= 6)
    b.add_dedup("S3", 3, symmetric_generators(3));
  return b.cat.entries;
}

GroupsOfOrder groups_of_order(const Catalog &cat, int64_t n) {
  GroupsOfOrder out;
  if (order_is_excluded(n)) {
    out.verdict = CompletenessVerdict::Excluded;
    return out;
  }
  for (const auto &e : cat.entries)
    if (e.order() == n)
      out.entries.push_back(&e);
  out.verdict = cat.order_complete.count(n) ? CompletenessVerdict::Complete
                                            : CompletenessVerdict::BestEffort;
  return out;
}

} // namespace pq
