#include "pq/permcore.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "pq/errors.hpp"

namespace pq {

Permutation::Permutation(int degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw Error("permutation images are not a bijection");
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::operator*(const Permutation &other) const {
  std::vector<int> r(images_.size());
  for (size_t i = 0; i < images_.size(); ++i)
    r[i] = other.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(r);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> r(images_.size());
  for (size_t i = 0; i < images_.size(); ++i)
    r[images_[i]] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(r);
  return p;
}

Permutation Permutation::conjugate(const Permutation &by) const {
  return by.inverse() * (*this * by);
}

Permutation Permutation::power(int64_t e) const {
  int n = perm_order(*this);
  e %= n;
  if (e < 0)
    e += n;
  Permutation acc(degree());
  Permutation base = *this;
  while (e > 0) {
    if (e & 1)
      acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

size_t Permutation::hash() const {
  size_t h = 1469598103934665603ull;
  for (int v : images_) {
    h ^= static_cast<size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

std::string Permutation::cycle_str() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first)
        out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  if (out.empty())
    out = "()";
  return out;
}

Permutation Permutation::parse_cycles(const std::string &text, int degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw Error("bad cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("bad cycle notation: expected point in \"" + text + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > degree)
        throw Error("cycle point " + std::to_string(v) + " outside degree " +
                    std::to_string(degree));
      cycle.push_back(v - 1);
      skip_ws();
      if (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) {
        if (text[i] == ',')
          ++i;
        skip_ws();
      }
    }
    if (i >= text.size())
      throw Error("bad cycle notation: unterminated cycle in \"" + text + "\"");
    ++i; // ')'
    for (size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      if (cycle.size() > 1 && images[from] != from)
        throw Error("cycles are not disjoint in \"" + text + "\"");
      if (cycle.size() > 1)
        images[from] = to;
    }
    skip_ws();
  }
  return Permutation(std::move(images));
}

int perm_order(const Permutation &p) {
  // lcm of cycle lengths
  int64_t ord = 1;
  std::vector<bool> seen(p.degree(), false);
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i])
      continue;
    int len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    ord = std::lcm(ord, static_cast<int64_t>(len));
  }
  return static_cast<int>(ord);
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators, int element_cap)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto &g : generators_)
    if (g.degree() != degree_)
      throw Error("generator degree mismatch");

  elements_.push_back(Permutation(degree_));
  index_.emplace(elements_[0], 0);
  for (size_t at = 0; at < elements_.size(); ++at) {
    Permutation cur = elements_[at]; // copy: elements_ may reallocate
    for (const auto &g : generators_) {
      Permutation next = cur * g;
      if (index_.find(next) == index_.end()) {
        if (static_cast<int>(elements_.size()) >= element_cap)
          throw CapExceeded("group closure exceeds element cap " +
                            std::to_string(element_cap));
        index_.emplace(next, static_cast<int>(elements_.size()));
        elements_.push_back(std::move(next));
      }
    }
  }

  finalize();
}

void PermGroup::finalize() {
  inverse_index_.resize(elements_.size());
  element_order_.resize(elements_.size());
  for (size_t i = 0; i < elements_.size(); ++i) {
    inverse_index_[i] = index_.at(elements_[i].inverse());
    element_order_[i] = perm_order(elements_[i]);
  }
  if (order() <= kMultTableMax) {
    size_t n = elements_.size();
    mult_table_.assign(n * n, -1);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        mult_table_[a * n + b] = mult_slow(static_cast<int>(a), static_cast<int>(b));
  }
}

int PermGroup::mult_slow(int a, int b) const {
  auto it = index_.find(elements_[a] * elements_[b]);
  if (it == index_.end())
    throw Error("product escaped the group; element list not closed");
  return it->second;
}

PermGroup PermGroup::from_closed_elements(int degree, std::vector<Permutation> elems) {
  PermGroup g;
  g.degree_ = degree;
  // identity goes first, rest keep their given order
  std::stable_sort(elems.begin(), elems.end(),
                   [](const Permutation &a, const Permutation &b) {
                     return a.is_identity() && !b.is_identity();
                   });
  if (elems.empty() || !elems[0].is_identity())
    throw Error("closed element list must contain the identity");
  g.elements_ = std::move(elems);
  for (size_t i = 0; i < g.elements_.size(); ++i)
    g.index_.emplace(g.elements_[i], static_cast<int>(i));
  if (g.index_.size() != g.elements_.size())
    throw Error("closed element list has duplicates");
  g.generators_ = g.elements_;
  for (const auto &e : g.elements_)
    if (g.index_.find(e.inverse()) == g.index_.end())
      throw Error("element list not closed under inversion");
  g.finalize();
  return g;
}

int PermGroup::index_of(const Permutation &p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

std::vector<Permutation> elements_of_order(const PermGroup &g, int k) {
  std::vector<Permutation> out;
  for (int i = 0; i < g.order(); ++i)
    if (g.element_order(i) == k)
      out.push_back(g.element(i));
  return out;
}

std::vector<int> element_indices_of_order(const PermGroup &g, int k) {
  std::vector<int> out;
  for (int i = 0; i < g.order(); ++i)
    if (g.element_order(i) == k)
      out.push_back(i);
  return out;
}

ConjugacyWitness conjugacy(const PermGroup &g, const Permutation &x,
                           const Permutation &y) {
  if (!g.contains(x) || !g.contains(y))
    throw Error("conjugacy query with elements outside the group");
  ConjugacyWitness w;
  for (const auto &h : g.elements()) {
    if (x.conjugate(h) == y) {
      w.conjugate = true;
      w.witness = h;
      return w;
    }
  }
  return w;
}

bool conjugate_indices(const PermGroup &g, int x, int y) {
  if (g.element_order(x) != g.element_order(y))
    return false;
  for (int h = 0; h < g.order(); ++h)
    if (g.conjugate_index(x, h) == y)
      return true;
  return false;
}

CentralizerInfo centralizer_and_class(const PermGroup &g, const Permutation &x) {
  int xi = g.index_of(x);
  if (xi < 0)
    throw Error("centralizer query with element outside the group");
  std::vector<Permutation> cent;
  std::set<int> cls;
  for (int h = 0; h < g.order(); ++h) {
    int c = g.conjugate_index(xi, h);
    cls.insert(c);
    if (c == xi)
      cent.push_back(g.element(h));
  }
  CentralizerInfo info{PermGroup::from_closed_elements(g.degree(), std::move(cent)),
                       static_cast<int64_t>(cls.size())};
  return info;
}

int64_t class_size_of(const PermGroup &g, int x) {
  std::set<int> cls;
  for (int h = 0; h < g.order(); ++h)
    cls.insert(g.conjugate_index(x, h));
  return static_cast<int64_t>(cls.size());
}

std::vector<int> class_representatives(const PermGroup &g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<int> reps;
  for (int i = 0; i < g.order(); ++i) {
    if (seen[i])
      continue;
    reps.push_back(i);
    for (int h = 0; h < g.order(); ++h)
      seen[g.conjugate_index(i, h)] = true;
  }
  return reps;
}

DirectProduct direct_product(const PermGroup &g, const PermGroup &h, int element_cap) {
  int dg = g.degree(), dh = h.degree();
  auto extend_left = [&](const Permutation &p) {
    std::vector<int> im(dg + dh);
    for (int i = 0; i < dg; ++i)
      im[i] = p[i];
    for (int i = 0; i < dh; ++i)
      im[dg + i] = dg + i;
    return Permutation(std::move(im));
  };
  auto extend_right = [&](const Permutation &p) {
    std::vector<int> im(dg + dh);
    for (int i = 0; i < dg; ++i)
      im[i] = i;
    for (int i = 0; i < dh; ++i)
      im[dg + i] = dg + p[i];
    return Permutation(std::move(im));
  };

  std::vector<Permutation> gens;
  for (const auto &p : g.generators())
    gens.push_back(extend_left(p));
  for (const auto &p : h.generators())
    gens.push_back(extend_right(p));
  DirectProduct dp{PermGroup(dg + dh, std::move(gens), element_cap), {}, {}};

  dp.embed_left.source = &g;
  dp.embed_left.target = &dp.group;
  dp.embed_left.image_table.resize(g.order());
  for (int i = 0; i < g.order(); ++i)
    dp.embed_left.image_table[i] = dp.group.index_of(extend_left(g.element(i)));
  dp.embed_right.source = &h;
  dp.embed_right.target = &dp.group;
  dp.embed_right.image_table.resize(h.order());
  for (int i = 0; i < h.order(); ++i)
    dp.embed_right.image_table[i] = dp.group.index_of(extend_right(h.element(i)));
  return dp;
}

namespace {

// Expresses every element by a BFS tree over the given tuple, then checks a
// candidate image assignment for multiplicativity on the full table.
struct TupleTree {
  std::vector<int> parent;  // element -> parent element (-1 for identity)
  std::vector<int> via;     // element -> tuple slot used for the last step
  std::vector<int> order;   // BFS discovery order

  static std::optional<TupleTree> build(const PermGroup &g, const std::vector<int> &tuple) {
    TupleTree t;
    t.parent.assign(g.order(), -2);
    t.via.assign(g.order(), -1);
    t.parent[0] = -1;
    t.order.push_back(0);
    for (size_t at = 0; at < t.order.size(); ++at) {
      int cur = t.order[at];
      for (size_t s = 0; s < tuple.size(); ++s) {
        int nxt = g.mult(cur, tuple[s]);
        if (t.parent[nxt] == -2) {
          t.parent[nxt] = cur;
          t.via[nxt] = static_cast<int>(s);
          t.order.push_back(nxt);
        }
      }
    }
    if (t.order.size() != static_cast<size_t>(g.order()))
      return std::nullopt; // tuple does not generate
    return t;
  }
};

bool check_candidate_map(const PermGroup &g, const std::vector<int> &tuple,
                         const TupleTree &tree, const std::vector<int> &images,
                         std::vector<int> &img_table) {
  img_table.assign(g.order(), -1);
  img_table[0] = 0;
  for (int e : tree.order) {
    if (e == 0)
      continue;
    img_table[e] = g.mult(img_table[tree.parent[e]], images[tree.via[e]]);
  }
  // multiplicativity on every (element, tuple slot) pair
  for (int e = 0; e < g.order(); ++e)
    for (size_t s = 0; s < tuple.size(); ++s)
      if (img_table[g.mult(e, tuple[s])] != g.mult(img_table[e], images[s]))
        return false;
  // bijectivity
  std::vector<bool> hit(g.order(), false);
  for (int v : img_table) {
    if (hit[v])
      return false;
    hit[v] = true;
  }
  return true;
}

} // namespace

std::vector<int> small_generating_tuple(const PermGroup &g) {
  int n = static_cast<int>(g.order());
  if (n == 1)
    return {};
  auto generates = [&](const std::vector<int> &tuple) {
    std::vector<bool> seen(n, false);
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
    return count == n;
  };
  auto reps = class_representatives(g);
  for (int r : reps)
    if (r != 0 && generates({r}))
      return {r};
  for (int r : reps) {
    if (r == 0)
      continue;
    for (int j = 1; j < n; ++j)
      if (generates({r, j}))
        return {r, j};
  }
  for (int r : reps) {
    if (r == 0)
      continue;
    for (int j = 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (generates({r, j, k}))
          return {r, j, k};
  }
  // fall back to the declared generators
  std::vector<int> tuple;
  for (const auto &p : g.generators()) {
    int i = g.index_of(p);
    if (i > 0)
      tuple.push_back(i);
  }
  if (!generates(tuple))
    throw Error("no generating tuple found");
  return tuple;
}

std::vector<GroupMap> automorphisms(const PermGroup &g, int order_cap) {
  if (g.order() > order_cap)
    throw CapExceeded("automorphism search capped at order " +
                      std::to_string(order_cap));

  std::vector<GroupMap> maps;
  if (g.order() == 1) {
    GroupMap id;
    id.source = &g;
    id.target = &g;
    id.image_table = {0};
    maps.push_back(std::move(id));
    return maps;
  }

  auto tuple = small_generating_tuple(g);
  auto tree = TupleTree::build(g, tuple);
  if (!tree)
    throw Error("generating tuple failed to generate");

  // candidate images share order and conjugacy class size with the original
  std::vector<int64_t> cls_size(g.order());
  for (int i = 0; i < g.order(); ++i)
    cls_size[i] = class_size_of(g, i);
  std::vector<std::vector<int>> candidates(tuple.size());
  for (size_t s = 0; s < tuple.size(); ++s)
    for (int i = 0; i < g.order(); ++i)
      if (g.element_order(i) == g.element_order(tuple[s]) &&
          cls_size[i] == cls_size[tuple[s]])
        candidates[s].push_back(i);

  std::vector<int> images(tuple.size());
  std::vector<int> img_table;
  std::vector<size_t> pos(tuple.size(), 0);
  size_t depth = 0;
  while (true) {
    if (pos[depth] == candidates[depth].size()) {
      if (depth == 0)
        break;
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
    if (check_candidate_map(g, tuple, *tree, images, img_table)) {
      GroupMap m;
      m.source = &g;
      m.target = &g;
      m.image_table = img_table;
      maps.push_back(std::move(m));
    }
    ++pos[depth];
  }
  return maps;
}

Word express_as_word(const std::vector<Permutation> &gens, const Permutation &g) {
  if (gens.empty()) {
    if (g.is_identity())
      return Word{};
    throw NotInSubgroup("element not in trivial subgroup");
  }
  int degree = gens[0].degree();
  std::vector<Permutation> letters;
  std::vector<Letter> letter_names;
  for (size_t i = 0; i < gens.size(); ++i) {
    letters.push_back(gens[i]);
    letter_names.push_back(static_cast<Letter>(i + 1));
    letters.push_back(gens[i].inverse());
    letter_names.push_back(-static_cast<Letter>(i + 1));
  }

  std::unordered_map<Permutation, int, PermHash> prev; // element -> bfs slot
  std::vector<std::pair<int, Letter>> trace;           // slot -> (parent slot, letter)
  std::vector<Permutation> bfs;

  Permutation id(degree);
  bfs.push_back(id);
  prev.emplace(id, 0);
  trace.emplace_back(-1, 0);
  int found = g.is_identity() ? 0 : -1;
  for (size_t at = 0; at < bfs.size() && found < 0; ++at) {
    for (size_t li = 0; li < letters.size(); ++li) {
      Permutation nxt = bfs[at] * letters[li];
      if (prev.find(nxt) != prev.end())
        continue;
      int slot = static_cast<int>(bfs.size());
      prev.emplace(nxt, slot);
      trace.emplace_back(static_cast<int>(at), letter_names[li]);
      bfs.push_back(std::move(nxt));
      if (bfs.back() == g) {
        found = slot;
        break;
      }
    }
  }
  if (found < 0)
    throw NotInSubgroup("element is not in the subgroup generated by gens");
  std::vector<Letter> rev;
  for (int s = found; trace[s].first >= 0; s = trace[s].first)
    rev.push_back(trace[s].second);
  std::reverse(rev.begin(), rev.end());
  return Word{std::move(rev)};
}

Permutation evaluate_word(const Word &w, const std::vector<Permutation> &gens,
                          int degree) {
  Permutation acc(degree);
  for (Letter l : w.letters) {
    int gi = std::abs(l) - 1;
    if (gi >= static_cast<int>(gens.size()))
      throw Error("word letter outside generator list");
    acc = acc * (l > 0 ? gens[gi] : gens[gi].inverse());
  }
  return acc;
}

std::vector<int64_t> abelianization_invariants(const PermGroup &g) {
  // normal closure of all commutators
  std::vector<bool> in_comm(g.order(), false);
  std::vector<int> comm;
  auto add = [&](int e) {
    if (!in_comm[e]) {
      in_comm[e] = true;
      comm.push_back(e);
    }
  };
  add(0);
  std::vector<int> gen_idx;
  for (const auto &pb : g.generators())
    gen_idx.push_back(g.index_of(pb));
  for (int a = 0; a < g.order(); ++a)
    for (int b : gen_idx)
      add(g.mult(g.mult(g.inverse_of(a), g.inverse_of(b)), g.mult(a, b)));
  // worklist closure: products in both orders plus conjugation by the
  // group generators keep the set a normal subgroup
  for (size_t at = 1; at < comm.size(); ++at) {
    if (static_cast<int64_t>(comm.size()) == g.order())
      return {}; // perfect group
    int x = comm[at];
    for (size_t bt = 0; bt < comm.size(); ++bt) {
      add(g.mult(x, comm[bt]));
      add(g.mult(comm[bt], x));
      if (static_cast<int64_t>(comm.size()) == g.order())
        return {};
    }
    for (int h : gen_idx) {
      add(g.conjugate_index(x, h));
      add(g.conjugate_index(x, g.inverse_of(h)));
    }
  }

  int64_t q_order = g.order() / static_cast<int64_t>(comm.size());
  if (q_order == 1)
    return {};

  // order profile of the quotient determines the abelian type: for each
  // prime p, s_k := log_p #{cosets killed by p^k} gives the partition.
  std::vector<int> coset(g.order(), -1);
  int n_cosets = 0;
  for (int e = 0; e < g.order(); ++e) {
    if (coset[e] >= 0)
      continue;
    for (size_t c = 0; c < comm.size(); ++c)
      coset[g.mult(comm[c], e)] = n_cosets;
    ++n_cosets;
  }
  std::vector<int> coset_rep(n_cosets, -1);
  for (int e = 0; e < g.order(); ++e)
    if (coset_rep[coset[e]] < 0)
      coset_rep[coset[e]] = e;
  auto coset_mult = [&](int a, int b) { return coset[g.mult(coset_rep[a], coset_rep[b])]; };

  std::vector<int> coset_order(n_cosets, 0);
  int id_coset = coset[0];
  for (int c = 0; c < n_cosets; ++c) {
    int k = 1, cur = c;
    while (cur != id_coset) {
      cur = coset_mult(cur, c);
      ++k;
    }
    coset_order[c] = k;
  }

  std::map<int64_t, std::vector<int>> p_partitions; // prime -> partition lambda
  int64_t rest = q_order;
  for (int64_t p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      while (rest % p == 0)
        rest /= p;
      p_partitions[p] = {};
    }
  if (rest > 1)
    p_partitions[rest] = {};

  for (auto &[p, lambda] : p_partitions) {
    std::vector<int64_t> s; // s[k] = log_p of # solutions of x^(p^k) = 1
    s.push_back(0);
    for (int k = 1;; ++k) {
      int64_t pk = 1;
      for (int t = 0; t < k; ++t)
        pk *= p;
      int64_t cnt = 0;
      for (int c = 0; c < n_cosets; ++c)
        if (pk % coset_order[c] == 0)
          ++cnt;
      int64_t logv = 0, tmp = cnt;
      while (tmp > 1) {
        tmp /= p;
        ++logv;
      }
      s.push_back(logv);
      if (cnt == n_cosets || s[k] == s[k - 1])
        break;
    }
    // #{i : lambda_i >= k} = s_k - s_{k-1}
    for (size_t k = 1; k < s.size(); ++k) {
      int64_t cnt_ge = s[k] - s[k - 1];
      while (static_cast<int64_t>(lambda.size()) < cnt_ge)
        lambda.push_back(0);
      for (int64_t i = 0; i < cnt_ge; ++i)
        lambda[i] = static_cast<int>(k);
    }
  }

  size_t max_len = 0;
  for (auto &[p, lambda] : p_partitions)
    max_len = std::max(max_len, lambda.size());
  std::vector<int64_t> invariants(max_len, 1);
  for (auto &[p, lambda] : p_partitions)
    for (size_t i = 0; i < lambda.size(); ++i) {
      int64_t pk = 1;
      for (int t = 0; t < lambda[i]; ++t)
        pk *= p;
      // largest invariant gets the largest p-power
      invariants[max_len - 1 - i] *= pk;
    }
  return invariants;
}

} // namespace pq
