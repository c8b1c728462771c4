#include "pq/rewrite.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pq/errors.hpp"

namespace pq {

SubgroupPresentation::SubgroupPresentation(const Presentation &parent,
                                           const CosetTable &table)
    : n_parent_gens_(parent.generator_count), n_cosets_(table.coset_count),
      table_copy_(table) {
  table_ = &table_copy_;
  const CosetTable &t = table_copy_;

  // Schreier tree by BFS from coset 0; letters tried in order
  // g1, g1^-1, g2, g2^-1, ... so transversal words are BFS-shortest.
  std::vector<int> parent_coset(n_cosets_, -2);
  std::vector<Letter> parent_letter(n_cosets_, 0);
  std::vector<int> bfs{0};
  parent_coset[0] = -1;
  for (size_t at = 0; at < bfs.size(); ++at) {
    int c = bfs[at];
    for (int g = 0; g < n_parent_gens_; ++g)
      for (Letter l : {static_cast<Letter>(g + 1), static_cast<Letter>(-(g + 1))}) {
        int nxt = t.entry(c, l);
        if (parent_coset[nxt] == -2) {
          parent_coset[nxt] = c;
          parent_letter[nxt] = l;
          bfs.push_back(nxt);
        }
      }
  }
  for (int c = 0; c < n_cosets_; ++c)
    if (parent_coset[c] == -2)
      throw Error("coset table is not transitive");

  std::vector<Word> transversal(n_cosets_);
  for (int c : bfs) {
    if (c == 0)
      continue;
    transversal[c] = transversal[parent_coset[c]];
    transversal[c].letters.push_back(parent_letter[c]);
  }

  // Schreier generators: nontree edges (coset k, generator x). An edge is
  // in the tree when it (or its reverse) is the defining edge of its target.
  sigma_.assign(static_cast<size_t>(n_cosets_) * n_parent_gens_, -1);
  int n_sub_gens = 0;
  for (int k = 0; k < n_cosets_; ++k)
    for (int g = 0; g < n_parent_gens_; ++g) {
      Letter l = static_cast<Letter>(g + 1);
      int k2 = t.entry(k, l);
      bool tree = (parent_coset[k2] == k && parent_letter[k2] == l) ||
                  (parent_coset[k] == k2 && parent_letter[k] == -l);
      if (tree)
        continue;
      sigma_[static_cast<size_t>(k) * n_parent_gens_ + g] = n_sub_gens++;
      Word w = transversal[k];
      w.letters.push_back(l);
      Word back = transversal[k2].inverse();
      w.letters.insert(w.letters.end(), back.letters.begin(), back.letters.end());
      gen_words_.push_back(free_reduce(w));
    }

  std::vector<Word> rels;
  for (int k = 0; k < n_cosets_; ++k)
    for (const auto &r : parent.relators) {
      Word w = rewrite_from(k, r);
      w = cyclic_reduce(w);
      if (!w.empty())
        rels.push_back(std::move(w));
    }

  std::vector<std::string> labels;
  for (int i = 0; i < n_sub_gens; ++i)
    labels.push_back("s" + std::to_string(i + 1));
  pres_ = Presentation(n_sub_gens, std::move(rels), std::move(labels));
}

Word SubgroupPresentation::rewrite_from(int coset, const Word &w) const {
  const CosetTable &t = *table_;
  Word out;
  int c = coset;
  for (Letter l : w.letters) {
    if (l > 0) {
      int s = sigma_[static_cast<size_t>(c) * n_parent_gens_ + (l - 1)];
      if (s >= 0)
        out.letters.push_back(static_cast<Letter>(s + 1));
      c = t.entry(c, l);
    } else {
      int c2 = t.entry(c, l);
      int s = sigma_[static_cast<size_t>(c2) * n_parent_gens_ + (-l - 1)];
      if (s >= 0)
        out.letters.push_back(static_cast<Letter>(-(s + 1)));
      c = c2;
    }
  }
  return free_reduce(out);
}

Word SubgroupPresentation::rewrite(const Word &w) const {
  if (table_->track(0, w) != 0)
    throw WordNotInSubgroup("word moves coset 0, not in subgroup");
  return rewrite_from(0, w);
}

Word evaluate_schreier_word(const Word &w, const std::vector<Word> &gen_words) {
  Word out;
  for (Letter l : w.letters) {
    const Word &g = gen_words[std::abs(l) - 1];
    if (l > 0)
      out.letters.insert(out.letters.end(), g.letters.begin(), g.letters.end());
    else {
      Word gi = g.inverse();
      out.letters.insert(out.letters.end(), gi.letters.begin(), gi.letters.end());
    }
  }
  return free_reduce(out);
}

namespace {

// Working state for Tietze elimination over mutable relator lists.
struct Tietze {
  int n_gens;
  std::vector<std::vector<Letter>> rels;
  std::vector<bool> dead;
  SimplifyOptions opts;

  explicit Tietze(int n, const SimplifyOptions &o) : n_gens(n), dead(n, false), opts(o) {}

  void reduce_all() {
    std::vector<std::vector<Letter>> out;
    for (auto &r : rels) {
      Word w = cyclic_reduce(Word{std::move(r)});
      if (!w.empty())
        out.push_back(std::move(w.letters));
    }
    rels = std::move(out);
  }

  void substitute(int gen, const std::vector<Letter> &replacement) {
    // gen (1-based letter value) := replacement word
    std::vector<std::vector<Letter>> out;
    out.reserve(rels.size());
    for (auto &r : rels) {
      std::vector<Letter> nr;
      nr.reserve(r.size());
      for (Letter l : r) {
        if (std::abs(l) != gen) {
          nr.push_back(l);
        } else if (l > 0) {
          nr.insert(nr.end(), replacement.begin(), replacement.end());
        } else {
          for (auto it = replacement.rbegin(); it != replacement.rend(); ++it)
            nr.push_back(-*it);
        }
      }
      Word w = cyclic_reduce(Word{std::move(nr)});
      if (!w.empty())
        out.push_back(std::move(w.letters));
    }
    rels = std::move(out);
  }

  // Removes en masse generators whose single occurrence anywhere is in one
  // relator: the relator defines them and nothing needs substitution.
  bool batch_free_eliminations() {
    std::vector<int> occ(n_gens + 1, 0);
    for (auto &r : rels)
      for (Letter l : r)
        ++occ[std::abs(l)];
    std::vector<bool> remove_rel(rels.size(), false);
    bool any = false;
    for (size_t ri = 0; ri < rels.size(); ++ri) {
      const auto &r = rels[ri];
      if (r.size() > opts.max_defining_length)
        continue;
      int pick = 0;
      for (Letter l : r) {
        int g = std::abs(l);
        if (dead[g - 1] || occ[g] != 1)
          continue;
        if (pick == 0 || g < pick)
          pick = g;
      }
      if (pick == 0)
        continue;
      dead[pick - 1] = true;
      remove_rel[ri] = true;
      any = true;
    }
    if (!any)
      return false;
    std::vector<std::vector<Letter>> out;
    for (size_t ri = 0; ri < rels.size(); ++ri)
      if (!remove_rel[ri])
        out.push_back(std::move(rels[ri]));
    rels = std::move(out);
    return true;
  }

  // Eliminates generators defined by a relator where they occur exactly
  // once. Returns true when something was eliminated.
  bool eliminate_once() {
    std::vector<int> occ(n_gens + 1, 0);
    for (auto &r : rels)
      for (Letter l : r)
        ++occ[std::abs(l)];

    // trivial generators (no occurrence left): nothing to do, they are
    // already free factors or dead
    int best_gen = 0;
    size_t best_rel = 0, best_cost = SIZE_MAX;
    for (size_t ri = 0; ri < rels.size(); ++ri) {
      const auto &r = rels[ri];
      if (r.size() > opts.max_defining_length)
        continue;
      std::map<int, int> counts;
      for (Letter l : r)
        ++counts[std::abs(l)];
      for (auto &[g, cnt] : counts) {
        if (cnt != 1 || dead[g - 1])
          continue;
        size_t elsewhere = static_cast<size_t>(occ[g] - 1);
        size_t cost = elsewhere * (r.size() - 1);
        if (cost > opts.max_substitution_cost)
          continue;
        if (cost < best_cost ||
            (cost == best_cost && (g < best_gen || best_gen == 0))) {
          best_cost = cost;
          best_gen = g;
          best_rel = ri;
        }
      }
    }
    if (best_gen == 0)
      return false;

    // rotate the relator so the single occurrence of best_gen leads
    std::vector<Letter> r = rels[best_rel];
    size_t at = 0;
    while (std::abs(r[at]) != best_gen)
      ++at;
    std::rotate(r.begin(), r.begin() + at, r.end());
    // r = g^e * w  =>  g = (w^-1)^e
    bool positive = r[0] > 0;
    std::vector<Letter> w(r.begin() + 1, r.end());
    std::vector<Letter> replacement;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      replacement.push_back(-*it); // w^-1
    if (!positive) {
      std::vector<Letter> inv;
      for (auto it = replacement.rbegin(); it != replacement.rend(); ++it)
        inv.push_back(-*it);
      replacement = std::move(inv); // back to w when the letter was g^-1
    }
    rels.erase(rels.begin() + best_rel);
    substitute(best_gen, replacement);
    dead[best_gen - 1] = true;
    return true;
  }
};

} // namespace

SimplifyResult quotient_and_simplify(const Presentation &p,
                                     const std::vector<Word> &extra_relators,
                                     const SimplifyOptions &opts) {
  Tietze tz(p.generator_count, opts);
  for (const auto &r : p.relators)
    tz.rels.push_back(r.letters);
  for (const auto &r : extra_relators)
    tz.rels.push_back(r.letters);
  tz.reduce_all();

  while (tz.batch_free_eliminations() || tz.eliminate_once()) {
  }

  // drop duplicate relators, keep first occurrence
  {
    std::vector<std::vector<Letter>> seen;
    std::vector<std::vector<Letter>> out;
    for (auto &r : tz.rels) {
      std::vector<Letter> key = r;
      std::vector<Letter> inv;
      for (auto it = r.rbegin(); it != r.rend(); ++it)
        inv.push_back(-*it);
      if (std::find(seen.begin(), seen.end(), key) == seen.end() &&
          std::find(seen.begin(), seen.end(), inv) == seen.end()) {
        seen.push_back(key);
        out.push_back(std::move(r));
      }
    }
    tz.rels = std::move(out);
  }

  // compact generator numbering
  std::vector<int> remap(p.generator_count + 1, 0);
  SimplifyResult res;
  int next = 0;
  for (int g = 1; g <= p.generator_count; ++g)
    if (!tz.dead[g - 1]) {
      remap[g] = ++next;
      res.kept.push_back(g - 1);
    }
  std::vector<Word> rels;
  for (auto &r : tz.rels) {
    Word w;
    for (Letter l : r)
      w.letters.push_back(l > 0 ? remap[l] : -remap[-l]);
    rels.push_back(std::move(w));
  }
  std::sort(rels.begin(), rels.end(), [](const Word &a, const Word &b) {
    if (a.letters.size() != b.letters.size())
      return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  });
  std::vector<std::string> labels;
  for (int i = 0; i < next; ++i)
    labels.push_back("x" + std::to_string(i + 1));
  res.pres = Presentation(next, std::move(rels), std::move(labels));
  return res;
}

} // namespace pq
