#pragma once

#include <vector>

#include "pq/cosets.hpp"
#include "pq/fpcore.hpp"
#include "pq/word.hpp"

namespace pq {

// Subgroup presentation on Schreier generators computed from a closed coset
// table, with the rewriting map that sends parent-group words lying in the
// subgroup to words in the new generators.
class SubgroupPresentation {
public:
  SubgroupPresentation(const Presentation &parent, const CosetTable &table);

  const Presentation &presentation() const { return pres_; }
  // Schreier generator i as a word in the parent generators.
  const std::vector<Word> &generator_words() const { return gen_words_; }

  // Rewrites a parent word that lies in the subgroup (fixes coset 0);
  // throws WordNotInSubgroup otherwise.
  Word rewrite(const Word &w) const;

private:
  Word rewrite_from(int coset, const Word &w) const;

  int n_parent_gens_ = 0;
  int n_cosets_ = 0;
  const CosetTable *table_ = nullptr; // not owned; borrowed for rewrite()
  CosetTable table_copy_;
  Presentation pres_;
  std::vector<Word> gen_words_;
  std::vector<int> sigma_; // (coset, parent gen) -> schreier index, -1 on tree
};

Word evaluate_schreier_word(const Word &w, const std::vector<Word> &gen_words);

struct SimplifyOptions {
  // A generator is only eliminated when its defining relator is at most
  // this long; keeps substitution growth bounded.
  size_t max_defining_length = 512;
  // Upper bound on (occurrences elsewhere) * (defining length - 1).
  size_t max_substitution_cost = 1u << 20;
};

struct SimplifyResult {
  Presentation pres;
  // new generator index -> original generator index (eliminations only
  // remove generators, so survivors keep their identity)
  std::vector<int> kept;
};

// Presentation of P / <<extra_relators>> after bounded Tietze
// simplification: free/cyclic reduction, elimination via length-1/2
// relators, and substitution of generators occurring exactly once in some
// relator. Preserves the isomorphism class; fully deterministic.
SimplifyResult quotient_and_simplify(const Presentation &p,
                                     const std::vector<Word> &extra_relators,
                                     const SimplifyOptions &opts = {});

} // namespace pq
