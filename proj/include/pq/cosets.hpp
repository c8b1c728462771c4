#pragma once

#include <cstdint>
#include <vector>

#include "pq/fpcore.hpp"
#include "pq/permcore.hpp"
#include "pq/word.hpp"

namespace pq {

// Complete coset table: the action of a finitely presented group on the
// cosets of a subgroup. Coset 0 is the subgroup itself. Column layout:
// 2*i is generator i acting on the right, 2*i+1 its inverse.
struct CosetTable {
  int n_gens = 0;
  int coset_count = 0;
  std::vector<int32_t> tab;
  std::vector<Word> subgroup_words;

  int entry(int coset, Letter l) const {
    int g = std::abs(l) - 1;
    return tab[static_cast<size_t>(coset) * (2 * n_gens) + 2 * g + (l > 0 ? 0 : 1)];
  }
  // Image of a coset under a whole word.
  int track(int coset, const Word &w) const {
    for (Letter l : w.letters)
      coset = entry(coset, l);
    return coset;
  }
  bool word_in_subgroup(const Word &w) const { return track(0, w) == 0; }
};

// Validates that every relator fixes every coset and the subgroup words fix
// coset 0; throws Error otherwise.
void validate_table(const Presentation &p, const CosetTable &t);

// Fiber product table. The two generator-image lists define epimorphisms of
// the polygonal presentations onto G; cosets of the preimage H of the
// diagonal subgroup of G x G are in bijection with G, so the table is built
// directly, with exactly |G| cosets. Checks surjectivity (NotSurjective)
// and that generator image orders match the power relators (NotAppropriate).
struct FiberTable {
  Presentation product; // presentation of T1 x T2
  CosetTable table;     // cosets of H, indexed by the element list of G
  int n_gens_left = 0;  // generators of the first factor
};
FiberTable coset_table_from_hom(const Presentation &p1, const Presentation &p2,
                                const std::vector<Permutation> &images1,
                                const std::vector<Permutation> &images2,
                                const PermGroup &g);

// HLT coset enumeration with lookahead. Deterministic coset numbering by
// first definition, standardized by BFS before returning. Throws
// CosetLimitExceeded when the table cannot be closed within coset_limit
// live rows (the index exceeds the limit, or the subgroup has infinite
// index).
CosetTable todd_coxeter(const Presentation &p,
                        const std::vector<Word> &subgroup_words,
                        int64_t coset_limit);

// Coset table of the kernel of the epimorphism defined by generator image
// indices into Q: cosets are the elements of Q. Throws NotSurjective if the
// images do not generate, Error if a relator does not map to the identity.
CosetTable kernel_table(const Presentation &p, const PermGroup &q,
                        const std::vector<int> &image_indices);

} // namespace pq
