#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pq/cosets.hpp"
#include "pq/fpcore.hpp"
#include "pq/rewrite.hpp"
#include "pq/spherical.hpp"

namespace pq {

// Fundamental-group pipeline: H is the preimage of the diagonal subgroup
// of G x G inside T1 x T2; the fundamental group of the quotient surface is
// H divided by the subgroup generated by its finite-order elements.

struct FiberProductData {
  Presentation product;            // T1 x T2 on c- and d-letters
  int n_gens_left = 0;             // generators of the first factor
  CosetTable table;                // cosets of H, one per element of G
  SubgroupPresentation rs;         // H on Schreier generators + rewriting map

  FiberProductData(Presentation prod, int left, CosetTable t)
      : product(std::move(prod)), n_gens_left(left), table(std::move(t)),
        rs(product, table) {}
};

// Builds the fiber product for two systems over the same group; index
// always equals |G|.
FiberProductData fiber_product(const SphericalSystem &sys1,
                               const SphericalSystem &sys2);

// Torsion words c_i^a * w^-1 * d_j^b * w in product letters, one for each
// (i, j, centralizer element) with conjugate involution powers; their
// images lie in the diagonal and square to the identity.
std::vector<Word> torsion_generators(const SphericalSystem &sys1,
                                     const SphericalSystem &sys2,
                                     const FiberProductData &fp);

struct StructureProbe {
  std::string quotient_label;
  int64_t index = 0;
  AbelianInvariants kernel_invariants;
};

struct StructureReport {
  std::vector<StructureProbe> probes;
  // (index, free rank) of the smallest-index normal subgroup found with
  // free nontrivial abelianization
  std::optional<std::pair<int64_t, int64_t>> best;
};

struct Pi1Report {
  Presentation pi1;                     // simplified presentation
  AbelianInvariants h1;
  std::vector<Word> h_generator_words;  // surviving generators in c/d letters
  size_t torsion_word_count = 0;
  std::optional<int64_t> finite_order;  // filled by finite_order_probe
  std::optional<StructureReport> structure;
};

// Presentation of H / <<torsion>> with H1 from its abelianization.
Pi1Report pi1_presentation(const FiberProductData &fp, const std::vector<Word> &torsion);

// Order of the group if coset enumeration over the trivial subgroup closes
// within the limit; absent otherwise (absence is data, not an error).
std::optional<int64_t> finite_order_probe(const Presentation &pi1,
                                          int64_t coset_limit = 1000000);

// Candidate finite quotients for structure probes.
struct QuotientCandidate {
  std::string label;
  const PermGroup *group = nullptr;
};

// For each candidate quotient Q with |Q| <= index_bound, enumerates
// epimorphisms pi1 ->> Q (deduplicated by kernel), presents each kernel by
// Reidemeister-Schreier and records its abelian invariants.
StructureReport structure_probe(const Presentation &pi1,
                                const std::vector<QuotientCandidate> &quotients,
                                int64_t index_bound = 32);

} // namespace pq
