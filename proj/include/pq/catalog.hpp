#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pq/permcore.hpp"

namespace pq {

// Group catalog: the classification sweep runs against an explicit list of
// permutation groups rather than an external database, so completeness per
// order is tracked honestly as a first-class verdict.

struct CatalogEntry {
  std::string label;
  int degree = 0;
  std::vector<Permutation> generators;
  std::optional<int64_t> claimed_order;
  std::shared_ptr<const PermGroup> group; // closed at load time

  int64_t order() const { return group->order(); }
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::set<int64_t> order_complete;       // orders with provably complete lists
  std::set<int64_t> user_asserted;        // subset of the above claimed by input

  const CatalogEntry *find(const std::string &label) const;
};

enum class CompletenessVerdict {
  Complete,   // every isomorphism class of this order is present
  BestEffort, // list may be missing classes
  Excluded,   // order outside the certified sweep (1024, 1152, > 2000)
};

std::string verdict_str(CompletenessVerdict v);

// Line-oriented catalog format:
//   group <label> / degree <n> / [order <n>] / gen <cycles>... / end
//   order-complete <n>   (top level)
// Closure of every stanza is verified against the claimed order
// (OrderMismatch) and malformed input reports its line (ParseError).
Catalog parse_catalog(const std::string &text);
std::string serialize_catalog(const Catalog &cat);

// Bundled catalog: the classification's groups with their published
// generator lists, plus generated families (abelian groups by partition
// enumeration, dihedral, symmetric/alternating, direct products) for every
// order the sweep can reach, deduplicated up to isomorphism.
const Catalog &builtin_catalog();

struct GroupsOfOrder {
  std::vector<const CatalogEntry *> entries;
  CompletenessVerdict verdict;
};
GroupsOfOrder groups_of_order(const Catalog &cat, int64_t n);

// Orders the sweep skips wholesale; closed out by case analysis rather
// than enumeration.
bool order_is_excluded(int64_t n);

// Isomorphism test via generator-image search with order/class-size
// pruning and full-table verification.
bool isomorphic(const PermGroup &a, const PermGroup &b);

// Generator constructions for the standard families.
std::vector<Permutation> symmetric_gens(int n);
std::vector<Permutation> alternating_gens(int n);
std::vector<Permutation> dihedral_gens(int n); // D_n on n points, order 2n
std::vector<Permutation> abelian_gens(const std::vector<int64_t> &type);
std::string abelian_type_label(const std::vector<int64_t> &type);
std::vector<std::vector<int64_t>> abelian_types_of_order(int64_t n);

// Small-group pool for quotient probes: all abelian types together with
// dihedral, alternating and symmetric groups up to max_order, deduplicated.
std::vector<CatalogEntry> small_groups_upto(int64_t max_order);

} // namespace pq
