#pragma once

#include <string>
#include <vector>

#include "pq/geometry.hpp"
#include "pq/word.hpp"

namespace pq {

// Finitely presented groups: presentation containers, the polygonal-group
// construction and the abelianization machinery live here; coset tables
// and rewriting are in cosets.hpp / rewrite.hpp.

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;       // freely and cyclically reduced
  std::vector<std::string> labels;  // one per generator

  Presentation() = default;
  Presentation(int gens, std::vector<Word> rels,
               std::vector<std::string> labs = {});

  std::string str() const;                        // "gens:" / "rel:" lines
  static Presentation parse(const std::string &); // inverse of str()
};

// T(0; m1,...,mr) = <c1,...,cr | c1^m1, ..., cr^mr, c1...cr>.
Presentation polygonal_presentation(const Signature &sig);

// Direct product presentation: generators of p1 then p2, relators of both
// plus all commutators [x_i, y_j].
Presentation product_presentation(const Presentation &p1, const Presentation &p2);

struct AbelianInvariants {
  int64_t free_rank = 0;
  std::vector<int64_t> torsion; // d1 | d2 | ..., each > 1

  bool operator==(const AbelianInvariants &o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  int64_t torsion_order() const {
    int64_t t = 1;
    for (int64_t d : torsion)
      t *= d;
    return t;
  }
  std::string str() const; // "Z^2xZ3xZ15", "0" when trivial
  static AbelianInvariants parse(const std::string &text);
};

// Smith normal form of the exponent-sum relation matrix.
AbelianInvariants abelian_invariants(const Presentation &p);

} // namespace pq
