#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pq/word.hpp"

namespace pq {

// Exact engine for finite permutation groups with full element tables.
// Everything is immutable after construction and safe to share across
// threads. Group elements are addressed by their index in a deterministic
// BFS element list, so downstream enumeration is reproducible bit for bit.

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(int degree); // identity
  explicit Permutation(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int point) const { return images_[point]; }
  const std::vector<int> &images() const { return images_; }

  bool is_identity() const;

  // Composition applies *this first, then other: x^(p*q) = (x^p)^q.
  Permutation operator*(const Permutation &other) const;
  Permutation inverse() const;
  Permutation conjugate(const Permutation &by) const; // by^-1 * this * by
  Permutation power(int64_t e) const;

  bool operator==(const Permutation &o) const { return images_ == o.images_; }
  bool operator!=(const Permutation &o) const { return images_ != o.images_; }
  bool operator<(const Permutation &o) const { return images_ < o.images_; }

  size_t hash() const;

  // Disjoint-cycle text, 1-based points: "(1,2,3)(4,5)"; identity is "()".
  std::string cycle_str() const;
  static Permutation parse_cycles(const std::string &text, int degree);

private:
  std::vector<int> images_;
};

struct PermHash {
  size_t operator()(const Permutation &p) const { return p.hash(); }
};

int perm_order(const Permutation &p);

class PermGroup {
public:
  static constexpr int kDefaultElementCap = 10000;

  // Deterministic BFS closure of the generators. Throws CapExceeded when
  // more than element_cap distinct elements appear.
  PermGroup(int degree, std::vector<Permutation> generators,
            int element_cap = kDefaultElementCap);

  int degree() const { return degree_; }
  int64_t order() const { return static_cast<int64_t>(elements_.size()); }
  const std::vector<Permutation> &generators() const { return generators_; }
  const std::vector<Permutation> &elements() const { return elements_; }
  const Permutation &element(int i) const { return elements_[i]; }

  int index_of(const Permutation &p) const; // -1 when not a member
  bool contains(const Permutation &p) const { return index_of(p) >= 0; }

  int identity_index() const { return 0; }
  int mult(int a, int b) const {    // index of elements[a] * elements[b]
    if (!mult_table_.empty())
      return mult_table_[static_cast<size_t>(a) * elements_.size() + b];
    return mult_slow(a, b);
  }
  int inverse_of(int a) const { return inverse_index_[a]; }
  int element_order(int a) const { return element_order_[a]; }
  int conjugate_index(int x, int by) const { // index of by^-1 x by
    return mult(mult(inverse_index_[by], x), by);
  }

  // Builds a subgroup-view PermGroup from a closed element subset.
  static PermGroup from_closed_elements(int degree, std::vector<Permutation> elems);

private:
  PermGroup() = default;
  void finalize();
  int mult_slow(int a, int b) const;

  // Full multiplication table for groups up to this order; beyond it,
  // products go through the element hash.
  static constexpr int64_t kMultTableMax = 600;

  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, int, PermHash> index_;
  std::vector<int> inverse_index_;
  std::vector<int> element_order_;
  std::vector<int32_t> mult_table_;
};

// A multiplicative map between groups recorded on the full element table.
struct GroupMap {
  const PermGroup *source = nullptr;
  const PermGroup *target = nullptr;
  std::vector<int> image_table; // source element index -> target element index

  int apply(int src_index) const { return image_table[src_index]; }
};

struct ConjugacyWitness {
  bool conjugate = false;
  std::optional<Permutation> witness; // h with h^-1 * x * h = y
};

std::vector<Permutation> elements_of_order(const PermGroup &g, int k);
std::vector<int> element_indices_of_order(const PermGroup &g, int k);

ConjugacyWitness conjugacy(const PermGroup &g, const Permutation &x,
                           const Permutation &y);
bool conjugate_indices(const PermGroup &g, int x, int y);

struct CentralizerInfo {
  PermGroup centralizer;
  int64_t class_size;
};
CentralizerInfo centralizer_and_class(const PermGroup &g, const Permutation &x);
int64_t class_size_of(const PermGroup &g, int x);

struct DirectProduct {
  PermGroup group;
  GroupMap embed_left;
  GroupMap embed_right;
};
DirectProduct direct_product(const PermGroup &g, const PermGroup &h,
                             int element_cap = PermGroup::kDefaultElementCap);

// Full automorphism group as an explicit list of maps. The search picks a
// small generating tuple, prunes candidate images by element order and
// conjugacy class size, and verifies multiplicativity on the whole table.
std::vector<GroupMap> automorphisms(const PermGroup &g, int order_cap = 400);

// Conjugacy class representatives, by least element index.
std::vector<int> class_representatives(const PermGroup &g);

// Finds a small generating tuple of element indices, deterministically.
std::vector<int> small_generating_tuple(const PermGroup &g);

// BFS-shortest word in gens (and inverses) evaluating to g; ties broken by
// letter order g1, g1^-1, g2, ... Throws NotInSubgroup.
Word express_as_word(const std::vector<Permutation> &gens, const Permutation &g);

Permutation evaluate_word(const Word &w, const std::vector<Permutation> &gens,
                          int degree);

// Abelian invariants d1 | d2 | ... of the abelianization G/[G,G].
std::vector<int64_t> abelianization_invariants(const PermGroup &g);

} // namespace pq
