#include "pq/pi1.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pq/errors.hpp"

namespace pq {

FiberProductData fiber_product(const SphericalSystem &sys1,
                               const SphericalSystem &sys2) {
  if (sys1.group != sys2.group)
    throw Error("fiber product needs both systems over the same group");
  const PermGroup &g = *sys1.group;

  Presentation p1 = polygonal_presentation(sys1.signature);
  Presentation p2 = polygonal_presentation(sys2.signature);
  {
    std::vector<std::string> d_labels;
    for (int j = 0; j < p2.generator_count; ++j)
      d_labels.push_back("d" + std::to_string(j + 1));
    p2.labels = d_labels;
  }
  std::vector<Permutation> imgs1, imgs2;
  for (int e : sys1.elements)
    imgs1.push_back(g.element(e));
  for (int e : sys2.elements)
    imgs2.push_back(g.element(e));

  FiberTable ft = coset_table_from_hom(p1, p2, imgs1, imgs2, g);
  return FiberProductData(std::move(ft.product), ft.n_gens_left, std::move(ft.table));
}

std::vector<Word> torsion_generators(const SphericalSystem &sys1,
                                     const SphericalSystem &sys2,
                                     const FiberProductData &fp) {
  const PermGroup &g = *sys1.group;
  int r = fp.n_gens_left;
  std::vector<Permutation> gens2;
  for (int e : sys2.elements)
    gens2.push_back(g.element(e));

  std::vector<Word> out;
  for (size_t i = 0; i < sys1.elements.size(); ++i) {
    int o1 = g.element_order(sys1.elements[i]);
    if (o1 % 2 != 0)
      continue;
    int a = o1 / 2;
    int inv1 = sys1.elements[i];
    for (int k = 1; k < a; ++k)
      inv1 = g.mult(inv1, sys1.elements[i]);
    for (size_t j = 0; j < sys2.elements.size(); ++j) {
      int o2 = g.element_order(sys2.elements[j]);
      if (o2 % 2 != 0)
        continue;
      int b = o2 / 2;
      int inv2 = sys2.elements[j];
      for (int k = 1; k < b; ++k)
        inv2 = g.mult(inv2, sys2.elements[j]);

      auto witness = conjugacy(g, g.element(inv1), g.element(inv2));
      if (!witness.conjugate)
        continue;
      int h = g.index_of(*witness.witness);
      // every centralizer element of the first involution contributes one
      // torsion word
      int hi = g.inverse_of(h);
      for (int c = 0; c < g.order(); ++c) {
        if (g.conjugate_index(inv1, c) != inv1)
          continue; // c not in the centralizer
        Word w2 = express_as_word(gens2, g.element(g.mult(hi, c)));
        Word w; // w2 embedded into the d-letters
        for (Letter l : w2.letters)
          w.letters.push_back(l > 0 ? l + r : l - r);
        Word t = power_word(static_cast<int>(i), a);  // c_i^a
        t = t * w.inverse() * power_word(r + static_cast<int>(j), b) * w;
        out.push_back(free_reduce(t));
      }
    }
  }
  return out;
}

Pi1Report pi1_presentation(const FiberProductData &fp, const std::vector<Word> &torsion) {
  std::vector<Word> rewritten;
  rewritten.reserve(torsion.size());
  for (const auto &t : torsion)
    rewritten.push_back(fp.rs.rewrite(t));

  SimplifyResult sr = quotient_and_simplify(fp.rs.presentation(), rewritten);

  Pi1Report rep;
  rep.pi1 = sr.pres;
  rep.h1 = abelian_invariants(sr.pres);
  rep.torsion_word_count = torsion.size();
  for (int orig : sr.kept)
    rep.h_generator_words.push_back(fp.rs.generator_words()[orig]);
  return rep;
}

std::optional<int64_t> finite_order_probe(const Presentation &pi1, int64_t coset_limit) {
  try {
    CosetTable t = todd_coxeter(pi1, {}, coset_limit);
    return static_cast<int64_t>(t.coset_count);
  } catch (const CosetLimitExceeded &) {
    return std::nullopt;
  }
}

namespace {

// BFS-canonical form of a complete coset table; equal forms mean equal
// point stabilizers, so this deduplicates kernels across epimorphisms.
std::vector<int32_t> canonical_table_bytes(const CosetTable &t) {
  int width = 2 * t.n_gens;
  std::vector<int32_t> pos(t.coset_count, -1), order(t.coset_count, -1);
  int cnt = 0;
  order[cnt] = 0;
  pos[0] = cnt++;
  for (int at = 0; at < cnt; ++at) {
    int c = order[at];
    for (int col = 0; col < width; ++col) {
      int32_t v = t.tab[static_cast<size_t>(c) * width + col];
      if (pos[v] < 0) {
        order[cnt] = v;
        pos[v] = cnt++;
      }
    }
  }
  std::vector<int32_t> out(static_cast<size_t>(t.coset_count) * width);
  for (int c = 0; c < t.coset_count; ++c)
    for (int col = 0; col < width; ++col)
      out[static_cast<size_t>(pos[c]) * width + col] =
          pos[t.tab[static_cast<size_t>(c) * width + col]];
  return out;
}

// True when a surjection can exist from the abelian group with invariants
// src (plus free rank) onto the finite abelian group dst: align largest
// invariants first, free factors surject onto anything.
bool abelian_can_surject(const AbelianInvariants &src, const AbelianInvariants &dst) {
  size_t need = dst.torsion.size();
  size_t have_free = static_cast<size_t>(src.free_rank);
  size_t have_tors = src.torsion.size();
  if (need > have_free + have_tors)
    return false;
  for (size_t k = 0; k < need; ++k) {
    int64_t want = dst.torsion[need - 1 - k];
    if (k < have_free)
      continue; // a Z factor covers it
    int64_t got = src.torsion[have_tors - 1 - (k - have_free)];
    if (got % want != 0)
      return false;
  }
  return true;
}

} // namespace

StructureReport structure_probe(const Presentation &pi1,
                                const std::vector<QuotientCandidate> &quotients,
                                int64_t index_bound) {
  StructureReport report;
  AbelianInvariants h1 = abelian_invariants(pi1);
  int n = pi1.generator_count;

  std::vector<QuotientCandidate> sorted = quotients;
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
    if (a.group->order() != b.group->order())
      return a.group->order() < b.group->order();
    return a.label < b.label;
  });

  for (const auto &cand : sorted) {
    const PermGroup &q = *cand.group;
    if (q.order() < 2 || q.order() > index_bound)
      continue;
    AbelianInvariants q_ab;
    {
      auto inv = abelianization_invariants(q);
      q_ab.free_rank = 0;
      q_ab.torsion = inv;
    }
    if (!abelian_can_surject(h1, q_ab))
      continue;

    // relators checkable once their support is assigned
    std::vector<int> max_gen(pi1.relators.size(), 0);
    for (size_t ri = 0; ri < pi1.relators.size(); ++ri)
      for (Letter l : pi1.relators[ri].letters)
        max_gen[ri] = std::max(max_gen[ri], std::abs(l));

    auto reps = class_representatives(q);
    std::set<std::vector<int32_t>> kernels_seen;
    std::vector<std::pair<int64_t, AbelianInvariants>> found; // (index, invariants)

    std::vector<int> images(n, 0);
    std::function<void(int)> assign = [&](int depth) {
      if (depth == n) {
        // surjectivity
        std::vector<Permutation> imgs;
        for (int e : images)
          imgs.push_back(q.element(e));
        if (PermGroup(q.degree(), imgs).order() != q.order())
          return;
        CosetTable kt = kernel_table(pi1, q, images);
        auto key = canonical_table_bytes(kt);
        if (!kernels_seen.insert(std::move(key)).second)
          return;
        SubgroupPresentation sp(pi1, kt);
        found.emplace_back(q.order(), abelian_invariants(sp.presentation()));
        return;
      }
      // first generator only up to conjugacy: inner twists fix the kernel
      const std::vector<int> &pool0 = reps;
      int pool_size = depth == 0 ? static_cast<int>(pool0.size())
                                 : static_cast<int>(q.order());
      for (int pi = 0; pi < pool_size; ++pi) {
        images[depth] = depth == 0 ? pool0[pi] : pi;
        bool ok = true;
        for (size_t ri = 0; ri < pi1.relators.size() && ok; ++ri) {
          if (max_gen[ri] != depth + 1)
            continue; // checked earlier or not yet assignable
          int acc = 0;
          for (Letter l : pi1.relators[ri].letters) {
            int e = images[std::abs(l) - 1];
            acc = q.mult(acc, l > 0 ? e : q.inverse_of(e));
          }
          ok = acc == 0;
        }
        if (ok)
          assign(depth + 1);
      }
    };
    if (n > 0)
      assign(0);

    std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) {
      if (a.first != b.first)
        return a.first < b.first;
      if (a.second.free_rank != b.second.free_rank)
        return a.second.free_rank < b.second.free_rank;
      return a.second.torsion < b.second.torsion;
    });
    for (auto &[idx, inv] : found)
      report.probes.push_back(StructureProbe{cand.label, idx, inv});
  }

  for (const auto &p : report.probes) {
    if (!p.kernel_invariants.is_free() || p.kernel_invariants.free_rank == 0)
      continue;
    if (!report.best || p.index < report.best->first)
      report.best = {p.index, p.kernel_invariants.free_rank};
  }
  return report;
}

} // namespace pq
