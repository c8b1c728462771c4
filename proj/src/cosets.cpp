#include "pq/cosets.hpp"

#include <algorithm>
#include <deque>

#include "pq/errors.hpp"

namespace pq {

void validate_table(const Presentation &p, const CosetTable &t) {
  if (t.n_gens != p.generator_count)
    throw Error("coset table generator count mismatch");
  for (int c = 0; c < t.coset_count; ++c) {
    for (int g = 0; g < t.n_gens; ++g) {
      int img = t.entry(c, static_cast<Letter>(g + 1));
      if (img < 0 || img >= t.coset_count)
        throw Error("coset table has holes");
      if (t.entry(img, -static_cast<Letter>(g + 1)) != c)
        throw Error("coset table inverse action broken");
    }
    for (const auto &r : p.relators)
      if (t.track(c, r) != c)
        throw Error("relator does not fix coset " + std::to_string(c));
  }
  for (const auto &w : t.subgroup_words)
    if (t.track(0, w) != 0)
      throw Error("subgroup word moves coset 0");
}

FiberTable coset_table_from_hom(const Presentation &p1, const Presentation &p2,
                                const std::vector<Permutation> &images1,
                                const std::vector<Permutation> &images2,
                                const PermGroup &g) {
  if (static_cast<int>(images1.size()) != p1.generator_count ||
      static_cast<int>(images2.size()) != p2.generator_count)
    throw Error("image list length mismatch");

  auto check_side = [&](const Presentation &p, const std::vector<Permutation> &imgs,
                        const char *side) {
    std::vector<int> idx;
    for (const auto &im : imgs) {
      int i = g.index_of(im);
      if (i < 0)
        throw Error(std::string("generator image outside G on ") + side);
      idx.push_back(i);
    }
    // power relators pin the exact order of each image
    for (int i = 0; i < p.generator_count; ++i) {
      for (const auto &r : p.relators) {
        bool is_power = !r.letters.empty();
        for (Letter l : r.letters)
          if (l != static_cast<Letter>(i + 1))
            is_power = false;
        if (is_power && g.element_order(idx[i]) != static_cast<int>(r.letters.size()))
          throw NotAppropriate("image of " + p.labels[i] + " has order " +
                               std::to_string(g.element_order(idx[i])) +
                               ", presentation requires " +
                               std::to_string(r.letters.size()));
      }
    }
    // all relators must die in G
    for (const auto &r : p.relators) {
      int acc = 0;
      for (Letter l : r.letters) {
        int e = idx[std::abs(l) - 1];
        acc = g.mult(acc, l > 0 ? e : g.inverse_of(e));
      }
      if (acc != 0)
        throw NotAppropriate(std::string("relator image nontrivial on ") + side);
    }
    PermGroup sub(g.degree(), imgs);
    if (sub.order() != g.order())
      throw NotSurjective(std::string("images do not generate G on ") + side);
    return idx;
  };
  std::vector<int> gam = check_side(p1, images1, "left factor");
  std::vector<int> del = check_side(p2, images2, "right factor");

  FiberTable ft;
  ft.product = product_presentation(p1, p2);
  ft.n_gens_left = p1.generator_count;

  int n = static_cast<int>(g.order());
  int width = 2 * ft.product.generator_count;
  CosetTable &t = ft.table;
  t.n_gens = ft.product.generator_count;
  t.coset_count = n;
  t.tab.assign(static_cast<size_t>(n) * width, -1);

  // Right cosets of H in T1 x T2 are labeled by elements of G: the coset of
  // (x, y) is phi2(y)^-1 * phi1(x). A left-factor generator multiplies the
  // label on the right, a right-factor generator acts by its inverse on the
  // left.
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < p1.generator_count; ++i) {
      t.tab[static_cast<size_t>(c) * width + 2 * i] = g.mult(c, gam[i]);
      t.tab[static_cast<size_t>(c) * width + 2 * i + 1] = g.mult(c, g.inverse_of(gam[i]));
    }
    for (int j = 0; j < p2.generator_count; ++j) {
      int col = 2 * (p1.generator_count + j);
      t.tab[static_cast<size_t>(c) * width + col] = g.mult(g.inverse_of(del[j]), c);
      t.tab[static_cast<size_t>(c) * width + col + 1] = g.mult(del[j], c);
    }
  }
  validate_table(ft.product, t);
  return ft;
}

CosetTable kernel_table(const Presentation &p, const PermGroup &q,
                        const std::vector<int> &image_indices) {
  if (static_cast<int>(image_indices.size()) != p.generator_count)
    throw Error("image list length mismatch");
  {
    std::vector<Permutation> imgs;
    for (int i : image_indices)
      imgs.push_back(q.element(i));
    PermGroup sub(q.degree(), imgs);
    if (sub.order() != q.order())
      throw NotSurjective("images do not generate the quotient");
  }
  for (const auto &r : p.relators) {
    int acc = 0;
    for (Letter l : r.letters) {
      int e = image_indices[std::abs(l) - 1];
      acc = q.mult(acc, l > 0 ? e : q.inverse_of(e));
    }
    if (acc != 0)
      throw Error("relator image nontrivial in quotient");
  }
  int n = static_cast<int>(q.order());
  int width = 2 * p.generator_count;
  CosetTable t;
  t.n_gens = p.generator_count;
  t.coset_count = n;
  t.tab.assign(static_cast<size_t>(n) * width, -1);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < p.generator_count; ++i) {
      t.tab[static_cast<size_t>(c) * width + 2 * i] = q.mult(c, image_indices[i]);
      t.tab[static_cast<size_t>(c) * width + 2 * i + 1] =
          q.mult(c, q.inverse_of(image_indices[i]));
    }
  validate_table(p, t);
  return t;
}

namespace {

struct TableFull {};

// HLT enumerator with coincidence handling and lookahead, after the classic
// presentation in Holt's handbook. Compaction happens only between sweeps;
// an in-flight scan never sees renumbered cosets.
class Enumerator {
public:
  Enumerator(const Presentation &p, const std::vector<Word> &subgroup_words,
             int64_t limit)
      : pres_(p), sub_words_(subgroup_words), width_(2 * p.generator_count),
        limit_(limit) {
    for (const auto &r : pres_.relators)
      if (!r.empty())
        relators_.push_back(r);
    new_coset(); // coset 0
  }

  CosetTable run() {
    for (;;) {
      try {
        sweep();
      } catch (const TableFull &) {
        int64_t before = live_count_;
        lookahead();
        compact();
        // give up unless the lookahead recovered a usable margin
        if (live_count_ >= limit_ || before - live_count_ < limit_ / 20)
          throw CosetLimitExceeded("coset enumeration exceeded limit " +
                                   std::to_string(limit_));
        continue;
      }
      if (closed())
        break;
    }
    return standardize();
  }

private:
  void sweep() {
    for (const auto &w : sub_words_)
      scan_and_fill(0, w);
    for (int32_t cur = 0; cur < n_alloc(); ++cur) {
      if (!alive(cur))
        continue;
      for (const auto &r : relators_) {
        scan_and_fill(cur, r);
        if (!alive(cur))
          break;
      }
      if (alive(cur))
        fill_row(cur);
    }
  }

  int32_t n_alloc() const { return static_cast<int32_t>(rep_.size()); }
  bool alive(int32_t c) const { return rep_[c] == c; }

  int32_t find(int32_t c) {
    while (rep_[c] != c)
      c = rep_[c];
    return c;
  }

  int32_t raw(int32_t c, int col) const {
    return table_[static_cast<size_t>(c) * width_ + col];
  }
  int32_t get(int32_t c, int col) {
    int32_t v = raw(c, col);
    if (v >= 0 && rep_[v] != v) {
      v = find(v);
      table_[static_cast<size_t>(c) * width_ + col] = v;
    }
    return v;
  }
  void set(int32_t c, int col, int32_t v) {
    table_[static_cast<size_t>(c) * width_ + col] = v;
  }

  static int col_of(Letter l) { return 2 * (std::abs(l) - 1) + (l > 0 ? 0 : 1); }
  static int inv_col(int col) { return col ^ 1; }

  int32_t new_coset() {
    if (live_count_ >= limit_)
      throw TableFull{};
    int32_t c = n_alloc();
    rep_.push_back(c);
    table_.resize(table_.size() + width_, -1);
    ++live_count_;
    return c;
  }

  void merge(int32_t a, int32_t b, std::deque<int32_t> &q) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (a > b)
      std::swap(a, b);
    rep_[b] = a;
    --live_count_;
    q.push_back(b);
  }

  void coincidence(int32_t a, int32_t b) {
    std::deque<int32_t> q;
    merge(a, b, q);
    while (!q.empty()) {
      int32_t dead = q.front();
      q.pop_front();
      for (int col = 0; col < width_; ++col) {
        int32_t d = raw(dead, col);
        if (d < 0)
          continue;
        set(d, inv_col(col), -1);
        int32_t m = find(dead);
        int32_t n = find(d);
        int32_t ex = get(m, col);
        if (ex >= 0) {
          merge(n, ex, q);
        } else {
          int32_t exb = get(n, inv_col(col));
          if (exb >= 0) {
            merge(m, exb, q);
          } else {
            set(m, col, n);
            set(n, inv_col(col), m);
          }
        }
      }
    }
  }

  // Scan word at coset c, defining new cosets to complete it (HLT).
  void scan_and_fill(int32_t c, const Word &w) {
    c = find(c);
    size_t i = 0, j = w.letters.size();
    int32_t f = c, b = c;
    for (;;) {
      while (i < j) {
        int32_t nxt = get(f, col_of(w.letters[i]));
        if (nxt < 0)
          break;
        f = nxt;
        ++i;
      }
      if (i == j) {
        if (f != b)
          coincidence(f, b);
        return;
      }
      while (j > i) {
        int32_t nxt = get(b, inv_col(col_of(w.letters[j - 1])));
        if (nxt < 0)
          break;
        b = nxt;
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        set(f, col_of(w.letters[i]), b);
        set(b, inv_col(col_of(w.letters[i])), f);
        return;
      }
      int32_t n = new_coset();
      set(f, col_of(w.letters[i]), n);
      set(n, inv_col(col_of(w.letters[i])), f);
      f = n;
      ++i;
    }
  }

  void fill_row(int32_t c) {
    for (int col = 0; col < width_; ++col) {
      if (get(c, col) >= 0)
        continue;
      int32_t n = new_coset();
      set(c, col, n);
      set(n, inv_col(col), c);
    }
  }

  // Scan-only pass over all live cosets, harvesting coincidences without
  // defining anything.
  void lookahead() {
    for (int32_t c = 0; c < n_alloc(); ++c) {
      if (!alive(c))
        continue;
      for (const auto &r : relators_) {
        scan_no_fill(c, r);
        if (!alive(c))
          break;
      }
    }
  }

  void scan_no_fill(int32_t c, const Word &w) {
    c = find(c);
    size_t i = 0, j = w.letters.size();
    int32_t f = c, b = c;
    while (i < j) {
      int32_t nxt = get(f, col_of(w.letters[i]));
      if (nxt < 0)
        break;
      f = nxt;
      ++i;
    }
    if (i == j) {
      if (f != b)
        coincidence(f, b);
      return;
    }
    while (j > i) {
      int32_t nxt = get(b, inv_col(col_of(w.letters[j - 1])));
      if (nxt < 0)
        break;
      b = nxt;
      --j;
    }
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      set(f, col_of(w.letters[i]), b);
      set(b, inv_col(col_of(w.letters[i])), f);
    }
  }

  void compact() {
    std::vector<int32_t> remap(n_alloc(), -1);
    int32_t next = 0;
    for (int32_t c = 0; c < n_alloc(); ++c)
      if (alive(c))
        remap[c] = next++;
    std::vector<int32_t> nt(static_cast<size_t>(next) * width_, -1);
    for (int32_t c = 0; c < n_alloc(); ++c) {
      if (!alive(c))
        continue;
      for (int col = 0; col < width_; ++col) {
        int32_t v = raw(c, col);
        nt[static_cast<size_t>(remap[c]) * width_ + col] =
            v < 0 ? -1 : remap[find(v)];
      }
    }
    table_ = std::move(nt);
    rep_.resize(next);
    for (int32_t c = 0; c < next; ++c)
      rep_[c] = c;
    live_count_ = next;
  }

  bool closed() {
    for (int32_t c = 0; c < n_alloc(); ++c) {
      if (!alive(c))
        continue;
      for (int col = 0; col < width_; ++col)
        if (get(c, col) < 0)
          return false;
      for (const auto &r : relators_) {
        int32_t f = c;
        for (Letter l : r.letters) {
          f = get(f, col_of(l));
          if (f < 0)
            return false;
        }
        if (f != c)
          return false;
      }
    }
    for (const auto &w : sub_words_) {
      int32_t f = 0;
      for (Letter l : w.letters) {
        f = get(f, col_of(l));
        if (f < 0)
          return false;
      }
      if (f != 0)
        return false;
    }
    return true;
  }

  CosetTable standardize() {
    compact();
    std::vector<int32_t> order(live_count_, -1), pos(live_count_, -1);
    int32_t cnt = 0;
    order[cnt] = 0;
    pos[0] = cnt++;
    for (int32_t at = 0; at < cnt; ++at) {
      int32_t c = order[at];
      for (int col = 0; col < width_; ++col) {
        int32_t v = raw(c, col);
        if (v >= 0 && pos[v] < 0) {
          order[cnt] = v;
          pos[v] = cnt++;
        }
      }
    }
    if (cnt != live_count_)
      throw Error("coset table is not transitive");
    CosetTable t;
    t.n_gens = pres_.generator_count;
    t.coset_count = live_count_;
    t.subgroup_words = sub_words_;
    t.tab.assign(static_cast<size_t>(live_count_) * width_, -1);
    for (int32_t c = 0; c < live_count_; ++c)
      for (int col = 0; col < width_; ++col)
        t.tab[static_cast<size_t>(pos[c]) * width_ + col] = pos[raw(c, col)];
    return t;
  }

  Presentation pres_;
  std::vector<Word> sub_words_;
  std::vector<Word> relators_;
  int width_;
  int64_t limit_;
  int64_t live_count_ = 0;
  std::vector<int32_t> table_;
  std::vector<int32_t> rep_;
};

} // namespace

CosetTable todd_coxeter(const Presentation &p, const std::vector<Word> &subgroup_words,
                        int64_t coset_limit) {
  if (coset_limit < 1)
    throw Error("coset limit must be at least 1");
  if (p.generator_count == 0) {
    CosetTable t;
    t.n_gens = 0;
    t.coset_count = 1;
    return t;
  }
  Enumerator e(p, subgroup_words, coset_limit);
  CosetTable t = e.run();
  validate_table(p, t);
  return t;
}

} // namespace pq
