#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pq {

// A letter is a nonzero signed index: +k means generator k-1, -k its inverse.
using Letter = int32_t;

// Word in abstract generators, kept freely reduced by the operations that
// produce words (free_reduce is idempotent).
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(-*it);
    return w;
  }

  Word operator*(const Word &o) const {
    Word w;
    w.letters.reserve(letters.size() + o.letters.size());
    w.letters = letters;
    w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
    return w;
  }

  bool operator==(const Word &o) const { return letters == o.letters; }
  bool operator<(const Word &o) const { return letters < o.letters; }
};

// Cancels adjacent inverse pairs until none remain.
Word free_reduce(const Word &w);

// Cyclic reduction: free reduction plus cancellation across the seam.
Word cyclic_reduce(const Word &w);

// Raises a single generator to a power, as a word.
Word power_word(int gen_index, int exponent);

std::string word_str(const Word &w, const std::vector<std::string> &labels);

} // namespace pq
