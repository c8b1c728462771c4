#include "pq/word.hpp"

#include <cstdlib>

namespace pq {

Word free_reduce(const Word &w) {
  std::vector<Letter> out;
  out.reserve(w.letters.size());
  for (Letter l : w.letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word{std::move(out)};
}

Word cyclic_reduce(const Word &w) {
  Word r = free_reduce(w);
  size_t a = 0, b = r.letters.size();
  while (b - a >= 2 && r.letters[a] == -r.letters[b - 1]) {
    ++a;
    --b;
  }
  return Word{std::vector<Letter>(r.letters.begin() + a, r.letters.begin() + b)};
}

Word power_word(int gen_index, int exponent) {
  Word w;
  Letter l = static_cast<Letter>(gen_index + 1);
  if (exponent < 0) {
    l = -l;
    exponent = -exponent;
  }
  w.letters.assign(exponent, l);
  return w;
}

std::string word_str(const Word &w, const std::vector<std::string> &labels) {
  if (w.letters.empty())
    return "1";
  std::string out;
  for (size_t i = 0; i < w.letters.size();) {
    Letter l = w.letters[i];
    size_t j = i;
    while (j < w.letters.size() && w.letters[j] == l)
      ++j;
    int exp = static_cast<int>(j - i) * (l > 0 ? 1 : -1);
    if (!out.empty())
      out += '*';
    out += labels[std::abs(l) - 1];
    if (exp != 1)
      out += '^' + std::to_string(exp);
    i = j;
  }
  return out;
}

} // namespace pq
