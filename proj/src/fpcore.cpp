#include "pq/fpcore.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "pq/errors.hpp"
#include "pq/intmat.hpp"

namespace pq {

Presentation::Presentation(int gens, std::vector<Word> rels,
                           std::vector<std::string> labs)
    : generator_count(gens), relators(std::move(rels)), labels(std::move(labs)) {
  for (auto &r : relators)
    r = cyclic_reduce(r);
  if (labels.empty()) {
    for (int i = 0; i < gens; ++i)
      labels.push_back("g" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels.size()) != gens)
    throw Error("label count does not match generator count");
  for (const auto &r : relators)
    for (Letter l : r.letters)
      if (std::abs(l) > gens)
        throw Error("relator letter outside generator range");
}

std::string Presentation::str() const {
  std::string out = "gens:";
  for (const auto &l : labels)
    out += " " + l;
  out += "\n";
  for (const auto &r : relators)
    out += "rel: " + word_str(r, labels) + "\n";
  return out;
}

namespace {

Word parse_word_text(const std::string &text, const std::map<std::string, int> &gen_ids) {
  Word w;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip();
  if (text.substr(i) == "1")
    return w;
  while (i < text.size()) {
    size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                               text[j] == '_'))
      ++j;
    if (j == i)
      throw Error("bad word syntax near \"" + text.substr(i) + "\"");
    std::string name = text.substr(i, j - i);
    auto it = gen_ids.find(name);
    if (it == gen_ids.end())
      throw Error("unknown generator \"" + name + "\"");
    i = j;
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && text[i] == '-') {
        neg = true;
        ++i;
      }
      int v = 0;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("bad exponent in \"" + text + "\"");
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      exp = neg ? -v : v;
    }
    Word p = power_word(it->second, exp);
    w.letters.insert(w.letters.end(), p.letters.begin(), p.letters.end());
    skip();
  }
  return w;
}

} // namespace

Presentation Presentation::parse(const std::string &text) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::string> labels;
  std::vector<Word> relators;
  std::map<std::string, int> gen_ids;
  bool have_gens = false;
  while (std::getline(ss, line)) {
    if (line.empty())
      continue;
    if (line.rfind("gens:", 0) == 0) {
      std::stringstream ls(line.substr(5));
      std::string name;
      while (ls >> name) {
        if (gen_ids.count(name))
          throw Error("duplicate generator label \"" + name + "\"");
        gen_ids[name] = static_cast<int>(labels.size());
        labels.push_back(name);
      }
      have_gens = true;
    } else if (line.rfind("rel:", 0) == 0) {
      if (!have_gens)
        throw Error("rel: line before gens: line");
      relators.push_back(parse_word_text(line.substr(4), gen_ids));
    } else {
      throw Error("unrecognized presentation line: \"" + line + "\"");
    }
  }
  return Presentation(static_cast<int>(labels.size()), std::move(relators),
                      std::move(labels));
}

Presentation polygonal_presentation(const Signature &sig) {
  int r = sig.arity();
  std::vector<Word> rels;
  for (int i = 0; i < r; ++i) {
    if (sig.parts[i] < 2)
      throw Error("polygonal signature needs all m_i >= 2");
    rels.push_back(power_word(i, sig.parts[i]));
  }
  Word prod;
  for (int i = 0; i < r; ++i)
    prod.letters.push_back(static_cast<Letter>(i + 1));
  rels.push_back(prod);
  std::vector<std::string> labels;
  for (int i = 0; i < r; ++i)
    labels.push_back("c" + std::to_string(i + 1));
  return Presentation(r, std::move(rels), std::move(labels));
}

Presentation product_presentation(const Presentation &p1, const Presentation &p2) {
  int n1 = p1.generator_count, n2 = p2.generator_count;
  std::vector<Word> rels = p1.relators;
  for (const auto &r : p2.relators) {
    Word shifted;
    for (Letter l : r.letters)
      shifted.letters.push_back(l > 0 ? l + n1 : l - n1);
    rels.push_back(std::move(shifted));
  }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      Word comm;
      Letter x = static_cast<Letter>(i + 1);
      Letter y = static_cast<Letter>(n1 + j + 1);
      comm.letters = {-x, -y, x, y};
      rels.push_back(std::move(comm));
    }
  std::vector<std::string> labels = p1.labels;
  for (const auto &l : p2.labels) {
    std::string name = l;
    while (std::find(labels.begin(), labels.end(), name) != labels.end())
      name += "'";
    labels.push_back(name);
  }
  return Presentation(n1 + n2, std::move(rels), std::move(labels));
}

std::string AbelianInvariants::str() const {
  if (is_trivial())
    return "0";
  std::string out;
  if (free_rank > 0) {
    out = "Z";
    if (free_rank > 1)
      out += "^" + std::to_string(free_rank);
  }
  size_t i = 0;
  while (i < torsion.size()) {
    size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i])
      ++j;
    if (!out.empty())
      out += "x";
    out += "Z" + std::to_string(torsion[i]);
    if (j - i > 1)
      out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

AbelianInvariants AbelianInvariants::parse(const std::string &text) {
  AbelianInvariants inv;
  if (text == "0" || text.empty())
    return inv;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    if (tok.empty() || tok[0] != 'Z')
      throw Error("bad abelian invariants \"" + text + "\"");
    std::string body = tok.substr(1);
    int64_t d = 0;
    int64_t mult = 1;
    auto caret = body.find('^');
    if (caret != std::string::npos) {
      mult = std::stoll(body.substr(caret + 1));
      body = body.substr(0, caret);
    }
    if (!body.empty())
      d = std::stoll(body);
    if (d == 0)
      inv.free_rank += mult;
    else
      for (int64_t i = 0; i < mult; ++i)
        inv.torsion.push_back(d);
  }
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

AbelianInvariants abelian_invariants(const Presentation &p) {
  std::vector<std::vector<std::pair<int, int64_t>>> rows;
  rows.reserve(p.relators.size());
  for (const auto &r : p.relators) {
    std::map<int, int64_t> acc;
    for (Letter l : r.letters)
      acc[std::abs(l) - 1] += (l > 0 ? 1 : -1);
    std::vector<std::pair<int, int64_t>> row;
    for (auto &[c, v] : acc)
      if (v != 0)
        row.emplace_back(c, v);
    rows.push_back(std::move(row));
  }
  auto snf = sparse_relation_snf(p.generator_count, std::move(rows));
  AbelianInvariants inv;
  inv.free_rank = p.generator_count - snf.rank;
  inv.torsion = snf.divisors;
  return inv;
}

} // namespace pq
