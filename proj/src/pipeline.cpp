#include "pq/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pq/errors.hpp"
#include "pq/pi1.hpp"

namespace pq {

void RunConfig::validate() const {
  for (int k : k_squared)
    if (k != 2 && k != 4 && k != 6)
      throw Error("K^2 must be in {2, 4, 6}");
  if (k_squared.empty())
    throw Error("empty K^2 list");
  if (coset_limit < 1 || orbit_cap < 1 || index_bound < 1)
    throw Error("caps must be positive");
}

int RunConfig::resolved_threads() const {
  if (threads > 0)
    return threads;
  if (const char *env = std::getenv("CLASSIFY_THREADS")) {
    int v = std::atoi(env);
    if (v > 0)
      return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Ordered parallel map: tasks run on a small pool, results land in their
// slot, so output never depends on scheduling.
template <class Task>
void parallel_for(int n_tasks, int threads, Task &&task) {
  if (threads <= 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i)
      task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int n = std::min(threads, n_tasks);
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n_tasks)
          return;
        task(i);
      }
    });
  for (auto &th : pool)
    th.join();
}

std::vector<std::string> cycle_strings(const PermGroup &g, const std::vector<int> &tuple) {
  std::vector<std::string> out;
  for (int e : tuple)
    out.push_back(g.element(e).cycle_str());
  return out;
}

std::string pi1_summary_of(const FamilyDetail &d, const AbelianInvariants &h1) {
  if (d.pi1_order) {
    if (h1.free_rank == 0 && h1.torsion_order() == *d.pi1_order)
      return h1.str(); // abelian: the fundamental group is its own H1
    return "finite:" + std::to_string(*d.pi1_order);
  }
  if (d.best_free_kernel)
    return "infinite; Z^" + std::to_string(d.best_free_kernel->second) +
           " kernel at index " + std::to_string(d.best_free_kernel->first);
  return "infinite";
}

} // namespace

void validate_row(const ReportRow &row) {
  Rational k2(row.k_squared);
  Rational a1 = alpha(row.t1, k2);
  Rational a2 = alpha(row.t2, k2);
  if (!a1.is_integer() || !a2.is_integer())
    throw Error("row validation: non-integral alpha");
  if (Rational(8) * a1 * a2 / k2 != Rational(row.group_order))
    throw Error("row validation: group order mismatch");
  if (hurwitz_genus(row.group_order, row.t1) != row.g1 ||
      hurwitz_genus(row.group_order, row.t2) != row.g2)
    throw Error("row validation: genus mismatch");
  if (a1.as_integer() != row.g2 - 1 || a2.as_integer() != row.g1 - 1)
    throw Error("row validation: alpha / genus relation broken");
  if (k_squared(row.g1, row.g2, row.group_order) != k2)
    throw Error("row validation: K^2 mismatch");
  if (row.families <= 0 || row.h1.free_rank != 0)
    throw Error("row validation: family count or H1 shape wrong");
}

PipelineResult run_pipeline(const RunConfig &config, const Catalog &catalog) {
  config.validate();
  int threads = config.resolved_threads();

  PipelineResult result;
  std::vector<QuotientCandidate> quotients;
  std::vector<CatalogEntry> quotient_pool;
  if (config.compute_pi1) {
    quotient_pool = small_groups_upto(config.index_bound);
    for (const auto &e : quotient_pool)
      quotients.push_back(QuotientCandidate{e.label, e.group.get()});
  }

  for (int k : config.k_squared) {
    std::vector<SweepNote> notes;
    auto triples = list_triples(k, catalog, &notes);
    for (const auto &n : notes)
      result.ledger.push_back("K^2=" + std::to_string(k) + " order " +
                              std::to_string(n.order) + ": " + n.note);

    // nodal filter
    std::vector<char> keep(triples.size(), 0);
    std::vector<std::string> errors(triples.size());
    parallel_for(static_cast<int>(triples.size()), threads, [&](int i) {
      const Triple &tr = triples[i];
      try {
        auto reps1 = systems_up_to_conjugation(*tr.entry->group, tr.t1);
        auto reps2 =
            tr.t1 == tr.t2 ? reps1 : systems_up_to_conjugation(*tr.entry->group, tr.t2);
        for (const auto &s1 : reps1) {
          for (const auto &s2 : reps2)
            if (check_sings(*tr.entry->group, s1, s2, k).accepted) {
              keep[i] = 1;
              break;
            }
          if (keep[i])
            break;
        }
      } catch (const Error &e) {
        errors[i] = e.what();
      }
    });
    std::vector<Triple> nodal;
    for (size_t i = 0; i < triples.size(); ++i) {
      if (!errors[i].empty())
        result.ledger.push_back("K^2=" + std::to_string(k) + " triple (" +
                                triples[i].t1.str() + ")x(" + triples[i].t2.str() +
                                ") " + triples[i].entry->label +
                                " skipped: " + errors[i]);
      else if (keep[i])
        nodal.push_back(triples[i]);
    }

    // families and fundamental groups per surviving triple
    std::vector<ReportRow> rows(nodal.size());
    std::vector<std::string> row_errors(nodal.size());
    parallel_for(static_cast<int>(nodal.size()), threads, [&](int i) {
      const Triple &tr = nodal[i];
      try {
        const PermGroup &g = *tr.entry->group;
        auto classes = find_all_components(tr, config.orbit_cap);
        if (classes.empty())
          throw Error("no family classes after equivalence reduction");
        ReportRow row;
        row.k_squared = k;
        row.t1 = tr.t1;
        row.t2 = tr.t2;
        row.g1 = tr.genus1;
        row.g2 = tr.genus2;
        row.group = tr.entry->label;
        row.group_order = tr.group_order;
        row.families = static_cast<int>(classes.size());
        for (const auto &fc : classes) {
          FamilyDetail d;
          d.family_index = fc.class_id;
          d.sys1 = cycle_strings(g, fc.sys1.elements);
          d.sys2 = cycle_strings(g, fc.sys2.elements);
          if (config.compute_pi1) {
            FiberProductData fp = fiber_product(fc.sys1, fc.sys2);
            auto torsion = torsion_generators(fc.sys1, fc.sys2, fp);
            Pi1Report rep = pi1_presentation(fp, torsion);
            d.h1 = rep.h1.str();
            d.torsion_words = torsion.size();
            for (const auto &w : rep.h_generator_words)
              d.h_generators.push_back(word_str(w, fp.product.labels));
            d.pi1_text = rep.pi1.str();
            d.pi1_order = finite_order_probe(rep.pi1, config.coset_limit);
            if (!d.pi1_order) {
              auto sr = structure_probe(rep.pi1, quotients, config.index_bound);
              for (const auto &p : sr.probes)
                d.structure_lines.push_back(
                    "quotient " + p.quotient_label + " index " +
                    std::to_string(p.index) + " kernel " + p.kernel_invariants.str());
              d.best_free_kernel = sr.best;
            }
            if (row.detail.empty())
              row.h1 = rep.h1;
            else if (!(row.h1 == rep.h1))
              throw Error("families of one triple disagree on H1");
          }
          row.detail.push_back(std::move(d));
        }
        if (config.compute_pi1) {
          row.pi1_summary = pi1_summary_of(row.detail.front(), row.h1);
          validate_row(row);
        }
        rows[i] = std::move(row);
      } catch (const Error &e) {
        row_errors[i] = e.what();
      }
    });
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!row_errors[i].empty())
        result.ledger.push_back("K^2=" + std::to_string(k) + " triple (" +
                                nodal[i].t1.str() + ")x(" + nodal[i].t2.str() + ") " +
                                nodal[i].entry->label + " failed: " + row_errors[i]);
      else
        result.rows.push_back(std::move(rows[i]));
    }
  }
  return result;
}

namespace {

const char *kTsvHeader = "K2\tT1\tT2\tg1\tg2\tG\tfams\tH1\tpi1\n";

std::string tsv_row(const ReportRow &r) {
  std::string out;
  out += std::to_string(r.k_squared) + "\t" + r.t1.str() + "\t" + r.t2.str() + "\t" +
         std::to_string(r.g1) + "\t" + std::to_string(r.g2) + "\t" + r.group + "\t" +
         std::to_string(r.families) + "\t" + r.h1.str() + "\t" + r.pi1_summary + "\n";
  return out;
}

} // namespace

std::string emit(const std::vector<ReportRow> &rows, EmitFormat fmt) {
  if (fmt == EmitFormat::Tsv) {
    std::string out = kTsvHeader;
    for (const auto &r : rows)
      out += tsv_row(r);
    return out;
  }
  if (fmt == EmitFormat::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
      nlohmann::ordered_json o;
      o["k2"] = r.k_squared;
      o["t1"] = r.t1.str();
      o["t2"] = r.t2.str();
      o["g1"] = r.g1;
      o["g2"] = r.g2;
      o["group"] = r.group;
      o["group_order"] = r.group_order;
      o["families"] = r.families;
      o["h1"] = r.h1.str();
      o["pi1"] = r.pi1_summary;
      arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
  }
  // markdown mirror of the classification table
  std::string out = "| K^2 | T1 | T2 | g1 | g2 | G | fams | H1 | pi1 |\n";
  out += "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto &r : rows)
    out += "| " + std::to_string(r.k_squared) + " | " + r.t1.str() + " | " +
           r.t2.str() + " | " + std::to_string(r.g1) + " | " + std::to_string(r.g2) +
           " | " + r.group + " | " + std::to_string(r.families) + " | " + r.h1.str() +
           " | " + r.pi1_summary + " |\n";
  return out;
}

std::vector<ReportRow> rows_from_json(const std::string &json_text) {
  auto arr = nlohmann::ordered_json::parse(json_text);
  std::vector<ReportRow> rows;
  for (const auto &o : arr) {
    ReportRow r;
    r.k_squared = o.at("k2").get<int>();
    r.t1 = Signature::parse(o.at("t1").get<std::string>());
    r.t2 = Signature::parse(o.at("t2").get<std::string>());
    r.g1 = o.at("g1").get<int64_t>();
    r.g2 = o.at("g2").get<int64_t>();
    r.group = o.at("group").get<std::string>();
    r.group_order = o.at("group_order").get<int64_t>();
    r.families = o.at("families").get<int>();
    r.h1 = AbelianInvariants::parse(o.at("h1").get<std::string>());
    r.pi1_summary = o.at("pi1").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string emit_families(const std::vector<ReportRow> &rows) {
  std::string out;
  for (const auto &r : rows) {
    for (const auto &d : r.detail) {
      out += "== K^2=" + std::to_string(r.k_squared) + " (" + r.t1.str() + ") x (" +
             r.t2.str() + ") G=" + r.group + " family " +
             std::to_string(d.family_index + 1) + "/" + std::to_string(r.families) +
             "\n";
      out += "S1:";
      for (const auto &s : d.sys1)
        out += " " + s;
      out += "\nS2:";
      for (const auto &s : d.sys2)
        out += " " + s;
      out += "\nH1: " + (d.h1.empty() ? r.h1.str() : d.h1) + "\n";
      if (!d.h_generators.empty()) {
        out += "H generators:";
        for (const auto &w : d.h_generators)
          out += " " + w;
        out += "\n";
      }
      out += "torsion words: " + std::to_string(d.torsion_words) + "\n";
      if (!d.pi1_text.empty()) {
        out += "pi1 presentation:\n";
        std::stringstream ss(d.pi1_text);
        std::string line;
        while (std::getline(ss, line))
          out += "  " + line + "\n";
      }
      if (d.pi1_order)
        out += "pi1 order: " + std::to_string(*d.pi1_order) + "\n";
      else if (!d.pi1_text.empty()) {
        out += "pi1 order: infinite at enumeration limit\n";
        for (const auto &s : d.structure_lines)
          out += "  " + s + "\n";
      }
      out += "\n";
    }
  }
  return out;
}

} // namespace pq
