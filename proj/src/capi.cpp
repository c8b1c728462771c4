#include "classify.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pq/enumerate.hpp"
#include "pq/errors.hpp"
#include "pq/intmat.hpp"
#include "pq/pipeline.hpp"

#define PQ_EXPORT __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

pq_status classify_exception() {
  try {
    throw;
  } catch (const pq::CapExceeded &e) {
    g_last_error = e.what();
    return PQ_CAP_EXCEEDED;
  } catch (const pq::CosetLimitExceeded &e) {
    g_last_error = e.what();
    return PQ_CAP_EXCEEDED;
  } catch (const pq::OrbitCapExceeded &e) {
    g_last_error = e.what();
    return PQ_CAP_EXCEEDED;
  } catch (const pq::ParseError &e) {
    g_last_error = e.what();
    return PQ_INPUT_ERROR;
  } catch (const pq::OrderMismatch &e) {
    g_last_error = e.what();
    return PQ_INPUT_ERROR;
  } catch (const pq::NotAppropriate &e) {
    g_last_error = e.what();
    return PQ_INPUT_ERROR;
  } catch (const pq::NotSurjective &e) {
    g_last_error = e.what();
    return PQ_INPUT_ERROR;
  } catch (const pq::BadType &e) {
    g_last_error = e.what();
    return PQ_INPUT_ERROR;
  } catch (const pq::Error &e) {
    g_last_error = e.what();
    return PQ_INVARIANT_VIOLATION;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return PQ_INVARIANT_VIOLATION;
  }
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

struct pq_catalog {
  pq::Catalog cat;
  bool borrowed_builtin = false;
};

struct pq_report {
  pq::PipelineResult result;
};

extern "C" {

PQ_EXPORT pq_status pq_catalog_builtin(pq_catalog **out) {
  if (!out)
    return PQ_INPUT_ERROR;
  try {
    auto *c = new pq_catalog;
    c->cat = pq::builtin_catalog();
    *out = c;
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT pq_status pq_catalog_load(const char *path, pq_catalog **out) {
  if (!path || !out)
    return PQ_INPUT_ERROR;
  try {
    std::ifstream f(path);
    if (!f) {
      g_last_error = std::string("cannot open catalog file ") + path;
      return PQ_INPUT_ERROR;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    auto *c = new pq_catalog;
    c->cat = pq::parse_catalog(ss.str());
    *out = c;
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT void pq_catalog_free(pq_catalog *cat) { delete cat; }

PQ_EXPORT pq_status pq_run(const pq_catalog *cat, const pq_run_options *opts,
                           pq_report **out) {
  if (!cat || !out)
    return PQ_INPUT_ERROR;
  try {
    pq::RunConfig config;
    if (opts) {
      if (opts->k_squared && opts->n_k > 0)
        config.k_squared.assign(opts->k_squared, opts->k_squared + opts->n_k);
      if (opts->coset_limit > 0)
        config.coset_limit = opts->coset_limit;
      if (opts->orbit_cap > 0)
        config.orbit_cap = opts->orbit_cap;
      if (opts->index_bound > 0)
        config.index_bound = opts->index_bound;
      config.threads = opts->threads;
      config.compute_pi1 = opts->compute_pi1 != 0;
    }
    auto *rep = new pq_report;
    rep->result = pq::run_pipeline(config, cat->cat);
    *out = rep;
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT int pq_report_row_count(const pq_report *rep) {
  return rep ? static_cast<int>(rep->result.rows.size()) : 0;
}

PQ_EXPORT pq_status pq_report_emit(const pq_report *rep, const char *format,
                                   char **out_text) {
  if (!rep || !format || !out_text)
    return PQ_INPUT_ERROR;
  try {
    pq::EmitFormat fmt;
    std::string f = format;
    if (f == "tsv")
      fmt = pq::EmitFormat::Tsv;
    else if (f == "json")
      fmt = pq::EmitFormat::Json;
    else if (f == "md")
      fmt = pq::EmitFormat::Md;
    else {
      g_last_error = "unknown format \"" + f + "\" (want tsv, json or md)";
      return PQ_INPUT_ERROR;
    }
    *out_text = dup_string(pq::emit(rep->result.rows, fmt));
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT pq_status pq_report_families(const pq_report *rep, char **out_text) {
  if (!rep || !out_text)
    return PQ_INPUT_ERROR;
  try {
    *out_text = dup_string(pq::emit_families(rep->result.rows));
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT pq_status pq_report_ledger(const pq_report *rep, char **out_text) {
  if (!rep || !out_text)
    return PQ_INPUT_ERROR;
  try {
    std::string out;
    for (const auto &l : rep->result.ledger)
      out += l + "\n";
    *out_text = dup_string(out);
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT void pq_report_free(pq_report *rep) { delete rep; }

PQ_EXPORT pq_status pq_signatures(int k_squared, char **out_text) {
  if (!out_text)
    return PQ_INPUT_ERROR;
  try {
    std::string out = "T\talpha\n";
    for (const auto &t : pq::list_of_types(k_squared))
      out += t.signature.str() + "\t" + std::to_string(t.alpha) + "\n";
    *out_text = dup_string(out);
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT pq_status pq_triples(const pq_catalog *cat, int k_squared, char **out_text) {
  if (!cat || !out_text)
    return PQ_INPUT_ERROR;
  try {
    std::vector<pq::SweepNote> notes;
    auto triples = pq::existing_nodal_surfaces(k_squared, cat->cat, &notes);
    std::string out = "K2\tT1\tT2\tg1\tg2\tG\torder\n";
    for (const auto &t : triples)
      out += std::to_string(t.k_squared) + "\t" + t.t1.str() + "\t" + t.t2.str() +
             "\t" + std::to_string(t.genus1) + "\t" + std::to_string(t.genus2) + "\t" +
             t.entry->label + "\t" + std::to_string(t.group_order) + "\n";
    for (const auto &n : notes)
      out += "# order " + std::to_string(n.order) + ": " + n.note + "\n";
    *out_text = dup_string(out);
    return PQ_OK;
  } catch (...) {
    return classify_exception();
  }
}

PQ_EXPORT pq_status pq_selftest(char **out_text) {
  std::string log;
  bool ok = true;
  auto check = [&](bool cond, const std::string &name) {
    log += (cond ? "ok: " : "FAIL: ") + name + "\n";
    ok = ok && cond;
  };
  try {
    check(pq::list_of_types(2).size() == 14, "signature count at K^2=2");
    check(pq::list_of_types(4).size() == 24, "signature count at K^2=4");
    check(pq::list_of_types(6).size() == 24, "signature count at K^2=6");

    const pq::Catalog &cat = pq::builtin_catalog();
    const pq::CatalogEntry *psl = cat.find("PSL(2,7)");
    check(psl && psl->order() == 168, "PSL(2,7) closure order");

    auto hj = pq::hj_string(5, 2);
    check(hj.string == std::vector<int64_t>{3, 2}, "continued fraction of 5/2");

    pq::IntMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 3;
    check(pq::smith_normal_form(m) == std::vector<int64_t>{1, 6},
          "elementary divisors of diag(2,3)");

    // the one order-2000+ candidate group, ruled out by direct search
    pq::PermGroup a7(7, pq::alternating_gens(7));
    check(a7.order() == 2520, "A7 closure order");
    check(!pq::exists_spherical(a7, pq::Signature({2, 3, 7})),
          "A7 admits no (2,3,7) generating triple");

    *out_text = dup_string(log);
    return ok ? PQ_OK : PQ_INVARIANT_VIOLATION;
  } catch (...) {
    pq_status st = classify_exception();
    log += std::string("FAIL: exception: ") + g_last_error + "\n";
    if (out_text)
      *out_text = dup_string(log);
    return st;
  }
}

PQ_EXPORT const char *pq_last_error(void) { return g_last_error.c_str(); }

PQ_EXPORT void pq_string_free(char *text) { std::free(text); }

PQ_EXPORT const char *pq_version(void) { return "1.0.0"; }

} // extern "C"
