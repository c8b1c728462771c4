#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pq/catalog.hpp"
#include "pq/enumerate.hpp"
#include "pq/fpcore.hpp"

namespace pq {

// Orchestration: the full sweep from signatures to family invariants, with
// deterministic parallel execution and stable emission.

enum class EmitFormat { Tsv, Json, Md };

struct RunConfig {
  std::vector<int> k_squared = {2, 4, 6};
  int64_t coset_limit = 1000000;
  int64_t orbit_cap = 1 << 22;
  int64_t index_bound = 32;
  int threads = 0; // 0: CLASSIFY_THREADS env var, else hardware default
  bool compute_pi1 = true;

  void validate() const;
  int resolved_threads() const;
};

struct FamilyDetail {
  int family_index = 0;
  std::vector<std::string> sys1, sys2; // generating tuples, cycle notation
  std::string h1;
  size_t torsion_words = 0;
  std::vector<std::string> h_generators; // surviving H generators, c/d words
  std::string pi1_text;                  // presentation of pi1
  std::optional<int64_t> pi1_order;
  std::vector<std::string> structure_lines;
  std::optional<std::pair<int64_t, int64_t>> best_free_kernel; // (index, rank)
};

struct ReportRow {
  int k_squared = 0;
  Signature t1, t2;
  int64_t g1 = 0, g2 = 0;
  std::string group;
  int64_t group_order = 0;
  int families = 0;
  AbelianInvariants h1;
  std::string pi1_summary;
  std::vector<FamilyDetail> detail;
};

struct PipelineResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> ledger;
};

// Full run: nodal triples, family classes, fundamental-group data. Rows are
// sorted by (K^2, T1, T2, group label); per-triple failures become ledger
// lines rather than aborting the run. Output is identical for any thread
// count.
PipelineResult run_pipeline(const RunConfig &config, const Catalog &catalog);

std::string emit(const std::vector<ReportRow> &rows, EmitFormat fmt);
std::vector<ReportRow> rows_from_json(const std::string &json_text);

// Long-form per-family records (generating tuples, H generators, pi1 data).
std::string emit_families(const std::vector<ReportRow> &rows);

// Re-checks the arithmetic identities a report row must satisfy; throws
// Error on violation.
void validate_row(const ReportRow &row);

} // namespace pq
