#pragma once

// Exact vector index over the catalog, the two evaluation metrics, and the
// per-task evaluation driver.

#include <set>

#include "encoder.hpp"

namespace forge {

struct ItemIndex {
  std::vector<std::string> item_ids;  // catalog order
  std::vector<float> matrix;          // N x dim, row-major, unit or zero rows
  uint32_t dim = 0;
  std::string model_fingerprint;
  std::vector<std::string> degenerate_ids;  // items whose text tokenized empty

  std::span<const float> row(size_t i) const {
    return {matrix.data() + i * dim, dim};
  }
};

ItemIndex build_index(const Catalog& catalog, const EncoderModel& model);

struct ScoredItem {
  std::string item_id;
  double score;
};

// Exact brute-force top-k by dot product, descending; exact ties break by
// item id ascending. Returns min(k, N) entries.
std::vector<ScoredItem> topk(const ItemIndex& index, std::span<const float> query_vec, size_t k);

// 1.0 when any of the first k ranked ids is a positive.
double hit_at_k(const std::vector<std::string>& ranked, const std::set<std::string>& positives,
                size_t k);

// Fraction of the first k ranked items satisfying the condition.
double coverage_at_k(const std::vector<std::string>& ranked, const Condition& condition,
                     const Catalog& catalog, size_t k);

struct TaskResult {
  std::string metric;  // "hit@5" or "coverage@5"
  double value = 0.0;
  size_t samples = 0;
};

struct EvalReport {
  std::string label;      // caller-chosen model label
  std::string domain;     // catalog name
  std::string ood_label;  // non-empty when the model was trained elsewhere
  size_t k = 5;
  std::string dataset_hash;
  std::string model_fingerprint;
  uint64_t seed = 0;  // dataset generation seed
  int64_t wall_clock_ms = 0;
  std::map<std::string, TaskResult> tasks;  // keyed by task name

  double value_of(std::string_view task) const;  // throws when absent
};

// Per-task mean of hit@k (UH2I, I2I, US2I, AS2I, NM2I, UQ2I) or coverage@k
// (FA2I, SA2I, VC2I, NA2I) over the dataset's samples.
EvalReport evaluate(const Dataset& test_split, const Catalog& catalog, const EncoderModel& model,
                    size_t k = 5, const std::string& ood_label = "",
                    const std::string& label = "");

// include_timings controls whether wall_clock_ms is written; default reports
// are byte-reproducible.
Json report_to_json(const EvalReport& report, bool include_timings);
EvalReport report_from_json(const Json& j);
void save_report(const EvalReport& report, const std::string& path, bool include_timings = false);
EvalReport load_report(const std::string& path);

// Side-by-side table of several reports, rows per (task, metric), one column
// per report keyed by label@domain.
std::string render_report_table(const std::vector<EvalReport>& reports);

}  // namespace forge
