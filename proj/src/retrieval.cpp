#include "retrieval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace forge {

ItemIndex build_index(const Catalog& catalog, const EncoderModel& model) {
  model.validate();
  ItemIndex index;
  index.dim = model.dim;
  index.model_fingerprint = model_fingerprint(model);
  index.item_ids.reserve(catalog.items.size());
  index.matrix.resize(catalog.items.size() * model.dim);
  for (size_t i = 0; i < catalog.items.size(); ++i) {
    const Item& item = catalog.items[i];
    index.item_ids.push_back(item.id);
    std::vector<float> vec = embed(item_text(item), model, model.tokenizer.max_item_tokens);
    bool zero = std::all_of(vec.begin(), vec.end(), [](float v) { return v == 0.0f; });
    if (zero) index.degenerate_ids.push_back(item.id);
    std::copy(vec.begin(), vec.end(), index.matrix.begin() + i * model.dim);
  }
  return index;
}

std::vector<ScoredItem> topk(const ItemIndex& index, std::span<const float> query_vec, size_t k) {
  if (k < 1) fail(ErrorKind::invalid_argument, "topk: k must be >= 1");
  if (query_vec.size() != index.dim) fail(ErrorKind::invalid_argument, "topk: dim mismatch");
  const size_t n = index.item_ids.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> scores(n);
  for (size_t i = 0; i < n; ++i) {
    std::span<const float> row = index.row(i);
    double dot = 0.0;
    for (size_t d = 0; d < index.dim; ++d) dot += static_cast<double>(row[d]) * query_vec[d];
    scores[i] = dot;
  }
  auto better = [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return index.item_ids[a] < index.item_ids[b];
  };
  const size_t take = std::min(k, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<ptrdiff_t>(take), order.end(),
                    better);
  std::vector<ScoredItem> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) out.push_back({index.item_ids[order[i]], scores[order[i]]});
  return out;
}

double hit_at_k(const std::vector<std::string>& ranked, const std::set<std::string>& positives,
                size_t k) {
  if (k < 1) fail(ErrorKind::invalid_argument, "hit_at_k: k must be >= 1");
  if (positives.empty()) fail(ErrorKind::invalid_argument, "hit_at_k: empty positives");
  for (size_t i = 0; i < ranked.size() && i < k; ++i) {
    if (positives.contains(ranked[i])) return 1.0;
  }
  return 0.0;
}

double coverage_at_k(const std::vector<std::string>& ranked, const Condition& condition,
                     const Catalog& catalog, size_t k) {
  if (k < 1) fail(ErrorKind::invalid_argument, "coverage_at_k: k must be >= 1");
  size_t satisfied = 0;
  for (size_t i = 0; i < ranked.size() && i < k; ++i) {
    if (eval(catalog.at(ranked[i]), condition)) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(k);
}

double EvalReport::value_of(std::string_view task) const {
  auto it = tasks.find(std::string(task));
  if (it == tasks.end()) {
    fail(ErrorKind::invalid_argument, "report has no task '" + std::string(task) + "'");
  }
  return it->second.value;
}

EvalReport evaluate(const Dataset& test_split, const Catalog& catalog, const EncoderModel& model,
                    size_t k, const std::string& ood_label, const std::string& label) {
  if (k < 1) fail(ErrorKind::invalid_argument, "evaluate: k must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  ItemIndex index = build_index(catalog, model);

  // Per-sample values first, summed in sample order afterwards, so
  // aggregation stays independent of any evaluation order.
  std::map<std::string, std::vector<double>> per_task;
  for (const auto& s : test_split.samples) {
    std::vector<float> q = embed(s.query, model, model.tokenizer.max_query_tokens);
    std::vector<ScoredItem> top = topk(index, q, k);
    std::vector<std::string> ranked;
    ranked.reserve(top.size());
    for (const auto& r : top) ranked.push_back(r.item_id);

    double value;
    if (is_coverage_task(s.task)) {
      if (!s.condition) {
        fail(ErrorKind::validation,
             "evaluate: coverage sample " + s.sample_id + " lacks a condition");
      }
      value = coverage_at_k(ranked, *s.condition, catalog, k);
    } else {
      std::set<std::string> positives(s.positives.begin(), s.positives.end());
      value = hit_at_k(ranked, positives, k);
    }
    per_task[std::string(task_name(s.task))].push_back(value);
  }

  EvalReport report;
  report.label = label.empty() ? "model" : label;
  report.domain = catalog.name;
  report.ood_label = ood_label;
  report.k = k;
  report.dataset_hash = dataset_hash(test_split);
  report.model_fingerprint = index.model_fingerprint;
  report.seed = test_split.seed;
  for (const auto& [task, values] : per_task) {
    TaskResult r;
    r.metric = is_coverage_task(task_from_name(task)) ? "coverage@" + std::to_string(k)
                                                      : "hit@" + std::to_string(k);
    double sum = 0.0;
    for (double v : values) sum += v;
    r.value = sum / static_cast<double>(values.size());
    r.samples = values.size();
    report.tasks[task] = r;
  }
  const auto end = std::chrono::steady_clock::now();
  report.wall_clock_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  return report;
}

Json report_to_json(const EvalReport& report, bool include_timings) {
  Json j;
  j["_meta"] = make_meta(report.seed, Json());
  j["label"] = report.label;
  j["domain"] = report.domain;
  j["ood_label"] = report.ood_label;
  j["k"] = report.k;
  j["dataset_hash"] = report.dataset_hash;
  j["model_fingerprint"] = report.model_fingerprint;
  j["seed"] = report.seed;
  if (include_timings) j["wall_clock_ms"] = report.wall_clock_ms;
  Json tasks = Json::object();
  for (const auto& [task, r] : report.tasks) {
    Json t;
    t["metric"] = r.metric;
    t["value"] = r.value;
    t["samples"] = r.samples;
    tasks[task] = t;
  }
  j["tasks"] = tasks;
  return j;
}

EvalReport report_from_json(const Json& j) {
  EvalReport report;
  report.label = j.value("label", "");
  report.domain = j.value("domain", "");
  report.ood_label = j.value("ood_label", "");
  report.k = j.value("k", size_t{5});
  report.dataset_hash = j.value("dataset_hash", "");
  report.model_fingerprint = j.value("model_fingerprint", "");
  report.seed = j.value("seed", uint64_t{0});
  report.wall_clock_ms = j.value("wall_clock_ms", int64_t{0});
  if (!j.contains("tasks") || !j["tasks"].is_object()) {
    fail(ErrorKind::parse, "report: missing tasks object");
  }
  for (const auto& [task, t] : j["tasks"].items()) {
    TaskResult r;
    r.metric = t.value("metric", "");
    r.value = t.value("value", 0.0);
    r.samples = t.value("samples", size_t{0});
    if (r.value < 0.0 || r.value > 1.0) {
      fail(ErrorKind::validation, "report: value out of [0,1] for task " + task);
    }
    report.tasks[task] = r;
  }
  return report;
}

void save_report(const EvalReport& report, const std::string& path, bool include_timings) {
  write_file(path, report_to_json(report, include_timings).dump(2) + "\n");
}

EvalReport load_report(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
  return report_from_json(j);
}

std::string render_report_table(const std::vector<EvalReport>& reports) {
  if (reports.empty()) return "(no reports)\n";

  std::vector<std::string> columns;
  for (const auto& r : reports) {
    std::string name = r.label + "@" + r.domain;
    if (!r.ood_label.empty()) name += " (ood:" + r.ood_label + ")";
    columns.push_back(name);
  }

  // Row order: the canonical task order, then anything else alphabetically.
  std::vector<std::string> rows;
  for (Task t : kAllTasks) {
    std::string name(task_name(t));
    for (const auto& r : reports) {
      if (r.tasks.contains(name)) {
        rows.push_back(name);
        break;
      }
    }
  }
  std::set<std::string> extra;
  for (const auto& r : reports) {
    for (const auto& [task, _] : r.tasks) {
      if (std::find(rows.begin(), rows.end(), task) == rows.end()) extra.insert(task);
    }
  }
  rows.insert(rows.end(), extra.begin(), extra.end());

  size_t head = 18;
  std::ostringstream os;
  os << std::left;
  os.width(static_cast<std::streamsize>(head));
  os << "task";
  for (const auto& c : columns) {
    os << "  ";
    os.width(static_cast<std::streamsize>(std::max<size_t>(c.size(), 12)));
    os << c;
  }
  os << '\n';
  for (const auto& row : rows) {
    std::string metric;
    for (const auto& r : reports) {
      auto it = r.tasks.find(row);
      if (it != r.tasks.end()) {
        metric = it->second.metric;
        break;
      }
    }
    os.width(static_cast<std::streamsize>(head));
    os << (row + " " + metric);
    for (size_t c = 0; c < reports.size(); ++c) {
      os << "  ";
      auto it = reports[c].tasks.find(row);
      char cell[32];
      if (it != reports[c].tasks.end()) {
        std::snprintf(cell, sizeof(cell), "%.4f", it->second.value);
      } else {
        std::snprintf(cell, sizeof(cell), "-");
      }
      os.width(static_cast<std::streamsize>(std::max<size_t>(columns[c].size(), 12)));
      os << cell;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace forge
