#pragma once

// Generation of the ten-task fine-tuning/test dataset: template
// instantiation, fine-grained attribute sampling, misspelling mutation,
// condition construction and true-negative attachment.

#include <array>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "conditions.hpp"
#include "llm.hpp"
#include "templates.hpp"

namespace forge {

struct QuerySample {
  std::string sample_id;
  Task task = Task::UH2I;
  Split split = Split::train;
  std::string query;
  std::vector<std::string> positives;  // non-empty
  std::vector<std::string> negatives;  // exactly 7, disjoint from positives
  ConditionPtr condition;              // present iff is_condition_task(task)
  std::string template_id;
  uint64_t seed = 0;  // per-sample seed, reproducible in isolation
};

struct Dataset {
  std::vector<QuerySample> samples;
  uint64_t seed = 0;  // global generation seed
  std::string catalog_hash;
  std::string templates_hash;
};

struct MixConfig {
  size_t train_total = 1200;
  size_t test_total = 0;  // 0 means train_total / 3
  // Task order follows kAllTasks. Defaults mirror the source ratios:
  // UH2I 1/3, I2I 1/6, the remaining eight tasks 1/16 each.
  std::array<double, kTaskCount> fractions{};

  static MixConfig defaults(size_t train_total = 1200);
  void validate() const;  // fractions must sum to 1 within 1e-9
  size_t effective_test_total() const;
  // Largest-remainder apportionment; every count is within 1 of its target.
  std::array<size_t, kTaskCount> counts(size_t total) const;
};

// Random 1-2 character mutation of `name` (add/remove/replace). The result
// differs from `name`, has edit distance 1 or 2 (2 only for names of length
// >= 5), and collides with no catalog title case-insensitively. Collisions
// reseed and retry, at most 16 times.
std::string misspell(const std::string& name, uint64_t seed, const Catalog& catalog);
std::string misspell(const std::string& name, uint64_t seed,
                     const std::set<std::string>& lowercase_titles);

enum class AttrMode { full, sparse };

struct AttributeDraw {
  std::string field;
  std::string rendered;                  // value text as it appears in the query
  std::vector<ConditionPtr> predicates;  // exact semantics of this draw
};

// Attribute sampling for FA2I/SA2I/AS2I. Title and description never appear.
// full: every eligible field, multi-valued fields sampled with replacement
// (duplicates permitted), order shuffled. sparse: uniform k in [1, min(3, n)]
// fields. Deterministic per (item, mode, seed).
std::vector<AttributeDraw> sample_attributes(const Item& item, AttrMode mode, uint64_t seed);

std::string attrs_to_text(const std::vector<AttributeDraw>& draws);

class TaskGenerator {
 public:
  TaskGenerator(const Catalog& catalog, const InteractionLog& interactions,
                const TemplatePool& templates, const GenBackend& backend, uint64_t global_seed);

  // One reproducible sample. Internally resamples degenerate draws up to 32
  // times, then throws Error(insufficient_data).
  QuerySample generate_sample(Task task, Split split, size_t sample_index) const;

  // Train and test splits per the mix. Per-task sample indices span train
  // then test, so every sample's seed is unique and split-independent.
  std::pair<Dataset, Dataset> generate_dataset(const MixConfig& mix) const;

  const Catalog& catalog() const { return *catalog_; }

 private:
  struct UserWindow {
    const UserHistory* user;
    std::vector<const Item*> history;  // resolved window items, oldest first
    const Item* positive;
  };

  uint64_t sample_seed(Task task, size_t sample_index) const;
  const Template& pick_template(Task task, Split split, Rng& rng) const;
  UserWindow draw_user_window(Split split, Rng& rng) const;
  std::vector<std::string> full_history_ids(const UserHistory& user) const;
  std::string history_text(const UserWindow& w) const;
  const Item& random_item(Rng& rng) const;

  std::vector<std::string> condition_positives(const ConditionPtr& cond, const Item& source) const;
  size_t count_satisfiers(const ConditionPtr& cond) const;

  ConditionPtr vague_condition(const Item& source, Rng& rng) const;
  ConditionPtr negated_condition(const Item& source, Rng& rng) const;
  ConditionPtr sparse_item_condition(const Item& source, Rng& rng) const;

  const Catalog* catalog_;
  const InteractionLog* interactions_;
  const TemplatePool* templates_;
  const GenBackend* backend_;
  uint64_t global_seed_;

  std::set<std::string> lowercase_titles_;
  std::vector<const UserHistory*> train_users_;  // >= 5 events
  std::vector<const UserHistory*> test_users_;   // >= 4 events
  std::vector<std::vector<std::string>> i2i_positives_;   // per item index, capped
  std::vector<std::vector<std::string>> i2i_exclusions_;  // source + every co-occurring item
  // Category values per field, ranked by item count (desc), value (asc).
  std::map<std::string, std::vector<std::pair<std::string, size_t>>> category_pool_;
  int max_release_year_ = 0;
};

Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);
std::string dataset_hash(const Dataset& ds);
Json sample_to_json(const QuerySample& s);
QuerySample sample_from_json(const Json& j, size_t lineno);

}  // namespace forge
