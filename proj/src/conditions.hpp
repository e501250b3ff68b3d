#pragma once

// Structured predicates over item attributes. A Condition is the exact,
// machine-checkable semantics behind a generated query: Coverage@K ground
// truth, true-negative mining, and the source for rendered query phrases.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "catalog.hpp"
#include "jsonl.hpp"

namespace forge {

enum class CmpOp { lt, le, gt, ge, eq };

std::string_view cmp_op_name(CmpOp op);     // "<", "<=", ">", ">=", "="
CmpOp cmp_op_from_name(std::string_view s);

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

struct HasCategory {
  std::string field;
  std::string value;  // lowercase
};

struct TextEquals {
  std::string field;
  std::string value;  // lowercase
};

struct NumCmp {
  std::string field;
  CmpOp op = CmpOp::lt;
  double threshold = 0.0;
};

struct DateCmp {
  std::string field;
  CmpOp op = CmpOp::ge;
  int64_t threshold = 0;  // days since epoch
};

struct Not {
  ConditionPtr child;
};

struct All {
  std::vector<ConditionPtr> children;  // >= 1
};

struct FuzzyTitle {
  std::string target;       // matched case-insensitively
  size_t max_edit_distance = 2;
};

struct Condition {
  std::variant<HasCategory, TextEquals, NumCmp, DateCmp, Not, All, FuzzyTitle> node;
};

ConditionPtr has_category(std::string field, std::string value);
ConditionPtr text_equals(std::string field, std::string value);
ConditionPtr num_cmp(std::string field, CmpOp op, double threshold);
ConditionPtr date_cmp(std::string field, CmpOp op, int64_t threshold);
ConditionPtr not_of(ConditionPtr child);
ConditionPtr all_of(std::vector<ConditionPtr> children);
ConditionPtr fuzzy_title(std::string target, size_t max_edit_distance = 2);

// Total over valid inputs: missing fields and type mismatches evaluate false.
bool eval(const Item& item, const Condition& cond);
inline bool eval(const Item& item, const ConditionPtr& cond) { return eval(item, *cond); }

// Tagged-tree serialization. Node tags: has_category, text_equals, num_cmp,
// date_cmp, not, all, fuzzy_title.
Json condition_to_json(const Condition& cond);
ConditionPtr condition_from_json(const Json& j);

// --- surface rendering -------------------------------------------------------

// Phrase variants per node kind; "{X}" style slots are filled by the renderer.
struct SurfacePool {
  std::vector<std::string> price_lt;      // slot {X}
  std::vector<std::string> num_generic;   // slots {field} {op} {X}
  std::vector<std::string> date_after;    // slot {Y} (thresholds on Jan 1 render as a year)
  std::vector<std::string> date_on;       // slot {D}
  std::vector<std::string> category;      // slot {V}
  std::vector<std::string> negation;      // slot {V}
  std::vector<std::string> text_field;    // slots {field} {V}
  std::vector<std::string> publisher;     // slot {V}
  std::vector<std::string> fuzzy;         // slot {T}
};

const SurfacePool& default_surface_pool();

// Natural-language phrase for the condition, e.g.
// "shooter games released after 2020 with a price under 10 dollars".
// Presentation only: the recorded semantics of a sample is its AST.
// Deterministic per (cond, seed).
std::string render(const Condition& cond, const SurfacePool& pool, uint64_t seed);
inline std::string render(const ConditionPtr& cond, const SurfacePool& pool, uint64_t seed) {
  return render(*cond, pool, seed);
}

// --- negative mining ---------------------------------------------------------

// Exactly k distinct item ids, uniformly sampled from the eligible pool:
// items outside `excluded` that additionally fail `cond` when it is present.
// For behavior tasks (no condition) callers pass the user's full history as
// `excluded`. Throws Error(insufficient_data) when the pool is smaller than k.
std::vector<std::string> mine_negatives(const Catalog& catalog,
                                        const std::vector<std::string>& excluded,
                                        const ConditionPtr& cond,  // may be null
                                        size_t k, uint64_t seed);

}  // namespace forge
