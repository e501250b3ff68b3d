#include "conditions.hpp"

#include <algorithm>
#include <unordered_set>

namespace forge {

std::string_view cmp_op_name(CmpOp op) {
  switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    case CmpOp::eq: return "=";
  }
  fail(ErrorKind::internal, "bad CmpOp");
}

CmpOp cmp_op_from_name(std::string_view s) {
  if (s == "<") return CmpOp::lt;
  if (s == "<=") return CmpOp::le;
  if (s == ">") return CmpOp::gt;
  if (s == ">=") return CmpOp::ge;
  if (s == "=") return CmpOp::eq;
  fail(ErrorKind::parse, "unknown comparison op '" + std::string(s) + "'");
}

template <typename T>
static ConditionPtr make_node(T node) {
  return std::make_shared<Condition>(Condition{std::move(node)});
}

ConditionPtr has_category(std::string field, std::string value) {
  return make_node(HasCategory{to_lower(field), to_lower(value)});
}

ConditionPtr text_equals(std::string field, std::string value) {
  return make_node(TextEquals{to_lower(field), to_lower(value)});
}

ConditionPtr num_cmp(std::string field, CmpOp op, double threshold) {
  if (!std::isfinite(threshold)) fail(ErrorKind::invalid_argument, "num_cmp: non-finite threshold");
  return make_node(NumCmp{to_lower(field), op, threshold});
}

ConditionPtr date_cmp(std::string field, CmpOp op, int64_t threshold) {
  return make_node(DateCmp{to_lower(field), op, threshold});
}

ConditionPtr not_of(ConditionPtr child) {
  if (!child) fail(ErrorKind::invalid_argument, "not_of: null child");
  return make_node(Not{std::move(child)});
}

ConditionPtr all_of(std::vector<ConditionPtr> children) {
  if (children.empty()) fail(ErrorKind::invalid_argument, "all_of: needs at least one child");
  for (const auto& c : children) {
    if (!c) fail(ErrorKind::invalid_argument, "all_of: null child");
  }
  return make_node(All{std::move(children)});
}

ConditionPtr fuzzy_title(std::string target, size_t max_edit_distance) {
  return make_node(FuzzyTitle{std::move(target), max_edit_distance});
}

template <typename Op>
static bool compare(CmpOp op, Op lhs, Op rhs) {
  switch (op) {
    case CmpOp::lt: return lhs < rhs;
    case CmpOp::le: return lhs <= rhs;
    case CmpOp::gt: return lhs > rhs;
    case CmpOp::ge: return lhs >= rhs;
    case CmpOp::eq: return lhs == rhs;
  }
  return false;
}

bool eval(const Item& item, const Condition& cond) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, HasCategory>) {
          const auto* c = item.categories(node.field);
          if (!c) return false;
          return std::find(c->values.begin(), c->values.end(), node.value) != c->values.end();
        } else if constexpr (std::is_same_v<T, TextEquals>) {
          const FieldValue* v = item.find_field(node.field);
          if (!v) return false;
          const auto* t = std::get_if<TextValue>(v);
          return t && to_lower(t->value) == node.value;
        } else if constexpr (std::is_same_v<T, NumCmp>) {
          const FieldValue* v = item.find_field(node.field);
          if (!v) return false;
          const auto* n = std::get_if<NumberValue>(v);
          return n && compare(node.op, n->value, node.threshold);
        } else if constexpr (std::is_same_v<T, DateCmp>) {
          const FieldValue* v = item.find_field(node.field);
          if (!v) return false;
          const auto* d = std::get_if<DateValue>(v);
          return d && compare(node.op, d->days, node.threshold);
        } else if constexpr (std::is_same_v<T, Not>) {
          return !eval(item, *node.child);
        } else if constexpr (std::is_same_v<T, All>) {
          for (const auto& c : node.children) {
            if (!eval(item, *c)) return false;
          }
          return true;
        } else {
          static_assert(std::is_same_v<T, FuzzyTitle>);
          return levenshtein(to_lower(item.title), to_lower(node.target)) <= node.max_edit_distance;
        }
      },
      cond.node);
}

Json condition_to_json(const Condition& cond) {
  return std::visit(
      [&](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        Json j;
        if constexpr (std::is_same_v<T, HasCategory>) {
          j["type"] = "has_category";
          j["field"] = node.field;
          j["value"] = node.value;
        } else if constexpr (std::is_same_v<T, TextEquals>) {
          j["type"] = "text_equals";
          j["field"] = node.field;
          j["value"] = node.value;
        } else if constexpr (std::is_same_v<T, NumCmp>) {
          j["type"] = "num_cmp";
          j["field"] = node.field;
          j["op"] = std::string(cmp_op_name(node.op));
          j["threshold"] = node.threshold;
        } else if constexpr (std::is_same_v<T, DateCmp>) {
          j["type"] = "date_cmp";
          j["field"] = node.field;
          j["op"] = std::string(cmp_op_name(node.op));
          j["threshold"] = node.threshold;
        } else if constexpr (std::is_same_v<T, Not>) {
          j["type"] = "not";
          j["child"] = condition_to_json(*node.child);
        } else if constexpr (std::is_same_v<T, All>) {
          j["type"] = "all";
          Json kids = Json::array();
          for (const auto& c : node.children) kids.push_back(condition_to_json(*c));
          j["children"] = std::move(kids);
        } else {
          static_assert(std::is_same_v<T, FuzzyTitle>);
          j["type"] = "fuzzy_title";
          j["target"] = node.target;
          j["max_edit_distance"] = node.max_edit_distance;
        }
        return j;
      },
      cond.node);
}

ConditionPtr condition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) {
    fail(ErrorKind::parse, "condition node must be an object with a type tag");
  }
  std::string type = j["type"].get<std::string>();
  if (type == "has_category") return has_category(j["field"], j["value"]);
  if (type == "text_equals") return text_equals(j["field"], j["value"]);
  if (type == "num_cmp") {
    return num_cmp(j["field"], cmp_op_from_name(j["op"].get<std::string>()),
                   j["threshold"].get<double>());
  }
  if (type == "date_cmp") {
    return date_cmp(j["field"], cmp_op_from_name(j["op"].get<std::string>()),
                    j["threshold"].get<int64_t>());
  }
  if (type == "not") return not_of(condition_from_json(j["child"]));
  if (type == "all") {
    std::vector<ConditionPtr> kids;
    for (const auto& c : j["children"]) kids.push_back(condition_from_json(c));
    return all_of(std::move(kids));
  }
  if (type == "fuzzy_title") {
    return fuzzy_title(j["target"].get<std::string>(), j["max_edit_distance"].get<size_t>());
  }
  fail(ErrorKind::parse, "unknown condition node tag '" + type + "'");
}

// --- rendering -----------------------------------------------------------------

const SurfacePool& default_surface_pool() {
  static const SurfacePool pool = {
      // price_lt
      {"price under {X} dollars", "price below {X} dollars", "costing less than {X} dollars"},
      // num_generic
      {"{field} {op} {X}"},
      // date_after
      {"released after {Y}", "that came out after {Y}", "newer than {Y}"},
      // date_on
      {"released on {D}"},
      // category
      {"{V}"},
      // negation
      {"not {V}", "without {V}"},
      // text_field
      {"with {field} {V}"},
      // publisher
      {"published by {V}", "from {V}"},
      // fuzzy
      {"named something like {T}"},
  };
  return pool;
}

namespace {

std::string fill(std::string tpl, std::string_view slot, const std::string& value) {
  std::string key = "{" + std::string(slot) + "}";
  size_t pos;
  while ((pos = tpl.find(key)) != std::string::npos) tpl.replace(pos, key.size(), value);
  return tpl;
}

const std::string& pick_variant(const std::vector<std::string>& pool, const char* kind, Rng& rng) {
  if (pool.empty()) {
    fail(ErrorKind::invalid_argument,
         std::string("render: no surface template for node kind '") + kind + "'");
  }
  return pool[rng.index(pool.size())];
}

// Jan 1 thresholds on a >= comparison read as "after <previous year>".
bool year_boundary(int64_t days, int& year_out) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  if (m == 1 && d == 1) {
    year_out = y - 1;
    return true;
  }
  return false;
}

struct Fragments {
  std::vector<std::string> heads;      // category adjectives
  std::vector<std::string> dates;      // "released after 2020"
  std::vector<std::string> numerics;   // "a price under 10 dollars"
  std::vector<std::string> negations;  // "not made for kids"
  std::vector<std::string> texts;      // "published by prison games"
  std::vector<std::string> fuzzies;    // "named something like halo"
};

void collect(const Condition& cond, const SurfacePool& pool, Rng& rng, Fragments& out,
             bool negated = false) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, HasCategory>) {
          if (negated) {
            out.negations.push_back(fill(pick_variant(pool.negation, "not", rng), "V", node.value));
          } else {
            out.heads.push_back(fill(pick_variant(pool.category, "has_category", rng), "V", node.value));
          }
        } else if constexpr (std::is_same_v<T, TextEquals>) {
          std::string frag;
          if (node.field == "publisher") {
            frag = fill(pick_variant(pool.publisher, "text_equals", rng), "V", node.value);
          } else {
            frag = fill(fill(pick_variant(pool.text_field, "text_equals", rng), "field", node.field),
                        "V", node.value);
          }
          if (negated) frag = "not " + frag;
          out.texts.push_back(std::move(frag));
        } else if constexpr (std::is_same_v<T, NumCmp>) {
          std::string frag;
          if (node.field == "price" && node.op == CmpOp::lt) {
            frag = fill(pick_variant(pool.price_lt, "num_cmp", rng), "X", format_number(node.threshold));
          } else {
            frag = pick_variant(pool.num_generic, "num_cmp", rng);
            frag = fill(frag, "field", node.field);
            frag = fill(frag, "op", std::string(cmp_op_name(node.op)));
            frag = fill(frag, "X", format_number(node.threshold));
          }
          if (negated) frag = "not " + frag;
          out.numerics.push_back(std::move(frag));
        } else if constexpr (std::is_same_v<T, DateCmp>) {
          std::string frag;
          int year;
          if (node.op == CmpOp::ge && year_boundary(node.threshold, year)) {
            frag = fill(pick_variant(pool.date_after, "date_cmp", rng), "Y", std::to_string(year));
          } else if (node.op == CmpOp::eq) {
            frag = fill(pick_variant(pool.date_on, "date_cmp", rng), "D",
                        format_long_date(node.threshold));
          } else {
            frag = "with " + node.field + " " + std::string(cmp_op_name(node.op)) + " " +
                   format_long_date(node.threshold);
          }
          if (negated) frag = "not " + frag;
          out.dates.push_back(std::move(frag));
        } else if constexpr (std::is_same_v<T, Not>) {
          collect(*node.child, pool, rng, out, !negated);
        } else if constexpr (std::is_same_v<T, All>) {
          for (const auto& c : node.children) collect(*c, pool, rng, out, negated);
        } else {
          static_assert(std::is_same_v<T, FuzzyTitle>);
          std::string frag = fill(pick_variant(pool.fuzzy, "fuzzy_title", rng), "T", node.target);
          if (negated) frag = "not " + frag;
          out.fuzzies.push_back(std::move(frag));
        }
      },
      cond.node);
}

}  // namespace

std::string render(const Condition& cond, const SurfacePool& pool, uint64_t seed) {
  Rng rng(mix_seed(seed, 0x5A2FAull));
  Fragments f;
  collect(cond, pool, rng, f);

  // Atomic nodes (including Not over an atomic) render as a bare fragment;
  // only conjunctions compose into a full "... games ..." noun phrase.
  if (!std::holds_alternative<All>(cond.node)) {
    for (const auto* group : {&f.heads, &f.dates, &f.numerics, &f.negations, &f.texts, &f.fuzzies}) {
      if (!group->empty()) return group->front();
    }
  }

  std::string out;
  for (const auto& h : f.heads) out += h + " ";
  out += "games";
  for (const auto& d : f.dates) out += " " + d;
  for (const auto& n : f.numerics) {
    // "price ..." fragments need the connective; others read as clauses.
    out += n.rfind("price", 0) == 0 ? " with a " + n : " " + n;
  }
  for (const auto& t : f.texts) out += " " + t;
  for (const auto& z : f.fuzzies) out += " " + z;
  // Negated phrases go last so their scope cannot swallow later fragments.
  if (!f.negations.empty()) out += " but " + join_natural(f.negations);
  return out;
}

// --- negative mining -------------------------------------------------------------

std::vector<std::string> mine_negatives(const Catalog& catalog,
                                        const std::vector<std::string>& excluded,
                                        const ConditionPtr& cond, size_t k, uint64_t seed) {
  std::unordered_set<std::string_view> excl;
  for (const auto& id : excluded) excl.insert(id);

  std::vector<size_t> eligible;
  for (size_t i = 0; i < catalog.items.size(); ++i) {
    const Item& item = catalog.items[i];
    if (excl.contains(item.id)) continue;
    if (cond && eval(item, *cond)) continue;
    eligible.push_back(i);
  }
  if (eligible.size() < k) {
    fail(ErrorKind::insufficient_data,
         "insufficient negatives: need " + std::to_string(k) + ", eligible pool has " +
             std::to_string(eligible.size()));
  }

  Rng rng(mix_seed(seed, 0x7E6A71F5ull));
  std::vector<std::string> out;
  out.reserve(k);
  // Partial Fisher-Yates over the eligible pool.
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + rng.index(eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
    out.push_back(catalog.items[eligible[i]].id);
  }
  return out;
}

}  // namespace forge
