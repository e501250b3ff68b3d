#pragma once

// Item catalogs and user interaction logs: loading, validation, synthesis.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jsonl.hpp"
#include "util.hpp"

namespace forge {

struct TextValue {
  std::string value;
  bool operator==(const TextValue&) const = default;
};

struct NumberValue {
  double value = 0.0;
  std::string unit;  // e.g. "USD"; may be empty
  bool operator==(const NumberValue&) const = default;
};

struct DateValue {
  int64_t days = 0;  // days since 1970-01-01
  bool operator==(const DateValue&) const = default;
};

struct CategoriesValue {
  std::vector<std::string> values;  // lowercase, deduplicated, input order
  bool operator==(const CategoriesValue&) const = default;
};

using FieldValue = std::variant<TextValue, NumberValue, DateValue, CategoriesValue>;

struct Field {
  std::string name;  // lowercase
  FieldValue value;
  bool operator==(const Field&) const = default;
};

struct Item {
  std::string id;
  std::string title;
  std::string description;
  std::vector<Field> fields;  // ordered, names unique

  const FieldValue* find_field(std::string_view name) const;
  const CategoriesValue* categories(std::string_view name) const;
  bool operator==(const Item&) const = default;
};

struct Catalog {
  std::string name;  // domain label, e.g. "synth-42"
  std::vector<Item> items;

  const Item* find(std::string_view id) const;
  const Item& at(std::string_view id) const;  // throws validation error
  size_t index_of(std::string_view id) const;
  bool operator==(const Catalog&) const = default;
};

struct Event {
  std::string item_id;
  int64_t timestamp = 0;
  bool operator==(const Event&) const = default;
};

struct UserHistory {
  std::string user_id;
  std::vector<Event> events;  // non-decreasing timestamps
  bool short_history = false;  // fewer than 2 events; retained but flagged
  bool operator==(const UserHistory&) const = default;
};

struct InteractionLog {
  std::vector<UserHistory> users;
  size_t event_count() const;
  bool operator==(const InteractionLog&) const = default;
};

// --- file format -----------------------------------------------------------

Catalog load_catalog(const std::string& path);
void save_catalog(const Catalog& cat, const std::string& path, uint64_t seed = 0);

InteractionLog load_interactions(const std::string& path, const Catalog& cat);
void save_interactions(const InteractionLog& log, const std::string& path, uint64_t seed = 0);

// JSON record forms (shared by files and in-memory hashing).
Json item_to_json(const Item& item);
Item item_from_json(const Json& j, size_t lineno);
Json user_to_json(const UserHistory& u);

// Content hash over the canonical serialized records.
std::string catalog_hash(const Catalog& cat);
std::string interactions_hash(const InteractionLog& log);

// Full validation used by both loaders and synth. Throws Error(validation).
void validate_catalog(const Catalog& cat);
void validate_interactions(const InteractionLog& log, const Catalog& cat);

// --- synthesis -------------------------------------------------------------

// Deterministic synthetic domain: every item carries price (number, USD),
// release date (date), genre + tags (categories) and publisher (text); user
// histories are genre-biased so co-occurrence structure exists.
// Requires n_items >= 10, n_users >= 1. Same arguments, same bytes out.
struct SynthResult {
  Catalog catalog;
  InteractionLog interactions;
};

SynthResult synth_catalog(uint64_t seed, size_t n_items, size_t n_users);

}  // namespace forge
