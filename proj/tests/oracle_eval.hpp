#pragma once

// Test-only condition oracle. Re-implements condition evaluation from
// scratch against the serialized JSON forms of both the condition and the
// item, sharing no code with the library's evaluator: its own date
// conversion, its own edit distance, its own field lookup.

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "json.hpp"

namespace oracle {

using Json = nlohmann::ordered_json;

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Days since 1970-01-01 via the Julian day number (different algorithm from
// the library's civil-date conversion).
inline long long iso_to_days(const std::string& iso) {
  int y = std::stoi(iso.substr(0, 4));
  int m = std::stoi(iso.substr(5, 2));
  int d = std::stoi(iso.substr(8, 2));
  int a = (14 - m) / 12;
  long long jy = y + 4800 - a;
  long long jm = m + 12 * a - 3;
  long long jdn = d + (153 * jm + 2) / 5 + 365 * jy + jy / 4 - jy / 100 + jy / 400 - 32045;
  return jdn - 2440588;  // JDN of 1970-01-01
}

// Plain full-matrix Levenshtein.
inline size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<size_t>> dp(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) dp[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) dp[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = dp[i - 1][j - 1] + (a[i - 1] != b[j - 1]);
      dp[i][j] = std::min({dp[i - 1][j] + 1, dp[i][j - 1] + 1, sub});
    }
  }
  return dp[a.size()][b.size()];
}

inline bool cmp(const std::string& op, double lhs, double rhs) {
  if (op == "<") return lhs < rhs;
  if (op == "<=") return lhs <= rhs;
  if (op == ">") return lhs > rhs;
  if (op == ">=") return lhs >= rhs;
  return lhs == rhs;
}

// item is the catalog line-record form: {id, title, description, fields}.
inline bool eval(const Json& item, const Json& cond) {
  const std::string type = cond.at("type").get<std::string>();
  const Json& fields = item.contains("fields") ? item.at("fields") : Json::object();

  if (type == "all") {
    for (const auto& child : cond.at("children")) {
      if (!eval(item, child)) return false;
    }
    return true;
  }
  if (type == "not") return !eval(item, cond.at("child"));
  if (type == "fuzzy_title") {
    std::string title = lower(item.at("title").get<std::string>());
    std::string target = lower(cond.at("target").get<std::string>());
    return edit_distance(title, target) <= cond.at("max_edit_distance").get<size_t>();
  }

  const std::string field = cond.at("field").get<std::string>();
  if (!fields.contains(field)) return false;
  const Json& fv = fields.at(field);
  const std::string kind = fv.at("type").get<std::string>();

  if (type == "has_category") {
    if (kind != "categories") return false;
    const std::string want = cond.at("value").get<std::string>();
    for (const auto& v : fv.at("value")) {
      if (v.get<std::string>() == want) return true;
    }
    return false;
  }
  if (type == "text_equals") {
    if (kind != "text") return false;
    return lower(fv.at("value").get<std::string>()) == cond.at("value").get<std::string>();
  }
  if (type == "num_cmp") {
    if (kind != "number") return false;
    return cmp(cond.at("op").get<std::string>(), fv.at("value").get<double>(),
               cond.at("threshold").get<double>());
  }
  if (type == "date_cmp") {
    if (kind != "date") return false;
    return cmp(cond.at("op").get<std::string>(),
               static_cast<double>(iso_to_days(fv.at("value").get<std::string>())),
               static_cast<double>(cond.at("threshold").get<long long>()));
  }
  throw std::runtime_error("oracle: unknown node type " + type);
}

}  // namespace oracle
