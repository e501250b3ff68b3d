#pragma once

// Shared low-level helpers: error type, deterministic RNG, hashing,
// string/date/number formatting, edit distance.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

enum class ErrorKind {
  invalid_argument,
  io,
  parse,
  validation,
  insufficient_data,
  config,
  network,      // transport failure
  http_status,  // reachable endpoint, non-2xx reply
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Deterministic RNG. All sampling goes through these helpers instead of
// std::*_distribution, whose outputs are not pinned by the standard.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int64_t uniform(int64_t lo, int64_t hi);

  // Uniform in [0, 1).
  double real();

  // Bernoulli with probability p.
  bool chance(double p) { return real() < p; }

  // Uniform index in [0, n). Requires n > 0.
  size_t index(size_t n) { return static_cast<size_t>(uniform(0, static_cast<int64_t>(n) - 1)); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  // Fisher-Yates, iterating from the back so results are stable.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a over raw bytes.
uint64_t fnv1a(std::string_view bytes, uint64_t seed = 14695981039346656037ull);
std::string hash_hex(uint64_t h);

// Order-sensitive 64-bit mix used for per-sample seeds.
uint64_t mix_seed(uint64_t a, uint64_t b);
uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// "a" | "a and b" | "a, b, and c"
std::string join_natural(const std::vector<std::string>& parts);

size_t levenshtein(std::string_view a, std::string_view b);

// Calendar dates are carried as days since 1970-01-01 (can be negative).
int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(int64_t days, int& year, unsigned& month, unsigned& day);

// Strict "YYYY-MM-DD"; throws Error(parse) on malformed input.
int64_t parse_iso_date(std::string_view s);
std::string format_iso_date(int64_t days);

// Lowercase long form used in query text, e.g. "march 19, 2021".
std::string format_long_date(int64_t days);

// Decimal rendering with trailing zeros trimmed: 10.0 -> "10", 9.99 -> "9.99".
std::string format_number(double value);

// Global worker cap (CLI --jobs). Only cooperative consumers look at it.
void set_max_jobs(int n);
int max_jobs();

}  // namespace forge
