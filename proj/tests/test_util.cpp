#include "util.hpp"

#include <functional>

#include "doctest.h"

using namespace forge;

namespace {

// Textbook recursion, memo-free, for cross-checking the rolling-array version.
size_t lev_naive(std::string_view a, std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  size_t skip = lev_naive(a.substr(1), b.substr(1)) + (a[0] != b[0]);
  size_t del = lev_naive(a.substr(1), b) + 1;
  size_t ins = lev_naive(a, b.substr(1)) + 1;
  return std::min({skip, del, ins});
}

}  // namespace

TEST_CASE("levenshtein basics") {
  CHECK(levenshtein("", "") == 0);
  CHECK(levenshtein("abc", "") == 3);
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("fortnite", "fortnte") == 1);
  CHECK(levenshtein("halo", "half") == 1);
}

TEST_CASE("levenshtein matches naive recursion on random short strings") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    auto make = [&] {
      std::string s;
      size_t len = rng.index(7);
      for (size_t j = 0; j < len; ++j) s += static_cast<char>('a' + rng.uniform(0, 3));
      return s;
    };
    std::string a = make(), b = make();
    CHECK(levenshtein(a, b) == lev_naive(a, b));
  }
}

TEST_CASE("iso dates round-trip") {
  CHECK(parse_iso_date("1970-01-01") == 0);
  CHECK(parse_iso_date("2021-01-01") == 18628);
  CHECK(format_iso_date(18628) == "2021-01-01");
  CHECK(parse_iso_date("2020-02-29") == parse_iso_date("2020-03-01") - 1);

  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    int64_t days = rng.uniform(-40000, 40000);
    CHECK(parse_iso_date(format_iso_date(days)) == days);
  }
}

TEST_CASE("iso date rejects malformed input") {
  for (const char* bad : {"2021-13-01", "2021-02-30", "2021/01/01", "21-01-01", "2021-00-10", ""}) {
    CHECK_THROWS_AS(parse_iso_date(bad), Error);
  }
}

TEST_CASE("long date format") {
  CHECK(format_long_date(parse_iso_date("2021-03-19")) == "march 19, 2021");
  CHECK(format_long_date(parse_iso_date("2016-12-01")) == "december 1, 2016");
}

TEST_CASE("number formatting trims zeros") {
  CHECK(format_number(10.0) == "10");
  CHECK(format_number(9.99) == "9.99");
  CHECK(format_number(59.9) == "59.9");
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("join_natural") {
  CHECK(join_natural({}) == "");
  CHECK(join_natural({"a"}) == "a");
  CHECK(join_natural({"a", "b"}) == "a and b");
  CHECK(join_natural({"a", "b", "c"}) == "a, b, and c");
}

TEST_CASE("rng determinism and bounds") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    int64_t x = a.uniform(-5, 17);
    CHECK(x == b.uniform(-5, 17));
    CHECK(x >= -5);
    CHECK(x <= 17);
  }
  Rng c(1);
  for (int i = 0; i < 100; ++i) {
    double r = c.real();
    CHECK(r >= 0.0);
    CHECK(r < 1.0);
  }
}

TEST_CASE("mix_seed separates arguments") {
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(1, 2, 3) != mix_seed(1, 2, 4));
}
