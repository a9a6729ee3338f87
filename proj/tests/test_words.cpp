#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symrec/edit_ball.hpp"
#include "symrec/errors.hpp"
#include "symrec/words.hpp"

using namespace symrec;

namespace {

Word to_word(const oracle::Str& s) {
  std::vector<Symbol> v(s.begin(), s.end());
  return Word(v);
}

Word random_word(std::mt19937_64& rng, std::size_t max_len, int p = 2) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> sym(0, p - 1);
  Word w;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<Symbol>(sym(rng)));
  return w;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(Word::parse("0110") == Word{0, 1, 1, 0});
  CHECK(Word::parse("3,12,0") == Word{3, 12, 0});
  CHECK(Word::parse("").empty());
  CHECK(Word{0, 1, 1}.to_string() == "011");
  CHECK(Word{3, 12}.to_string() == "3,12");
  nlohmann::json j = Word{1, 0};
  CHECK(j == nlohmann::json::array({1, 0}));
  CHECK(nlohmann::json("101").get<Word>() == Word{1, 0, 1});
  CHECK(nlohmann::json::array({2, 7}).get<Word>() == Word{2, 7});
}

TEST_CASE("common prefix length") {
  CHECK(common_prefix_length(Word::parse("101").symbols(), Word::parse("101").symbols()) == 3);
  CHECK(common_prefix_length(Word::parse("101").symbols(), Word::parse("110").symbols()) == 1);
  CHECK(common_prefix_length(Word::parse("0110").symbols(), Word::parse("0111").symbols()) == 3);
  CHECK(common_prefix_length(Word::parse("01").symbols(), Word::parse("0111").symbols()) == 2);
}

TEST_CASE("shift metric") {
  const Word u = Word::parse("01101");
  CHECK(shift_metric(u.symbols(), u.symbols(), StreamRelation::identical) == 0.0);
  CHECK(shift_metric(Word::parse("0").symbols(), Word::parse("1").symbols()) == 1.0);
  CHECK(shift_metric(Word::parse("01100").symbols(), Word::parse("01101").symbols()) ==
        doctest::Approx(0.0183156).epsilon(1e-6));
}

TEST_CASE("shift metric below e^-n exactly when the first n symbols agree") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Word u = random_word(rng, 8), v = random_word(rng, 8);
    const std::size_t m = std::min(u.size(), v.size());
    for (std::size_t n = 0; n <= m; ++n) {
      const bool agree = u.prefix(n) == v.prefix(n);
      CHECK((shift_metric(u.symbols(), v.symbols()) <= std::exp(-static_cast<double>(n))) == agree);
    }
  }
}

TEST_CASE("edit distance examples") {
  CHECK(edit_distance(Word::parse("11"), Word::parse("11")) == 0);
  CHECK(edit_distance(Word::parse("0110"), Word::parse("010")) == 1);
  CHECK(edit_distance(Word{}, Word::parse("101")) == 3);
}

TEST_CASE("edit distance is a metric with length bounds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const Word a = random_word(rng, 9, 3), b = random_word(rng, 9, 3), c = random_word(rng, 9, 3);
    const auto ab = edit_distance(a, b), ba = edit_distance(b, a);
    CHECK(ab == ba);
    CHECK((ab == 0) == (a == b));
    CHECK(ab <= edit_distance(a, c) + edit_distance(c, b));
    const std::size_t gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    CHECK(ab >= gap);
    CHECK(ab <= std::max(a.size(), b.size()));
  }
}

TEST_CASE("edit distance matches breadth-first edit search on short words") {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t m = 0; m <= 4; ++m) {
      for (const auto& v : oracle::all_words(2, n)) {
        for (const auto& w : oracle::all_words(2, m)) {
          CHECK(edit_distance(to_word(v), to_word(w)) ==
                static_cast<std::size_t>(oracle::edit_distance_bfs(v, w)));
        }
      }
    }
  }
}

TEST_CASE("edit ball census") {
  const auto full2 = ShiftSpace::full(2);
  const auto golden = ShiftSpace::golden_mean();
  CHECK(edit_ball_count(full2, Word::parse("00"), 0.0).count == 1);
  CHECK(edit_ball_count(full2, Word::parse("00"), 0.5).count == 8);
  // {00, 10, 01, 0, 000, 100, 010, 001}: none contains 11, so all eight stay.
  CHECK(edit_ball_count(golden, Word::parse("00"), 0.5).count == 8);
  CHECK(edit_ball_count(golden, Word::parse("00"), 0.5).radius == 1);
  CHECK_THROWS_AS(edit_ball_count(golden, Word::parse("11"), 0.5), ConfigError);
}

TEST_CASE("edit ball count matches enumeration") {
  const auto golden = ShiftSpace::golden_mean();
  const auto full2 = ShiftSpace::full(2);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& c : oracle::all_words(2, n)) {
      for (double delta : {0.0, 0.25, 0.5}) {
        const std::size_t r = edit_radius(n, delta);
        CHECK(edit_ball_count(full2, to_word(c), delta).count ==
              oracle::edit_ball_brute(c, r, 2, [](const oracle::Str&) { return true; }));
        if (oracle::golden_admissible(c)) {
          CHECK(edit_ball_count(golden, to_word(c), delta).count ==
                oracle::edit_ball_brute(c, r, 2, oracle::golden_admissible));
        }
      }
    }
  }
}

TEST_CASE("edit ball count is nondecreasing in delta") {
  const auto golden = ShiftSpace::golden_mean();
  for (const auto& c : oracle::all_words(2, 7)) {
    if (!oracle::golden_admissible(c)) continue;
    std::uint64_t prev = 0;
    for (double delta : {0.0, 0.1, 0.25, 0.5, 0.75}) {
      const auto count = edit_ball_count(golden, to_word(c), delta).count;
      CHECK(count >= 1);
      CHECK(count >= prev);
      prev = count;
    }
  }
}

TEST_CASE("fitted edit ball constant bounds its census") {
  CHECK(edit_ball_log_bound(4, 0.0, 1.0) == doctest::Approx(std::log(4.0)));
  const auto fit = fit_edit_ball_grid(ShiftSpace::full(2), 8, {0.1, 0.25, 0.5});
  CHECK(fit.constant > 0);
  for (const auto& c : fit.censuses) {
    CHECK(std::log(static_cast<double>(c.count)) <=
          edit_ball_log_bound(c.center.size(), c.radius_fraction, fit.constant) + 1e-9);
  }
}
