#include <doctest.h>

#include "oracles.hpp"
#include "symrec/structure.hpp"

using namespace symrec;

namespace {

WordFamily family(const ShiftSpace& space, const std::string& spec) {
  if (spec == "language") return WordFamily(space);
  return WordFamily(space, make_predicate(space, spec));
}

ShiftSpace sgap(std::vector<std::size_t> s) { return ShiftSpace::sgap(GapSet{std::move(s), std::nullopt}); }

}  // namespace

TEST_CASE("specification on the golden mean shift") {
  const auto result = check_w_specification(WordFamily(ShiftSpace::golden_mean()), 2, 8);
  REQUIRE(result.ok());
  CHECK(result.certificate->gap_length == 1);
  CHECK(revalidate(*result.certificate, WordFamily(ShiftSpace::golden_mean())));
  bool zero_glue = true;
  for (const auto& w : result.certificate->witnesses) {
    CHECK(w.gluing.size() <= 1);
    if (w.gluing.size() == 1) zero_glue = zero_glue && w.gluing == Word{0};
  }
  CHECK(zero_glue);
}

TEST_CASE("full shift needs no gluing") {
  const auto result = check_w_specification(WordFamily(ShiftSpace::full(2)), 2, 6);
  REQUIRE(result.ok());
  CHECK(result.certificate->gap_length == 0);
}

TEST_CASE("minimal gap length matches exhaustive search") {
  const auto s2 = sgap({2});
  const auto ones = family(s2, "starts-and-ends-with-1");
  const int expected = oracle::min_gluing_brute(2, 6, 3, [](const oracle::Str& w) {
    return !w.empty() && w.front() == 1 && w.back() == 1 &&
           oracle::sgap_admissible(w, [](std::size_t g) { return g == 2; });
  });
  const auto result = check_w_specification(ones, 3, 6);
  REQUIRE(result.ok());
  CHECK(static_cast<int>(result.certificate->gap_length) == expected);
  CHECK(expected == 2);
  CHECK(revalidate(*result.certificate, ones));

  const int golden = oracle::min_gluing_brute(2, 6, 2, [](const oracle::Str& w) {
    return !w.empty() && oracle::golden_admissible(w);
  });
  CHECK(golden == 1);
}

TEST_CASE("specification failure reports the first uncovered pair") {
  const auto result = check_w_specification(WordFamily(ShiftSpace::golden_mean()), 0, 4);
  REQUIRE_FALSE(result.ok());
  CHECK(result.failure->left == Word{1});
  CHECK(result.failure->right == Word{1});
}

TEST_CASE("free concatenation") {
  CHECK(check_free_concatenation(WordFamily(ShiftSpace::full(2)), 6).holds);
  const auto golden = ShiftSpace::golden_mean();
  const auto ends0 = check_free_concatenation(family(golden, "ends-with-0"), 8);
  CHECK(ends0.holds);
  const auto lang = check_free_concatenation(WordFamily(golden), 8);
  REQUIRE_FALSE(lang.holds);
  CHECK(lang.counterexample->first == Word{1});
  CHECK(lang.counterexample->second == Word{1});
}

TEST_CASE("free concatenation at 2h closes 4-fold products of length h/2") {
  const auto golden = ShiftSpace::golden_mean();
  const auto ends0 = family(golden, "ends-with-0");
  REQUIRE(check_free_concatenation(ends0, 8).holds);
  std::vector<Word> small;
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& w : ends0.words(n)) small.push_back(w);
  }
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small)
        for (const auto& d : small) CHECK(ends0.contains(a + b + c + d));
}

TEST_CASE("mistake profiles") {
  const auto full = mistake_profile(WordFamily(ShiftSpace::full(2)), {1, 2, 4, 6}, 1u << 16);
  for (const auto& s : full.samples) CHECK(s.value == 0);

  const auto golden = ShiftSpace::golden_mean();
  const auto ends0 = mistake_profile(family(golden, "ends-with-0"), {1, 2, 4, 6, 8}, 1u << 16);
  for (const auto& s : ends0.samples) {
    CHECK(s.exact);
    CHECK(s.value <= 1);
    CHECK(s.value <= s.n);
  }
}

TEST_CASE("mistake profile on S-gap words bounded by 1s matches brute force") {
  const auto space = sgap({0, 1});
  const auto fam = family(space, "starts-and-ends-with-1");
  const auto profile = mistake_profile(fam, {6}, 1u << 16);
  auto in_s = [](std::size_t g) { return g <= 1; };
  auto in_f = [&](const oracle::Str& w) {
    return !w.empty() && w.front() == 1 && w.back() == 1 && oracle::sgap_admissible(w, in_s);
  };
  std::vector<oracle::Str> f_words;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& v : oracle::all_words(2, n)) {
      if (in_f(v)) f_words.push_back(v);
    }
  }
  std::size_t worst = 0;
  for (const auto& w : oracle::all_words(2, 6)) {
    if (!oracle::sgap_admissible(w, in_s)) continue;
    std::size_t best = 99;
    for (const auto& v : f_words) {
      std::vector<Symbol> a(v.begin(), v.end()), b(w.begin(), w.end());
      best = std::min(best, edit_distance(Word(a), Word(b)));
    }
    worst = std::max(worst, best);
  }
  REQUIRE(profile.samples.size() == 1);
  CHECK(profile.samples[0].value == worst);
}

TEST_CASE("enlarging F never raises exact mistake values") {
  const auto golden = ShiftSpace::golden_mean();
  const std::vector<std::size_t> lengths{2, 3, 5, 7};
  const auto small = mistake_profile(family(golden, "starts-and-ends-with-0"), lengths, 1u << 16);
  const auto large = mistake_profile(family(golden, "ends-with-0"), lengths, 1u << 16);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    REQUIRE(small.samples[i].exact);
    REQUIRE(large.samples[i].exact);
    CHECK(large.samples[i].value <= small.samples[i].value);
  }
}

TEST_CASE("sampled mistake profile is flagged") {
  const auto profile = mistake_profile(family(ShiftSpace::golden_mean(), "ends-with-0"), {12}, 16);
  REQUIRE(profile.samples.size() == 1);
  CHECK_FALSE(profile.samples[0].exact);
  CHECK(profile.samples[0].words_tested <= 16);
}
