#include <doctest.h>

#include <cmath>
#include <sstream>

#include "symrec/errors.hpp"
#include "symrec/moran.hpp"

using namespace symrec;

namespace {

const double kLog2 = std::log(2.0);

WordFamily ends0() {
  const auto golden = ShiftSpace::golden_mean();
  return WordFamily(golden, make_predicate(golden, "ends-with-0"));
}

MoranParams full2_psi(double alpha, std::size_t M = 1, std::optional<std::size_t> n1 = std::nullopt) {
  return MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), M, 0.1,
                              PsiFunction::exponential(alpha), n1, kLog2);
}

}  // namespace

TEST_CASE("psi schedule example") {
  const auto params = full2_psi(1, 2, 5);
  const auto schedule = build_schedule(params, 3);
  const auto& s = schedule.stages[0];
  CHECK(s.l == 2);
  CHECK(s.i == 1);
  CHECK(s.n_hat == 4);
  CHECK(s.t_hat == 5);
  CHECK(s.t == 6);
  CHECK(s.r_num == 5);
  CHECK(s.r_den == 2);
  CHECK(schedule.violations(params).empty());
}

TEST_CASE("with M = 1 and psi = e^{-n} the overhang is n_hat + 1") {
  const auto params = full2_psi(1);
  const auto schedule = build_schedule(params, 5);
  for (const auto& s : schedule.stages) {
    CHECK(s.t_hat == static_cast<long long>(s.n_hat) + 1);
    CHECK(s.t == s.n_hat + 1);
  }
  CHECK(schedule.violations(params).empty());
}

TEST_CASE("f schedule example") {
  const auto params = MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 2, 0.1,
                                                 Potential::constant(1.0), 2);
  const auto schedule = build_schedule(params, 2);
  const auto& s = schedule.stages[0];
  CHECK(s.n == 2);
  CHECK(s.t_hat == 3);
  CHECK(s.t == 4);
  CHECK(s.r_num == 3);
  CHECK(s.r_den == 1);
  CHECK(schedule.violations(params).empty());
  const auto& s2 = schedule.stages[1];
  CHECK(static_cast<double>(s.end()) * 1.0 <= static_cast<double>(s2.m) * 0.1 / 2);
  CHECK(s2.m % 2 == 0);
}

TEST_CASE("schedules satisfy their invariants across inputs") {
  for (std::size_t M : {1u, 2u, 3u}) {
    for (double alpha : {0.3, 1.0, 2.0}) {
      const auto params = full2_psi(alpha, M);
      CHECK(build_schedule(params, 5).violations(params).empty());
    }
    const auto poly = MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), M, 0.2,
                                           PsiFunction::polynomial(1, 2), std::nullopt, kLog2);
    CHECK(build_schedule(poly, 5).violations(poly).empty());
    const auto big = MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), M, 0.2,
                                          PsiFunction::constant(5.0), std::nullopt, kLog2);
    CHECK(build_schedule(big, 4).violations(big).empty());
  }
  const auto f = MoranParams::for_potential(ends0(), 4, 0.2, Potential::constant(0.5));
  CHECK(build_schedule(f, 3).violations(f).empty());
}

TEST_CASE("schedule length guard") {
  auto params = full2_psi(3);
  params.length_budget = 1000;
  CHECK_THROWS_AS(build_schedule(params, 8), BudgetExceeded);
}

TEST_CASE("block length choice and ratio") {
  const double h = std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(choose_block_length(ends0(), 0.2, h, 10) == std::size_t{4});
  const auto params = MoranParams::for_psi(ends0(), 4, 0.2, PsiFunction::exponential(1), std::nullopt, h);
  CHECK(params.blocks.size() == 5);
  CHECK(params.ratio_ok());
  CHECK(params.block_ratio == doctest::Approx(std::log(5.0) / (4 * h)));
}

TEST_CASE("level words on the full shift") {
  const auto params = full2_psi(1);
  const auto schedule = build_schedule(params, 2);
  const auto levels = build_levels(params, schedule);
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].cylinders.size() == (1u << schedule.stages[0].n_hat));
  for (const auto& level : levels) {
    CHECK_FALSE(level.sampled);
    const auto& st = schedule.stages[level.k - 1];
    for (const auto& c : level.cylinders) {
      CHECK(c.word.size() == st.end());
      CHECK(params.space().is_admissible(c.word));
      for (std::size_t j = 0; j < c.t; ++j) CHECK(c.word[c.n_hat + j] == c.word[j]);
    }
  }
  for (const auto& c : levels[1].cylinders) {
    const Word& parent = levels[0].cylinders[c.parent].word;
    CHECK(c.word.prefix(parent.size()) == parent);
  }
}

TEST_CASE("golden mean levels stay admissible") {
  const double h = std::log((1 + std::sqrt(5.0)) / 2);
  const auto params = MoranParams::for_psi(ends0(), 4, 0.2, PsiFunction::exponential(1), std::nullopt, h);
  const auto schedule = build_schedule(params, 3);
  const auto levels = build_levels(params, schedule);
  for (const auto& level : levels) {
    for (const auto& c : level.cylinders) CHECK(params.space().is_admissible(c.word));
  }
}

TEST_CASE("a single block gives a single cylinder") {
  const auto golden = ShiftSpace::golden_mean();
  const WordFamily zeros(golden, make_predicate(golden, "regex:0*"));
  const auto params = MoranParams::for_psi(zeros, 1, 0.5, PsiFunction::exponential(1), std::nullopt, 0.1);
  const auto levels = build_levels(params, build_schedule(params, 1));
  CHECK(levels[0].cylinders.size() == 1);
  const auto point = materialize_point(params, build_schedule(params, 3), 9);
  CHECK(point.all_passed());
  for (Symbol a : point.symbols) CHECK(a == 0);
}

TEST_CASE("concatenation leaving the language is reported") {
  const auto golden = ShiftSpace::golden_mean();
  const auto params = MoranParams::for_psi(WordFamily(golden), 1, 0.5, PsiFunction::exponential(1), std::nullopt, 0.48);
  CHECK_THROWS_AS(build_levels(params, build_schedule(params, 2)), AdmissibilityViolation);
}

TEST_CASE("uniform measure") {
  const auto params = full2_psi(1);
  auto schedule = build_schedule(params, 2);
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels);
  const double l1 = static_cast<double>(schedule.stages[0].l);
  const double l2 = static_cast<double>(schedule.stages[1].l);
  for (double m : measure.log_mass[0]) CHECK(m == doctest::Approx(-l1 * kLog2));
  for (double m : measure.log_mass[1]) CHECK(m == doctest::Approx(-(l1 + l2) * kLog2));
  const auto conservation = check_conservation(levels, measure);
  CHECK(conservation.max_deviation < 1e-12);
}

TEST_CASE("measure of the ternary-block example") {
  // ♯F_M = 3 with l_1 = 2: every level-1 mass is 1/9.
  const auto params = MoranParams::for_psi(WordFamily(ShiftSpace::full(3)), 1, 0.1,
                                           PsiFunction::exponential(1), 2, std::log(3.0));
  const auto schedule = build_schedule(params, 1);
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels);
  CHECK(levels[0].cylinders.size() == 9);
  for (double m : measure.log_mass[0]) CHECK(std::exp(m) == doctest::Approx(1.0 / 9));
}

TEST_CASE("f-variant measure") {
  const auto params = MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 4, 0.1,
                                                 Potential::constant(1.0));
  auto schedule = build_schedule(params, 1);
  const auto levels = build_levels(params, schedule);
  REQUIRE(levels[0].cylinders.size() == 16);
  const auto measure = attach_measure(params, schedule, levels);
  CHECK(measure.s[0] == doctest::Approx(kLog2 / 2).epsilon(1e-12));
  for (double m : measure.log_mass[0]) CHECK(std::exp(m) == doctest::Approx(1.0 / 16).epsilon(1e-10));
  CHECK(check_conservation(levels, measure).max_deviation < 1e-10);
}

TEST_CASE("f-variant measure with a non-constant potential conserves mass") {
  std::map<Word, double> t{{Word{0}, 0.5}, {Word{1}, 2.0}};
  const auto params = MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 3, 0.2,
                                                 Potential::from_table(1, t), 6);
  auto schedule = build_schedule(params, 1);
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels, 1e-12);
  CHECK(check_conservation(levels, measure).max_deviation < 1e-9);
}

TEST_CASE("sampled levels refuse a measure") {
  auto params = full2_psi(1);
  params.branch_budget = 8;
  const auto schedule = build_schedule(params, 3);
  const auto levels = build_levels(params, schedule, 4);
  CHECK(levels.back().sampled);
  CHECK_THROWS_AS(attach_measure(params, schedule, levels), ConfigError);
}

TEST_CASE("uniform and cylinder Hölder audits agree") {
  const double h = std::log((1 + std::sqrt(5.0)) / 2);
  const auto params = MoranParams::for_psi(ends0(), 4, 0.2, PsiFunction::exponential(1), std::nullopt, h);
  const auto schedule = build_schedule(params, 2);
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels);
  std::vector<std::size_t> grid;
  for (std::size_t n = 1; n <= schedule.stages.back().end(); ++n) grid.push_back(n);
  const auto generic = holder_audit(schedule, levels, measure, grid, 0.0, 0.0);
  const auto uniform = holder_audit_uniform(params, schedule, 1, schedule.stages.back().end(), 0.0, 0.0);
  REQUIRE(generic.rows.size() == uniform.rows.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(generic.rows[i].log_mass == doctest::Approx(uniform.rows[i].log_mass).epsilon(1e-12));
    CHECK(generic.rows[i].region == uniform.rows[i].region);
  }
}

TEST_CASE("Hölder exponent at a level endpoint unrolls the measure") {
  const auto params = full2_psi(2);
  const auto schedule = build_schedule(params, 4);
  const auto audit = holder_audit_uniform(params, schedule, 1, schedule.stages.back().end(), 0, 0);
  double log_mass = 0;
  for (const auto& s : schedule.stages) {
    log_mass -= static_cast<double>(s.l) * kLog2;
    const auto& row = audit.rows.at(s.end() - 1);
    CHECK(row.n == s.end());
    CHECK(row.exponent == doctest::Approx(-log_mass / static_cast<double>(s.end())));
  }
}

TEST_CASE("f-variant exponents inside the head and at the level end") {
  const auto params = MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 2, 0.1,
                                                 Potential::constant(1.0), 8);
  auto schedule = build_schedule(params, 1);
  const auto& st = schedule.stages[0];
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels);
  const auto audit = holder_audit(schedule, levels, measure, {4, 8, st.end()}, 0.0, 0.0);
  CHECK(audit.rows[0].exponent == doctest::Approx(kLog2));
  CHECK(audit.rows[1].exponent == doctest::Approx(kLog2));
  CHECK(audit.rows[2].exponent ==
        doctest::Approx(measure.s[0] * 16.0 / static_cast<double>(st.end())));
}

TEST_CASE("materialized points recur") {
  const auto params = full2_psi(1);
  const auto schedule = build_schedule(params, 4);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto point = materialize_point(params, schedule, seed);
    REQUIRE(point.log.size() == 4);
    CHECK(point.all_passed());
    CHECK(point.symbols.size() == schedule.stages.back().end());
  }
  const auto again = materialize_point(params, schedule, 3);
  CHECK(again.symbols == materialize_point(params, schedule, 3).symbols);
}

TEST_CASE("f-variant points recur against e^{-S_n f}") {
  const auto params = MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 1, 0.5,
                                                 Potential::constant(1.0));
  const auto schedule = build_schedule(params, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto point = materialize_point(params, schedule, seed);
    CHECK(point.all_passed());
    for (const auto& c : point.log) CHECK(c.log_target == -static_cast<double>(c.position));
  }
}

TEST_CASE("points from built levels recur") {
  const double h = std::log((1 + std::sqrt(5.0)) / 2);
  const auto params = MoranParams::for_psi(ends0(), 4, 0.2, PsiFunction::exponential(1), std::nullopt, h);
  const auto schedule = build_schedule(params, 2);
  const auto levels = build_levels(params, schedule);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) CHECK(materialize_point(params, levels, seed).all_passed());
}

TEST_CASE("return checks use exact prefix comparison") {
  const Word x = Word::parse("0110011001");
  const auto ok = check_return(x.symbols(), 1, 4, 4, -3.5);
  CHECK(ok.agreement == 6);
  CHECK(ok.passed);
  CHECK_FALSE(check_return(x.symbols(), 1, 4, 4, -4.0).passed);  // needs t > 4
  CHECK_FALSE(check_return(x.symbols(), 1, 4, 7, -3.0).passed);  // agreement 6 < 7
}

TEST_CASE("mass distribution principle") {
  const auto params = MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), 1, 0.1,
                                           PsiFunction::constant(std::exp(1.0)), std::nullopt, kLog2);
  const auto schedule = build_schedule(params, 4);
  for (const auto& s : schedule.stages) CHECK(s.t == 0);
  const auto audit = holder_audit_uniform(params, schedule, 1, schedule.stages.back().end(), kLog2, 0);
  CHECK(mass_distribution_check(audit, kLog2, 1.0).passed);
  const auto fails = mass_distribution_check(audit, kLog2 + 0.1, 1.0);
  CHECK_FALSE(fails.passed);
  CHECK(fails.first_failure.has_value());

  const auto deep = full2_psi(2);
  const auto sched = build_schedule(deep, 7);
  const std::size_t from = sched.stages[4].end() + 1;
  const double target = 0.81 * kLog2 / 3;
  const auto holder = holder_audit_uniform(deep, sched, from, sched.stages.back().end(), target, 0.02);
  CHECK(holder.passed);
  CHECK(mass_distribution_check(holder, target - 0.02, 1.0).passed);
}

TEST_CASE("levels round-trip through JSON lines") {
  const auto params = full2_psi(1);
  const auto schedule = build_schedule(params, 2);
  const auto levels = build_levels(params, schedule);
  const auto measure = attach_measure(params, schedule, levels);
  std::stringstream buffer;
  write_levels_jsonl(buffer, levels, &measure);
  const auto loaded = read_levels_jsonl(buffer);
  REQUIRE(loaded.levels.size() == levels.size());
  CHECK(loaded.measure.exact);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    REQUIRE(loaded.levels[k].cylinders.size() == levels[k].cylinders.size());
    for (std::size_t c = 0; c < levels[k].cylinders.size(); ++c) {
      CHECK(loaded.levels[k].cylinders[c].word == levels[k].cylinders[c].word);
      CHECK(loaded.levels[k].cylinders[c].parent == levels[k].cylinders[c].parent);
      CHECK(loaded.measure.log_mass[k][c] == measure.log_mass[k][c]);
    }
  }
  std::stringstream bad("{\"level\": 2}\n");
  CHECK_THROWS_AS(read_levels_jsonl(bad), ConfigError);
}
