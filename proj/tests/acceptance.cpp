// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "symrec/edit_ball.hpp"
#include "symrec/moran.hpp"
#include "symrec/recurrence.hpp"
#include "symrec/structure.hpp"
#include "symrec/thermo.hpp"

using namespace symrec;

namespace {

const double kLog2 = std::log(2.0);
const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [fail: " << what << "]";
    }
  }
};

using Seconds = std::chrono::duration<double>;

double elapsed(std::chrono::steady_clock::time_point since) {
  return Seconds(std::chrono::steady_clock::now() - since).count();
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t n = from; n <= to; ++n) out.push_back(n);
  return out;
}

void bowen_closed_forms(Verdict& v) {
  struct Case {
    std::size_t p;
    double alpha;
  };
  for (const Case c : {Case{2, 1.0}, Case{2, 3.0}, Case{3, 0.5}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto root = bowen_root(WordFamily(ShiftSpace::full(c.p)), Potential::constant(c.alpha), range(1, 12));
    const double secs = elapsed(start);
    const double expected = std::log(static_cast<double>(c.p)) / (1 + c.alpha);
    const double error = std::abs(root.limit - expected);
    v.detail << " (p=" << c.p << ",a=" << c.alpha << ") err=" << error << " spread=" << root.level_spread
             << " t=" << secs << "s;";
    v.require(error < 1e-9, "root error");
    v.require(root.level_spread < 1e-9, "per-level spread");
    v.require(secs < 1.0, "runtime");
  }
}

void rpsi_formula(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto full = dimension_R_psi(ShiftSpace::full(2), PsiFunction::exponential(2));
  const double full_err = std::abs(full.dimension - kLog2 / 3);
  const auto golden = dimension_R_psi(ShiftSpace::golden_mean(), PsiFunction::polynomial(1, 2), 30);
  const double golden_err = std::abs(golden.dimension - kLogPhi);
  const double secs = elapsed(start);
  v.detail << " full2 err=" << full_err << "; golden branch=" << golden.branch << " dim=" << golden.dimension
           << " err=" << golden_err << "; t=" << secs << "s";
  v.require(full_err < 1e-9, "full 2-shift");
  v.require(golden.exponent && golden.exponent->b == 0.0, "b = 0");
  v.require(std::abs(golden.dimension - golden.h) < 1e-15, "C2 with b = 0 returns h");
  v.require(golden_err < 1e-3, "golden mean");
  v.require(secs < 10.0, "runtime");
}

void cross_theorem(Verdict& v) {
  double worst = 0.0;
  for (const auto& space : {ShiftSpace::full(2), ShiftSpace::golden_mean()}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double by_f = dimension_R_f(space, Potential::constant(alpha)).dimension;
      const double by_psi = dimension_R_psi(space, PsiFunction::exponential(alpha)).dimension;
      worst = std::max(worst, std::abs(by_f - by_psi));
    }
  }
  v.detail << " max |dim R(f) - dim R(psi)| = " << worst;
  v.require(worst < 1e-6, "agreement");
}

void language_oracles(Verdict& v) {
  const auto golden = ShiftSpace::golden_mean();
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n <= 20; ++n) {
    if (count_words(golden, n) != oracle::fibonacci(n + 2)) ++mismatches;
  }
  const auto even = entropy_estimate(WordFamily(ShiftSpace::sgap(GapSet{{0}, ArithmeticTail{2, 2}})), 30);
  const double ratio = even.rows.back().ratio;
  v.detail << " fibonacci mismatches=" << mismatches << "; even S-gap ratio at n=" << even.rows.back().n
           << " is " << ratio << " (log phi " << kLogPhi << ")";
  v.require(mismatches == 0, "fibonacci counts");
  v.require(even.rows.back().n == 30 && std::abs(ratio - kLogPhi) < 1e-2, "S-gap growth");
}

void recurrence_witness(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto golden = ShiftSpace::golden_mean();
  const std::vector<MoranParams> constructions = {
      MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), 1, 0.1, PsiFunction::exponential(1)),
      MoranParams::for_psi(WordFamily(golden, make_predicate(golden, "ends-with-0")), 4, 0.2,
                           PsiFunction::exponential(1)),
  };
  for (const auto& params : constructions) {
    const auto schedule = build_schedule(params, 4);
    std::size_t checks = 0, failures = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto point = materialize_point(params, schedule, seed);
      for (const auto& c : point.log) {
        ++checks;
        if (!c.passed) ++failures;
      }
      if (point.log.size() != 4) ++failures;
    }
    v.detail << " " << params.space().describe() << ": " << checks << " checks, " << failures << " failures;";
    v.require(failures == 0 && checks == 400, "recurrence checks");
  }
  const double secs = elapsed(start);
  v.detail << " t=" << secs << "s";
  v.require(secs < 30.0, "runtime");
}

void measure_audits(Verdict& v) {
  const auto golden = ShiftSpace::golden_mean();
  double psi_dev = 0.0;
  for (const auto& params :
       {MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), 1, 0.1, PsiFunction::exponential(1)),
        MoranParams::for_psi(WordFamily(golden, make_predicate(golden, "ends-with-0")), 4, 0.2,
                             PsiFunction::exponential(1))}) {
    const auto schedule = build_schedule(params, 2);
    const auto levels = build_levels(params, schedule);
    const auto measure = attach_measure(params, schedule, levels);
    psi_dev = std::max(psi_dev, check_conservation(levels, measure).max_deviation);
  }
  const double tol = 1e-10;
  double f_dev = 0.0;
  std::map<Word, double> table{{Word{0}, 0.5}, {Word{1}, 2.0}};
  for (const auto& params :
       {MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 4, 0.1, Potential::constant(1.0)),
        MoranParams::for_potential(WordFamily(ShiftSpace::full(2)), 3, 0.2, Potential::from_table(1, table), 6)}) {
    const auto schedule = build_schedule(params, 1);
    const auto levels = build_levels(params, schedule);
    const auto measure = attach_measure(params, schedule, levels, tol);
    f_dev = std::max(f_dev, check_conservation(levels, measure).max_deviation);
  }
  v.detail << " conservation psi=" << psi_dev << " f=" << f_dev << ";";
  v.require(psi_dev <= 1e-12, "psi conservation");
  v.require(f_dev <= tol, "f conservation");

  const auto params = MoranParams::for_psi(WordFamily(ShiftSpace::full(2)), 1, 0.1, PsiFunction::exponential(2));
  const auto schedule = build_schedule(params, 7);
  const double target = 0.81 * kLog2 / 3;
  const std::size_t from = schedule.stages[4].end() + 1;
  const std::size_t to = schedule.stages[6].end();
  const auto audit = holder_audit_uniform(params, schedule, from, to, target, 0.02);
  v.detail << " holder min exponent " << audit.min_exponent << " at n=" << audit.argmin << " over n in [" << from
           << ", " << to << "], threshold " << target - 0.02;
  v.require(schedule.violations(params).empty(), "schedule invariants");
  v.require(audit.passed && audit.min_exponent >= target - 0.02, "holder threshold");
}

void cover_sums(Verdict& v) {
  const auto full2 = ShiftSpace::full(2);
  const auto psi = PsiFunction::exponential(2);
  const auto by_psi = cover_crossing([&](double s) { return cover_sum_audit(full2, psi, s, 1, 20); }, 0.01, 1.0);
  const auto one = Potential::constant(1.0);
  const auto by_f = cover_crossing([&](double s) { return cover_sum_audit(full2, one, s, 1, 20); }, 0.01, 1.0);
  v.detail << " R(psi) crossing " << by_psi.crossing << " vs " << kLog2 / 3 << "; R(f) crossing " << by_f.crossing
           << " vs " << kLog2 / 2;
  v.require(std::abs(by_psi.crossing - kLog2 / 3) <= 0.01, "R(psi)");
  v.require(std::abs(by_f.crossing - kLog2 / 2) <= 0.01, "R(f)");
}

void edit_ball_bound(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto full2 = ShiftSpace::full(2);
  const auto fit = fit_edit_ball_grid(full2, 12, {0.1, 0.25, 0.5});
  const double secs = elapsed(start);
  std::size_t violations = 0, oracle_mismatches = 0;
  for (const auto& census : fit.censuses) {
    const double log_bound = edit_ball_log_bound(census.center.size(), census.radius_fraction, fit.constant);
    if (std::log(static_cast<double>(census.count)) > log_bound + 1e-9) ++violations;
    if (census.center.size() <= 7) {
      oracle::Str center(census.center.symbols().begin(), census.center.symbols().end());
      if (oracle::edit_ball_brute(center, census.radius, 2, [](const oracle::Str&) { return true; }) !=
          census.count) {
        ++oracle_mismatches;
      }
    }
  }
  v.detail << " C=" << fit.constant << " over " << fit.censuses.size() << " censuses, bound violations "
           << violations << ", oracle mismatches (n<=7) " << oracle_mismatches << "; t=" << secs << "s";
  v.require(fit.censuses.size() == 3 * ((1u << 13) - 2), "exhaustive census");
  v.require(fit.constant <= 10.0, "C <= 10");
  v.require(violations == 0, "bound holds");
  v.require(oracle_mismatches == 0, "counts");
  v.require(secs < 60.0, "runtime");
}

void structure_checks(Verdict& v) {
  const auto golden = ShiftSpace::golden_mean();
  const auto g = check_w_specification(WordFamily(golden), 2, 8);
  const auto f = check_w_specification(WordFamily(ShiftSpace::full(2)), 2, 8);
  const auto concat = check_free_concatenation(WordFamily(golden), 8);
  const bool golden_ok = g.certificate && g.certificate->gap_length == 1 && revalidate(*g.certificate, WordFamily(golden));
  const bool full_ok = f.certificate && f.certificate->gap_length == 0;
  const bool concat_ok = !concat.holds && concat.counterexample &&
                         concat.counterexample->first == Word{1} && concat.counterexample->second == Word{1};
  v.detail << " golden tau=" << (g.certificate ? std::to_string(g.certificate->gap_length) : "none")
           << "; full tau=" << (f.certificate ? std::to_string(f.certificate->gap_length) : "none")
           << "; counterexample "
           << (concat.counterexample
                   ? concat.counterexample->first.to_string() + "," + concat.counterexample->second.to_string()
                   : "none");
  v.require(golden_ok, "golden mean tau = 1");
  v.require(full_ok, "full shift tau = 0");
  v.require(concat_ok, "u = w = 1");
}

void edit_distance_oracle(Verdict& v) {
  std::vector<oracle::Str> words;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (auto& w : oracle::all_words(2, n)) words.push_back(std::move(w));
  }
  std::size_t pairs = 0, mismatches = 0;
  for (const auto& a : words) {
    const auto dist = oracle::edit_distances_from(a, 2, 7);
    const Word wa(std::vector<Symbol>(a.begin(), a.end()));
    for (const auto& b : words) {
      ++pairs;
      const Word wb(std::vector<Symbol>(b.begin(), b.end()));
      if (static_cast<int>(edit_distance(wa, wb)) != dist.at(b)) ++mismatches;
    }
  }
  v.detail << " " << pairs << " pairs, " << mismatches << " mismatches";
  v.require(pairs == 127 * 127 && mismatches == 0, "exact agreement");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"closed-form Bowen roots", bowen_closed_forms},
      {"dimension of R(psi)", rpsi_formula},
      {"R(f) and R(psi) agree for constant f", cross_theorem},
      {"language counts", language_oracles},
      {"Moran recurrence witness", recurrence_witness},
      {"measure audits", measure_audits},
      {"cover sums cross at the dimension", cover_sums},
      {"edit-ball bound", edit_ball_bound},
      {"structure checks", structure_checks},
      {"edit distance oracle", edit_distance_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict verdict;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(verdict);
    } catch (const std::exception& e) {
      verdict.passed = false;
      verdict.detail << " [exception: " << e.what() << "]";
    }
    const double secs = elapsed(start);
    if (!verdict.passed) ++failed;
    std::printf("criterion %zu %s: %s (%.2fs)%s\n", i + 1, verdict.passed ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, verdict.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
