#include "symrec/moran.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "symrec/errors.hpp"
#include "symrec/thermo.hpp"

namespace symrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t round_up_multiple(long long value, std::size_t M) {
  if (value <= 0) return 0;
  const auto v = static_cast<std::size_t>(value);
  return (v + M - 1) / M * M;
}

void set_ratio(MoranStage& stage) {
  if (stage.n_hat == 0) throw ConfigError("Moran level with an empty head");
  const std::size_t num = stage.n_hat + stage.t;
  const std::size_t g = std::gcd(num, stage.n_hat);
  stage.r_num = num / g;
  stage.r_den = stage.n_hat / g;
}

void guard_length(std::size_t n, const MoranParams& params) {
  if (n > params.length_budget) {
    throw BudgetExceeded("Moran schedule length " + std::to_string(n) +
                         " exceeds the length budget " + std::to_string(params.length_budget));
  }
}

// First member of F_m, if any, without enumerating all of L_m.
bool family_nonempty(const WordFamily& family, std::size_t m) {
  if (family.is_language()) return true;
  struct Found {};
  try {
    family.for_each(m, [](const Word&) { throw Found{}; });
  } catch (const Found&) {
    return true;
  }
  return false;
}

// Number of completions, saturated at `cap`.
double branching(std::size_t base, std::size_t power) {
  return std::pow(static_cast<double>(base), static_cast<double>(power));
}

double count_or_inf(const ShiftSpace& space, std::size_t n) {
  try {
    return static_cast<double>(count_words(space, n));
  } catch (const BudgetExceeded&) {
    return kInf;
  }
}

class FamilySampler {
 public:
  explicit FamilySampler(const WordFamily& family) : family_(family), sampler_(family.space()) {}

  Word sample(std::size_t m, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      Word w = sampler_.sample(m, rng);
      if (family_.contains(w)) return w;
    }
    throw BudgetExceeded("could not sample a word of F_" + std::to_string(m));
  }

 private:
  const WordFamily& family_;
  WordSampler sampler_;
};

void extend_periodic(std::vector<Symbol>& x, std::size_t period, std::size_t t) {
  for (std::size_t j = 0; j < t; ++j) {
    const Symbol a = x[x.size() - period];
    x.push_back(a);
  }
}

void require_admissible(const ShiftSpace& space, std::span<const Symbol> x, std::size_t k) {
  if (!space.run(x)) {
    throw AdmissibilityViolation("level " + std::to_string(k) +
                                 " left the language; F is not closed under concatenation");
  }
}

}  // namespace

MoranParams MoranParams::for_psi(WordFamily family, std::size_t M, double eta, PsiFunction psi,
                                 std::optional<std::size_t> n1, double h, std::uint64_t budget) {
  if (M == 0) throw ConfigError("Moran: M must be ≥ 1");
  if (!(eta > 0 && eta < 1)) throw ConfigError("Moran: eta must lie in (0, 1)");
  if (!psi.nonincreasing_from()) {
    throw HypothesisViolated("Moran: psi " + psi.describe() + " is not nonincreasing");
  }
  if (n1 && *n1 < M) throw ConfigError("Moran: n_1 must be at least M");
  MoranParams params(std::move(family));
  params.variant = MoranVariant::psi;
  params.M = M;
  params.eta = eta;
  params.psi = std::move(psi);
  params.first_length = n1;
  params.blocks = params.family.words(M, budget);
  if (params.blocks.empty()) throw EmptyLevel("Moran: F_M is empty for M = " + std::to_string(M));
  params.h = h >= 0 ? h : entropy_estimate(WordFamily(params.space()), 24).estimate;
  const double log_blocks = std::log(static_cast<double>(params.blocks.size()));
  params.block_ratio = params.h > 0 ? log_blocks / (static_cast<double>(M) * params.h) : 1.0;
  return params;
}

MoranParams MoranParams::for_potential(WordFamily family, std::size_t M, double eta, Potential f,
                                       std::optional<std::size_t> m1, std::uint64_t budget) {
  if (M == 0) throw ConfigError("Moran: M must be ≥ 1");
  if (!(eta > 0 && eta < 1)) throw ConfigError("Moran: eta must lie in (0, 1)");
  f.validate(family.space());
  MoranParams params(std::move(family));
  params.variant = MoranVariant::f;
  params.M = M;
  params.eta = eta;
  params.first_length = m1;
  if (params.family.count(M, budget) == 0) {
    throw EmptyLevel("Moran: F_M is empty for M = " + std::to_string(M));
  }
  params.h = entropy_estimate(WordFamily(params.space()), 24).estimate;
  params.block_ratio = 1.0;
  params.f = std::move(f);
  return params;
}

std::optional<std::size_t> choose_block_length(const WordFamily& family, double eta, double h,
                                               std::size_t M_max, std::uint64_t budget) {
  for (std::size_t M = 1; M <= M_max; ++M) {
    const std::uint64_t count = family.count(M, budget);
    if (count == 0) continue;
    if (std::log(static_cast<double>(count)) >= (1.0 - eta) * static_cast<double>(M) * h - 1e-12) {
      return M;
    }
  }
  return std::nullopt;
}

MoranSchedule build_schedule(const MoranParams& params, std::size_t levels) {
  if (levels == 0) throw ConfigError("Moran: need at least one level");
  MoranSchedule schedule;
  schedule.variant = params.variant;
  schedule.M = params.M;
  const std::size_t M = params.M;
  std::size_t prev_end = 0;
  if (params.variant == MoranVariant::psi) {
    const PsiFunction& psi = *params.psi;
    double sum_n = 0.0;
    for (std::size_t k = 1; k <= levels; ++k) {
      MoranStage stage;
      stage.k = k;
      if (k == 1) {
        stage.n = params.first_length.value_or(M);
      } else {
        const double need = static_cast<double>(k) *
                            std::max(sum_n, -psi.log_value(schedule.stages.back().n));
        if (!(need < static_cast<double>(params.length_budget))) guard_length(SIZE_MAX, params);
        stage.n = std::max(static_cast<std::size_t>(std::ceil(need)), prev_end + M);
      }
      guard_length(stage.n, params);
      const std::size_t rest = stage.n - prev_end;
      stage.l = rest / M;
      stage.i = rest % M;
      stage.n_hat = prev_end + stage.l * M;
      stage.t_hat = static_cast<long long>(std::floor(-psi.log_value(stage.n_hat))) + 1;
      stage.t = round_up_multiple(stage.t_hat, M);
      set_ratio(stage);
      guard_length(stage.end(), params);
      prev_end = stage.end();
      sum_n += static_cast<double>(stage.n);
      schedule.stages.push_back(stage);
    }
    return schedule;
  }

  const Potential& f = *params.f;
  schedule.uniform = f.is_constant();
  double sum_m = 0.0;
  for (std::size_t k = 1; k <= levels; ++k) {
    MoranStage stage;
    stage.k = k;
    std::size_t m = 0;
    if (k == 1) {
      m = params.first_length.value_or(M);
    } else {
      const double need_growth = static_cast<double>(k) * sum_m;
      const double need_slack =
          2.0 * static_cast<double>(prev_end) * f.max_value() / params.eta;
      const double need = std::max(need_growth, need_slack);
      if (!(need < static_cast<double>(params.length_budget))) guard_length(SIZE_MAX, params);
      m = round_up_multiple(static_cast<long long>(std::ceil(need - 1e-9)), M);
      if (m == 0) m = M;
    }
    std::size_t probe = m;
    while (!family_nonempty(params.family, probe)) {
      ++probe;
      if (probe > m + M) {
        throw EmptyLevel("Moran: F is empty on [" + std::to_string(m) + ", " +
                         std::to_string(m + M) + "]");
      }
    }
    stage.advanced = probe != m;
    stage.m = probe;
    stage.n = prev_end + stage.m;
    stage.n_hat = stage.n;
    guard_length(stage.n, params);
    // Worst case over cylinders unless f is constant.
    const double birkhoff = static_cast<double>(stage.n) * f.max_value();
    stage.t_hat = static_cast<long long>(std::floor(birkhoff)) + 1;
    stage.t = round_up_multiple(stage.t_hat, M);
    set_ratio(stage);
    guard_length(stage.end(), params);
    prev_end = stage.end();
    sum_m += static_cast<double>(stage.m);
    schedule.stages.push_back(stage);
  }
  return schedule;
}

std::vector<std::string> MoranSchedule::violations(const MoranParams& params) const {
  std::vector<std::string> out;
  auto fail = [&](std::size_t k, const std::string& what) {
    out.push_back("level " + std::to_string(k) + ": " + what);
  };
  std::size_t prev_end = 0;
  double sum = 0.0;
  for (std::size_t idx = 0; idx < stages.size(); ++idx) {
    const MoranStage& s = stages[idx];
    const std::size_t k = idx + 1;
    if (s.k != k) fail(k, "level index out of order");
    if (s.n_hat * s.r_num != (s.n_hat + s.t) * s.r_den) fail(k, "n_hat * r != n_hat + t");
    if (s.t % M != 0) fail(k, "M does not divide t");
    if (s.t_hat > 0) {
      if (static_cast<long long>(s.t) < s.t_hat ||
          static_cast<long long>(s.t) > s.t_hat + static_cast<long long>(M)) {
        fail(k, "t outside [t_hat, t_hat + M]");
      }
    } else if (s.t != 0) {
      fail(k, "t should be 0 when t_hat ≤ 0");
    }
    if (variant == MoranVariant::psi) {
      const PsiFunction& psi = *params.psi;
      if (s.n_hat != prev_end + s.l * M) fail(k, "n_hat != previous end + l*M");
      if (s.i >= M) fail(k, "i ≥ M");
      if (s.n != s.n_hat + s.i) fail(k, "n != n_hat + i");
      if (s.n_hat + M < s.n || s.n_hat > s.n) fail(k, "n_hat outside [n - M, n]");
      const double target = -psi.log_value(s.n_hat);
      if (!(static_cast<double>(s.t_hat) - 1 <= target && target < static_cast<double>(s.t_hat))) {
        fail(k, "e^{-t_hat} < psi(n_hat) <= e^{-t_hat+1} fails");
      }
      if (k >= 2) {
        const double need =
            std::max(sum, -psi.log_value(stages[idx - 1].n));
        if (static_cast<double>(s.n) / static_cast<double>(k) < need) fail(k, "not sparse enough");
      }
      sum += static_cast<double>(s.n);
    } else {
      const Potential& f = *params.f;
      if (s.n != prev_end + s.m) fail(k, "n != m + previous end");
      if (!s.advanced && s.m % M != 0) fail(k, "M does not divide m");
      if (k >= 2) {
        if (static_cast<double>(prev_end) * f.max_value() > static_cast<double>(s.m) * params.eta / 2 + 1e-9) {
          fail(k, "(n + t) of the previous level too long for m");
        }
        if (static_cast<double>(s.m) / static_cast<double>(k) < sum) fail(k, "m not sparse enough");
      }
      if (uniform) {
        const double birkhoff = static_cast<double>(s.n) * f.max_value();
        if (!(static_cast<double>(s.t_hat) - 1 <= birkhoff &&
              birkhoff < static_cast<double>(s.t_hat))) {
          fail(k, "e^{-t_hat} < e^{-S_n f} <= e^{-t_hat+1} fails");
        }
      }
      sum += static_cast<double>(s.m);
    }
    prev_end = s.end();
  }
  return out;
}

std::vector<MoranLevel> build_levels(const MoranParams& params, const MoranSchedule& schedule,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ShiftSpace& space = params.space();
  std::vector<MoranLevel> levels;
  MoranCylinder root;
  std::vector<MoranCylinder> parents{root};
  std::optional<FamilySampler> sampler;
  for (const MoranStage& stage : schedule.stages) {
    MoranLevel level;
    level.k = stage.k;
    const double budget = static_cast<double>(params.branch_budget);
    const double n_parents = static_cast<double>(parents.size());
    auto emit = [&](std::size_t parent, const std::vector<const Word*>& picked) {
      MoranCylinder child;
      child.parent = parent;
      std::vector<Symbol> x(parents[parent].word.symbols().begin(),
                            parents[parent].word.symbols().end());
      double block_inf = 0.0;
      for (const Word* b : picked) x.insert(x.end(), b->symbols().begin(), b->symbols().end());
      child.n_hat = x.size();
      if (params.variant == MoranVariant::psi) {
        child.t = stage.t;
      } else {
        const Word head{std::vector<Symbol>(x)};
        const double inf = birkhoff_inf(space, *params.f, head);
        child.t = round_up_multiple(static_cast<long long>(std::floor(inf)) + 1, params.M);
        block_inf = birkhoff_inf(space, *params.f, *picked.front());
        child.weight = static_cast<double>(picked.front()->size()) + block_inf;
      }
      extend_periodic(x, child.n_hat, child.t);
      require_admissible(space, x, stage.k);
      child.word = Word(std::move(x));
      level.cylinders.push_back(std::move(child));
    };

    if (params.variant == MoranVariant::psi) {
      const std::size_t F = params.blocks.size();
      const double total = n_parents * branching(F, stage.l);
      if (total <= budget) {
        std::vector<std::size_t> digits(stage.l, 0);
        std::vector<const Word*> picked(stage.l);
        for (std::size_t p = 0; p < parents.size(); ++p) {
          std::fill(digits.begin(), digits.end(), 0);
          while (true) {
            for (std::size_t j = 0; j < stage.l; ++j) picked[j] = &params.blocks[digits[j]];
            emit(p, picked);
            std::size_t pos = stage.l;
            while (pos > 0 && ++digits[pos - 1] == F) digits[--pos] = 0;
            if (pos == 0) break;
          }
        }
      } else {
        level.sampled = true;
        const std::size_t per_parent = std::max<std::size_t>(
            1, static_cast<std::size_t>(budget / n_parents));
        std::uniform_int_distribution<std::size_t> pick(0, F - 1);
        std::vector<const Word*> picked(stage.l);
        for (std::size_t p = 0; p < parents.size(); ++p) {
          for (std::size_t c = 0; c < per_parent; ++c) {
            for (auto& slot : picked) slot = &params.blocks[pick(rng)];
            emit(p, picked);
          }
        }
      }
    } else {
      const double total = n_parents * count_or_inf(space, stage.m);
      if (total <= budget) {
        const std::vector<Word> blocks = params.family.words(stage.m);
        for (std::size_t p = 0; p < parents.size(); ++p) {
          for (const Word& b : blocks) emit(p, {&b});
        }
      } else {
        level.sampled = true;
        if (!sampler) sampler.emplace(params.family);
        const std::size_t per_parent = std::max<std::size_t>(
            1, static_cast<std::size_t>(budget / n_parents));
        for (std::size_t p = 0; p < parents.size(); ++p) {
          for (std::size_t c = 0; c < per_parent; ++c) {
            const Word b = sampler->sample(stage.m, rng);
            emit(p, {&b});
          }
        }
      }
    }
    if (level.cylinders.empty()) throw EmptyLevel("Moran level " + std::to_string(stage.k));
    parents = level.cylinders;
    levels.push_back(std::move(level));
  }
  return levels;
}

CylinderMeasure attach_measure(const MoranParams& params, const MoranSchedule& schedule,
                               const std::vector<MoranLevel>& levels, double tol) {
  CylinderMeasure measure;
  for (const auto& level : levels) {
    if (level.sampled) {
      throw ConfigError("measure needs exact levels; level " + std::to_string(level.k) +
                        " was sampled");
    }
  }
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    const MoranStage& stage = schedule.stages.at(idx);
    std::vector<double> masses;
    if (params.variant == MoranVariant::psi) {
      const double split = static_cast<double>(stage.l) *
                           std::log(static_cast<double>(params.blocks.size()));
      for (const auto& c : levels[idx].cylinders) {
        const double parent = idx == 0 ? 0.0 : measure.log_mass[idx - 1][c.parent];
        masses.push_back(parent - split);
      }
    } else {
      const LevelSpectrum spectrum = level_spectrum(params.family, *params.f, stage.m);
      const double s = solve_sn(spectrum, *params.f, tol).s;
      measure.s.push_back(s);
      for (const auto& c : levels[idx].cylinders) {
        const double parent = idx == 0 ? 0.0 : measure.log_mass[idx - 1][c.parent];
        masses.push_back(parent - s * c.weight);
      }
    }
    measure.log_mass.push_back(std::move(masses));
  }
  return measure;
}

ConservationReport check_conservation(const std::vector<MoranLevel>& levels,
                                      const CylinderMeasure& measure) {
  ConservationReport report;
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    std::map<std::size_t, LogSumExp> children;
    LogSumExp total;
    for (std::size_t c = 0; c < levels[idx].cylinders.size(); ++c) {
      const double m = measure.log_mass[idx][c];
      children[levels[idx].cylinders[c].parent].add(m);
      total.add(m);
    }
    double worst = 0.0;
    for (const auto& [parent, acc] : children) {
      const double parent_mass = idx == 0 ? 0.0 : measure.log_mass[idx - 1][parent];
      worst = std::max(worst, std::abs(acc.value() - parent_mass));
    }
    report.child_deviation.push_back(worst);
    report.total_deviation.push_back(std::abs(total.value()));
    report.max_deviation = std::max({report.max_deviation, worst, std::abs(total.value())});
  }
  return report;
}

double holder_target(const MoranParams& params) {
  if (params.variant == MoranVariant::psi) {
    const double b = recurrence_exponent(*params.psi).b;
    return params.h * (1.0 - params.eta) * (1.0 - params.eta) / (1.0 + b);
  }
  return dimension_R_f(params.space(), *params.f).dimension;
}

namespace {

std::string_view region_of(const MoranSchedule& schedule, std::size_t n, std::size_t& level) {
  std::size_t prev_end = 0;
  for (const auto& s : schedule.stages) {
    if (n <= s.end()) {
      level = s.k;
      if (n > s.n_hat) return "overhang";
      return (n - prev_end) % schedule.M == 0 ? "boundary" : "interior";
    }
    prev_end = s.end();
  }
  level = 0;
  return "beyond";
}

HolderAudit finish_holder(std::vector<HolderRow> rows, double target, double slack) {
  HolderAudit audit;
  audit.target = target;
  audit.slack = slack;
  audit.min_exponent = kInf;
  for (const auto& row : rows) {
    if (row.exponent < audit.min_exponent) {
      audit.min_exponent = row.exponent;
      audit.argmin = row.n;
    }
  }
  audit.passed = !rows.empty() && audit.min_exponent >= target - slack;
  audit.rows = std::move(rows);
  return audit;
}

}  // namespace

HolderAudit holder_audit_uniform(const MoranParams& params, const MoranSchedule& schedule,
                                 std::size_t n_from, std::size_t n_to, double target,
                                 double slack) {
  if (params.variant != MoranVariant::psi) {
    throw ConfigError("the uniform Hölder audit applies to the psi construction");
  }
  const std::size_t M = params.M;
  const double log_f = std::log(static_cast<double>(params.blocks.size()));
  // Largest number of blocks sharing a prefix of each length.
  std::vector<double> log_share(M, 0.0);
  for (std::size_t i = 1; i < M; ++i) {
    std::map<Word, std::size_t> groups;
    std::size_t best = 0;
    for (const Word& b : params.blocks) best = std::max(best, ++groups[b.prefix(i)]);
    log_share[i] = std::log(static_cast<double>(best)) - log_f;
  }
  std::vector<HolderRow> rows;
  n_from = std::max<std::size_t>(n_from, 1);
  std::size_t prev_end = 0;
  double base = 0.0;
  for (const auto& s : schedule.stages) {
    const std::size_t lo = std::max(n_from, prev_end + 1);
    const std::size_t hi = std::min(n_to, s.end());
    for (std::size_t n = lo; n <= hi; ++n) {
      HolderRow row;
      row.n = n;
      row.level = s.k;
      if (n > s.n_hat) {
        row.region = "overhang";
        row.log_mass = base - static_cast<double>(s.l) * log_f;
      } else {
        const std::size_t p = n - prev_end;
        const std::size_t q = p / M;
        const std::size_t i = p % M;
        row.region = i == 0 ? "boundary" : "interior";
        row.log_mass = base - static_cast<double>(q) * log_f + log_share[i];
      }
      row.exponent = -row.log_mass / static_cast<double>(n);
      rows.push_back(row);
    }
    base -= static_cast<double>(s.l) * log_f;
    prev_end = s.end();
    if (prev_end >= n_to) break;
  }
  return finish_holder(std::move(rows), target, slack);
}

HolderAudit holder_audit(const MoranSchedule& schedule, const std::vector<MoranLevel>& levels,
                         const CylinderMeasure& measure, const std::vector<std::size_t>& n_grid,
                         double target, double slack) {
  if (levels.empty()) throw ConfigError("Hölder audit needs at least one level");
  const auto& deepest = levels.back().cylinders;
  const auto& masses = measure.log_mass.at(levels.size() - 1);
  std::size_t shortest = SIZE_MAX;
  for (const auto& c : deepest) shortest = std::min(shortest, c.word.size());
  std::vector<HolderRow> rows;
  for (std::size_t n : n_grid) {
    if (n == 0 || n > shortest) continue;
    std::map<Word, LogSumExp> by_prefix;
    for (std::size_t c = 0; c < deepest.size(); ++c) {
      by_prefix[deepest[c].word.prefix(n)].add(masses[c]);
    }
    double worst = -kInf;
    for (const auto& [prefix, acc] : by_prefix) worst = std::max(worst, acc.value());
    HolderRow row;
    row.n = n;
    row.region = region_of(schedule, n, row.level);
    row.log_mass = worst;
    row.exponent = -worst / static_cast<double>(n);
    rows.push_back(row);
  }
  return finish_holder(std::move(rows), target, slack);
}

bool MaterializedPoint::all_passed() const {
  return !log.empty() &&
         std::all_of(log.begin(), log.end(), [](const RecurrenceCheck& c) { return c.passed; });
}

RecurrenceCheck check_return(std::span<const Symbol> x, std::size_t k, std::size_t position,
                             std::size_t t, double log_target) {
  RecurrenceCheck check;
  check.k = k;
  check.position = position;
  check.t = t;
  check.log_target = log_target;
  if (position <= x.size()) {
    check.agreement = common_prefix_length(x.subspan(position), x);
  }
  // d(σ^n x, x) ≤ e^{-agreement} ≤ e^{-t} < target.
  check.passed = check.agreement >= t && static_cast<double>(t) > -log_target;
  return check;
}

MaterializedPoint materialize_point(const MoranParams& params, const MoranSchedule& schedule,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ShiftSpace& space = params.space();
  MaterializedPoint point;
  std::vector<Symbol>& x = point.symbols;
  struct Return {
    std::size_t k, position, t;
    double log_target;
  };
  std::vector<Return> returns;
  std::optional<FamilySampler> sampler;
  for (const MoranStage& stage : schedule.stages) {
    if (params.variant == MoranVariant::psi) {
      std::uniform_int_distribution<std::size_t> pick(0, params.blocks.size() - 1);
      for (std::size_t j = 0; j < stage.l; ++j) {
        const Word& b = params.blocks[pick(rng)];
        x.insert(x.end(), b.symbols().begin(), b.symbols().end());
      }
      returns.push_back({stage.k, x.size(), stage.t, params.psi->log_value(x.size())});
      extend_periodic(x, x.size(), stage.t);
    } else {
      if (!sampler) sampler.emplace(params.family);
      const Word b = sampler->sample(stage.m, rng);
      x.insert(x.end(), b.symbols().begin(), b.symbols().end());
      const double inf = birkhoff_inf(space, *params.f, Word(std::vector<Symbol>(x)));
      const std::size_t t =
          round_up_multiple(static_cast<long long>(std::floor(inf)) + 1, params.M);
      returns.push_back({stage.k, x.size(), t, -inf});
      extend_periodic(x, x.size(), t);
    }
    require_admissible(space, x, stage.k);
  }
  for (const auto& r : returns) {
    point.log.push_back(check_return(x, r.k, r.position, r.t, r.log_target));
  }
  return point;
}

MaterializedPoint materialize_point(const MoranParams& params,
                                    const std::vector<MoranLevel>& levels, std::uint64_t seed) {
  if (levels.empty() || levels.back().cylinders.empty()) {
    throw ConfigError("materialize_point needs a nonempty deepest level");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, levels.back().cylinders.size() - 1);
  std::size_t index = pick(rng);
  std::vector<const MoranCylinder*> chain(levels.size());
  for (std::size_t idx = levels.size(); idx-- > 0;) {
    chain[idx] = &levels[idx].cylinders.at(index);
    index = chain[idx]->parent;
  }
  MaterializedPoint point;
  point.symbols.assign(chain.back()->word.symbols().begin(), chain.back()->word.symbols().end());
  for (std::size_t idx = 0; idx < chain.size(); ++idx) {
    const MoranCylinder& c = *chain[idx];
    double log_target = 0.0;
    if (params.variant == MoranVariant::psi) {
      log_target = params.psi->log_value(c.n_hat);
    } else {
      log_target = -birkhoff_inf(params.space(), *params.f, c.word.prefix(c.n_hat));
    }
    point.log.push_back(check_return(point.symbols, levels[idx].k, c.n_hat, c.t, log_target));
  }
  return point;
}

MassDistributionReport mass_distribution_check(const HolderAudit& audit, double s, double c,
                                               double diam_max) {
  if (!(c > 0)) throw ConfigError("mass distribution check needs c > 0");
  MassDistributionReport report;
  report.min_margin = kInf;
  const double log_c = std::log(c);
  const double log_diam_max = std::log(diam_max);
  for (const auto& row : audit.rows) {
    const double n = static_cast<double>(row.n);
    if (!(-n < log_diam_max)) continue;
    ++report.checked;
    const double bound = log_c - n * s;
    const double margin = bound - row.log_mass;
    report.min_margin = std::min(report.min_margin, margin);
    const double slack = 1e-12 * std::max(1.0, std::abs(bound));
    if (margin < -slack && !report.first_failure) report.first_failure = row.n;
  }
  report.passed = report.checked > 0 && !report.first_failure;
  if (report.passed) {
    report.statement = "mu(U) <= c diam(U)^s on all " + std::to_string(report.checked) +
                       " audited prefixes: evidence that the construction has Hausdorff "
                       "dimension >= s at the audited depth";
  } else if (report.checked == 0) {
    report.statement = "no audited prefix is below the diameter cap";
  } else {
    report.statement = "bound fails at n = " + std::to_string(*report.first_failure);
  }
  return report;
}

void write_levels_jsonl(std::ostream& out, const std::vector<MoranLevel>& levels,
                        const CylinderMeasure* measure) {
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    const auto& level = levels[idx];
    for (std::size_t c = 0; c < level.cylinders.size(); ++c) {
      const auto& cyl = level.cylinders[c];
      nlohmann::json line;
      line["level"] = level.k;
      line["index"] = c;
      line["parent"] = cyl.parent;
      line["word"] = cyl.word.to_string();
      line["n_hat"] = cyl.n_hat;
      line["t"] = cyl.t;
      line["weight"] = cyl.weight;
      line["sampled"] = level.sampled;
      if (measure && idx < measure->log_mass.size()) {
        line["log_mass"] = measure->log_mass[idx][c];
      } else {
        line["log_mass"] = nullptr;
      }
      out << line.dump() << '\n';
    }
  }
}

LoadedLevels read_levels_jsonl(std::istream& in) {
  LoadedLevels loaded;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    nlohmann::json line;
    try {
      line = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("levels file line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::size_t k = line.at("level").get<std::size_t>();
    if (k == 0 || k > loaded.levels.size() + 1) {
      throw ConfigError("levels file line " + std::to_string(line_no) + ": level out of order");
    }
    if (k > loaded.levels.size()) {
      loaded.levels.push_back(MoranLevel{k, {}, false});
      loaded.measure.log_mass.emplace_back();
    }
    MoranLevel& level = loaded.levels[k - 1];
    MoranCylinder cyl;
    cyl.parent = line.at("parent").get<std::size_t>();
    cyl.word = line.at("word").get<Word>();
    cyl.n_hat = line.value("n_hat", std::size_t{0});
    cyl.t = line.value("t", std::size_t{0});
    cyl.weight = line.value("weight", 0.0);
    level.sampled = level.sampled || line.value("sampled", false);
    const auto& mass = line.at("log_mass");
    if (mass.is_null()) {
      loaded.measure.exact = false;
      loaded.measure.log_mass[k - 1].push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      loaded.measure.log_mass[k - 1].push_back(mass.get<double>());
    }
    level.cylinders.push_back(std::move(cyl));
  }
  for (const auto& level : loaded.levels) {
    if (level.sampled) loaded.measure.exact = false;
  }
  return loaded;
}

}  // namespace symrec
