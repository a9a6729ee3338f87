#include "symrec/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sums that differ only by rounding share a bucket.
long long quantize(double x) { return std::llround(x * 1099511627776.0); }

struct Bucket {
  double weight = 0.0;
  double multiplicity = 0.0;
};

using Spectrum = std::map<long long, Bucket>;

void deposit(Spectrum& spectrum, double weight, double multiplicity) {
  auto& bucket = spectrum[quantize(weight)];
  if (bucket.multiplicity == 0.0) bucket.weight = weight;
  bucket.multiplicity += multiplicity;
}

LevelSpectrum finish(std::size_t n, const Spectrum& buckets) {
  LevelSpectrum out;
  out.n = n;
  double total = 0.0;
  out.min_weight = kInf;
  out.max_weight = -kInf;
  for (const auto& [key, bucket] : buckets) {
    if (bucket.multiplicity <= 0) continue;
    out.weights.push_back(bucket.weight);
    out.log_multiplicities.push_back(std::log(bucket.multiplicity));
    total += bucket.multiplicity;
    out.min_weight = std::min(out.min_weight, bucket.weight);
    out.max_weight = std::max(out.max_weight, bucket.weight);
  }
  if (out.weights.empty()) {
    throw EmptyLevel("D_" + std::to_string(n) + " is empty");
  }
  out.log_count = std::log(total);
  return out;
}

void min_trailing(const ShiftSpace& space, const Potential& f, ShiftSpace::State state,
                  std::vector<Symbol>& buffer, std::size_t target, std::size_t terms,
                  double& best) {
  if (buffer.size() == target) {
    best = std::min(best, window_sum(f, buffer, 0, terms));
    return;
  }
  for (std::size_t a = 0; a < space.alphabet_size(); ++a) {
    const auto next = space.step(state, static_cast<Symbol>(a));
    if (!next) continue;
    buffer.push_back(static_cast<Symbol>(a));
    min_trailing(space, f, *next, buffer, target, terms, best);
    buffer.pop_back();
  }
}

LevelSpectrum language_spectrum(const ShiftSpace& space, const Potential& f, std::size_t n,
                                std::uint64_t budget) {
  const std::size_t d = f.depth();
  if (d == 0) {
    const double count = static_cast<double>(count_words(space, n));
    Spectrum buckets;
    if (count > 0) deposit(buckets, static_cast<double>(n) * (1.0 + f.value({})), count);
    return finish(n, buckets);
  }
  const std::size_t keep = d - 1;
  using Key = std::tuple<ShiftSpace::State, std::vector<Symbol>, long long>;
  struct Entry {
    double sum = 0.0;
    double count = 0.0;
  };
  std::map<Key, Entry> layer;
  layer[{space.initial_state(), {}, 0}] = {0.0, 1.0};
  for (std::size_t len = 0; len < n; ++len) {
    std::map<Key, Entry> next;
    for (const auto& [key, entry] : layer) {
      const auto& [state, window, q] = key;
      for (std::size_t a = 0; a < space.alphabet_size(); ++a) {
        const auto to = space.step(state, static_cast<Symbol>(a));
        if (!to) continue;
        std::vector<Symbol> grown = window;
        grown.push_back(static_cast<Symbol>(a));
        double sum = entry.sum;
        if (grown.size() == d) {
          sum += f.value(grown);
          grown.erase(grown.begin());
        }
        auto& slot = next[{*to, std::move(grown), quantize(sum)}];
        if (slot.count == 0.0) slot.sum = sum;
        slot.count += entry.count;
      }
    }
    if (next.size() > budget) {
      throw BudgetExceeded("level spectrum: more than " + std::to_string(budget) +
                           " dynamic-programming states");
    }
    layer = std::move(next);
  }
  std::map<std::pair<ShiftSpace::State, std::vector<Symbol>>, double> trailing;
  Spectrum buckets;
  for (const auto& [key, entry] : layer) {
    const auto& [state, window, q] = key;
    double tail = 0.0;
    if (keep > 0) {
      auto it = trailing.find({state, window});
      if (it == trailing.end()) {
        std::vector<Symbol> buffer = window;
        double best = kInf;
        min_trailing(space, f, state, buffer, window.size() + keep, window.size(), best);
        if (best == kInf) {
          throw NonExtendableWord("no admissible extension at level " + std::to_string(n));
        }
        it = trailing.emplace(std::make_pair(state, window), best).first;
      }
      tail = it->second;
    }
    deposit(buckets, static_cast<double>(n) + entry.sum + tail, entry.count);
  }
  return finish(n, buckets);
}

}  // namespace

void LogSumExp::add(double log_term) {
  if (log_term == -kInf) return;
  if (log_term > max_) {
    const double scale = max_ == -kInf ? 0.0 : std::exp(max_ - log_term);
    sum_ *= scale;
    compensation_ *= scale;
    max_ = log_term;
  }
  const double term = std::exp(log_term - max_);
  const double t = sum_ + term;
  if (std::abs(sum_) >= std::abs(term)) {
    compensation_ += (sum_ - t) + term;
  } else {
    compensation_ += (term - t) + sum_;
  }
  sum_ = t;
}

void LogSumExp::merge(const LogSumExp& other) {
  if (other.empty()) return;
  add(other.max_ + std::log(other.sum_ + other.compensation_));
}

double LogSumExp::value() const {
  if (empty()) return -kInf;
  return max_ + std::log(sum_ + compensation_);
}

LevelSpectrum level_spectrum(const WordFamily& family, const Potential& f, std::size_t n,
                             std::uint64_t budget) {
  if (n == 0) throw ConfigError("level spectrum needs n ≥ 1");
  const ShiftSpace& space = family.space();
  if (family.is_language()) return language_spectrum(space, f, n, budget);
  const std::uint64_t total = count_words(space, n);
  if (total > budget) {
    throw BudgetExceeded("level spectrum: ♯L_" + std::to_string(n) + " = " +
                         std::to_string(total) + " exceeds the enumeration budget");
  }
  Spectrum buckets;
  family.for_each(n, [&](const Word& w) {
    deposit(buckets, static_cast<double>(n) + birkhoff_inf(space, f, w), 1.0);
  });
  return finish(n, buckets);
}

double log_partition(const LevelSpectrum& spectrum, double s) {
  LogSumExp acc;
  for (std::size_t i = 0; i < spectrum.weights.size(); ++i) {
    acc.add(-s * spectrum.weights[i], spectrum.log_multiplicities[i]);
  }
  return acc.value();
}

double partition_sum(const WordFamily& family, const Potential& f, double s, std::size_t n,
                     std::uint64_t budget) {
  return std::exp(log_partition(level_spectrum(family, f, n, budget), s));
}

double tail_median(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("tail median of an empty sequence");
  const std::size_t k =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.3 * values.size())));
  std::vector<double> tail(values.end() - static_cast<std::ptrdiff_t>(k), values.end());
  std::sort(tail.begin(), tail.end());
  if (k % 2 == 1) return tail[k / 2];
  return 0.5 * (tail[k / 2 - 1] + tail[k / 2]);
}

double tail_spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const std::size_t k =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.3 * values.size())));
  const auto [lo, hi] =
      std::minmax_element(values.end() - static_cast<std::ptrdiff_t>(k), values.end());
  return *hi - *lo;
}

EntropyEstimate entropy_estimate(const WordFamily& family, std::size_t n_max,
                                 std::uint64_t budget) {
  EntropyEstimate out;
  out.family = family.name();
  std::vector<double> ratios;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::uint64_t count = 0;
    try {
      count = family.is_language() ? count_words(family.space(), n) : family.count(n, budget);
    } catch (const BudgetExceeded&) {
      // ♯L_n left 64 bits; the table ends here.
      if (out.rows.empty()) throw;
      break;
    }
    if (count == 0) continue;
    EntropyRow row;
    row.n = n;
    row.count = count;
    row.per_symbol = std::log(static_cast<double>(count)) / static_cast<double>(n);
    if (!out.rows.empty()) {
      const auto& prev = out.rows.back();
      row.ratio = std::log(static_cast<double>(count) / static_cast<double>(prev.count)) /
                  static_cast<double>(n - prev.n);
      ratios.push_back(row.ratio);
    }
    out.rows.push_back(row);
  }
  if (out.rows.empty()) throw EmptyLevel("family is empty up to n = " + std::to_string(n_max));
  out.estimate = ratios.empty() ? out.rows.back().per_symbol : tail_median(ratios);
  return out;
}

PressureEstimate pressure_estimate(const WordFamily& family, const Potential& f, double s,
                                   std::size_t n_max, std::uint64_t budget) {
  PressureEstimate out;
  out.family = family.name();
  out.s = s;
  std::vector<double> ratios;
  double prev_log = 0.0;
  for (std::size_t n : populated_levels(family, n_max, budget)) {
    const double log_lambda = log_partition(level_spectrum(family, f, n, budget), s);
    PressureRow row;
    row.n = n;
    row.per_symbol = log_lambda / static_cast<double>(n);
    if (!out.rows.empty()) {
      row.ratio = (log_lambda - prev_log) / static_cast<double>(n - out.rows.back().n);
      ratios.push_back(row.ratio);
    }
    prev_log = log_lambda;
    out.rows.push_back(row);
  }
  if (out.rows.empty()) throw EmptyLevel("family is empty up to n = " + std::to_string(n_max));
  out.extrapolated = ratios.empty() ? out.rows.back().per_symbol : tail_median(ratios);
  return out;
}

LevelRoot solve_sn(const LevelSpectrum& spectrum, const Potential& f, double tol) {
  if (spectrum.empty()) throw EmptyLevel("solve_sn on an empty level");
  LevelRoot out;
  out.n = spectrum.n;
  const double n = static_cast<double>(spectrum.n);
  out.bracket_lo = spectrum.log_count / (n * (1.0 + f.max_value()));
  out.bracket_hi = spectrum.log_count / (n * (1.0 + f.min_value()));
  if (spectrum.log_count <= 0.0) {
    out.s = 0.0;
    out.residual = log_partition(spectrum, 0.0);
    return out;
  }
  // Widen by a hair so rounding in W cannot push the root outside.
  double lo = out.bracket_lo * (1.0 - 1e-12);
  double hi = out.bracket_hi * (1.0 + 1e-12);
  double mid = 0.5 * (lo + hi);
  double value = log_partition(spectrum, mid);
  for (int iter = 0; iter < 2000; ++iter) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    value = log_partition(spectrum, mid);
    if (value > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol && std::abs(value) <= tol * n) break;
  }
  out.s = mid;
  out.residual = value;
  return out;
}

double solve_sn(const WordFamily& family, const Potential& f, std::size_t n, double tol) {
  return solve_sn(level_spectrum(family, f, n), f, tol).s;
}

namespace {

double ratio_root(const LevelSpectrum& a, const LevelSpectrum& b, double hint, double tol) {
  auto diff = [&](double s) { return log_partition(b, s) - log_partition(a, s); };
  if (diff(0.0) <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(hint, 1e-6);
  int widen = 0;
  while (diff(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++widen > 60) return std::numeric_limits<double>::quiet_NaN();
  }
  for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (diff(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BowenSolution bowen_root(const WordFamily& family, const Potential& f,
                         const std::vector<std::size_t>& schedule, double tol,
                         std::uint64_t budget) {
  if (schedule.empty()) throw ConfigError("bowen root: empty schedule");
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
    throw ConfigError("bowen root: schedule must be strictly increasing");
  }
  BowenSolution out;
  out.family = family.name();
  out.tolerance = tol;
  std::vector<LevelSpectrum> spectra;
  std::vector<double> direct;
  for (std::size_t n : schedule) {
    spectra.push_back(level_spectrum(family, f, n, budget));
    out.per_level.push_back(solve_sn(spectra.back(), f, tol));
    direct.push_back(out.per_level.back().s);
  }
  std::vector<double> ratios;
  std::vector<double> growth;
  for (std::size_t j = 0; j + 1 < spectra.size(); ++j) {
    const double hint = 2.0 * std::max(out.per_level[j].bracket_hi,
                                       out.per_level[j + 1].bracket_hi) + 1e-3;
    const double s = ratio_root(spectra[j], spectra[j + 1], hint, tol);
    out.ratio_roots.push_back({schedule[j], schedule[j + 1], s});
    if (std::isfinite(s)) ratios.push_back(s);
    growth.push_back((spectra[j + 1].log_count - spectra[j].log_count) /
                     static_cast<double>(schedule[j + 1] - schedule[j]));
  }
  out.direct_limit = tail_median(direct);
  out.direct_spread = tail_spread(direct);
  const auto [lo, hi] = std::minmax_element(direct.begin(), direct.end());
  out.level_spread = *hi - *lo;
  if (ratios.empty()) {
    out.limit = out.direct_limit;
    out.spread = out.direct_spread;
  } else {
    out.limit = tail_median(ratios);
    out.spread = tail_spread(ratios);
  }
  const double h = growth.empty()
                       ? spectra.back().log_count / static_cast<double>(schedule.back())
                       : tail_median(growth);
  out.bracket_lo = h / (1.0 + f.max_value());
  out.bracket_hi = h / (1.0 + f.min_value());
  return out;
}

std::vector<std::size_t> populated_levels(const WordFamily& family, std::size_t n_max,
                                          std::uint64_t budget) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::uint64_t count =
        family.is_language() ? count_words(family.space(), n) : family.count(n, budget);
    if (count > 0) out.push_back(n);
  }
  return out;
}

}  // namespace symrec
