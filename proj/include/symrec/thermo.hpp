#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symrec/potential.hpp"
#include "symrec/predicates.hpp"

namespace symrec {

/// Streaming log(Σ exp(x_i)) with Neumaier-compensated accumulation of the
/// rescaled terms, so merge order moves the result by at most a few ulps.
class LogSumExp {
 public:
  void add(double log_term);
  void add(double log_term, double log_multiplicity) { add(log_term + log_multiplicity); }
  void merge(const LogSumExp& other);
  bool empty() const { return max_ == -kInf; }
  double value() const;

 private:
  static constexpr double kInf = __builtin_inf();
  double max_ = -kInf;
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// The distinct values of W(w) = n + inf_{[w]} S_n f over D_n with their
/// multiplicities. Under g = -(f+1), sup_{[w]} S_n g = -W(w), so every
/// partition sum at level n is a function of this spectrum alone.
struct LevelSpectrum {
  std::size_t n = 0;
  std::vector<double> weights;
  std::vector<double> log_multiplicities;
  double log_count = 0.0;  ///< log ♯D_n
  double min_weight = 0.0;
  double max_weight = 0.0;

  bool empty() const { return weights.empty(); }
};

/// Builds the level spectrum. The whole language runs as a dynamic program
/// over (automaton state, last depth-1 symbols, running sum); predicate
/// families enumerate L_n. Throws EmptyLevel when D_n = ∅.
LevelSpectrum level_spectrum(const WordFamily& family, const Potential& f, std::size_t n,
                             std::uint64_t budget = kDefaultEnumerationBudget);

/// log Λ_n(D, s·g) = log Σ_{w ∈ D_n} exp(-s·W(w)).
double log_partition(const LevelSpectrum& spectrum, double s);

double partition_sum(const WordFamily& family, const Potential& f, double s, std::size_t n,
                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Median of the last ⌈30%⌉ of the values (at least one).
double tail_median(const std::vector<double>& values);
/// max - min over the same tail window.
double tail_spread(const std::vector<double>& values);

struct EntropyRow {
  std::size_t n = 0;
  std::uint64_t count = 0;
  double per_symbol = 0.0;  ///< (1/n) log ♯D_n
  double ratio = 0.0;       ///< log(♯D_n / ♯D_prev) / (n - prev); 0 on the first row
};

struct EntropyEstimate {
  std::string family;
  std::vector<EntropyRow> rows;  ///< populated levels only
  double estimate = 0.0;         ///< tail median of the ratio column
  bool finite_horizon = true;
};

EntropyEstimate entropy_estimate(const WordFamily& family, std::size_t n_max,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

struct PressureRow {
  std::size_t n = 0;
  double per_symbol = 0.0;  ///< (1/n) log Λ_n
  double ratio = 0.0;       ///< (log Λ_n - log Λ_prev)/(n - prev)
};

/// Finite-horizon view of P(D, -s(f+1)) = limsup (1/n) log Λ_n.
struct PressureEstimate {
  std::string family;
  double s = 0.0;
  std::vector<PressureRow> rows;
  double extrapolated = 0.0;  ///< tail median of the ratio column
  std::string direction = "limsup";
};

PressureEstimate pressure_estimate(const WordFamily& family, const Potential& f, double s,
                                   std::size_t n_max,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

struct LevelRoot {
  std::size_t n = 0;
  double s = 0.0;
  double bracket_lo = 0.0;  ///< (log ♯D_n)/(n ‖f+1‖_max)
  double bracket_hi = 0.0;  ///< (log ♯D_n)/(n ‖f+1‖_min)
  double residual = 0.0;    ///< log Λ_n at s
};

/// s_n(D): the root of Σ_{w ∈ D_n} exp(-s·W(w)) = 1, by bisection on the
/// bracket above. Unique since every term decreases strictly in s.
LevelRoot solve_sn(const LevelSpectrum& spectrum, const Potential& f, double tol = 1e-10);
double solve_sn(const WordFamily& family, const Potential& f, std::size_t n,
                double tol = 1e-10);

struct RatioRoot {
  std::size_t from = 0;
  std::size_t to = 0;
  double s = 0.0;
};

struct BowenSolution {
  std::string family;
  std::vector<LevelRoot> per_level;
  /// Roots of log Λ_to(s) - log Λ_from(s) = 0 between consecutive levels;
  /// the finite-difference pressure converges much faster than s_n itself.
  std::vector<RatioRoot> ratio_roots;
  double limit = 0.0;          ///< tail median of the ratio roots
  double spread = 0.0;         ///< tail spread of the ratio roots
  double direct_limit = 0.0;   ///< tail median of s_n
  double direct_spread = 0.0;  ///< tail spread of s_n
  double level_spread = 0.0;   ///< max - min of s_n over the whole schedule
  double bracket_lo = 0.0;     ///< h / ‖f+1‖_max
  double bracket_hi = 0.0;     ///< h / ‖f+1‖_min
  double tolerance = 0.0;
};

/// Per-level roots over an increasing schedule (each D_n nonempty) and a
/// finite-horizon estimate of the root of P(D, -s(f+1)) = 0.
BowenSolution bowen_root(const WordFamily& family, const Potential& f,
                         const std::vector<std::size_t>& schedule, double tol = 1e-10,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// 1..n_max, restricted to n with D_n ≠ ∅.
std::vector<std::size_t> populated_levels(const WordFamily& family, std::size_t n_max,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace symrec
