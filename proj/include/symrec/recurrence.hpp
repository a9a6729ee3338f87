#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symrec/potential.hpp"
#include "symrec/shifts.hpp"
#include "symrec/thermo.hpp"

namespace symrec {

/// A positive target function ψ on the positive integers.
///   exponential(α)      e^{-αn}
///   polynomial(c, κ)    c·n^{-κ}
///   product(c, κ, α)    c·n^{-κ}·e^{-αn}   (κ may be negative)
///   constant(c)
///   table               ψ(1), ψ(2), ... with an optional known lower bound for liminf ψ
class PsiFunction {
 public:
  enum class Form { exponential, polynomial, product, constant, table };

  static PsiFunction exponential(double alpha);
  static PsiFunction polynomial(double c, double kappa);
  static PsiFunction product(double c, double kappa, double alpha);
  static PsiFunction constant(double c);
  static PsiFunction table(std::vector<double> samples,
                           std::optional<double> liminf_lower_bound = std::nullopt);

  Form form() const { return form_; }
  double c() const { return c_; }
  double kappa() const { return kappa_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& samples() const { return samples_; }

  /// log ψ(n), n ≥ 1. Tables throw ConfigError past their last sample.
  double log_value(std::size_t n) const;
  double value(std::size_t n) const;

  /// First n from which ψ is nonincreasing; nullopt if it never settles
  /// (tables: on the sampled range).
  std::optional<std::size_t> nonincreasing_from() const;
  bool nonincreasing() const { return nonincreasing_from() == std::size_t{1}; }
  /// liminf ψ(n) > 0, decided exactly for closed forms; tables need the bound.
  bool liminf_positive() const;

  std::string describe() const;

 private:
  Form form_ = Form::constant;
  double c_ = 1.0;
  double kappa_ = 0.0;
  double alpha_ = 0.0;
  std::vector<double> samples_;
  std::optional<double> liminf_bound_;
};

struct RecurrenceExponent {
  double b = 0.0;
  bool exact = true;  ///< false: tail minimum over the samples, a finite-horizon estimate
  std::size_t horizon = 0;
};

/// b = liminf (-log ψ(n))/n.
RecurrenceExponent recurrence_exponent(const PsiFunction& psi, std::size_t horizon = 30);

struct DimensionReport {
  std::string set_kind;  ///< "R(psi)" or "R(f)"
  std::string branch;    ///< "C1", "C2" or "bowen"
  double h = 0.0;
  std::optional<EntropyEstimate> entropy;
  std::optional<RecurrenceExponent> exponent;
  std::optional<BowenSolution> bowen;
  double dimension = 0.0;
  std::vector<std::string> diagnostics;
};

enum class PsiBranch { automatic, c1, c2 };

/// h when liminf ψ > 0, h/(1+b) when ψ is (eventually) nonincreasing.
/// Throws HypothesisViolated otherwise, or when a forced branch does not apply.
DimensionReport dimension_R_psi(const ShiftSpace& space, const PsiFunction& psi,
                                std::size_t horizon = 30,
                                PsiBranch branch = PsiBranch::automatic);

/// The root of P(-s(f+1)) = 0 over L, estimated on `schedule` (1..24 if empty).
DimensionReport dimension_R_f(const ShiftSpace& space, const Potential& f,
                              std::vector<std::size_t> schedule = {}, double tol = 1e-10);

struct CoverRow {
  std::size_t n = 0;
  double log_term = 0.0;  ///< log Σ_{w ∈ L_n} diam(J(w))^s
  double ratio = 0.0;     ///< term_n / term_{n-1}; 0 on the first row
};

struct CoverAudit {
  double s = 0.0;
  std::vector<CoverRow> rows;
  double log_partial_sum = 0.0;
  /// Geometric-mean term ratio over the audited range.
  double mean_ratio = 0.0;
  bool decaying = false;
  bool growing = false;
};

/// Covers by the cylinders J(w) = [w (w)^r] of diameter at most e^{-n}ψ(n).
CoverAudit cover_sum_audit(const ShiftSpace& space, const PsiFunction& psi, double s,
                           std::size_t n_from, std::size_t n_to);
/// Covers of diameter at most e^{-n - inf S_n f}.
CoverAudit cover_sum_audit(const ShiftSpace& space, const Potential& f, double s,
                           std::size_t n_from, std::size_t n_to);

struct CoverCrossing {
  double step = 0.01;
  double crossing = 0.0;       ///< first grid s with mean ratio < 1
  double last_growing = 0.0;   ///< last grid s before it
  std::vector<std::pair<double, double>> scan;  ///< (s, mean ratio)
};

/// Scans s = 0, step, 2·step, ... up to s_max for the point where the cover
/// sums switch from growth to decay.
CoverCrossing cover_crossing(const std::function<CoverAudit(double)>& audit, double step,
                             double s_max);

}  // namespace symrec
