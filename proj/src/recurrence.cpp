#include "symrec/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symrec/errors.hpp"

namespace symrec {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ConfigError(std::string("psi: ") + what + " must be finite");
}

}  // namespace

PsiFunction PsiFunction::exponential(double alpha) {
  require_finite(alpha, "alpha");
  PsiFunction psi;
  psi.form_ = Form::exponential;
  psi.alpha_ = alpha;
  return psi;
}

PsiFunction PsiFunction::polynomial(double c, double kappa) {
  require_finite(kappa, "kappa");
  if (!(c > 0) || !std::isfinite(c)) throw ConfigError("psi: c must be positive");
  PsiFunction psi;
  psi.form_ = Form::polynomial;
  psi.c_ = c;
  psi.kappa_ = kappa;
  return psi;
}

PsiFunction PsiFunction::product(double c, double kappa, double alpha) {
  PsiFunction psi = polynomial(c, kappa);
  require_finite(alpha, "alpha");
  psi.form_ = Form::product;
  psi.alpha_ = alpha;
  return psi;
}

PsiFunction PsiFunction::constant(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw ConfigError("psi: constant must be positive");
  PsiFunction psi;
  psi.form_ = Form::constant;
  psi.c_ = c;
  return psi;
}

PsiFunction PsiFunction::table(std::vector<double> samples,
                               std::optional<double> liminf_lower_bound) {
  if (samples.empty()) throw ConfigError("psi: empty table");
  for (double v : samples) {
    if (!(v > 0) || !std::isfinite(v)) throw ConfigError("psi: table values must be positive");
  }
  PsiFunction psi;
  psi.form_ = Form::table;
  psi.samples_ = std::move(samples);
  psi.liminf_bound_ = liminf_lower_bound;
  return psi;
}

double PsiFunction::log_value(std::size_t n) const {
  if (n == 0) throw ConfigError("psi is defined on n ≥ 1");
  const double x = static_cast<double>(n);
  switch (form_) {
    case Form::exponential:
      return -alpha_ * x;
    case Form::polynomial:
      return std::log(c_) - kappa_ * std::log(x);
    case Form::product:
      return std::log(c_) - kappa_ * std::log(x) - alpha_ * x;
    case Form::constant:
      return std::log(c_);
    case Form::table:
      if (n > samples_.size()) {
        throw ConfigError("psi table has no sample at n = " + std::to_string(n));
      }
      return std::log(samples_[n - 1]);
  }
  return 0.0;
}

double PsiFunction::value(std::size_t n) const { return std::exp(log_value(n)); }

std::optional<std::size_t> PsiFunction::nonincreasing_from() const {
  switch (form_) {
    case Form::constant:
      return 1;
    case Form::exponential:
      if (alpha_ >= 0) return 1;
      return std::nullopt;
    case Form::polynomial:
      if (kappa_ >= 0) return 1;
      return std::nullopt;
    case Form::product: {
      // d/dn log ψ = -κ/n - α ≤ 0  iff  n ≥ -κ/α.
      if (alpha_ > 0) {
        if (kappa_ >= 0) return 1;
        return static_cast<std::size_t>(std::ceil(-kappa_ / alpha_));
      }
      if (alpha_ == 0 && kappa_ >= 0) return 1;
      return std::nullopt;
    }
    case Form::table: {
      std::size_t from = 1;
      for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (samples_[i] > samples_[i - 1]) from = i + 1;
      }
      if (from >= samples_.size()) return std::nullopt;
      return from;
    }
  }
  return std::nullopt;
}

bool PsiFunction::liminf_positive() const {
  switch (form_) {
    case Form::constant:
      return true;
    case Form::exponential:
      return alpha_ <= 0;
    case Form::polynomial:
      return kappa_ <= 0;
    case Form::product:
      return alpha_ < 0 || (alpha_ == 0 && kappa_ <= 0);
    case Form::table:
      return liminf_bound_.has_value() && *liminf_bound_ > 0;
  }
  return false;
}

std::string PsiFunction::describe() const {
  std::ostringstream out;
  out.precision(12);
  switch (form_) {
    case Form::exponential:
      out << "exp(-" << alpha_ << "n)";
      break;
    case Form::polynomial:
      out << c_ << "*n^-" << kappa_;
      break;
    case Form::product:
      out << c_ << "*n^-" << kappa_ << "*exp(-" << alpha_ << "n)";
      break;
    case Form::constant:
      out << c_;
      break;
    case Form::table:
      out << "table[" << samples_.size() << "]";
      break;
  }
  return out.str();
}

RecurrenceExponent recurrence_exponent(const PsiFunction& psi, std::size_t horizon) {
  RecurrenceExponent out;
  out.horizon = horizon;
  switch (psi.form()) {
    case PsiFunction::Form::exponential:
    case PsiFunction::Form::product:
      out.b = psi.alpha();
      return out;
    case PsiFunction::Form::polynomial:
    case PsiFunction::Form::constant:
      out.b = 0.0;
      return out;
    case PsiFunction::Form::table:
      break;
  }
  const std::size_t last = std::min(horizon, psi.samples().size());
  if (last == 0) throw ConfigError("recurrence exponent: horizon must be ≥ 1");
  const std::size_t window =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.3 * last)));
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t n = last - window + 1; n <= last; ++n) {
    b = std::min(b, -psi.log_value(n) / static_cast<double>(n));
  }
  out.b = b;
  out.exact = false;
  out.horizon = last;
  return out;
}

DimensionReport dimension_R_psi(const ShiftSpace& space, const PsiFunction& psi,
                                std::size_t horizon, PsiBranch branch) {
  const bool c1 = psi.liminf_positive();
  const auto settled = psi.nonincreasing_from();
  if (branch == PsiBranch::automatic) {
    if (c1) {
      branch = PsiBranch::c1;
    } else if (settled) {
      branch = PsiBranch::c2;
    } else {
      throw HypothesisViolated("psi " + psi.describe() +
                               " is neither nonincreasing nor bounded away from 0");
    }
  }
  if (branch == PsiBranch::c1 && !c1) {
    throw HypothesisViolated("C1 needs liminf psi > 0, which fails for " + psi.describe());
  }
  if (branch == PsiBranch::c2 && !settled) {
    throw HypothesisViolated("C2 needs a nonincreasing psi, which fails for " + psi.describe());
  }
  DimensionReport report;
  report.set_kind = "R(psi)";
  report.entropy = entropy_estimate(WordFamily(space), horizon);
  report.h = report.entropy->estimate;
  if (branch == PsiBranch::c1) {
    report.branch = "C1";
    report.dimension = report.h;
  } else {
    report.branch = "C2";
    report.exponent = recurrence_exponent(psi, horizon);
    report.dimension = report.h / (1.0 + report.exponent->b);
    if (!report.exponent->exact) {
      report.diagnostics.push_back("b is a tail minimum over the sampled range");
    }
    if (*settled > 1) {
      report.diagnostics.push_back("psi is nonincreasing from n = " + std::to_string(*settled));
    }
  }
  report.diagnostics.push_back("entropy is a finite-horizon estimate at n = " +
                               std::to_string(report.entropy->rows.back().n));
  return report;
}

DimensionReport dimension_R_f(const ShiftSpace& space, const Potential& f,
                              std::vector<std::size_t> schedule, double tol) {
  f.validate(space);
  if (schedule.empty()) {
    for (std::size_t n = 1; n <= 24; ++n) schedule.push_back(n);
  }
  DimensionReport report;
  report.set_kind = "R(f)";
  report.branch = "bowen";
  report.bowen = bowen_root(WordFamily(space), f, schedule, tol);
  report.dimension = report.bowen->limit;
  report.h = report.bowen->bracket_lo * (1.0 + f.max_value());
  report.diagnostics.push_back("root of a finite-horizon pressure estimate up to n = " +
                               std::to_string(schedule.back()));
  return report;
}

namespace {

CoverAudit finish_audit(double s, std::vector<CoverRow> rows) {
  CoverAudit audit;
  audit.s = s;
  LogSumExp total;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    total.add(rows[i].log_term);
    if (i > 0) rows[i].ratio = std::exp(rows[i].log_term - rows[i - 1].log_term);
  }
  audit.log_partial_sum = total.value();
  if (rows.size() >= 2) {
    const double span = static_cast<double>(rows.back().n - rows.front().n);
    audit.mean_ratio = std::exp((rows.back().log_term - rows.front().log_term) / span);
    audit.decaying = audit.mean_ratio < 1.0;
    audit.growing = audit.mean_ratio > 1.0;
  }
  audit.rows = std::move(rows);
  return audit;
}

void check_range(std::size_t n_from, std::size_t n_to) {
  if (n_from == 0 || n_to <= n_from) {
    throw ConfigError("cover audit: need 1 ≤ n_from < n_to");
  }
}

}  // namespace

CoverAudit cover_sum_audit(const ShiftSpace& space, const PsiFunction& psi, double s,
                           std::size_t n_from, std::size_t n_to) {
  check_range(n_from, n_to);
  std::vector<CoverRow> rows;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    const double log_count = std::log(static_cast<double>(count_words(space, n)));
    const double log_diam = -static_cast<double>(n) + psi.log_value(n);
    rows.push_back({n, log_count + s * log_diam, 0.0});
  }
  return finish_audit(s, std::move(rows));
}

CoverAudit cover_sum_audit(const ShiftSpace& space, const Potential& f, double s,
                           std::size_t n_from, std::size_t n_to) {
  check_range(n_from, n_to);
  const WordFamily language(space);
  std::vector<CoverRow> rows;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    rows.push_back({n, log_partition(level_spectrum(language, f, n), s), 0.0});
  }
  return finish_audit(s, std::move(rows));
}

CoverCrossing cover_crossing(const std::function<CoverAudit(double)>& audit, double step,
                             double s_max) {
  if (!(step > 0)) throw ConfigError("cover crossing: step must be positive");
  CoverCrossing out;
  out.step = step;
  out.crossing = std::numeric_limits<double>::quiet_NaN();
  const auto steps = static_cast<std::size_t>(std::floor(s_max / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double s = static_cast<double>(i) * step;
    const CoverAudit a = audit(s);
    out.scan.emplace_back(s, a.mean_ratio);
    if (a.mean_ratio < 1.0) {
      out.crossing = s;
      break;
    }
    out.last_growing = s;
  }
  return out;
}

}  // namespace symrec
