#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symrec/words.hpp"

namespace symrec {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// An element a + b·sqrt(D) of a real quadratic field (or of Q when b = 0).
/// Arithmetic is exact; sign and floor are decided without rounding.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a, Rational b, Integer radicand);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Integer& radicand() const { return d_; }

  int sign() const;
  Integer floor() const;
  double approx() const;
  /// Largest bit length among the numerators and denominators.
  std::size_t bit_size() const;

  QuadraticNumber operator*(const QuadraticNumber& rhs) const;
  QuadraticNumber operator-(const Integer& k) const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ < y.a_ || (x.a_ == y.a_ && x.b_ < y.b_);
  }

 private:
  Rational a_{0};
  Rational b_{0};
  Integer d_{1};
};

/// Parses "1.8", "3", "sqrt 2", "(1+sqrt5)/2", "(a - sqrt b)/c".
QuadraticNumber parse_beta(const std::string& text);

/// Quasi-greedy beta-expansion w* of 1, stored as preperiod + period when the
/// orbit of 1 under x -> beta·x mod 1 was seen to close, or as a plain prefix
/// otherwise.
class BetaExpansion {
 public:
  /// Runs the greedy map exactly. A finite greedy expansion d_1..d_m is turned
  /// into (d_1..d_{m-1}(d_m - 1))^∞. Throws PrecisionExhausted if numbers
  /// grow past `precision_bits` before `horizon` digits are produced.
  static BetaExpansion quasi_greedy(const QuadraticNumber& beta,
                                    std::size_t horizon,
                                    std::size_t precision_bits = 4096);
  static BetaExpansion quasi_greedy(const std::string& beta_text,
                                    std::size_t horizon,
                                    std::size_t precision_bits = 4096);

  /// Digit w*_{j+1} (zero-based j). Throws PrecisionExhausted past the
  /// generated horizon of a non-periodic expansion.
  Symbol digit(std::size_t j) const;

  bool periodic() const { return periodic_; }
  std::span<const Symbol> preperiod() const { return preperiod_; }
  std::span<const Symbol> period() const { return period_; }
  std::vector<Symbol> prefix(std::size_t n) const;

  /// ⌈β⌉.
  std::size_t alphabet_size() const { return alphabet_size_; }
  double beta() const { return beta_approx_; }
  const std::string& beta_text() const { return beta_text_; }
  bool greedy_was_finite() const { return greedy_finite_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t precision_bits() const { return precision_bits_; }

 private:
  std::vector<Symbol> preperiod_;
  std::vector<Symbol> period_;
  bool periodic_ = false;
  bool greedy_finite_ = false;
  std::size_t alphabet_size_ = 2;
  std::size_t horizon_ = 0;
  std::size_t precision_bits_ = 0;
  double beta_approx_ = 0.0;
  std::string beta_text_;
};

}  // namespace symrec
