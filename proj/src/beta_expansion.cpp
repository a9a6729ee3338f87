#include "symrec/beta_expansion.hpp"

#include <cmath>
#include <map>
#include <regex>

#include "symrec/errors.hpp"

namespace symrec {
namespace {

Integer integer_sqrt(const Integer& n) { return boost::multiprecision::sqrt(n); }

std::size_t bits_of(const Integer& n) {
  return n == 0 ? 0 : boost::multiprecision::msb(abs(n)) + 1;
}

std::size_t bits_of(const Rational& q) {
  return std::max(bits_of(Integer(numerator(q))),
                  bits_of(Integer(denominator(q))));
}

Rational parse_decimal(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(Integer(text));
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  Integer scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Integer digits(whole.empty() || whole == "-" ? std::string("0") : whole);
  const bool negative = !whole.empty() && whole[0] == '-';
  Integer fraction(frac.empty() ? std::string("0") : frac);
  Rational value = Rational(abs(digits)) + Rational(fraction, scale);
  return negative ? -value : value;
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, Integer radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {
  if (d_ < 0) throw ConfigError("quadratic number: negative radicand");
  const Integer root = integer_sqrt(d_);
  if (root * root == d_) {
    a_ += b_ * Rational(root);
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

int QuadraticNumber::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa >= 0 && sb > 0) return 1;
  if (sa <= 0 && sb < 0) return -1;
  // Opposite signs: compare a^2 with b^2·D. D is not a square, so no tie.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (sa > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

Integer QuadraticNumber::floor() const {
  Integer k(static_cast<long long>(std::floor(approx())));
  while ((*this - k).sign() < 0) --k;
  while ((*this - (k + 1)).sign() >= 0) ++k;
  return k;
}

double QuadraticNumber::approx() const {
  return a_.convert_to<double>() +
         b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
}

std::size_t QuadraticNumber::bit_size() const {
  return std::max(bits_of(a_), bits_of(b_));
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& rhs) const {
  if (b_ != 0 && rhs.b_ != 0 && d_ != rhs.d_) {
    throw ConfigError("quadratic number: mixed radicands");
  }
  const Integer d = b_ != 0 ? d_ : rhs.d_;
  return QuadraticNumber(a_ * rhs.a_ + b_ * rhs.b_ * Rational(d),
                         a_ * rhs.b_ + b_ * rhs.a_, d);
}

QuadraticNumber QuadraticNumber::operator-(const Integer& k) const {
  return QuadraticNumber(a_ - Rational(k), b_, d_);
}

QuadraticNumber parse_beta(const std::string& text) {
  static const std::regex decimal(R"(^\s*(\d+(?:\.\d*)?)\s*$)");
  static const std::regex bare_sqrt(R"(^\s*sqrt\s*\(?\s*(\d+)\s*\)?\s*$)");
  static const std::regex surd(
      R"(^\s*\(?\s*(-?\d+(?:\.\d+)?)\s*([+-])\s*sqrt\s*\(?\s*(\d+)\s*\)?\s*\)?\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, decimal)) {
    return QuadraticNumber(parse_decimal(m[1]), 0, 1);
  }
  if (std::regex_match(text, m, bare_sqrt)) {
    return QuadraticNumber(0, 1, Integer(m[1].str()));
  }
  if (std::regex_match(text, m, surd)) {
    const Rational a = parse_decimal(m[1]);
    const Rational b = m[2].str() == "-" ? Rational(-1) : Rational(1);
    const Rational c = m[4].matched ? parse_decimal(m[4]) : Rational(1);
    if (c == 0) throw ConfigError("beta '" + text + "': zero denominator");
    return QuadraticNumber(a / c, b / c, Integer(m[3].str()));
  }
  throw ConfigError("beta '" + text +
                    "': expected a decimal or the form (a+sqrt b)/c");
}

BetaExpansion BetaExpansion::quasi_greedy(const std::string& beta_text,
                                          std::size_t horizon,
                                          std::size_t precision_bits) {
  auto out = quasi_greedy(parse_beta(beta_text), horizon, precision_bits);
  out.beta_text_ = beta_text;
  return out;
}

BetaExpansion BetaExpansion::quasi_greedy(const QuadraticNumber& beta,
                                          std::size_t horizon,
                                          std::size_t precision_bits) {
  if ((beta - Integer(1)).sign() <= 0) {
    throw ConfigError("beta must exceed 1");
  }
  BetaExpansion out;
  out.horizon_ = horizon;
  out.precision_bits_ = precision_bits;
  out.beta_approx_ = beta.approx();
  const Integer floor_beta = beta.floor();
  const bool integral = (beta - floor_beta).is_zero();
  const Integer ceil_beta = integral ? floor_beta : floor_beta + 1;
  if (ceil_beta > Integer(kMaxAlphabet)) {
    throw ConfigError("beta too large for the 16-bit alphabet");
  }
  out.alphabet_size_ = ceil_beta.convert_to<std::size_t>();

  std::vector<Symbol> digits;
  std::map<QuadraticNumber, std::size_t> seen;
  QuadraticNumber x(1, 0, beta.radicand());
  while (true) {
    const QuadraticNumber y = beta * x;
    const Integer d = y.floor();
    x = y - d;
    digits.push_back(d.convert_to<Symbol>());
    if (x.is_zero()) {
      // Finite greedy expansion: switch to the quasi-greedy periodic form.
      digits.back() -= 1;
      out.period_ = std::move(digits);
      out.periodic_ = true;
      out.greedy_finite_ = true;
      break;
    }
    if (const auto it = seen.find(x); it != seen.end()) {
      out.preperiod_.assign(digits.begin(), digits.begin() + it->second);
      out.period_.assign(digits.begin() + it->second, digits.end());
      out.periodic_ = true;
      break;
    }
    seen.emplace(x, digits.size());
    if (digits.size() >= horizon) {
      out.preperiod_ = std::move(digits);
      break;
    }
    if (x.bit_size() > precision_bits) {
      throw PrecisionExhausted("beta expansion: exact remainders exceed " +
                               std::to_string(precision_bits) + " bits after " +
                               std::to_string(digits.size()) + " digits");
    }
  }
  return out;
}

Symbol BetaExpansion::digit(std::size_t j) const {
  if (j < preperiod_.size()) return preperiod_[j];
  if (!periodic_) {
    throw PrecisionExhausted("beta expansion: digit " + std::to_string(j + 1) +
                             " is beyond the generated horizon of " +
                             std::to_string(preperiod_.size()));
  }
  return period_[(j - preperiod_.size()) % period_.size()];
}

std::vector<Symbol> BetaExpansion::prefix(std::size_t n) const {
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back(digit(j));
  return out;
}

}  // namespace symrec
