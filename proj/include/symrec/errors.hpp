#pragma once

#include <stdexcept>
#include <string>

namespace symrec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or construction outgrew its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic for a beta expansion outgrew its precision budget, or a
/// digit beyond the generated horizon was requested.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// The input falls outside the hypotheses a dimension formula is proved under.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class NonExtendableWord : public Error {
 public:
  using Error::Error;
};

/// D_n is empty, so no partition sum or level root exists at n.
class EmptyLevel : public Error {
 public:
  using Error::Error;
};

/// A Moran level produced a word outside the language.
class AdmissibilityViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace symrec
