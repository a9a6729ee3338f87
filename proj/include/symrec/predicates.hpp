#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symrec/shifts.hpp"
#include "symrec/words.hpp"

namespace symrec {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;

/// A named decidable set of words, used for the families G and F.
class WordPredicate {
 public:
  WordPredicate(std::string name, std::function<bool(const Word&)> test)
      : name_(std::move(name)), test_(std::move(test)) {}

  const std::string& name() const { return name_; }
  bool operator()(const Word& w) const { return test_(w); }

 private:
  std::string name_;
  std::function<bool(const Word&)> test_;
};

/// Built-in predicates, each intersected with the nonempty admissible words:
///   "language"               every nonempty word of L
///   "ends-with-<a>"          last symbol is a
///   "starts-with-<a>"        first symbol is a
///   "starts-and-ends-with-<a>"
///   "regex:<ECMAScript>"     whole-word match on the digit string (p ≤ 10)
WordPredicate make_predicate(const ShiftSpace& space, const std::string& spec);

/// A subset D of the language: all of L, or the words passing a predicate.
class WordFamily {
 public:
  explicit WordFamily(ShiftSpace space) : space_(std::move(space)) {}
  WordFamily(ShiftSpace space, WordPredicate predicate)
      : space_(std::move(space)), predicate_(std::move(predicate)) {}

  const ShiftSpace& space() const { return space_; }
  bool is_language() const { return !predicate_.has_value(); }
  std::string name() const { return predicate_ ? predicate_->name() : "language"; }

  bool contains(const Word& w) const;
  void for_each(std::size_t n, const std::function<void(const Word&)>& visit) const;
  /// ♯D_n. For predicate families this enumerates L_n, so ♯L_n must fit the budget.
  std::uint64_t count(std::size_t n,
                      std::uint64_t budget = kDefaultEnumerationBudget) const;
  std::vector<Word> words(std::size_t n,
                          std::uint64_t budget = kDefaultEnumerationBudget) const;

 private:
  ShiftSpace space_;
  std::optional<WordPredicate> predicate_;
};

}  // namespace symrec
