#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "symrec/beta_expansion.hpp"
#include "symrec/words.hpp"

namespace symrec {

/// {start, start + step, start + 2·step, ...}; step 1 means "all ≥ start".
struct ArithmeticTail {
  std::size_t start = 0;
  std::size_t step = 1;
};

/// Allowed gap lengths of an S-gap shift: a finite list plus an optional
/// arithmetic tail.
struct GapSet {
  std::vector<std::size_t> listed;
  std::optional<ArithmeticTail> tail;

  bool contains(std::size_t gap) const;
  /// True when S is finite, which the dimension formulas here do not cover.
  bool is_finite() const { return !tail.has_value(); }
  std::string describe() const;
};

/// A one-sided shift space over {0, ..., p-1}, given by its language.
///
/// Every kind exposes a deterministic automaton over its language: `step`
/// rejects exactly the symbols that leave L(X). Counting and enumeration run
/// on the automaton; `is_admissible` checks the defining condition directly.
class ShiftSpace {
 public:
  using State = std::uint64_t;
  enum class Kind { full, beta, sgap, forbidden };

  static ShiftSpace full(std::size_t p);
  static ShiftSpace beta(BetaExpansion expansion);
  static ShiftSpace sgap(GapSet gaps);
  /// Sequences avoiding every listed word. Words that avoid the list but
  /// cannot be extended forever are not in the language.
  static ShiftSpace forbidden(std::vector<Word> words, std::size_t p);
  /// The shift forbidding "11".
  static ShiftSpace golden_mean() { return forbidden({Word{1, 1}}, 2); }

  Kind kind() const;
  std::size_t alphabet_size() const;
  std::string describe() const;

  bool is_admissible(const Word& w) const;

  State initial_state() const;
  std::optional<State> step(State state, Symbol a) const;
  std::optional<State> run(std::span<const Symbol> symbols) const;
  std::optional<State> run(std::span<const Symbol> symbols, State from) const;

  const BetaExpansion* beta_expansion() const;
  const GapSet* gap_set() const;
  const std::vector<Word>* forbidden_words() const;

 private:
  struct Impl;
  explicit ShiftSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// ♯L_n, by dynamic programming over the language automaton. Throws
/// BudgetExceeded if the count does not fit in 64 bits.
std::uint64_t count_words(const ShiftSpace& space, std::size_t n);

/// Visits L_n in lexicographic order.
void for_each_word(const ShiftSpace& space, std::size_t n,
                   const std::function<void(const Word&)>& visit);

/// L_n in lexicographic order. Throws BudgetExceeded if ♯L_n > budget.
std::vector<Word> enumerate_words(const ShiftSpace& space, std::size_t n,
                                  std::uint64_t budget);

/// Random element of L_n, uniform up to rounding of the log completion counts.
class WordSampler {
 public:
  explicit WordSampler(ShiftSpace space) : space_(std::move(space)) {}
  Word sample(std::size_t n, std::mt19937_64& rng);

 private:
  /// log of the number of admissible continuations of length `remaining`.
  double log_completions(ShiftSpace::State state, std::size_t remaining);

  ShiftSpace space_;
  std::vector<std::unordered_map<ShiftSpace::State, double>> memo_;
};

}  // namespace symrec
