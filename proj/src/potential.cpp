#include "symrec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symrec/errors.hpp"

namespace symrec {

Potential Potential::constant(double value) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw ConfigError("potential: values must be finite and strictly positive");
  }
  Potential f;
  f.constant_ = value;
  f.max_ = value;
  f.min_ = value;
  return f;
}

Potential Potential::from_table(std::size_t depth, const std::map<Word, double>& table) {
  if (depth == 0) {
    if (table.size() != 1) throw ConfigError("potential: depth 0 takes a single value");
    return constant(table.begin()->second);
  }
  if (table.empty()) throw ConfigError("potential: empty table");
  Potential f;
  f.depth_ = depth;
  f.table_ = table;
  f.max_ = -std::numeric_limits<double>::infinity();
  f.min_ = std::numeric_limits<double>::infinity();
  for (const auto& [word, value] : table) {
    if (word.size() != depth) {
      throw ConfigError("potential: key '" + word.to_string() + "' has the wrong length");
    }
    if (!(value > 0) || !std::isfinite(value)) {
      throw ConfigError("potential: values must be finite and strictly positive");
    }
    f.max_ = std::max(f.max_, value);
    f.min_ = std::min(f.min_, value);
    f.lookup_.emplace(word, value);
  }
  return f;
}

double Potential::value(std::span<const Symbol> window) const {
  if (depth_ == 0) return constant_;
  const auto it = lookup_.find(Word(std::vector<Symbol>(window.begin(), window.end())));
  if (it == lookup_.end()) {
    throw ConfigError("potential: no value for window " +
                      Word(std::vector<Symbol>(window.begin(), window.end())).to_string());
  }
  return it->second;
}

void Potential::validate(const ShiftSpace& space) const {
  if (depth_ == 0) return;
  std::size_t covered = 0;
  for_each_word(space, depth_, [&](const Word& w) {
    if (!lookup_.count(w)) {
      throw ConfigError("potential: table misses admissible word " + w.to_string());
    }
    ++covered;
  });
  if (covered != table_.size()) {
    throw ConfigError("potential: table has entries outside L_" + std::to_string(depth_));
  }
}

double window_sum(const Potential& f, std::span<const Symbol> symbols, std::size_t first,
                  std::size_t last) {
  double total = 0.0;
  const std::size_t d = f.depth();
  for (std::size_t k = first; k < last; ++k) total += f.value(symbols.subspan(k, d));
  return total;
}

namespace {

void extend_and_score(const ShiftSpace& space, const Potential& f, ShiftSpace::State state,
                      std::vector<Symbol>& buffer, std::size_t target_length,
                      std::size_t first_trailing, std::size_t word_length,
                      BirkhoffRange& range, bool& any) {
  if (buffer.size() == target_length) {
    const double trailing = window_sum(f, buffer, first_trailing, word_length);
    if (!any) {
      range.inf = range.sup = trailing;
      any = true;
    } else {
      range.inf = std::min(range.inf, trailing);
      range.sup = std::max(range.sup, trailing);
    }
    return;
  }
  for (std::size_t a = 0; a < space.alphabet_size(); ++a) {
    const auto next = space.step(state, static_cast<Symbol>(a));
    if (!next) continue;
    buffer.push_back(static_cast<Symbol>(a));
    extend_and_score(space, f, *next, buffer, target_length, first_trailing, word_length,
                     range, any);
    buffer.pop_back();
  }
}

}  // namespace

BirkhoffRange birkhoff_range(const ShiftSpace& space, const Potential& f, const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) throw ConfigError("Birkhoff sum over the empty word");
  const std::size_t d = f.depth();
  const auto state = space.run(w.symbols());
  if (!state) throw ConfigError("Birkhoff sum over non-admissible word " + w.to_string());
  if (d == 0) {
    const double s = f.value({}) * static_cast<double>(n);
    return {s, s};
  }
  // Terms k with k + d ≤ n are fixed by w; the rest need d-1 more symbols.
  const std::size_t fixed_terms = n + 1 >= d ? n + 1 - d : 0;
  const double fixed = window_sum(f, w.symbols(), 0, fixed_terms);
  if (d == 1) return {fixed, fixed};
  std::vector<Symbol> buffer(w.symbols().begin(), w.symbols().end());
  BirkhoffRange trailing;
  bool any = false;
  extend_and_score(space, f, *state, buffer, n + d - 1, fixed_terms, n, trailing, any);
  if (!any) throw NonExtendableWord("no admissible extension of " + w.to_string());
  return {fixed + trailing.inf, fixed + trailing.sup};
}

}  // namespace symrec
