#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>

#include "symrec/shifts.hpp"
#include "symrec/words.hpp"

namespace symrec {

/// A strictly positive locally constant function f(x) = table[x_1 .. x_d].
/// Depth 0 is a constant. Values are nats per symbol.
class Potential {
 public:
  static Potential constant(double value);
  static Potential from_table(std::size_t depth, const std::map<Word, double>& table);

  std::size_t depth() const { return depth_; }
  double max_value() const { return max_; }
  double min_value() const { return min_; }
  bool is_constant() const { return max_ == min_; }

  /// f on a window of exactly `depth` symbols.
  double value(std::span<const Symbol> window) const;

  /// Throws ConfigError unless the table covers exactly L_d of `space`.
  void validate(const ShiftSpace& space) const;

  const std::map<Word, double>& table() const { return table_; }

 private:
  std::size_t depth_ = 0;
  double constant_ = 0.0;
  double max_ = 0.0;
  double min_ = 0.0;
  std::map<Word, double> table_;
  std::unordered_map<Word, double, WordHash> lookup_;
};

struct BirkhoffRange {
  double inf = 0.0;
  double sup = 0.0;
};

/// inf and sup of S_{|w|} f over the cylinder [w]. Terms that reach past w
/// are resolved over every admissible extension by depth-1 symbols; throws
/// NonExtendableWord if there is none.
BirkhoffRange birkhoff_range(const ShiftSpace& space, const Potential& f, const Word& w);

inline double birkhoff_sup(const ShiftSpace& space, const Potential& f, const Word& w) {
  return birkhoff_range(space, f, w).sup;
}

inline double birkhoff_inf(const ShiftSpace& space, const Potential& f, const Word& w) {
  return birkhoff_range(space, f, w).inf;
}

/// Sum of f over the windows starting at positions [first, last) of `symbols`.
double window_sum(const Potential& f, std::span<const Symbol> symbols, std::size_t first,
                  std::size_t last);

}  // namespace symrec
