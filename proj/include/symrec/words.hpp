#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace symrec {

using Symbol = std::uint16_t;

/// Largest supported alphabet; symbols are stored in 16 bits.
inline constexpr std::size_t kMaxAlphabet = 65536;

/// A finite word over {0, ..., p-1}. The alphabet bound is checked by the
/// shift space the word is used with, not by the word itself.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  /// Parses "0110" (one digit per symbol) or "3,12,0" (comma separated).
  static Word parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Symbol back() const { return symbols_.back(); }
  std::span<const Symbol> symbols() const { return symbols_; }

  Word& push_back(Symbol a) {
    symbols_.push_back(a);
    return *this;
  }
  void pop_back() { symbols_.pop_back(); }
  Word& append(std::span<const Symbol> tail);
  Word& append(const Word& tail) { return append(tail.symbols()); }

  Word prefix(std::size_t n) const;
  Word factor(std::size_t start, std::size_t length) const;

  bool fits_alphabet(std::size_t p) const;

  /// Digit string when every symbol is below 10, comma separated otherwise.
  std::string to_string() const;

  friend Word operator+(Word lhs, const Word& rhs) { return lhs.append(rhs); }
  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

void to_json(nlohmann::json& j, const Word& w);
void from_json(const nlohmann::json& j, Word& w);

/// |u ∧ v|: length of the longest common prefix.
std::size_t common_prefix_length(std::span<const Symbol> u,
                                 std::span<const Symbol> v);

enum class StreamRelation {
  /// Inputs are finite prefixes; the metric is e^{-|u∧v|}.
  prefixes,
  /// Inputs stand for infinite streams known to be equal; the metric is 0.
  identical,
};

double shift_metric(std::span<const Symbol> u, std::span<const Symbol> v,
                    StreamRelation relation = StreamRelation::prefixes);

/// Levenshtein distance under substitution, insertion and deletion.
std::size_t edit_distance(std::span<const Symbol> v, std::span<const Symbol> w);

inline std::size_t edit_distance(const Word& v, const Word& w) {
  return edit_distance(v.symbols(), w.symbols());
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace symrec
