#include "symrec/words.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "symrec/errors.hpp"

namespace symrec {

Word Word::parse(std::string_view text) {
  std::vector<Symbol> out;
  if (text.find(',') == std::string_view::npos) {
    out.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw ConfigError("word '" + std::string(text) + "': expected digits");
      }
      out.push_back(static_cast<Symbol>(c - '0'));
    }
    return Word(std::move(out));
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, next - pos);
    unsigned long value = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() ||
        value >= kMaxAlphabet) {
      throw ConfigError("word '" + std::string(text) + "': bad symbol '" +
                        std::string(item) + "'");
    }
    out.push_back(static_cast<Symbol>(value));
    pos = next + 1;
  }
  return Word(std::move(out));
}

Word& Word::append(std::span<const Symbol> tail) {
  symbols_.insert(symbols_.end(), tail.begin(), tail.end());
  return *this;
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, symbols_.size());
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + n));
}

Word Word::factor(std::size_t start, std::size_t length) const {
  start = std::min(start, symbols_.size());
  length = std::min(length, symbols_.size() - start);
  return Word(std::vector<Symbol>(symbols_.begin() + start,
                                  symbols_.begin() + start + length));
}

bool Word::fits_alphabet(std::size_t p) const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [p](Symbol a) { return a < p; });
}

std::string Word::to_string() const {
  const bool digits = std::all_of(symbols_.begin(), symbols_.end(),
                                  [](Symbol a) { return a < 10; });
  std::string out;
  if (digits) {
    out.reserve(symbols_.size());
    for (Symbol a : symbols_) out.push_back(static_cast<char>('0' + a));
    return out;
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

void to_json(nlohmann::json& j, const Word& w) {
  j = nlohmann::json::array();
  for (Symbol a : w.symbols()) j.push_back(a);
}

void from_json(const nlohmann::json& j, Word& w) {
  if (j.is_string()) {
    w = Word::parse(j.get<std::string>());
    return;
  }
  if (!j.is_array()) throw ConfigError("word: expected array or string");
  std::vector<Symbol> symbols;
  for (const auto& item : j) {
    const auto value = item.get<long long>();
    if (value < 0 || value >= static_cast<long long>(kMaxAlphabet)) {
      throw ConfigError("word: symbol out of range");
    }
    symbols.push_back(static_cast<Symbol>(value));
  }
  w = Word(std::move(symbols));
}

std::size_t common_prefix_length(std::span<const Symbol> u,
                                 std::span<const Symbol> v) {
  const auto n = std::min(u.size(), v.size());
  const auto mismatch = std::mismatch(u.begin(), u.begin() + n, v.begin());
  return static_cast<std::size_t>(mismatch.first - u.begin());
}

double shift_metric(std::span<const Symbol> u, std::span<const Symbol> v,
                    StreamRelation relation) {
  if (relation == StreamRelation::identical) return 0.0;
  return std::exp(-static_cast<double>(common_prefix_length(u, v)));
}

std::size_t edit_distance(std::span<const Symbol> v, std::span<const Symbol> w) {
  // Single-row Wagner-Fischer.
  std::vector<std::size_t> row(w.size() + 1);
  for (std::size_t j = 0; j <= w.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= v.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= w.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1,
                         diagonal + (v[i - 1] == w[j - 1] ? 0u : 1u)});
      diagonal = above;
    }
  }
  return row[w.size()];
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Symbol a : w.symbols()) {
    h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ w.size();
}

}  // namespace symrec
