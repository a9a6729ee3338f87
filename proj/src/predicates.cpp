#include "symrec/predicates.hpp"

#include <regex>

#include "symrec/errors.hpp"

namespace symrec {
namespace {

Symbol parse_symbol(const std::string& text, std::size_t p) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value >= p) {
    throw ConfigError("predicate: bad symbol '" + text + "'");
  }
  return static_cast<Symbol>(value);
}

bool starts_with_prefix(const std::string& text, const std::string& prefix) {
  return text.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

WordPredicate make_predicate(const ShiftSpace& space, const std::string& spec) {
  const std::size_t p = space.alphabet_size();
  auto in_language = [space](const Word& w) {
    return !w.empty() && space.is_admissible(w);
  };
  if (spec == "language" || spec == "L") {
    return WordPredicate("language", in_language);
  }
  if (starts_with_prefix(spec, "starts-and-ends-with-")) {
    const Symbol a = parse_symbol(spec.substr(21), p);
    return WordPredicate(spec, [=](const Word& w) {
      return in_language(w) && w[0] == a && w.back() == a;
    });
  }
  if (starts_with_prefix(spec, "ends-with-")) {
    const Symbol a = parse_symbol(spec.substr(10), p);
    return WordPredicate(spec,
                         [=](const Word& w) { return in_language(w) && w.back() == a; });
  }
  if (starts_with_prefix(spec, "starts-with-")) {
    const Symbol a = parse_symbol(spec.substr(12), p);
    return WordPredicate(spec, [=](const Word& w) { return in_language(w) && w[0] == a; });
  }
  if (starts_with_prefix(spec, "regex:")) {
    if (p > 10) throw ConfigError("regex predicates need an alphabet of at most 10 symbols");
    std::regex pattern;
    try {
      pattern = std::regex(spec.substr(6), std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ConfigError("predicate '" + spec + "': " + e.what());
    }
    return WordPredicate(spec, [=](const Word& w) {
      return in_language(w) && std::regex_match(w.to_string(), pattern);
    });
  }
  throw ConfigError("unknown word predicate '" + spec + "'");
}

bool WordFamily::contains(const Word& w) const {
  if (predicate_) return (*predicate_)(w);
  return !w.empty() && space_.is_admissible(w);
}

void WordFamily::for_each(std::size_t n,
                          const std::function<void(const Word&)>& visit) const {
  if (!predicate_) {
    for_each_word(space_, n, visit);
    return;
  }
  for_each_word(space_, n, [&](const Word& w) {
    if ((*predicate_)(w)) visit(w);
  });
}

std::uint64_t WordFamily::count(std::size_t n, std::uint64_t budget) const {
  if (!predicate_) return count_words(space_, n);
  if (count_words(space_, n) > budget) {
    throw BudgetExceeded("family '" + name() + "': ♯L_" + std::to_string(n) +
                         " exceeds the enumeration budget");
  }
  std::uint64_t total = 0;
  for_each(n, [&](const Word&) { ++total; });
  return total;
}

std::vector<Word> WordFamily::words(std::size_t n, std::uint64_t budget) const {
  if (count_words(space_, n) > budget) {
    throw BudgetExceeded("family '" + name() + "': ♯L_" + std::to_string(n) +
                         " exceeds the enumeration budget");
  }
  std::vector<Word> out;
  for_each(n, [&](const Word& w) { out.push_back(w); });
  return out;
}

}  // namespace symrec
