#include "symrec/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "symrec/errors.hpp"

namespace symrec {
namespace {

struct FullKind {
  std::size_t p;
};

struct BetaKind {
  BetaExpansion expansion;
};

struct GapKind {
  GapSet gaps;
};

/// Aho-Corasick automaton over the forbidden words, restricted to states
/// from which an infinite path exists.
struct ForbiddenKind {
  std::vector<Word> words;
  std::size_t p = 2;
  std::vector<std::uint32_t> delta;  // nodes × p
  std::vector<bool> live;
  std::uint32_t root = 0;

  std::uint32_t next(std::uint32_t node, Symbol a) const {
    return delta[static_cast<std::size_t>(node) * p + a];
  }
};

ForbiddenKind build_forbidden(std::vector<Word> words, std::size_t p) {
  ForbiddenKind out;
  out.p = p;
  std::vector<std::vector<std::int64_t>> child(1, std::vector<std::int64_t>(p, -1));
  std::vector<bool> bad(1, false);
  for (const Word& w : words) {
    if (w.empty()) throw ConfigError("forbidden word list contains the empty word");
    if (!w.fits_alphabet(p)) throw ConfigError("forbidden word outside the alphabet");
    std::size_t node = 0;
    for (Symbol a : w.symbols()) {
      if (child[node][a] < 0) {
        child[node][a] = static_cast<std::int64_t>(child.size());
        child.emplace_back(p, -1);
        bad.push_back(false);
      }
      node = static_cast<std::size_t>(child[node][a]);
    }
    bad[node] = true;
  }
  const std::size_t nodes = child.size();
  if (nodes * p > 50'000'000) throw BudgetExceeded("forbidden-word automaton too large");
  out.delta.assign(nodes * p, 0);
  std::vector<std::size_t> fail(nodes, 0);
  std::deque<std::size_t> queue;
  for (std::size_t a = 0; a < p; ++a) {
    if (child[0][a] >= 0) {
      const auto c = static_cast<std::size_t>(child[0][a]);
      out.delta[a] = static_cast<std::uint32_t>(c);
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    bad[node] = bad[node] || bad[fail[node]];
    for (std::size_t a = 0; a < p; ++a) {
      if (child[node][a] >= 0) {
        const auto c = static_cast<std::size_t>(child[node][a]);
        fail[c] = out.delta[fail[node] * p + a];
        out.delta[node * p + a] = static_cast<std::uint32_t>(c);
        queue.push_back(c);
      } else {
        out.delta[node * p + a] = out.delta[fail[node] * p + a];
      }
    }
  }
  // Prune states with no infinite future.
  out.live.assign(nodes, true);
  for (std::size_t i = 0; i < nodes; ++i) out.live[i] = !bad[i];
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < nodes; ++i) {
      if (!out.live[i]) continue;
      bool any = false;
      for (std::size_t a = 0; a < p && !any; ++a) any = out.live[out.delta[i * p + a]];
      if (!any) {
        out.live[i] = false;
        changed = true;
      }
    }
  }
  if (!out.live[0]) throw ConfigError("forbidden word list leaves an empty shift");
  out.words = std::move(words);
  return out;
}

bool contains_factor(std::span<const Symbol> text, std::span<const Symbol> pattern) {
  return std::search(text.begin(), text.end(), pattern.begin(), pattern.end()) !=
         text.end();
}

}  // namespace

struct ShiftSpace::Impl {
  std::variant<FullKind, BetaKind, GapKind, ForbiddenKind> kind;
};

bool GapSet::contains(std::size_t gap) const {
  if (std::find(listed.begin(), listed.end(), gap) != listed.end()) return true;
  if (!tail) return false;
  if (gap < tail->start) return false;
  return tail->step == 0 ? gap == tail->start : (gap - tail->start) % tail->step == 0;
}

std::string GapSet::describe() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < listed.size(); ++i) out << (i ? "," : "") << listed[i];
  out << '}';
  if (tail) out << "+{" << tail->start << "+" << tail->step << "k}";
  return out.str();
}

ShiftSpace ShiftSpace::full(std::size_t p) {
  if (p < 1 || p > kMaxAlphabet) throw ConfigError("full shift: alphabet size out of range");
  return ShiftSpace(std::make_shared<const Impl>(Impl{FullKind{p}}));
}

ShiftSpace ShiftSpace::beta(BetaExpansion expansion) {
  return ShiftSpace(std::make_shared<const Impl>(Impl{BetaKind{std::move(expansion)}}));
}

ShiftSpace ShiftSpace::sgap(GapSet gaps) {
  std::sort(gaps.listed.begin(), gaps.listed.end());
  gaps.listed.erase(std::unique(gaps.listed.begin(), gaps.listed.end()), gaps.listed.end());
  return ShiftSpace(std::make_shared<const Impl>(Impl{GapKind{std::move(gaps)}}));
}

ShiftSpace ShiftSpace::forbidden(std::vector<Word> words, std::size_t p) {
  if (p < 1 || p > kMaxAlphabet) throw ConfigError("forbidden shift: alphabet size out of range");
  return ShiftSpace(
      std::make_shared<const Impl>(Impl{build_forbidden(std::move(words), p)}));
}

ShiftSpace::Kind ShiftSpace::kind() const {
  return static_cast<Kind>(impl_->kind.index());
}

std::size_t ShiftSpace::alphabet_size() const {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FullKind>) return k.p;
        if constexpr (std::is_same_v<K, BetaKind>) return k.expansion.alphabet_size();
        if constexpr (std::is_same_v<K, GapKind>) return 2;
        if constexpr (std::is_same_v<K, ForbiddenKind>) return k.p;
      },
      impl_->kind);
}

std::string ShiftSpace::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FullKind>) {
          return "full(" + std::to_string(k.p) + ")";
        }
        if constexpr (std::is_same_v<K, BetaKind>) {
          const auto& text = k.expansion.beta_text();
          return "beta(" + (text.empty() ? std::to_string(k.expansion.beta()) : text) + ")";
        }
        if constexpr (std::is_same_v<K, GapKind>) return "sgap(" + k.gaps.describe() + ")";
        if constexpr (std::is_same_v<K, ForbiddenKind>) {
          std::string out = "forbidden(" + std::to_string(k.p) + ";";
          for (std::size_t i = 0; i < k.words.size(); ++i) {
            out += (i ? "," : "") + k.words[i].to_string();
          }
          return out + ")";
        }
      },
      impl_->kind);
}

bool ShiftSpace::is_admissible(const Word& w) const {
  if (!w.fits_alphabet(alphabet_size())) return false;
  const auto s = w.symbols();
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FullKind>) {
          return true;
        } else if constexpr (std::is_same_v<K, BetaKind>) {
          // Every suffix must be ≼ the equal-length prefix of w*.
          const auto star = k.expansion.prefix(s.size());
          for (std::size_t i = 0; i < s.size(); ++i) {
            const auto suffix = s.subspan(i);
            if (std::lexicographical_compare(star.begin(), star.begin() + suffix.size(),
                                             suffix.begin(), suffix.end())) {
              return false;
            }
          }
          return true;
        } else if constexpr (std::is_same_v<K, GapKind>) {
          // Interior runs of 0 between two 1s must lie in S.
          std::optional<std::size_t> last_one;
          for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != 1) continue;
            if (last_one && !k.gaps.contains(i - *last_one - 1)) return false;
            last_one = i;
          }
          return true;
        } else {
          for (const Word& f : k.words) {
            if (contains_factor(s, f.symbols())) return false;
          }
          return run(s).has_value();
        }
      },
      impl_->kind);
}

ShiftSpace::State ShiftSpace::initial_state() const { return 0; }

std::optional<ShiftSpace::State> ShiftSpace::step(State state, Symbol a) const {
  return std::visit(
      [&](const auto& k) -> std::optional<State> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FullKind>) {
          if (a >= k.p) return std::nullopt;
          return State{0};
        } else if constexpr (std::is_same_v<K, BetaKind>) {
          // State j: the longest suffix equal to a prefix of w* has length j.
          const auto& e = k.expansion;
          if (a >= e.alphabet_size()) return std::nullopt;
          const Symbol needed = e.digit(state);
          if (a > needed) return std::nullopt;
          if (a < needed) return State{0};
          State next = state + 1;
          if (e.periodic() && next >= e.preperiod().size() + e.period().size()) {
            next -= e.period().size();
          }
          return next;
        } else if constexpr (std::is_same_v<K, GapKind>) {
          // Bit 0: a 1 has been seen. Upper bits: zeros since the last 1.
          const bool seen_one = state & 1u;
          const State run = state >> 1;
          if (a == 0) return seen_one ? (((run + 1) << 1) | 1u) : State{0};
          if (a != 1) return std::nullopt;
          if (seen_one && !k.gaps.contains(run)) return std::nullopt;
          return State{1};
        } else {
          if (a >= k.p) return std::nullopt;
          const auto next = k.next(static_cast<std::uint32_t>(state), a);
          if (!k.live[next]) return std::nullopt;
          return State{next};
        }
      },
      impl_->kind);
}

std::optional<ShiftSpace::State> ShiftSpace::run(std::span<const Symbol> symbols,
                                                 State from) const {
  State state = from;
  for (Symbol a : symbols) {
    const auto next = step(state, a);
    if (!next) return std::nullopt;
    state = *next;
  }
  return state;
}

std::optional<ShiftSpace::State> ShiftSpace::run(std::span<const Symbol> symbols) const {
  return run(symbols, initial_state());
}

const BetaExpansion* ShiftSpace::beta_expansion() const {
  const auto* k = std::get_if<BetaKind>(&impl_->kind);
  return k ? &k->expansion : nullptr;
}

const GapSet* ShiftSpace::gap_set() const {
  const auto* k = std::get_if<GapKind>(&impl_->kind);
  return k ? &k->gaps : nullptr;
}

const std::vector<Word>* ShiftSpace::forbidden_words() const {
  const auto* k = std::get_if<ForbiddenKind>(&impl_->kind);
  return k ? &k->words : nullptr;
}

std::uint64_t count_words(const ShiftSpace& space, std::size_t n) {
  const std::size_t p = space.alphabet_size();
  std::unordered_map<ShiftSpace::State, std::uint64_t> level{{space.initial_state(), 1}};
  for (std::size_t i = 0; i < n; ++i) {
    std::unordered_map<ShiftSpace::State, std::uint64_t> next;
    for (const auto& [state, count] : level) {
      for (std::size_t a = 0; a < p; ++a) {
        const auto to = space.step(state, static_cast<Symbol>(a));
        if (!to) continue;
        auto& slot = next[*to];
        if (__builtin_add_overflow(slot, count, &slot)) {
          throw BudgetExceeded("count_words: ♯L_" + std::to_string(n) +
                               " overflows 64 bits");
        }
      }
    }
    level = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& entry : level) {
    if (__builtin_add_overflow(total, entry.second, &total)) {
      throw BudgetExceeded("count_words: ♯L_" + std::to_string(n) + " overflows 64 bits");
    }
  }
  return total;
}

namespace {

void visit_words(const ShiftSpace& space, std::size_t n, ShiftSpace::State state,
                 std::vector<Symbol>& buffer,
                 const std::function<void(const Word&)>& visit) {
  if (buffer.size() == n) {
    visit(Word(buffer));
    return;
  }
  const std::size_t p = space.alphabet_size();
  for (std::size_t a = 0; a < p; ++a) {
    const auto next = space.step(state, static_cast<Symbol>(a));
    if (!next) continue;
    buffer.push_back(static_cast<Symbol>(a));
    visit_words(space, n, *next, buffer, visit);
    buffer.pop_back();
  }
}

}  // namespace

void for_each_word(const ShiftSpace& space, std::size_t n,
                   const std::function<void(const Word&)>& visit) {
  std::vector<Symbol> buffer;
  buffer.reserve(n);
  visit_words(space, n, space.initial_state(), buffer, visit);
}

std::vector<Word> enumerate_words(const ShiftSpace& space, std::size_t n,
                                  std::uint64_t budget) {
  const auto total = count_words(space, n);
  if (total > budget) {
    throw BudgetExceeded("enumerate_words: ♯L_" + std::to_string(n) + " = " +
                         std::to_string(total) + " exceeds budget " +
                         std::to_string(budget));
  }
  std::vector<Word> out;
  out.reserve(total);
  for_each_word(space, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

double WordSampler::log_completions(ShiftSpace::State state, std::size_t remaining) {
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  if (remaining == 0) return 0.0;
  if (memo_.size() <= remaining) memo_.resize(remaining + 1);
  if (const auto it = memo_[remaining].find(state); it != memo_[remaining].end()) {
    return it->second;
  }
  // Forward layers of reachable states, then fill from the far end back.
  std::vector<std::vector<ShiftSpace::State>> layers{{state}};
  for (std::size_t j = 1; j <= remaining; ++j) {
    std::vector<ShiftSpace::State> next_layer;
    std::unordered_map<ShiftSpace::State, bool> seen;
    for (const auto& from : layers.back()) {
      for (std::size_t a = 0; a < space_.alphabet_size(); ++a) {
        const auto to = space_.step(from, static_cast<Symbol>(a));
        if (to && seen.emplace(*to, true).second) next_layer.push_back(*to);
      }
    }
    layers.push_back(std::move(next_layer));
  }
  std::vector<double> terms;
  for (std::size_t r = 1; r <= remaining; ++r) {
    auto& row = memo_[r];
    for (const auto& from : layers[remaining - r]) {
      if (row.contains(from)) continue;
      terms.clear();
      for (std::size_t a = 0; a < space_.alphabet_size(); ++a) {
        const auto to = space_.step(from, static_cast<Symbol>(a));
        if (to) terms.push_back(r == 1 ? 0.0 : memo_[r - 1].at(*to));
      }
      double total = kNone;
      const double best = terms.empty() ? kNone : *std::max_element(terms.begin(), terms.end());
      if (best > kNone) {
        double acc = 0.0;
        for (double t : terms) acc += std::exp(t - best);
        total = best + std::log(acc);
      }
      row.emplace(from, total);
    }
  }
  return memo_[remaining].at(state);
}

Word WordSampler::sample(std::size_t n, std::mt19937_64& rng) {
  std::vector<Symbol> out;
  out.reserve(n);
  auto state = space_.initial_state();
  if (log_completions(state, n) == -std::numeric_limits<double>::infinity()) {
    throw EmptyLevel("L_" + std::to_string(n) + " is empty");
  }
  std::vector<double> weights(space_.alphabet_size());
  for (std::size_t i = 0; i < n; ++i) {
    const double here = log_completions(state, n - i);
    std::vector<std::optional<ShiftSpace::State>> targets(space_.alphabet_size());
    for (std::size_t a = 0; a < space_.alphabet_size(); ++a) {
      targets[a] = space_.step(state, static_cast<Symbol>(a));
      weights[a] = targets[a] ? std::exp(log_completions(*targets[a], n - i - 1) - here) : 0.0;
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    const std::size_t a = pick(rng);
    out.push_back(static_cast<Symbol>(a));
    state = *targets[a];
  }
  return Word(std::move(out));
}

}  // namespace symrec
