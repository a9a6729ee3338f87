#include "symrec/edit_ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>

#include "symrec/errors.hpp"

namespace symrec {
namespace {

using Row = std::basic_string<std::uint8_t>;

// Next Levenshtein row after reading symbol a, entries clipped at cap.
Row advance_row(const Row& row, const Word& w, Symbol a, std::uint8_t cap) {
  Row next(row.size(), 0);
  next[0] = static_cast<std::uint8_t>(std::min<int>(row[0] + 1, cap));
  for (std::size_t i = 1; i < row.size(); ++i) {
    const int substitute = row[i - 1] + (w[i - 1] == a ? 0 : 1);
    const int value = std::min({substitute, row[i] + 1, next[i - 1] + 1, int{cap}});
    next[i] = static_cast<std::uint8_t>(value);
  }
  return next;
}

Row initial_row(std::size_t n, std::uint8_t cap) {
  Row row(n + 1, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    row[i] = static_cast<std::uint8_t>(std::min<std::size_t>(i, cap));
  }
  return row;
}

std::string product_key(const Row& row, ShiftSpace::State state) {
  std::string key(row.begin(), row.end());
  key.append(reinterpret_cast<const char*>(&state), sizeof state);
  return key;
}

void visit_ball(const ShiftSpace& space, const Word& w, std::size_t radius,
                const Row& row, ShiftSpace::State state, std::vector<Symbol>& buffer,
                const std::function<void(const Word&, std::size_t)>& visit) {
  if (row.back() <= radius) visit(Word(buffer), row.back());
  if (buffer.size() >= w.size() + radius) return;
  const auto cap = static_cast<std::uint8_t>(radius + 1);
  for (std::size_t a = 0; a < space.alphabet_size(); ++a) {
    const auto next_state = space.step(state, static_cast<Symbol>(a));
    if (!next_state) continue;
    const Row next = advance_row(row, w, static_cast<Symbol>(a), cap);
    if (*std::min_element(next.begin(), next.end()) > radius) continue;
    buffer.push_back(static_cast<Symbol>(a));
    visit_ball(space, w, radius, next, *next_state, buffer, visit);
    buffer.pop_back();
  }
}

}  // namespace

std::size_t edit_radius(std::size_t n, double delta) {
  if (delta < 0) throw ConfigError("edit ball: negative radius fraction");
  return static_cast<std::size_t>(std::floor(delta * static_cast<double>(n) + 1e-9));
}

EditBallCensus edit_ball_count(const ShiftSpace& space, const Word& w, double delta,
                               std::uint64_t state_budget) {
  if (!space.is_admissible(w)) throw ConfigError("edit ball: center is not admissible");
  const std::size_t n = w.size();
  const std::size_t radius = edit_radius(n, delta);
  if (radius > 250) throw BudgetExceeded("edit ball: radius beyond 250");
  const auto cap = static_cast<std::uint8_t>(radius + 1);

  EditBallCensus census;
  census.center = w;
  census.radius_fraction = delta;
  census.radius = radius;

  struct Entry {
    Row row;
    ShiftSpace::State state;
    std::uint64_t count;
  };
  std::vector<Entry> level{{initial_row(n, cap), space.initial_state(), 1}};
  std::uint64_t total = n <= radius ? 1 : 0;
  for (std::size_t length = 1; length <= n + radius && !level.empty(); ++length) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Entry> next;
    for (const Entry& e : level) {
      for (std::size_t a = 0; a < space.alphabet_size(); ++a) {
        const auto to = space.step(e.state, static_cast<Symbol>(a));
        if (!to) continue;
        Row row = advance_row(e.row, w, static_cast<Symbol>(a), cap);
        if (*std::min_element(row.begin(), row.end()) > radius) continue;
        const auto [it, inserted] = index.try_emplace(product_key(row, *to), next.size());
        if (inserted) {
          next.push_back({std::move(row), *to, e.count});
        } else {
          next[it->second].count += e.count;
        }
      }
    }
    if (next.size() > state_budget) {
      throw BudgetExceeded("edit ball: " + std::to_string(next.size()) +
                           " product states exceed budget");
    }
    for (const Entry& e : next) {
      if (e.row.back() <= radius) total += e.count;
    }
    level = std::move(next);
  }
  census.count = total;
  census.bound_constant = fit_edit_ball_constant(total, n, delta);
  return census;
}

void for_each_in_edit_ball(const ShiftSpace& space, const Word& w, std::size_t radius,
                           const std::function<void(const Word&, std::size_t)>& visit) {
  if (radius > 250) throw BudgetExceeded("edit ball: radius beyond 250");
  std::vector<Symbol> buffer;
  const auto cap = static_cast<std::uint8_t>(radius + 1);
  visit_ball(space, w, radius, initial_row(w.size(), cap), space.initial_state(), buffer,
             visit);
}

double edit_ball_log_bound(std::size_t n, double delta, double c) {
  const double delta_log_delta = delta > 0 ? delta * std::log(delta) : 0.0;
  const double dn = static_cast<double>(n);
  return std::log(c) + c * std::log(dn) + dn * (c * delta - delta_log_delta);
}

double fit_edit_ball_constant(std::uint64_t count, std::size_t n, double delta) {
  if (n == 0) throw ConfigError("edit ball bound: center must be nonempty");
  const double target = std::log(static_cast<double>(count));
  // The bound is increasing in C; bracket, then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (edit_ball_log_bound(n, delta, hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0 && edit_ball_log_bound(n, delta, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

EditBallGridFit fit_edit_ball_grid(const ShiftSpace& space, std::size_t max_length,
                                   const std::vector<double>& deltas) {
  EditBallGridFit fit;
  for (std::size_t n = 1; n <= max_length; ++n) {
    for_each_word(space, n, [&](const Word& w) {
      for (double delta : deltas) {
        auto census = edit_ball_count(space, w, delta);
        fit.constant = std::max(fit.constant, census.bound_constant);
        fit.censuses.push_back(std::move(census));
      }
    });
  }
  return fit;
}

}  // namespace symrec
