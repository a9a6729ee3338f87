#pragma once

// Brute-force reference implementations. None of these share code with the
// library: they enumerate A^n and test definitions literally.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Str = std::vector<int>;

inline Str str(const std::string& digits) {
  Str out;
  for (char c : digits) out.push_back(c - '0');
  return out;
}

inline std::vector<Str> all_words(int p, std::size_t n) {
  std::vector<Str> out{Str{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Str> next;
    for (const auto& w : out) {
      for (int a = 0; a < p; ++a) {
        Str v = w;
        v.push_back(a);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Shortest edit script by breadth-first search over single edits. Words
/// along the way are capped at `max_len` symbols.
inline int edit_distance_bfs(const Str& v, const Str& w, int p = 2, std::size_t max_len = 12) {
  if (v == w) return 0;
  std::set<Str> seen{v};
  std::queue<std::pair<Str, int>> queue;
  queue.push({v, 0});
  while (!queue.empty()) {
    auto [x, d] = queue.front();
    queue.pop();
    std::vector<Str> moves;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Str del = x;
      del.erase(del.begin() + static_cast<long>(i));
      moves.push_back(del);
      for (int a = 0; a < p; ++a) {
        if (a == x[i]) continue;
        Str sub = x;
        sub[i] = a;
        moves.push_back(sub);
      }
    }
    if (x.size() < max_len) {
      for (std::size_t i = 0; i <= x.size(); ++i) {
        for (int a = 0; a < p; ++a) {
          Str ins = x;
          ins.insert(ins.begin() + static_cast<long>(i), a);
          moves.push_back(ins);
        }
      }
    }
    for (auto& y : moves) {
      if (y == w) return d + 1;
      if (seen.insert(y).second) queue.push({y, d + 1});
    }
  }
  return -1;
}

/// Distances from v to every word of length ≤ max_len, by the same search.
inline std::map<Str, int> edit_distances_from(const Str& v, int p = 2, std::size_t max_len = 12) {
  std::map<Str, int> dist{{v, 0}};
  std::queue<Str> queue;
  queue.push(v);
  while (!queue.empty()) {
    const Str x = queue.front();
    queue.pop();
    const int d = dist[x];
    auto visit = [&](Str y) {
      if (dist.emplace(y, d + 1).second) queue.push(std::move(y));
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
      Str del = x;
      del.erase(del.begin() + static_cast<long>(i));
      visit(del);
      for (int a = 0; a < p; ++a) {
        if (a == x[i]) continue;
        Str sub = x;
        sub[i] = a;
        visit(sub);
      }
    }
    if (x.size() < max_len) {
      for (std::size_t i = 0; i <= x.size(); ++i) {
        for (int a = 0; a < p; ++a) {
          Str ins = x;
          ins.insert(ins.begin() + static_cast<long>(i), a);
          visit(ins);
        }
      }
    }
  }
  return dist;
}

inline bool contains_factor(const Str& w, const Str& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
    if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) return true;
  }
  return false;
}

inline bool golden_admissible(const Str& w) { return !contains_factor(w, {1, 1}); }

/// Interior runs of 0 between two 1s must have length in S.
inline bool sgap_admissible(const Str& w, const std::function<bool(std::size_t)>& in_s) {
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1) ones.push_back(i);
  }
  for (std::size_t j = 1; j < ones.size(); ++j) {
    if (!in_s(ones[j] - ones[j - 1] - 1)) return false;
  }
  return true;
}

/// Every suffix of w is lexicographically at most the equal-length prefix
/// of the periodic word `star`.
inline bool beta_admissible(const Str& w, const Str& star_period) {
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t j = s; j < w.size(); ++j) {
      const int lhs = w[j];
      const int rhs = star_period[(j - s) % star_period.size()];
      if (lhs < rhs) break;
      if (lhs > rhs) return false;
    }
  }
  return true;
}

inline std::uint64_t count_filtered(int p, std::size_t n, const std::function<bool(const Str&)>& ok) {
  std::uint64_t c = 0;
  for (const auto& w : all_words(p, n)) c += ok(w) ? 1 : 0;
  return c;
}

inline std::uint64_t fibonacci(std::size_t k) {
  std::uint64_t a = 0, b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t t = a + b;
    a = b;
    b = t;
  }
  return a;
}

/// Words of S-gap shift with S = evens: count via the gap recursion.
/// Independent of automata: a word is (0^a) 1 0^{g_1} 1 ... 1 (0^b) with
/// even interior g_j, or all zeros.
inline std::uint64_t sgap_even_count(std::size_t n) {
  // ones[k] = number of words of length k that start and end with 1.
  std::vector<std::uint64_t> ones(n + 1, 0);
  if (n >= 1) ones[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t g = 0; g + 2 <= k; g += 2) ones[k] += ones[k - g - 1];
  }
  std::uint64_t total = 1;  // all zeros
  for (std::size_t k = 1; k <= n; ++k) total += ones[k] * (n - k + 1);
  return total;
}

/// Edit-ball count by enumerating every candidate length.
inline std::uint64_t edit_ball_brute(const Str& center, std::size_t radius, int p,
                                     const std::function<bool(const Str&)>& admissible) {
  std::uint64_t c = 0;
  const std::size_t lo = center.size() > radius ? center.size() - radius : 0;
  for (std::size_t len = lo; len <= center.size() + radius; ++len) {
    for (const auto& v : all_words(p, len)) {
      if (!admissible(v)) continue;
      // Quadratic DP written out independently of the library's single-row form.
      std::vector<std::vector<std::size_t>> d(v.size() + 1,
                                              std::vector<std::size_t>(center.size() + 1));
      for (std::size_t i = 0; i <= v.size(); ++i) d[i][0] = i;
      for (std::size_t j = 0; j <= center.size(); ++j) d[0][j] = j;
      for (std::size_t i = 1; i <= v.size(); ++i) {
        for (std::size_t j = 1; j <= center.size(); ++j) {
          d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                              d[i - 1][j - 1] + (v[i - 1] == center[j - 1] ? 0 : 1)});
        }
      }
      if (d[v.size()][center.size()] <= radius) ++c;
    }
  }
  return c;
}

/// inf and sup of S_n f over [w] for a depth-d table, by enumerating every
/// extension of length d-1 in A^{d-1} and keeping admissible ones.
struct Range {
  double inf;
  double sup;
};

inline Range birkhoff_brute(const Str& w, std::size_t d, const std::map<Str, double>& table,
                            int p, const std::function<bool(const Str&)>& admissible) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const std::size_t ext = d == 0 ? 0 : d - 1;
  for (const auto& e : all_words(p, ext)) {
    Str x = w;
    x.insert(x.end(), e.begin(), e.end());
    if (!admissible(x)) continue;
    double s = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      s += table.at(Str(x.begin() + static_cast<long>(k), x.begin() + static_cast<long>(k + d)));
    }
    r.inf = std::min(r.inf, s);
    r.sup = std::max(r.sup, s);
  }
  return r;
}

/// Plain (uncompensated) log Σ exp over explicit weights.
inline double log_partition_brute(const std::vector<double>& weights, double s) {
  double m = -std::numeric_limits<double>::infinity();
  for (double w : weights) m = std::max(m, -s * w);
  double acc = 0;
  for (double w : weights) acc += std::exp(-s * w - m);
  return m + std::log(acc);
}

/// Fine-grid scan for the root of a decreasing function.
inline double grid_root(const std::function<double(double)>& g, double lo, double hi,
                        std::size_t steps) {
  double prev = lo;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    if (g(x) <= 0) {
      // refine by secant on the bracketing cell
      const double a = prev, b = x, ga = g(a), gb = g(b);
      return a - ga * (b - a) / (gb - ga);
    }
    prev = x;
  }
  return hi;
}

/// Smallest gluing length that joins every ordered pair in G up to horizon.
inline int min_gluing_brute(int p, std::size_t horizon, std::size_t tau_max,
                            const std::function<bool(const Str&)>& in_g) {
  std::vector<Str> good;
  for (std::size_t n = 1; n <= horizon; ++n) {
    for (const auto& w : all_words(p, n)) {
      if (in_g(w)) good.push_back(w);
    }
  }
  int tau = 0;
  for (const auto& v : good) {
    for (const auto& w : good) {
      int best = -1;
      for (std::size_t len = 0; len <= tau_max && best < 0; ++len) {
        for (const auto& u : all_words(p, len)) {
          Str x = v;
          x.insert(x.end(), u.begin(), u.end());
          x.insert(x.end(), w.begin(), w.end());
          if (in_g(x)) {
            best = static_cast<int>(len);
            break;
          }
        }
      }
      if (best < 0) return -1;
      tau = std::max(tau, best);
    }
  }
  return tau;
}

}  // namespace oracle
