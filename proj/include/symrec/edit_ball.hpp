#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "symrec/shifts.hpp"
#include "symrec/words.hpp"

namespace symrec {

/// ♯{v ∈ L : d̂(v, w) ≤ δ|w|} together with the smallest C for which
/// C n^C (e^{Cδ} e^{-δ log δ})^n bounds that count.
struct EditBallCensus {
  Word center;
  double radius_fraction = 0.0;
  std::size_t radius = 0;
  std::uint64_t count = 0;
  double bound_constant = 0.0;
};

/// floor(δ·n), guarded against δ·n landing a rounding error below an integer.
std::size_t edit_radius(std::size_t n, double delta);

/// Exact count of admissible words within edit distance ⌊δ|w|⌋ of w.
///
/// Runs a product of the Levenshtein row automaton for w with the language
/// automaton, over lengths up to |w| + radius. `state_budget` caps the number
/// of live product states per length.
EditBallCensus edit_ball_count(const ShiftSpace& space, const Word& w, double delta,
                               std::uint64_t state_budget = 5'000'000);

/// Visits every admissible v with d̂(v, w) ≤ radius, passing d̂(v, w).
void for_each_in_edit_ball(const ShiftSpace& space, const Word& w, std::size_t radius,
                           const std::function<void(const Word&, std::size_t)>& visit);

/// log(C n^C (e^{Cδ} e^{-δ log δ})^n), with δ log δ = 0 at δ = 0.
double edit_ball_log_bound(std::size_t n, double delta, double c);

/// Smallest C > 0 (to 1e-9 relative) with count ≤ bound(n, δ, C).
double fit_edit_ball_constant(std::uint64_t count, std::size_t n, double delta);

struct EditBallGridFit {
  double constant = 0.0;  ///< max of the per-census constants
  std::vector<EditBallCensus> censuses;
};

/// Census over every admissible center of length 1..max_length and each δ.
EditBallGridFit fit_edit_ball_grid(const ShiftSpace& space, std::size_t max_length,
                                   const std::vector<double>& deltas);

}  // namespace symrec
