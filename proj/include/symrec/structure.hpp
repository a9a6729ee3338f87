#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symrec/predicates.hpp"

namespace symrec {

// All checks here are finite-horizon: they certify a property for words up to
// a stated length and say nothing beyond it.

struct GluingWitness {
  Word left;
  Word gluing;
  Word right;
};

/// Every pair v, w ∈ G with |v|, |w| ≤ horizon is joined by some u with
/// |u| ≤ gap_length and vuw ∈ G.
struct SpecificationCertificate {
  std::size_t gap_length = 0;
  std::size_t horizon = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<GluingWitness> witnesses;  ///< one per pair, shortest u, then lexicographic
  std::vector<std::size_t> populated_lengths;  ///< n ≤ horizon with G_n ≠ ∅
};

struct SpecificationFailure {
  std::size_t tau_max = 0;
  std::size_t horizon = 0;
  Word left;
  Word right;
};

struct SpecificationResult {
  std::optional<SpecificationCertificate> certificate;
  std::optional<SpecificationFailure> failure;
  bool ok() const { return certificate.has_value(); }
};

/// Smallest τ ≤ tau_max giving (W)-specification for G up to `horizon`, or
/// the first pair that no gluing word of length ≤ tau_max joins.
SpecificationResult check_w_specification(const WordFamily& good, std::size_t tau_max,
                                          std::size_t horizon,
                                          std::uint64_t pair_budget = 50'000'000);

/// Replays every witness through the language and G.
bool revalidate(const SpecificationCertificate& certificate, const WordFamily& good);

struct FreeConcatenationResult {
  bool holds = true;
  std::optional<std::pair<Word, Word>> counterexample;
  std::size_t horizon = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<std::size_t> populated_lengths;
};

/// Checks uw ∈ F for all u, w ∈ F with |u|, |w| ≤ horizon. Pairs are visited
/// by (|u|, u, |w|, w); the first failure is reported.
FreeConcatenationResult check_free_concatenation(const WordFamily& family,
                                                 std::size_t horizon,
                                                 std::uint64_t pair_budget = 50'000'000);

struct MistakeSample {
  std::size_t n = 0;
  std::size_t value = 0;  ///< max over tested w ∈ L_n of min over v ∈ F of d̂(v, w)
  bool exact = true;      ///< false: random-sample lower estimate
  std::uint64_t words_tested = 0;
  Word worst_word;
};

struct MistakeProfile {
  std::vector<MistakeSample> samples;
  /// g(n)/n for each sample, the evidence for sublinear mistakes.
  std::vector<double> ratios;
};

/// Empirical mistake function of L against F. Exact when ♯L_n ≤ sample_budget;
/// otherwise `sample_budget` uniform samples from L_n (seeded). Nearest
/// F-words are searched up to edit radius n + slack.
MistakeProfile mistake_profile(const WordFamily& family,
                               const std::vector<std::size_t>& lengths,
                               std::uint64_t sample_budget, std::uint64_t seed = 1,
                               std::size_t slack = 4);

/// min over v ∈ F of d̂(v, w), searching radii 0..max_radius. nullopt if none.
std::optional<std::size_t> distance_to_family(const WordFamily& family, const Word& w,
                                              std::size_t max_radius);

}  // namespace symrec
