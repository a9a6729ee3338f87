#include "symrec/structure.hpp"

#include <random>

#include "symrec/edit_ball.hpp"
#include "symrec/errors.hpp"

namespace symrec {
namespace {

std::vector<Word> family_words_up_to(const WordFamily& family, std::size_t horizon,
                                     std::vector<std::size_t>& populated) {
  std::vector<Word> out;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const auto before = out.size();
    family.for_each(n, [&](const Word& w) { out.push_back(w); });
    if (out.size() > before) populated.push_back(n);
  }
  return out;
}

/// All words of length 0..max_length over the alphabet, by length then
/// lexicographically.
std::vector<Word> all_words_up_to(std::size_t p, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t length = 1; length <= max_length; ++length) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t a = 0; a < p; ++a) {
        Word next = out[i];
        next.push_back(static_cast<Symbol>(a));
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace

SpecificationResult check_w_specification(const WordFamily& good, std::size_t tau_max,
                                          std::size_t horizon,
                                          std::uint64_t pair_budget) {
  SpecificationCertificate cert;
  cert.horizon = horizon;
  const auto words = family_words_up_to(good, horizon, cert.populated_lengths);
  const auto pairs = static_cast<std::uint64_t>(words.size()) * words.size();
  if (pairs > pair_budget) {
    throw BudgetExceeded("spec-check: " + std::to_string(pairs) +
                         " pairs exceed the budget");
  }
  const auto gluings = all_words_up_to(good.space().alphabet_size(), tau_max);
  cert.witnesses.reserve(words.size() * words.size());
  for (const Word& v : words) {
    for (const Word& w : words) {
      const Word* found = nullptr;
      for (const Word& u : gluings) {
        if (good.contains(v + u + w)) {
          found = &u;
          break;
        }
      }
      if (!found) {
        SpecificationResult result;
        result.failure = SpecificationFailure{tau_max, horizon, v, w};
        return result;
      }
      cert.gap_length = std::max(cert.gap_length, found->size());
      cert.witnesses.push_back({v, *found, w});
    }
  }
  cert.pairs_checked = pairs;
  SpecificationResult result;
  result.certificate = std::move(cert);
  return result;
}

bool revalidate(const SpecificationCertificate& certificate, const WordFamily& good) {
  for (const auto& witness : certificate.witnesses) {
    if (witness.gluing.size() > certificate.gap_length) return false;
    const Word joined = witness.left + witness.gluing + witness.right;
    if (!good.space().is_admissible(joined) || !good.contains(joined)) return false;
  }
  return true;
}

FreeConcatenationResult check_free_concatenation(const WordFamily& family,
                                                 std::size_t horizon,
                                                 std::uint64_t pair_budget) {
  FreeConcatenationResult result;
  result.horizon = horizon;
  const auto words = family_words_up_to(family, horizon, result.populated_lengths);
  const auto pairs = static_cast<std::uint64_t>(words.size()) * words.size();
  if (pairs > pair_budget) {
    throw BudgetExceeded("free-concat: " + std::to_string(pairs) +
                         " pairs exceed the budget");
  }
  for (const Word& u : words) {
    for (const Word& w : words) {
      ++result.pairs_checked;
      if (!family.contains(u + w)) {
        result.holds = false;
        result.counterexample = std::make_pair(u, w);
        return result;
      }
    }
  }
  return result;
}

std::optional<std::size_t> distance_to_family(const WordFamily& family, const Word& w,
                                              std::size_t max_radius) {
  for (std::size_t radius = 0; radius <= max_radius; ++radius) {
    bool hit = false;
    for_each_in_edit_ball(family.space(), w, radius,
                          [&](const Word& v, std::size_t distance) {
                            if (!hit && distance == radius && family.contains(v)) {
                              hit = true;
                            }
                          });
    if (hit) return radius;
  }
  return std::nullopt;
}

MistakeProfile mistake_profile(const WordFamily& family,
                               const std::vector<std::size_t>& lengths,
                               std::uint64_t sample_budget, std::uint64_t seed,
                               std::size_t slack) {
  MistakeProfile profile;
  std::mt19937_64 rng(seed);
  WordSampler sampler(family.space());
  for (const std::size_t n : lengths) {
    MistakeSample sample;
    sample.n = n;
    const auto total = count_words(family.space(), n);
    sample.exact = total <= sample_budget;
    auto consider = [&](const Word& w) {
      const auto d = distance_to_family(family, w, n + slack);
      if (!d) {
        throw Error("mistake profile: no word of '" + family.name() +
                    "' within edit radius " + std::to_string(n + slack) + " of " +
                    w.to_string());
      }
      if (sample.words_tested == 0 || *d > sample.value) {
        sample.value = *d;
        sample.worst_word = w;
      }
      ++sample.words_tested;
    };
    if (sample.exact) {
      for_each_word(family.space(), n, consider);
    } else {
      for (std::uint64_t i = 0; i < sample_budget; ++i) consider(sampler.sample(n, rng));
    }
    profile.ratios.push_back(n ? static_cast<double>(sample.value) / n : 0.0);
    profile.samples.push_back(std::move(sample));
  }
  return profile;
}

}  // namespace symrec
