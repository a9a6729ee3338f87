#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symrec/potential.hpp"
#include "symrec/predicates.hpp"
#include "symrec/recurrence.hpp"
#include "symrec/words.hpp"

namespace symrec {

enum class MoranVariant { psi, f };

/// Inputs of a Moran construction: the free-concatenation family F, the
/// block length M and slack η, and the target ψ or potential f.
struct MoranParams {
  MoranVariant variant = MoranVariant::psi;
  WordFamily family;
  std::size_t M = 1;
  double eta = 0.1;
  std::optional<PsiFunction> psi;
  std::optional<Potential> f;
  /// n_1 (psi) or m_1 (f); defaults to M.
  std::optional<std::size_t> first_length;
  /// F_M, enumerated.
  std::vector<Word> blocks;
  double h = 0.0;
  /// log ♯F_M / (M h); the psi construction wants at least 1 - η.
  double block_ratio = 0.0;
  /// Caps on construction lengths and exact-mode branching.
  std::uint64_t length_budget = 1ull << 32;
  std::uint64_t branch_budget = 1u << 20;

  /// `h` < 0 means: estimate the entropy of the space at horizon 24.
  static MoranParams for_psi(WordFamily family, std::size_t M, double eta, PsiFunction psi,
                             std::optional<std::size_t> n1 = std::nullopt, double h = -1.0,
                             std::uint64_t budget = kDefaultEnumerationBudget);
  static MoranParams for_potential(WordFamily family, std::size_t M, double eta, Potential f,
                                   std::optional<std::size_t> m1 = std::nullopt,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

  bool ratio_ok() const { return block_ratio >= 1.0 - eta; }
  const ShiftSpace& space() const { return family.space(); }

 private:
  explicit MoranParams(WordFamily fam) : family(std::move(fam)) {}
};

/// Least M ≤ M_max with F_M ≠ ∅ and log ♯F_M ≥ (1-η) M h.
std::optional<std::size_t> choose_block_length(const WordFamily& family, double eta, double h,
                                               std::size_t M_max,
                                               std::uint64_t budget = kDefaultEnumerationBudget);

/// One level of the schedule. For the f variant, n_hat = n and the lengths
/// are upper bounds over cylinders unless the schedule is uniform.
struct MoranStage {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t n_hat = 0;
  std::size_t l = 0;  ///< psi only
  std::size_t i = 0;  ///< psi only
  std::size_t m = 0;  ///< f only
  long long t_hat = 0;
  std::size_t t = 0;
  std::size_t r_num = 0;  ///< r = r_num / r_den = (n_hat + t) / n_hat, reduced
  std::size_t r_den = 1;
  bool advanced = false;  ///< f only: m moved past lengths with F_m = ∅

  std::size_t end() const { return n_hat + t; }
};

struct MoranSchedule {
  MoranVariant variant = MoranVariant::psi;
  std::size_t M = 1;
  /// Every cylinder of a level has the same lengths (always true for psi).
  bool uniform = true;
  std::vector<MoranStage> stages;

  /// Violated invariants, empty when the schedule is valid.
  std::vector<std::string> violations(const MoranParams& params) const;
};

MoranSchedule build_schedule(const MoranParams& params, std::size_t levels);

struct MoranCylinder {
  Word word;               ///< head followed by its periodic overhang
  std::size_t parent = 0;  ///< index into the previous level
  std::size_t n_hat = 0;   ///< head length: the return time checked at this level
  std::size_t t = 0;       ///< overhang length
  double weight = 0.0;     ///< f variant: m + inf S_m f over the new block
};

struct MoranLevel {
  std::size_t k = 0;
  std::vector<MoranCylinder> cylinders;
  bool sampled = false;
};

/// Levels 1..schedule.stages.size(). Each level is exact while parents ×
/// branching fits branch_budget and a seeded sample of that size beyond.
std::vector<MoranLevel> build_levels(const MoranParams& params, const MoranSchedule& schedule,
                                     std::uint64_t seed = 1);

struct CylinderMeasure {
  /// log μ per level and cylinder.
  std::vector<std::vector<double>> log_mass;
  /// f variant: s_k solving the level equation over F_{m_k}.
  std::vector<double> s;
  bool exact = true;
};

/// Throws ConfigError on sampled levels.
CylinderMeasure attach_measure(const MoranParams& params, const MoranSchedule& schedule,
                               const std::vector<MoranLevel>& levels, double tol = 1e-12);

struct ConservationReport {
  /// Per level: max |log Σ children - log parent| and |log total mass|.
  std::vector<double> child_deviation;
  std::vector<double> total_deviation;
  double max_deviation = 0.0;
};

ConservationReport check_conservation(const std::vector<MoranLevel>& levels,
                                      const CylinderMeasure& measure);

struct HolderRow {
  std::size_t n = 0;
  std::size_t level = 0;
  std::string_view region;  ///< "overhang", "boundary" or "interior"
  double log_mass = 0.0;  ///< log max_{I_n} μ(I_n)
  double exponent = 0.0;  ///< -log μ / n
};

struct HolderAudit {
  std::vector<HolderRow> rows;
  double min_exponent = 0.0;
  std::size_t argmin = 0;
  double target = 0.0;
  double slack = 0.0;
  bool passed = false;
};

/// h(1-η)²/(1+b) for psi, the Bowen root estimate for f.
double holder_target(const MoranParams& params);

/// Exact minimum over cylinders of the psi construction, from the schedule
/// and the prefix structure of F_M alone; works at any depth.
HolderAudit holder_audit_uniform(const MoranParams& params, const MoranSchedule& schedule,
                                 std::size_t n_from, std::size_t n_to, double target,
                                 double slack);

/// Minimum over the prefixes of built, exact levels, summing deepest masses.
HolderAudit holder_audit(const MoranSchedule& schedule, const std::vector<MoranLevel>& levels,
                         const CylinderMeasure& measure, const std::vector<std::size_t>& n_grid,
                         double target, double slack);

struct RecurrenceCheck {
  std::size_t k = 0;
  std::size_t position = 0;    ///< n̂_k
  std::size_t t = 0;
  std::size_t agreement = 0;   ///< |σ^{n̂_k}x ∧ x| within the emitted prefix
  double log_target = 0.0;     ///< log ψ(n̂_k), or -inf S_{n_k} f over the cylinder
  bool passed = false;
};

struct MaterializedPoint {
  std::vector<Symbol> symbols;
  std::vector<RecurrenceCheck> log;
  bool all_passed() const;
};

/// A seeded path through the full construction (any depth).
MaterializedPoint materialize_point(const MoranParams& params, const MoranSchedule& schedule,
                                    std::uint64_t seed);
/// A seeded choice among the deepest built cylinders.
MaterializedPoint materialize_point(const MoranParams& params,
                                    const std::vector<MoranLevel>& levels, std::uint64_t seed);

/// |σ^{position}x ∧ x| ≥ t and t > -log(target), decided on integers where possible.
RecurrenceCheck check_return(std::span<const Symbol> x, std::size_t k, std::size_t position,
                             std::size_t t, double log_target);

struct MassDistributionReport {
  bool passed = false;
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;
  double min_margin = 0.0;  ///< min over checked n of log c - n s - log μ
  std::string statement;
};

/// μ(I_n) ≤ c·(e^{-n})^s for every audited prefix with e^{-n} < diam_max.
MassDistributionReport mass_distribution_check(const HolderAudit& audit, double s, double c,
                                               double diam_max = 1.0);

void write_levels_jsonl(std::ostream& out, const std::vector<MoranLevel>& levels,
                        const CylinderMeasure* measure);

struct LoadedLevels {
  std::vector<MoranLevel> levels;
  CylinderMeasure measure;
};

LoadedLevels read_levels_jsonl(std::istream& in);

}  // namespace symrec
