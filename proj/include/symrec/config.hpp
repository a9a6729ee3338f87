#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrec/potential.hpp"
#include "symrec/predicates.hpp"
#include "symrec/recurrence.hpp"
#include "symrec/shifts.hpp"

namespace symrec::cli {

/// Command-line overrides; each beats the matching "budgets" entry.
struct Flags {
  std::optional<std::string> out;
  std::optional<std::string> input;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> budget;
};

ShiftSpace parse_space(const nlohmann::json& decl);
Potential parse_potential(const nlohmann::json& decl, const ShiftSpace& space);
PsiFunction parse_psi(const nlohmann::json& decl);

/// A parsed config file. Every accessor records the key it reads so that
/// declarations the subcommand never looked at can be reported.
///
///   {"space": {...}, "potential": {...}, "psi": {...},
///    "structure": {"F": "ends-with-0", "G": "language"},
///    "budgets": {"enumeration": N, "branch": N, "tolerance": x, "horizon": n, "seed": s},
///    "params": {... subcommand inputs ...}}
class RunConfig {
 public:
  static RunConfig from_json(nlohmann::json doc, Flags flags = {});
  static RunConfig load(const std::string& path, Flags flags = {});

  ShiftSpace space();
  std::optional<Potential> potential();
  Potential require_potential();
  std::optional<PsiFunction> psi();
  PsiFunction require_psi();
  /// The family named by structure.<role>, "language" when absent.
  WordFamily family(const std::string& role);

  bool has_param(const std::string& key) const;
  const nlohmann::json& raw_param(const std::string& key);

  template <class T>
  std::optional<T> param(const std::string& key) {
    if (!has_param(key)) return std::nullopt;
    try {
      return raw_param(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw_config("params." + key + ": " + e.what());
    }
  }

  template <class T>
  T param(const std::string& key, T fallback) {
    return param<T>(key).value_or(std::move(fallback));
  }

  std::uint64_t budget();
  std::uint64_t branch_budget();
  double tol();
  std::size_t horizon(std::size_t fallback);
  std::uint64_t seed();

  const Flags& flags() const { return flags_; }
  /// SHA-256 of the canonical (sorted-key) serialization of the config.
  const std::string& digest() const { return digest_; }
  /// Declarations and params no accessor read.
  std::vector<std::string> unused_keys() const;

 private:
  [[noreturn]] static void throw_config(const std::string& what);
  std::optional<nlohmann::json> budget_entry(const std::string& key);

  nlohmann::json doc_;
  Flags flags_;
  std::string digest_;
  std::set<std::string> used_;
  std::optional<ShiftSpace> space_;
};

std::string sha256_hex(const std::string& data);

}  // namespace symrec::cli
