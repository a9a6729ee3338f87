#include "symrec/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "symrec/edit_ball.hpp"
#include "symrec/errors.hpp"
#include "symrec/moran.hpp"
#include "symrec/structure.hpp"
#include "symrec/thermo.hpp"

namespace symrec::cli {

using nlohmann::json;

namespace {

json word_json(const Word& w) { return w.to_string(); }

json entropy_json(const EntropyEstimate& e) {
  json rows = json::array();
  for (const auto& r : e.rows) {
    rows.push_back({{"n", r.n}, {"count", r.count}, {"per_symbol", r.per_symbol},
                    {"ratio", r.ratio}});
  }
  return {{"family", e.family}, {"estimate", e.estimate}, {"rows", rows},
          {"finite_horizon", e.finite_horizon}};
}

json bowen_json(const BowenSolution& b) {
  json levels = json::array();
  for (const auto& l : b.per_level) {
    levels.push_back({{"n", l.n}, {"s", l.s}, {"bracket", {l.bracket_lo, l.bracket_hi}},
                      {"residual", l.residual}});
  }
  json ratios = json::array();
  for (const auto& r : b.ratio_roots) ratios.push_back({{"from", r.from}, {"to", r.to}, {"s", r.s}});
  return {{"family", b.family},          {"limit", b.limit},
          {"spread", b.spread},          {"direct_limit", b.direct_limit},
          {"direct_spread", b.direct_spread}, {"level_spread", b.level_spread},
          {"bracket", {b.bracket_lo, b.bracket_hi}}, {"tolerance", b.tolerance},
          {"per_level", levels},         {"ratio_roots", ratios}};
}

json dimension_json(const DimensionReport& d) {
  json out = {{"set", d.set_kind}, {"branch", d.branch}, {"h", d.h},
              {"dimension", d.dimension}, {"diagnostics", d.diagnostics}};
  if (d.entropy) out["entropy"] = entropy_json(*d.entropy);
  if (d.exponent) {
    out["b"] = d.exponent->b;
    out["b_exact"] = d.exponent->exact;
  }
  if (d.bowen) out["bowen"] = bowen_json(*d.bowen);
  return out;
}

json cover_json(const CoverAudit& a) {
  json rows = json::array();
  for (const auto& r : a.rows) {
    rows.push_back({{"n", r.n}, {"log_term", r.log_term}, {"ratio", r.ratio}});
  }
  return {{"s", a.s},         {"rows", rows},         {"log_partial_sum", a.log_partial_sum},
          {"mean_ratio", a.mean_ratio}, {"decaying", a.decaying}, {"growing", a.growing}};
}

json stage_json(const MoranStage& s, MoranVariant variant) {
  json out = {{"k", s.k}, {"n", s.n}, {"t_hat", s.t_hat}, {"t", s.t},
              {"r", std::to_string(s.r_num) + "/" + std::to_string(s.r_den)}};
  if (variant == MoranVariant::psi) {
    out["n_hat"] = s.n_hat;
    out["l"] = s.l;
    out["i"] = s.i;
  } else {
    out["m"] = s.m;
    out["advanced"] = s.advanced;
  }
  return out;
}

json holder_json(const HolderAudit& a, std::size_t max_rows) {
  json rows = json::array();
  // Long audits keep the per-level minima only.
  if (a.rows.size() <= max_rows) {
    for (const auto& r : a.rows) {
      rows.push_back({{"n", r.n}, {"level", r.level}, {"region", std::string(r.region)},
                      {"exponent", r.exponent}, {"log_mass", r.log_mass}});
    }
  } else {
    std::map<std::pair<std::size_t, std::string>, const HolderRow*> minima;
    for (const auto& r : a.rows) {
      auto& slot = minima[{r.level, std::string(r.region)}];
      if (!slot || r.exponent < slot->exponent) slot = &r;
    }
    for (const auto& [key, r] : minima) {
      rows.push_back({{"n", r->n}, {"level", r->level}, {"region", key.second},
                      {"exponent", r->exponent}, {"log_mass", r->log_mass}});
    }
  }
  return {{"min_exponent", a.min_exponent}, {"argmin", a.argmin}, {"target", a.target},
          {"slack", a.slack},               {"passed", a.passed}, {"audited", a.rows.size()},
          {"rows", rows}};
}

std::vector<std::size_t> schedule_param(RunConfig& config, const WordFamily& family,
                                        std::size_t fallback_horizon) {
  auto schedule = config.param<std::vector<std::size_t>>("schedule");
  if (schedule) return *schedule;
  return populated_levels(family, config.horizon(fallback_horizon), config.budget());
}

MoranParams moran_params(RunConfig& config) {
  const WordFamily family = config.family("F");
  const double eta = config.param<double>("eta", 0.1);
  const auto first = config.param<std::size_t>("n1");
  std::string variant = config.param<std::string>("variant", "");
  if (variant.empty()) {
    variant = config.psi().has_value() ? "psi" : "f";
  }
  MoranParams params = [&] {
    if (variant == "psi") {
      PsiFunction psi = config.require_psi();
      const double h = entropy_estimate(WordFamily(family.space()), config.horizon(24)).estimate;
      std::size_t M = 0;
      if (auto given = config.param<std::size_t>("M")) {
        M = *given;
      } else {
        auto chosen = choose_block_length(family, eta, h, config.param<std::size_t>("M_max", 16),
                                          config.budget());
        if (!chosen) throw HypothesisViolated("no block length M reaches (1 - eta) M h");
        M = *chosen;
      }
      return MoranParams::for_psi(family, M, eta, std::move(psi), first, h, config.budget());
    }
    if (variant == "f") {
      return MoranParams::for_potential(family, config.param<std::size_t>("M", 1), eta,
                                        config.require_potential(), first, config.budget());
    }
    throw ConfigError("params.variant must be \"psi\" or \"f\"");
  }();
  params.branch_budget = config.branch_budget();
  if (auto cap = config.param<std::uint64_t>("length_budget")) params.length_budget = *cap;
  return params;
}

json params_json(const MoranParams& p) {
  return {{"variant", p.variant == MoranVariant::psi ? "psi" : "f"},
          {"family", p.family.name()},
          {"M", p.M},
          {"eta", p.eta},
          {"h", p.h},
          {"blocks", p.blocks.size()},
          {"block_ratio", p.block_ratio},
          {"ratio_ok", p.ratio_ok()}};
}

json schedule_json(const MoranSchedule& s, const MoranParams& p) {
  json stages = json::array();
  for (const auto& st : s.stages) stages.push_back(stage_json(st, s.variant));
  return {{"uniform", s.uniform}, {"stages", stages}, {"violations", s.violations(p)}};
}

json cmd_entropy(RunConfig& config) {
  const WordFamily family = config.family("F");
  return entropy_json(entropy_estimate(family, config.horizon(24), config.budget()));
}

json cmd_pressure(RunConfig& config) {
  const WordFamily family = config.family("F");
  const Potential f = config.require_potential();
  const double s = config.param<double>("s", 1.0);
  const auto p = pressure_estimate(family, f, s, config.horizon(24), config.budget());
  json rows = json::array();
  for (const auto& r : p.rows) {
    rows.push_back({{"n", r.n}, {"per_symbol", r.per_symbol}, {"ratio", r.ratio}});
  }
  return {{"family", p.family}, {"s", p.s}, {"extrapolated", p.extrapolated},
          {"direction", p.direction}, {"rows", rows}, {"finite_horizon", true}};
}

json cmd_bowen(RunConfig& config) {
  const WordFamily family = config.family("F");
  const Potential f = config.require_potential();
  const auto schedule = schedule_param(config, family, 24);
  return bowen_json(bowen_root(family, f, schedule, config.tol(), config.budget()));
}

json cmd_dim_rpsi(RunConfig& config) {
  const ShiftSpace space = config.space();
  const PsiFunction psi = config.require_psi();
  const std::string branch = config.param<std::string>("branch", "auto");
  PsiBranch choice = PsiBranch::automatic;
  if (branch == "C1") {
    choice = PsiBranch::c1;
  } else if (branch == "C2") {
    choice = PsiBranch::c2;
  } else if (branch != "auto") {
    throw ConfigError("params.branch must be auto, C1 or C2");
  }
  return dimension_json(dimension_R_psi(space, psi, config.horizon(30), choice));
}

json cmd_dim_rf(RunConfig& config) {
  const ShiftSpace space = config.space();
  const Potential f = config.require_potential();
  auto schedule = config.param<std::vector<std::size_t>>("schedule");
  std::vector<std::size_t> levels;
  if (schedule) {
    levels = *schedule;
  } else {
    for (std::size_t n = 1; n <= config.horizon(24); ++n) levels.push_back(n);
  }
  return dimension_json(dimension_R_f(space, f, levels, config.tol()));
}

json cmd_cover_audit(RunConfig& config) {
  const ShiftSpace space = config.space();
  const auto n_from = config.param<std::size_t>("n_from", 1);
  const auto n_to = config.param<std::size_t>("n_to", config.horizon(20));
  std::function<CoverAudit(double)> audit;
  std::string target;
  if (auto psi = config.psi()) {
    target = "psi";
    audit = [space, psi = *psi, n_from, n_to](double s) {
      return cover_sum_audit(space, psi, s, n_from, n_to);
    };
  } else {
    target = "f";
    audit = [space, f = config.require_potential(), n_from, n_to](double s) {
      return cover_sum_audit(space, f, s, n_from, n_to);
    };
  }
  json out = {{"target", target}, {"n_from", n_from}, {"n_to", n_to}};
  if (auto s = config.param<double>("s")) out["audit"] = cover_json(audit(*s));
  if (auto step = config.param<double>("scan_step")) {
    const auto crossing = cover_crossing(audit, *step, config.param<double>("s_max", 2.0));
    json scan = json::array();
    for (const auto& [s, ratio] : crossing.scan) scan.push_back({s, ratio});
    out["crossing"] = {{"step", crossing.step}, {"crossing", crossing.crossing},
                       {"last_growing", crossing.last_growing}, {"scan", scan}};
  }
  if (!out.contains("audit") && !out.contains("crossing")) {
    throw ConfigError("cover-audit needs params.s or params.scan_step");
  }
  return out;
}

json cmd_spec_check(RunConfig& config) {
  const WordFamily good = config.family("G");
  const auto tau_max = config.param<std::size_t>("tau_max", 2);
  const auto horizon = config.horizon(8);
  const auto result = check_w_specification(good, tau_max, horizon, config.budget());
  json out = {{"family", good.name()}, {"tau_max", tau_max}, {"horizon", horizon},
              {"ok", result.ok()}, {"finite_horizon", true}};
  if (result.certificate) {
    const auto& cert = *result.certificate;
    out["tau"] = cert.gap_length;
    out["pairs_checked"] = cert.pairs_checked;
    out["populated_lengths"] = cert.populated_lengths;
    out["revalidated"] = revalidate(cert, good);
    json witnesses = json::array();
    const std::size_t keep = config.param<std::size_t>("witness_samples", 16);
    for (std::size_t i = 0; i < cert.witnesses.size() && i < keep; ++i) {
      const auto& w = cert.witnesses[i];
      witnesses.push_back({{"v", word_json(w.left)}, {"u", word_json(w.gluing)},
                           {"w", word_json(w.right)}});
    }
    out["witnesses"] = witnesses;
  } else {
    out["tau"] = nullptr;
    out["failure"] = {{"v", word_json(result.failure->left)},
                      {"w", word_json(result.failure->right)}};
  }
  return out;
}

json cmd_free_concat(RunConfig& config) {
  const WordFamily family = config.family("F");
  const auto horizon = config.horizon(8);
  const auto result = check_free_concatenation(family, horizon, config.budget());
  json out = {{"family", family.name()}, {"horizon", horizon}, {"holds", result.holds},
              {"pairs_checked", result.pairs_checked},
              {"populated_lengths", result.populated_lengths}, {"finite_horizon", true}};
  if (result.counterexample) {
    out["counterexample"] = {{"u", word_json(result.counterexample->first)},
                             {"w", word_json(result.counterexample->second)}};
  }
  return out;
}

json cmd_mistake_profile(RunConfig& config) {
  const WordFamily family = config.family("F");
  const auto lengths = config.param<std::vector<std::size_t>>("lengths",
                                                              {2, 4, 6, 8, 10});
  const auto sample_budget = config.param<std::uint64_t>("sample_budget", 4096);
  const auto profile = mistake_profile(family, lengths, sample_budget, config.seed(),
                                       config.param<std::size_t>("slack", 4));
  json samples = json::array();
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    samples.push_back({{"n", s.n}, {"value", s.value}, {"exact", s.exact},
                       {"words_tested", s.words_tested}, {"worst_word", word_json(s.worst_word)},
                       {"ratio", profile.ratios[i]}});
  }
  return {{"family", family.name()}, {"samples", samples}};
}

json census_json(const EditBallCensus& c) {
  return {{"center", word_json(c.center)}, {"delta", c.radius_fraction}, {"radius", c.radius},
          {"count", c.count}, {"bound_constant", c.bound_constant}};
}

json cmd_edit_ball(RunConfig& config) {
  const ShiftSpace space = config.space();
  if (config.has_param("word")) {
    const Word w = config.raw_param("word").get<Word>();
    const double delta = config.param<double>("delta", 0.5);
    return census_json(edit_ball_count(space, w, delta, config.budget()));
  }
  const auto max_length = config.param<std::size_t>("max_length", 12);
  const auto deltas = config.param<std::vector<double>>("deltas", {0.1, 0.25, 0.5});
  const auto fit = fit_edit_ball_grid(space, max_length, deltas);
  json worst = json::object();
  double max_c = -1;
  for (const auto& c : fit.censuses) {
    if (c.bound_constant > max_c) {
      max_c = c.bound_constant;
      worst = census_json(c);
    }
  }
  return {{"constant", fit.constant}, {"censuses", fit.censuses.size()},
          {"max_length", max_length}, {"deltas", deltas}, {"binding_census", worst}};
}

std::size_t moran_levels(RunConfig& config) { return config.param<std::size_t>("levels", 4); }

json cmd_moran_build(RunConfig& config) {
  const MoranParams params = moran_params(config);
  const MoranSchedule schedule = build_schedule(params, moran_levels(config));
  const auto build_depth =
      std::min(schedule.stages.size(), config.param<std::size_t>("build_levels", schedule.stages.size()));
  MoranSchedule built = schedule;
  built.stages.resize(build_depth);
  const auto levels = build_levels(params, built, config.seed());
  bool exact = true;
  json sizes = json::array();
  for (const auto& l : levels) {
    exact = exact && !l.sampled;
    sizes.push_back({{"k", l.k}, {"cylinders", l.cylinders.size()}, {"sampled", l.sampled}});
  }
  std::optional<CylinderMeasure> measure;
  if (exact) measure = attach_measure(params, built, levels, config.tol());
  json out = {{"params", params_json(params)}, {"schedule", schedule_json(schedule, params)},
              {"levels", sizes}, {"exact", exact}};
  std::optional<std::string> path = config.param<std::string>("levels_file");
  if (!path && config.flags().out) path = *config.flags().out + ".levels.jsonl";
  if (path) {
    std::ofstream file(*path);
    if (!file) throw ConfigError("cannot write " + *path);
    write_levels_jsonl(file, levels, measure ? &*measure : nullptr);
    out["levels_file"] = *path;
  }
  if (measure) out["conservation"] = check_conservation(levels, *measure).max_deviation;
  return out;
}

json cmd_moran_audit(RunConfig& config) {
  const MoranParams params = moran_params(config);
  const MoranSchedule schedule = build_schedule(params, moran_levels(config));
  const double slack = config.param<double>("slack", 0.02);
  const auto given_target = config.param<double>("target");
  const double target = given_target ? *given_target : holder_target(params);
  json out = {{"params", params_json(params)}, {"schedule", schedule_json(schedule, params)},
              {"target", target}, {"slack", slack}};
  const std::size_t max_rows = config.param<std::size_t>("max_rows", 200);

  std::optional<HolderAudit> main_audit;
  if (params.variant == MoranVariant::psi) {
    const auto& stages = schedule.stages;
    const std::size_t default_from = stages.size() >= 3 ? stages[stages.size() - 3].end() + 1 : 1;
    const auto from = config.param<std::size_t>("audit_from", default_from);
    const auto to = config.param<std::size_t>("audit_to", stages.back().end());
    main_audit = holder_audit_uniform(params, schedule, from, to, target, slack);
    out["uniform_audit"] = holder_json(*main_audit, max_rows);
  }

  std::vector<MoranLevel> levels;
  std::optional<CylinderMeasure> measure;
  MoranSchedule built = schedule;
  if (config.flags().input) {
    std::ifstream in(*config.flags().input);
    if (!in) throw ConfigError("cannot open " + *config.flags().input);
    auto loaded = read_levels_jsonl(in);
    levels = std::move(loaded.levels);
    if (loaded.measure.exact) measure = std::move(loaded.measure);
    out["input"] = *config.flags().input;
  } else {
    const auto depth = std::min(schedule.stages.size(),
                                config.param<std::size_t>("measure_levels", 2));
    built.stages.resize(depth);
    levels = build_levels(params, built, config.seed());
    bool exact = std::none_of(levels.begin(), levels.end(),
                              [](const MoranLevel& l) { return l.sampled; });
    if (exact) measure = attach_measure(params, built, levels, config.tol());
  }
  out["measure_levels"] = levels.size();
  out["exact"] = measure.has_value();
  if (measure) {
    const auto conservation = check_conservation(levels, *measure);
    out["conservation"] = {{"child_deviation", conservation.child_deviation},
                           {"total_deviation", conservation.total_deviation},
                           {"max_deviation", conservation.max_deviation}};
    if (params.variant == MoranVariant::f) out["s_levels"] = measure->s;
    std::size_t shortest = SIZE_MAX;
    for (const auto& c : levels.back().cylinders) shortest = std::min(shortest, c.word.size());
    std::vector<std::size_t> grid;
    for (std::size_t n = 1; n <= shortest; ++n) grid.push_back(n);
    const auto generic = holder_audit(schedule, levels, *measure, grid, target, slack);
    out["cylinder_audit"] = holder_json(generic, max_rows);
    if (!main_audit) main_audit = generic;
  }
  if (main_audit) {
    const double s = config.param<double>("s", target - slack);
    const auto mass = mass_distribution_check(*main_audit, s, config.param<double>("c", 1.0),
                                              config.param<double>("diam_max", 1.0));
    out["mass_distribution"] = {{"s", s}, {"passed", mass.passed}, {"checked", mass.checked},
                                {"min_margin", mass.min_margin}, {"statement", mass.statement}};
    if (mass.first_failure) out["mass_distribution"]["first_failure"] = *mass.first_failure;
  }
  return out;
}

json cmd_point(RunConfig& config) {
  const MoranParams params = moran_params(config);
  const MoranSchedule schedule = build_schedule(params, moran_levels(config));
  const auto count = config.param<std::size_t>("points", 1);
  const auto emit = config.param<std::size_t>("emit_symbols", 200);
  const std::uint64_t seed = config.seed();
  json points = json::array();
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto point = materialize_point(params, schedule, seed + i);
    json log = json::array();
    for (const auto& c : point.log) {
      ++checks;
      if (!c.passed) ++failures;
      log.push_back({{"k", c.k}, {"position", c.position}, {"t", c.t},
                     {"agreement", c.agreement}, {"log_target", c.log_target},
                     {"passed", c.passed}});
    }
    const std::size_t shown = std::min(emit, point.symbols.size());
    const Word prefix(std::vector<Symbol>(point.symbols.begin(), point.symbols.begin() + shown));
    points.push_back({{"seed", seed + i}, {"length", point.symbols.size()},
                      {"prefix", word_json(prefix)}, {"log", log},
                      {"all_passed", point.all_passed()}});
  }
  return {{"params", params_json(params)}, {"schedule", schedule_json(schedule, params)},
          {"points", points}, {"checks", checks}, {"failures", failures}};
}

using Handler = json (*)(RunConfig&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"entropy", cmd_entropy},
      {"pressure", cmd_pressure},
      {"bowen", cmd_bowen},
      {"dim-rpsi", cmd_dim_rpsi},
      {"dim-rf", cmd_dim_rf},
      {"cover-audit", cmd_cover_audit},
      {"spec-check", cmd_spec_check},
      {"free-concat", cmd_free_concat},
      {"mistake-profile", cmd_mistake_profile},
      {"edit-ball", cmd_edit_ball},
      {"moran build", cmd_moran_build},
      {"moran audit", cmd_moran_audit},
      {"point", cmd_point},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

json execute(const std::string& command, RunConfig& config) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw ConfigError("unknown command \"" + command + "\"");
  return it->second(config);
}

json round_numbers(const json& value) {
  if (value.is_number_float()) {
    const double x = value.get<double>();
    if (!std::isfinite(x)) return nullptr;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return std::strtod(buffer, nullptr);
  }
  if (value.is_array()) {
    json out = json::array();
    for (const auto& v : value) out.push_back(round_numbers(v));
    return out;
  }
  if (value.is_object()) {
    json out = json::object();
    for (const auto& [key, v] : value.items()) out[key] = round_numbers(v);
    return out;
  }
  return value;
}

int run(const std::string& command, const std::string& config_path, const Flags& flags,
        std::ostream& out, std::ostream& err) {
  try {
    RunConfig config = RunConfig::load(config_path, flags);
    json report = execute(command, config);
    json envelope = {{"command", command},
                     {"config_digest", config.digest()},
                     {"budgets",
                      {{"enumeration", config.budget()},
                       {"branch", config.branch_budget()},
                       {"tolerance", config.tol()},
                       {"seed", config.seed()}}},
                     {"report", std::move(report)}};
    for (const auto& key : config.unused_keys()) {
      err << "warning: config key \"" << key << "\" is not used by " << command << '\n';
    }
    const std::string text = round_numbers(envelope).dump(2) + "\n";
    if (flags.out) {
      std::ofstream file(*flags.out);
      if (!file) throw ConfigError("cannot write " + *flags.out);
      file << text;
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const HypothesisViolated& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

namespace {

std::string describe_command(const std::string& name) {
  static const std::map<std::string, std::string> text = {
      {"entropy", "entropy of a family from word counts"},
      {"pressure", "pressure of -s(f+1) over the language"},
      {"bowen", "level roots s_n and the Bowen root estimate"},
      {"dim-rpsi", "Hausdorff dimension of R(psi)"},
      {"dim-rf", "Hausdorff dimension of R(f)"},
      {"cover-audit", "cylinder cover sums and their crossing point"},
      {"spec-check", "smallest gluing length for (W)-specification"},
      {"free-concat", "free concatenation check with counterexample"},
      {"mistake-profile", "distance from language words to a family"},
      {"edit-ball", "edit-ball counts and the fitted bound constant"},
      {"moran build", "schedule and cylinder levels, written as JSON lines"},
      {"moran audit", "mass conservation, Holder exponents, mass distribution"},
      {"point", "seeded points with their recurrence logs"},
  };
  const auto it = text.find(name);
  return it == text.end() ? std::string() : it->second;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Recurrence sets on shift spaces: entropy, pressure, Bowen roots, Moran sets"};
  app.require_subcommand(1);
  std::string config_path;
  Flags flags;
  std::string chosen;

  auto add_common = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--out", flags.out, "report path (stdout when absent)");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--tol", flags.tol, "solver tolerance");
    sub->add_option("--horizon", flags.horizon, "largest word length");
    sub->add_option("--budget", flags.budget, "enumeration budget");
    sub->callback([&chosen, name] { chosen = name; });
  };
  CLI::App* moran = app.add_subcommand("moran", "Moran construction");
  moran->require_subcommand(1);
  for (const auto& name : command_names()) {
    if (name.rfind("moran ", 0) == 0) {
      auto* sub = moran->add_subcommand(name.substr(6), describe_command(name));
      add_common(sub, name);
      if (name == "moran audit") {
        sub->add_option("--input", flags.input, "levels file written by moran build");
      }
    } else {
      add_common(app.add_subcommand(name, describe_command(name)), name);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  return run(chosen, config_path, flags, std::cout, std::cerr);
}

}  // namespace symrec::cli
