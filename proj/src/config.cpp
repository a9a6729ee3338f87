#include "symrec/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "symrec/beta_expansion.hpp"
#include "symrec/errors.hpp"

namespace symrec::cli {

using nlohmann::json;

namespace {

template <class T>
T get_field(const json& decl, const char* key, const std::string& where) {
  if (!decl.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  try {
    return decl.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

Word parse_word_field(const json& j, const std::string& where) {
  try {
    return j.get<Word>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

ShiftSpace parse_space(const json& decl) {
  if (!decl.is_object()) throw ConfigError("space: expected an object");
  const auto kind = get_field<std::string>(decl, "kind", "space");
  if (kind == "full") {
    const auto p = get_field<std::size_t>(decl, "p", "space");
    return ShiftSpace::full(p);
  }
  if (kind == "beta") {
    std::string text;
    const json& beta = decl.at("beta");
    text = beta.is_string() ? beta.get<std::string>() : beta.dump();
    const auto horizon = decl.value("horizon", std::size_t{256});
    const auto bits = decl.value("precision_bits", std::size_t{4096});
    return ShiftSpace::beta(BetaExpansion::quasi_greedy(text, horizon, bits));
  }
  if (kind == "sgap") {
    GapSet gaps;
    gaps.listed = get_field<std::vector<std::size_t>>(decl, "gaps", "space");
    if (decl.contains("tail") && !decl.at("tail").is_null()) {
      const json& tail = decl.at("tail");
      gaps.tail = ArithmeticTail{get_field<std::size_t>(tail, "start", "space.tail"),
                                 tail.value("step", std::size_t{1})};
      if (gaps.tail->step == 0) throw ConfigError("space.tail.step must be ≥ 1");
    }
    return ShiftSpace::sgap(std::move(gaps));
  }
  if (kind == "forbidden") {
    std::vector<Word> words;
    if (!decl.contains("words") || !decl.at("words").is_array()) {
      throw ConfigError("space: forbidden shift needs a \"words\" array");
    }
    for (const auto& w : decl.at("words")) words.push_back(parse_word_field(w, "space.words"));
    return ShiftSpace::forbidden(std::move(words), decl.value("p", std::size_t{2}));
  }
  if (kind == "golden-mean") return ShiftSpace::golden_mean();
  throw ConfigError("space: unknown kind \"" + kind + "\"");
}

Potential parse_potential(const json& decl, const ShiftSpace& space) {
  if (!decl.is_object()) throw ConfigError("potential: expected an object");
  const auto depth = decl.value("depth", std::size_t{0});
  Potential f = Potential::constant(1.0);
  if (depth == 0) {
    f = Potential::constant(get_field<double>(decl, "value", "potential"));
  } else {
    if (!decl.contains("values") || !decl.at("values").is_object()) {
      throw ConfigError("potential: depth ≥ 1 needs a \"values\" object");
    }
    std::map<Word, double> table;
    for (const auto& [key, value] : decl.at("values").items()) {
      if (!value.is_number()) throw ConfigError("potential: value for " + key + " is not a number");
      table[Word::parse(key)] = value.get<double>();
    }
    f = Potential::from_table(depth, table);
  }
  f.validate(space);
  return f;
}

PsiFunction parse_psi(const json& decl) {
  if (!decl.is_object()) throw ConfigError("psi: expected an object");
  const auto form = get_field<std::string>(decl, "form", "psi");
  if (form == "exponential") return PsiFunction::exponential(get_field<double>(decl, "alpha", "psi"));
  if (form == "polynomial") {
    return PsiFunction::polynomial(decl.value("c", 1.0), get_field<double>(decl, "kappa", "psi"));
  }
  if (form == "product") {
    return PsiFunction::product(decl.value("c", 1.0), get_field<double>(decl, "kappa", "psi"),
                                get_field<double>(decl, "alpha", "psi"));
  }
  if (form == "constant") return PsiFunction::constant(get_field<double>(decl, "c", "psi"));
  if (form == "table") {
    std::optional<double> bound;
    if (decl.contains("liminf_lower_bound") && !decl.at("liminf_lower_bound").is_null()) {
      bound = get_field<double>(decl, "liminf_lower_bound", "psi");
    }
    return PsiFunction::table(get_field<std::vector<double>>(decl, "values", "psi"), bound);
  }
  throw ConfigError("psi: unknown form \"" + form + "\"");
}

RunConfig RunConfig::from_json(json doc, Flags flags) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  if (doc.contains("params") && !doc.at("params").is_object()) {
    throw ConfigError("config: \"params\" must be an object");
  }
  RunConfig config;
  config.digest_ = sha256_hex(doc.dump());
  config.doc_ = std::move(doc);
  config.flags_ = std::move(flags);
  return config;
}

RunConfig RunConfig::load(const std::string& path, Flags flags) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return from_json(std::move(doc), std::move(flags));
}

void RunConfig::throw_config(const std::string& what) { throw ConfigError(what); }

ShiftSpace RunConfig::space() {
  if (!space_) {
    if (!doc_.contains("space")) throw ConfigError("config: missing \"space\"");
    used_.insert("space");
    space_ = parse_space(doc_.at("space"));
  }
  return *space_;
}

std::optional<Potential> RunConfig::potential() {
  if (!doc_.contains("potential")) return std::nullopt;
  used_.insert("potential");
  return parse_potential(doc_.at("potential"), space());
}

Potential RunConfig::require_potential() {
  auto f = potential();
  if (!f) throw ConfigError("config: this command needs a \"potential\"");
  return *f;
}

std::optional<PsiFunction> RunConfig::psi() {
  if (!doc_.contains("psi")) return std::nullopt;
  used_.insert("psi");
  return parse_psi(doc_.at("psi"));
}

PsiFunction RunConfig::require_psi() {
  auto psi_fn = psi();
  if (!psi_fn) throw ConfigError("config: this command needs a \"psi\"");
  return *psi_fn;
}

WordFamily RunConfig::family(const std::string& role) {
  const ShiftSpace s = space();
  std::string spec = "language";
  if (doc_.contains("structure")) {
    const json& structure = doc_.at("structure");
    if (!structure.is_object()) throw ConfigError("structure: expected an object");
    if (structure.contains(role)) {
      used_.insert("structure." + role);
      spec = structure.at(role).get<std::string>();
    }
  }
  if (spec == "language" || spec == "L") return WordFamily(s);
  return WordFamily(s, make_predicate(s, spec));
}

bool RunConfig::has_param(const std::string& key) const {
  return doc_.contains("params") && doc_.at("params").contains(key);
}

const json& RunConfig::raw_param(const std::string& key) {
  if (!has_param(key)) throw ConfigError("params: missing \"" + key + "\"");
  used_.insert("params." + key);
  return doc_.at("params").at(key);
}

std::optional<json> RunConfig::budget_entry(const std::string& key) {
  if (!doc_.contains("budgets")) return std::nullopt;
  const json& budgets = doc_.at("budgets");
  if (!budgets.is_object()) throw ConfigError("budgets: expected an object");
  if (!budgets.contains(key)) return std::nullopt;
  used_.insert("budgets." + key);
  return budgets.at(key);
}

std::uint64_t RunConfig::budget() {
  if (flags_.budget) return *flags_.budget;
  if (auto j = budget_entry("enumeration")) return j->get<std::uint64_t>();
  return kDefaultEnumerationBudget;
}

std::uint64_t RunConfig::branch_budget() {
  if (auto j = budget_entry("branch")) return j->get<std::uint64_t>();
  return 4096;
}

double RunConfig::tol() {
  if (flags_.tol) return *flags_.tol;
  if (auto j = budget_entry("tolerance")) return j->get<double>();
  return 1e-10;
}

std::size_t RunConfig::horizon(std::size_t fallback) {
  if (flags_.horizon) return *flags_.horizon;
  if (auto j = budget_entry("horizon")) return j->get<std::size_t>();
  return fallback;
}

std::uint64_t RunConfig::seed() {
  if (flags_.seed) return *flags_.seed;
  if (auto j = budget_entry("seed")) return j->get<std::uint64_t>();
  return 1;
}

std::vector<std::string> RunConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : doc_.items()) {
    if (key == "params" || key == "budgets" || key == "structure") {
      if (!value.is_object()) continue;
      for (const auto& [inner, unused] : value.items()) {
        (void)unused;
        if (!used_.count(key + "." + inner)) out.push_back(key + "." + inner);
      }
      continue;
    }
    if (!used_.count(key)) out.push_back(key);
  }
  return out;
}

}  // namespace symrec::cli
