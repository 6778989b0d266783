#include "pstddm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pstddm {

namespace {

using nlohmann::json;

const std::set<std::string> kModes{"fe", "pstddm-layers", "pstddm-blocks", "gmres-study"};

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

}  // namespace

double ExperimentConfig::k() const { return 2.0 * kPi * k_over_2pi; }

PmlProfile ExperimentConfig::profile() const {
  PmlProfile p;
  p.l = l;
  p.l_bar = l_bar;
  p.d = d;
  p.gamma0 = gamma0;
  return p;
}

TransferForm ExperimentConfig::transfer_form() const {
  if (transfer == "commutator") return TransferForm::Commutator;
  if (transfer == "quadrature") return TransferForm::Quadrature;
  throw ConfigError("config: transfer must be 'commutator' or 'quadrature'");
}

std::vector<std::string> ExperimentConfig::validate() const {
  if (kModes.count(mode) == 0) throw ConfigError("config: unknown mode '" + mode + "'");
  if (!(k_over_2pi > 0.0)) throw ConfigError("config: k_over_2pi must be positive");
  if (!(q >= 4.0)) throw ConfigError("config: q must be at least 4");
  if (N < 1) throw ConfigError("config: N must be at least 1");
  if (N1 < 1) throw ConfigError("config: N1 must be at least 1");
  if (!(tol > 0.0) || restart < 1 || maxit < 1) throw ConfigError("config: tol, restart and maxit must be positive");
  (void)transfer_form();
  const PmlProfile p = profile();
  p.validate();
  for (int a = 0; a < 2; ++a) {
    if (!(l_bar[a] < l[a] + d[a])) throw ConfigError("config: l_bar must lie inside the PML (l_bar < l + d)");
  }
  std::vector<std::string> warnings;
  if (mode == "pstddm-blocks") {
    if (l[0] != l[1] || d[0] != d[1]) throw ConfigError("config: block mode requires l1 = l2 and d1 = d2");
    const AssumptionReport h2 = validate_H2(p, d[0]);
    if (!h2.ok) throw ConfigError("config: " + join(h2.failures));
  } else {
    const AssumptionReport h1 = validate_H1(p);
    if (!h1.ok) throw ConfigError("config: " + join(h1.failures));
    warnings = h1.warnings;
    const AssumptionReport h2 = validate_H2(p, d[1]);
    for (const auto& f : h2.failures) warnings.push_back(f);
  }
  return warnings;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{"mode", "k_over_2pi", "q", "N", "N1", "gamma0", "l", "l_bar", "d",
                                           "transfer", "tol", "restart", "maxit", "output"};
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) == 0) throw ConfigError("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  read(j, "mode", c.mode);
  read(j, "k_over_2pi", c.k_over_2pi);
  read(j, "q", c.q);
  read(j, "N", c.N);
  read(j, "N1", c.N1);
  read(j, "gamma0", c.gamma0);
  read(j, "l", c.l);
  read(j, "l_bar", c.l_bar);
  read(j, "d", c.d);
  read(j, "transfer", c.transfer);
  read(j, "tol", c.tol);
  read(j, "restart", c.restart);
  read(j, "maxit", c.maxit);
  read(j, "output", c.output);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& c) {
  const json j{{"mode", c.mode},         {"k_over_2pi", c.k_over_2pi}, {"q", c.q},
               {"N", c.N},               {"N1", c.N1},                 {"gamma0", c.gamma0},
               {"l", c.l},               {"l_bar", c.l_bar},           {"d", c.d},
               {"transfer", c.transfer}, {"tol", c.tol},               {"restart", c.restart},
               {"maxit", c.maxit},       {"output", c.output}};
  return j.dump(2);
}

}  // namespace pstddm
