#pragma once

#include <cmath>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fg_assembly.hpp"
#include "spectral.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"
#include "verify.hpp"
#include "wavefunction.hpp"

namespace dpt {

using json = nlohmann::json;

// Input text that is not JSON at all.
struct MalformedInput : Error {
  using Error::Error;
};

inline json to_json(const SystemSpec& s) {
  return json{{"N", s.N},
              {"F", {{"a", s.F.a}, {"b", s.F.b}, {"c", s.F.c}, {"d", s.F.d}, {"e", s.F.e},
                     {"f", s.F.f}, {"g", s.F.g}, {"h", s.F.h}, {"iota", s.F.iota}}},
              {"G", {{"a", s.G.a}, {"g", s.G.g}, {"h", s.G.h}}},
              {"delta", s.delta},
              {"v0", s.v0},
              {"E_inf", s.E_inf},
              {"r_inf", s.r_inf},
              {"gamma_inf", s.gamma_inf},
              {"a_ho", s.a_ho}};
}

namespace detail {

inline void expect_keys(const json& j, const std::string& where, const std::vector<std::string>& keys) {
  if (!j.is_object()) throw ValidationError(where.empty() ? "spec" : where, "must be an object");
  std::set<std::string> known(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ValidationError(where + it.key(), "unknown key");
  for (const auto& k : keys)
    if (!j.contains(k)) throw ValidationError(where + k, "required");
}

inline double number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(where + key, "must be a number");
  return v.get<double>();
}

}  // namespace detail

inline SystemSpec spec_from_json(const json& j) {
  detail::expect_keys(j, "", {"N", "F", "G", "delta", "v0", "E_inf", "r_inf", "gamma_inf", "a_ho"});
  if (!j.at("N").is_number_integer()) throw ValidationError("N", "must be an integer");
  SystemSpec s;
  s.N = j.at("N").get<int>();
  const json& F = j.at("F");
  detail::expect_keys(F, "F.", {"a", "b", "c", "d", "e", "f", "g", "h", "iota"});
  s.F = {detail::number(F, "a", "F."), detail::number(F, "b", "F."), detail::number(F, "c", "F."),
         detail::number(F, "d", "F."), detail::number(F, "e", "F."), detail::number(F, "f", "F."),
         detail::number(F, "g", "F."), detail::number(F, "h", "F."), detail::number(F, "iota", "F.")};
  const json& G = j.at("G");
  detail::expect_keys(G, "G.", {"a", "g", "h"});
  s.G = {detail::number(G, "a", "G."), detail::number(G, "g", "G."), detail::number(G, "h", "G.")};
  s.delta = detail::number(j, "delta", "");
  s.v0 = detail::number(j, "v0", "");
  s.E_inf = detail::number(j, "E_inf", "");
  s.r_inf = detail::number(j, "r_inf", "");
  s.gamma_inf = detail::number(j, "gamma_inf", "");
  s.a_ho = detail::number(j, "a_ho", "");
  return s;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("malformed JSON: ") + e.what());
  }
}

inline SystemSpec parse_spec(const std::string& text) {
  SystemSpec s = spec_from_json(parse_json(text));
  validate_spec(s);
  return s;
}

inline json to_json(const TildeCoefficients& t, int N) {
  return json{{"N", N},
              {"blocks", {{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}, {"e", t.e}, {"f", t.f},
                          {"g", t.g}, {"h", t.h}, {"iota", t.iota}, {"a_prime", t.ap},
                          {"g_prime", t.gp}, {"h_prime", t.hp}}}};
}

// NaN and infinities become null.
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline void write_csv(std::ostream& os, const Eigen::MatrixXd& m, const std::string& header = "") {
  os.precision(17);
  if (!header.empty()) os << header << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << "\n";
  }
}

inline std::string pair_label(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// CSV of one W block: first line names the block, second the column labels.
inline void write_block_csv(std::ostream& os, const Eigen::MatrixXd& block, int N, bool angular,
                            const std::string& name) {
  os << "# " << name << "\n";
  if (angular) {
    bool first = true;
    for (const auto& [i, j] : pair_list(N)) {
      os << (first ? "" : ",") << "\"" << pair_label(i, j) << "\"";
      first = false;
    }
  } else {
    for (int i = 1; i <= N; ++i) os << (i > 1 ? "," : "") << i;
  }
  os << "\n";
  write_csv(os, block);
}

inline json to_json(const SpeciesSolution& s, const SpectralSolution& sol) {
  json branches = json::array();
  auto branch = [&](const char* tag, double lam, double th, double c) {
    std::string mu;
    if (s.species == Species::symmetric) mu = std::string("0") + tag;
    else if (s.species == Species::standard) mu = std::string("1") + tag;
    else mu = "2";
    branches.push_back({{"branch", tag}, {"mu", mu}, {"lambda", num(lam)}, {"omega", num(omega_of(lam))},
                        {"theta", num(th)}, {"c", num(c)}, {"multiplicity", sol.multiplicity(mu)}});
  };
  if (s.species == Species::two_row) {
    branch("", s.lambda_plus, std::numbers::pi / 2, s.c_plus);
  } else {
    branch("+", s.lambda_plus, s.theta_plus, s.c_plus);
    if (s.size == 2) branch("-", s.lambda_minus, s.theta_minus, s.c_minus);
  }
  return json{{"present", true}, {"sigma_G", to_json(s.sigma.G)}, {"sigma_FG", to_json(s.sigma.FG)},
              {"branches", branches}};
}

inline json modes_json(const SystemSpec& spec, const SpectralSolution& sol) {
  json species = json::object();
  species["[N]"] = to_json(sol.symmetric, sol);
  species["[N-1,1]"] = to_json(sol.standard, sol);
  species["[N-2,2]"] = sol.two_row ? to_json(*sol.two_row, sol) : json{{"present", false}};
  json table = json::array();
  bool stable = true;
  for (const auto& m : sol.modes) {
    const double lam = sol.lambda(m);
    stable = stable && lam >= 0;
    table.push_back({{"b", m.b}, {"mu", m.mu}, {"xi", m.xi}, {"lambda", num(lam)}, {"omega", num(omega_of(lam))}});
  }
  return json{{"spec", to_json(spec)},
              {"P", coordinate_count(spec.N)},
              {"M", pair_count(spec.N)},
              {"stable", stable},
              {"species", species},
              {"modes", table}};
}

inline json to_json(const VerifyReport& r, bool timings) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"name", c.name}, {"residual", num(c.residual)}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    if (timings) j["seconds"] = c.seconds;
    checks.push_back(j);
  }
  return json{{"pass", r.pass}, {"checks", checks}, {"diagnostics", r.diagnostics}};
}

// Occupancy entries {mu, n, count}.
inline Occupancy occupancy_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("occupancy", "must be an array of {mu, n, count}");
  Occupancy occ;
  for (const auto& e : j) {
    detail::expect_keys(e, "occupancy.", {"mu", "n", "count"});
    if (!e.at("mu").is_string()) throw ValidationError("occupancy.mu", "must be a string");
    if (!e.at("n").is_number_integer() || e.at("n").get<long>() < 0)
      throw ValidationError("occupancy.n", "must be a non-negative integer");
    if (!e.at("count").is_number_integer() || e.at("count").get<long>() < 0)
      throw ValidationError("occupancy.count", "must be a non-negative integer");
    occ[e.at("mu").get<std::string>()][e.at("n").get<int>()] += e.at("count").get<int>();
  }
  return occ;
}

}  // namespace dpt
