#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral.hpp"
#include "system_spec.hpp"

namespace dpt {

using Eigen::VectorXd;

// Normalised 1-D oscillator eigenfunction (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2).
inline double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: n must be >= 0");
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double mode_omega(const SpectralSolution& sol, const ModeLabel& m) {
  const double lam = sol.lambda(m);
  if (!(lam > 0)) throw UnstableMode("mode " + m.mu + " has lambda <= 0");
  return std::sqrt(lam);
}

// Per-mode factors omega^{1/4} h_n(sqrt(omega) q); their product is the wave function.
inline std::vector<double> phi0_factors(const VectorXd& q, const SpectralSolution& sol,
                                        const std::vector<int>& quanta = {}) {
  const std::size_t P = sol.modes.size();
  if (std::size_t(q.size()) != P) throw DomainError("phi0: q must have length P");
  if (!quanta.empty() && quanta.size() != P) throw DomainError("phi0: quanta must have length P");
  std::vector<double> out(P);
  for (const auto& m : sol.modes) {
    const double w = mode_omega(sol, m);
    const int n = quanta.empty() ? 0 : quanta[m.b - 1];
    out[m.b - 1] = std::pow(w, 0.25) * hermite_function(n, std::sqrt(w) * q(m.b - 1));
  }
  return out;
}

inline double phi0(const VectorXd& q, const SpectralSolution& sol, const std::vector<int>& quanta = {}) {
  double p = 1.0;
  for (double f : phi0_factors(q, sol, quanta)) p *= f;
  return p;
}

// Manifold occupancy: for each root label, how many of its modes carry n quanta.
using Occupancy = std::map<std::string, std::map<int, int>>;

// Missing counts are filled at n = 0 so each manifold totals its multiplicity.
inline Occupancy complete_occupancy(const SpectralSolution& sol, const Occupancy& partial) {
  Occupancy out;
  for (const auto& [mu, counts] : partial) {
    bool known = false;
    for (const auto& l : manifold_labels()) known = known || l == mu;
    if (!known) throw DomainError("unknown manifold label " + mu);
  }
  for (const auto& mu : manifold_labels()) {
    const int d = sol.multiplicity(mu);
    auto it = partial.find(mu);
    std::map<int, int> counts = it == partial.end() ? std::map<int, int>{} : it->second;
    int total = 0;
    for (const auto& [n, c] : counts) {
      if (n < 0) throw DomainError("quantum number must be >= 0 in manifold " + mu);
      if (c < 0) throw DomainError("count must be >= 0 in manifold " + mu);
      total += c;
    }
    if (total > d) throw DomainError("manifold " + mu + " occupancy exceeds multiplicity " + std::to_string(d));
    if (counts.count(0)) {
      if (total != d) throw DomainError("manifold " + mu + " counts must sum to multiplicity " + std::to_string(d));
    } else if (d - total > 0) {
      counts[0] = d - total;
    }
    if (!counts.empty()) out[mu] = counts;
  }
  return out;
}

inline Occupancy occupancy_from_quanta(const SpectralSolution& sol, const std::vector<int>& quanta) {
  if (quanta.size() != sol.modes.size()) throw DomainError("quanta must have length P");
  Occupancy out;
  for (const auto& m : sol.modes) {
    if (quanta[m.b - 1] < 0) throw DomainError("quantum number must be >= 0");
    ++out[m.mu][quanta[m.b - 1]];
  }
  return out;
}

inline double energy_first_order(const SystemSpec& spec, const SpectralSolution& sol, const Occupancy& occupancy) {
  const Occupancy occ = complete_occupancy(sol, occupancy);
  double sum = 0.0;
  for (const auto& [mu, counts] : occ) {
    const double lam = sol.lambda(mu);
    if (lam < 0) throw UnstableMode("manifold " + mu + " has negative lambda; energy undefined");
    const double w = std::sqrt(lam);
    for (const auto& [n, c] : counts) sum += (n + 0.5) * c * w;
  }
  return spec.E_inf + spec.delta * (sum + spec.v0);
}

inline double ground_state_energy(const SystemSpec& spec, const SpectralSolution& sol) {
  return energy_first_order(spec, sol, {});
}

}  // namespace dpt
