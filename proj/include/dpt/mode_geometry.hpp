#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "spectral.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"

namespace dpt {

using Eigen::VectorXd;

struct ModeMotion {
  VectorXd r;      // length N
  VectorXd gamma;  // length M

  VectorXd stacked() const {
    VectorXd y(r.size() + gamma.size());
    y << r, gamma;
    return y;
  }
};

enum class Sector { radial, angular };

inline VectorXd lewis_structure(const SystemSpec& spec) {
  const double D = 1 / spec.delta;
  VectorXd y(coordinate_count(spec.N));
  y.head(spec.N).setConstant(D * D * spec.a_ho * spec.r_inf);
  y.tail(pair_count(spec.N)).setConstant(spec.gamma_inf);
  return y;
}

namespace detail {

// Unscaled displacements: radii carry a_ho D^{3/2}, angle cosines D^{-1/2}.
inline void unscale(ModeMotion& m, const SystemSpec& spec) {
  const double D = 1 / spec.delta;
  m.r *= spec.a_ho * std::pow(D, 1.5);
  m.gamma /= std::sqrt(D);
}

inline RowVectorXd radial_row(const SymmetryBasis& basis, Species sp, int xi) {
  if (sp == Species::symmetric) return basis.w_r_sym;
  return basis.w_r_std.row(xi - 1);
}

inline RowVectorXd angular_row(const SymmetryBasis& basis, Species sp, int xi) {
  if (sp == Species::symmetric) return basis.w_g_sym;
  if (sp == Species::standard) {
    if (!basis.w_g_std.rows()) throw SectorAbsent("[N-1,1] angular sector absent for N = 2");
    return basis.w_g_std.row(xi - 1);
  }
  return basis.w_g_two.row(xi - 1);
}

}  // namespace detail

inline ModeMotion symmetry_motion(const SymmetryBasis& basis, Species sp, Sector sector, int xi, double S,
                                  const SystemSpec& spec, bool scaled = false) {
  const auto slots = symmetry_slots(basis, sp, xi);
  ModeMotion m{VectorXd::Zero(basis.N), VectorXd::Zero(basis.M())};
  if (sector == Sector::radial) {
    if (slots.first < 0) throw SectorAbsent(std::string(species_name(sp)) + " has no radial sector");
    m.r = S * detail::radial_row(basis, sp, xi).transpose();
  } else {
    if (slots.second < 0) throw SectorAbsent(std::string(species_name(sp)) + " has no angular sector");
    m.gamma = S * detail::angular_row(basis, sp, xi).transpose();
  }
  if (!scaled) detail::unscale(m, spec);
  return m;
}

// Symmetry-coordinate content (S_r, S_g) carried by a unit of one normal coordinate.
inline std::pair<double, double> inverse_mixing(const SpectralSolution& sol, const ModeLabel& mode) {
  const auto& s = sol.species(mode.species);
  if (mode.species == Species::two_row) return {0.0, 1 / s.c_plus};
  if (s.size == 1) return {1 / s.c_plus, 0.0};
  const double tp = s.theta_plus, tm = s.theta_minus;
  const double det = std::sin(tp - tm);
  if (std::abs(det) < 1e-12) throw DegenerateBasis("mixing angles collapse: sin(theta+ - theta-) ~ 0");
  if (mode.branch == Branch::plus)
    return {-std::sin(tm) / (det * s.c_plus), std::cos(tm) / (det * s.c_plus)};
  return {std::sin(tp) / (det * s.c_minus), -std::cos(tp) / (det * s.c_minus)};
}

inline ModeMotion normal_mode_motion(const ModeLabel& mode, double q, const SpectralSolution& sol,
                                     const SymmetryBasis& basis, const SystemSpec& spec, bool scaled = false) {
  const auto [sr, sg] = inverse_mixing(sol, mode);
  ModeMotion m{VectorXd::Zero(basis.N), VectorXd::Zero(basis.M())};
  if (mode.species != Species::two_row) m.r = (q * sr) * detail::radial_row(basis, mode.species, mode.xi).transpose();
  if (sg != 0.0) m.gamma = (q * sg) * detail::angular_row(basis, mode.species, mode.xi).transpose();
  if (!scaled) detail::unscale(m, spec);
  return m;
}

inline const ModeLabel& find_mode(const SpectralSolution& sol, const std::string& mu, int xi) {
  for (const auto& m : sol.modes)
    if (m.mu == mu && m.xi == xi) return m;
  throw DomainError("no mode " + mu + " with xi=" + std::to_string(xi));
}

// Scaled internal displacement y' reconstructed from all normal coordinates.
inline VectorXd reconstruct_internal(const VectorXd& q, const SpectralSolution& sol, const SymmetryBasis& basis) {
  if (q.size() != int(sol.modes.size())) throw DomainError("normal-coordinate vector must have length P");
  VectorXd y = VectorXd::Zero(basis.P());
  for (const auto& m : sol.modes) y += normal_mode_motion(m, q(m.b - 1), sol, basis, SystemSpec{}, true).stacked();
  return y;
}

}  // namespace dpt
