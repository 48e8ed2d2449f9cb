#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fg_assembly.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"

namespace dpt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Reduced kinetic and FG matrices of one species (2x2, or 1x1 for a single sector).
struct SigmaPair {
  Species species;
  MatrixXd G;
  MatrixXd FG;
};

inline SigmaPair sigma_matrices(Species sp, const TildeCoefficients& t, int N) {
  const double n = N, m = pair_count(N);
  SigmaPair s{sp, {}, {}};
  switch (sp) {
    case Species::symmetric: {
      const double k = std::sqrt(m / n);
      s.G = MatrixXd{{t.ap, 0.0}, {0.0, t.gp + 2 * (n - 1) * t.hp}};
      s.FG = MatrixXd{{t.a + n * t.b, k * (2 * t.e + n * t.f)},
                      {k * (2 * t.c + n * t.d), t.g + 2 * (n - 1) * t.h + m * t.iota}};
      break;
    }
    case Species::standard: {
      if (N == 2) {
        s.G = MatrixXd::Constant(1, 1, t.ap);
        s.FG = MatrixXd::Constant(1, 1, t.a);
        break;
      }
      const double k = std::sqrt(n - 2);
      s.G = MatrixXd{{t.ap, 0.0}, {0.0, t.gp + (n - 2) * t.hp}};
      s.FG = MatrixXd{{t.a, k * t.e}, {k * t.c, t.g + (n - 2) * t.h}};
      break;
    }
    case Species::two_row:
      if (N < 4) throw SectorAbsent("sigma_matrices: [N-2,2] absent for N < 4");
      s.G = MatrixXd::Constant(1, 1, t.gp);
      s.FG = MatrixXd::Constant(1, 1, t.g);
      break;
  }
  return s;
}

inline SigmaPair sigma_matrices(Species sp, const SystemSpec& spec) {
  return sigma_matrices(sp, tilde_coefficients(spec), spec.N);
}

struct SpeciesSolution {
  Species species = Species::symmetric;
  int size = 0;  // 2 for a mixed radial/angular species, 1 for a single sector
  double lambda_plus = 0, lambda_minus = std::numeric_limits<double>::quiet_NaN();
  double theta_plus = 0, theta_minus = std::numeric_limits<double>::quiet_NaN();
  double c_plus = 0, c_minus = std::numeric_limits<double>::quiet_NaN();
  int multiplicity = 0;
  SigmaPair sigma;
};

namespace detail {

// Angle of (x, y) with the sign fixed so that cos >= 0, result in (-pi/2, pi/2].
inline double canonical_angle(double x, double y) {
  if (x < 0 || (x == 0 && y < 0)) {
    x = -x;
    y = -y;
  }
  return std::atan2(y, x);
}

}  // namespace detail

inline SpeciesSolution solve_species(const SigmaPair& sigma) {
  SpeciesSolution out;
  out.species = sigma.species;
  out.sigma = sigma;
  out.size = sigma.FG.rows();
  if (out.size == 1) {
    if (!(sigma.G(0, 0) > 0)) throw SpdError("solve_species: reduced G not positive definite");
    out.lambda_plus = sigma.FG(0, 0);
    out.theta_plus = 0;
    return out;
  }
  if (!(sigma.G(0, 0) > 0) || !(sigma.G(0, 0) * sigma.G(1, 1) - sigma.G(0, 1) * sigma.G(1, 0) > 0))
    throw SpdError("solve_species: reduced G not positive definite");

  const double a = sigma.FG(0, 0), b = sigma.FG(0, 1), c = sigma.FG(1, 0), d = sigma.FG(1, 1);
  const double tr = a + d, det = a * d - b * c;
  double disc = (a - d) * (a - d) + 4 * b * c;
  const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (disc < 0) {
    if (disc > -1e-14 * scale * scale) {
      disc = 0;
    } else {
      throw UnstableStructure(std::string("unstable Lewis structure: complex eigenvalue pair in ") +
                                  species_name(sigma.species),
                              tr / 2, std::sqrt(-disc) / 2);
    }
  }
  const double sq = std::sqrt(disc);
  double lp, lm;
  if (tr >= 0) {
    lp = (tr + sq) / 2;
    lm = lp != 0 ? det / lp : (tr - sq) / 2;
  } else {
    lm = (tr - sq) / 2;
    lp = lm != 0 ? det / lm : (tr + sq) / 2;
  }
  out.lambda_plus = lp;
  out.lambda_minus = lm;

  // Eigenvector from whichever row of (sigma - lambda) is better conditioned.
  auto angle = [&](double lam, bool& ok) {
    const double x1 = b, y1 = lam - a, x2 = lam - d, y2 = c;
    const double n1 = std::hypot(x1, y1), n2 = std::hypot(x2, y2);
    ok = std::max(n1, n2) > 1e-13 * scale;
    return n1 >= n2 ? detail::canonical_angle(x1, y1) : detail::canonical_angle(x2, y2);
  };
  bool ok_p = false, ok_m = false;
  const double tp = angle(lp, ok_p), tm = angle(lm, ok_m);
  if (ok_p && ok_m && sq > 1e-13 * scale) {
    out.theta_plus = tp;
    out.theta_minus = tm;
  } else {
    // sigma_FG proportional to identity: any basis diagonalises it; take one G-orthogonal pair.
    const MatrixXd& G = sigma.G;
    out.theta_plus = 0;
    out.theta_minus = detail::canonical_angle(-G(0, 1), G(0, 0));
  }
  return out;
}

inline void normalization_constants(SpeciesSolution& s) {
  const MatrixXd& G = s.sigma.G;
  if (s.size == 1) {
    if (!(G(0, 0) > 0)) throw SpdError("normalization: reduced G must be positive");
    s.c_plus = 1 / std::sqrt(G(0, 0));
    return;
  }
  auto c_of = [&](double th) {
    const Eigen::Vector2d v(std::cos(th), std::sin(th));
    const double q = v.dot(G * v);
    if (!(q > 0)) throw SpdError("normalization: reduced G not positive definite");
    return 1 / std::sqrt(q);
  };
  s.c_plus = c_of(s.theta_plus);
  s.c_minus = c_of(s.theta_minus);
}

struct ModeLabel {
  int b;           // 1-based mode number
  std::string mu;  // 0+, 0-, 1+, 1-, 2
  Species species;
  Branch branch;
  int xi;          // 1-based row within the species
};

inline std::vector<std::string> manifold_labels() { return {"0+", "0-", "1+", "1-", "2"}; }

struct SpectralSolution {
  int N = 0;
  SpeciesSolution symmetric, standard;
  std::optional<SpeciesSolution> two_row;
  std::vector<ModeLabel> modes;

  const SpeciesSolution& species(Species s) const {
    if (s == Species::symmetric) return symmetric;
    if (s == Species::standard) return standard;
    if (!two_row) throw SectorAbsent("[N-2,2] absent for N < 4");
    return *two_row;
  }

  double lambda(const std::string& mu) const {
    if (mu == "0+") return symmetric.lambda_plus;
    if (mu == "0-") return symmetric.lambda_minus;
    if (mu == "1+") return standard.lambda_plus;
    if (mu == "1-") return standard.lambda_minus;
    if (mu == "2") return two_row ? two_row->lambda_plus : std::numeric_limits<double>::quiet_NaN();
    throw DomainError("unknown manifold label " + mu);
  }

  int multiplicity(const std::string& mu) const {
    const auto d = species_dimensions(N);
    if (mu == "0+" || mu == "0-") return 1;
    if (mu == "1+") return d.standard;
    if (mu == "1-") return N >= 3 ? d.standard : 0;
    if (mu == "2") return d.two_row;
    throw DomainError("unknown manifold label " + mu);
  }

  double lambda(const ModeLabel& m) const { return lambda(m.mu); }
};

inline double omega_of(double lambda) {
  return lambda >= 0 ? std::sqrt(lambda) : std::numeric_limits<double>::quiet_NaN();
}

// Analytic spectrum from the closed-form reduced matrices; never builds P x P objects.
inline SpectralSolution solve_spectrum(const SystemSpec& spec) {
  const auto t = tilde_coefficients(spec);
  const int N = spec.N;
  const auto dims = species_dimensions(N);
  SpectralSolution sol;
  sol.N = N;
  sol.symmetric = solve_species(sigma_matrices(Species::symmetric, t, N));
  sol.symmetric.multiplicity = 1;
  normalization_constants(sol.symmetric);
  sol.standard = solve_species(sigma_matrices(Species::standard, t, N));
  sol.standard.multiplicity = dims.standard;
  normalization_constants(sol.standard);
  if (N >= 4) {
    sol.two_row = solve_species(sigma_matrices(Species::two_row, t, N));
    sol.two_row->multiplicity = dims.two_row;
    normalization_constants(*sol.two_row);
  }

  int b = 1;
  sol.modes.reserve(coordinate_count(N));
  sol.modes.push_back({b++, "0+", Species::symmetric, Branch::plus, 1});
  sol.modes.push_back({b++, "0-", Species::symmetric, Branch::minus, 1});
  for (int xi = 1; xi <= dims.standard; ++xi) sol.modes.push_back({b++, "1+", Species::standard, Branch::plus, xi});
  if (sol.standard.size == 2)
    for (int xi = 1; xi <= dims.standard; ++xi) sol.modes.push_back({b++, "1-", Species::standard, Branch::minus, xi});
  for (int xi = 1; xi <= dims.two_row; ++xi) sol.modes.push_back({b++, "2", Species::two_row, Branch::none, xi});
  return sol;
}

// Positions of the radial and angular symmetry coordinates of (species, xi) in W-row order; -1 if absent.
inline std::pair<int, int> symmetry_slots(const SymmetryBasis& basis, Species sp, int xi) {
  switch (sp) {
    case Species::symmetric:
      if (xi != 1) throw DomainError("[N] species has a single row");
      return {basis.off_sym_r(), basis.off_sym_g()};
    case Species::standard:
      if (xi < 1 || xi > basis.N - 1) throw DomainError("xi out of range for [N-1,1]");
      return {basis.off_std_r() + xi - 1, basis.w_g_std.rows() ? basis.off_std_g() + xi - 1 : -1};
    case Species::two_row:
      if (xi < 1 || xi > basis.w_g_two.rows()) throw DomainError("xi out of range for [N-2,2]");
      return {-1, basis.off_two() + xi - 1};
  }
  return {-1, -1};
}

// Mixing angle and normalisation of one mode: q = c (cos(theta) S_r + sin(theta) S_g).
inline std::pair<double, double> mode_angle_norm(const SpectralSolution& sol, const ModeLabel& m) {
  const auto& s = sol.species(m.species);
  if (m.branch == Branch::minus) return {s.theta_minus, s.c_minus};
  if (m.species == Species::two_row) return {std::numbers::pi / 2, s.c_plus};
  return {s.theta_plus, s.c_plus};
}

// Rows are the normal-coordinate coefficient vectors c^(b) in symmetry-coordinate space.
inline MatrixXd normal_coefficients(const SpectralSolution& sol, const SymmetryBasis& basis) {
  const int P = basis.P();
  MatrixXd C = MatrixXd::Zero(P, P);
  for (const auto& m : sol.modes) {
    const auto [ir, ig] = symmetry_slots(basis, m.species, m.xi);
    const auto [th, c] = mode_angle_norm(sol, m);
    if (m.species == Species::two_row) {
      C(m.b - 1, ig) = c;
    } else {
      C(m.b - 1, ir) = c * std::cos(th);
      if (ig >= 0) C(m.b - 1, ig) = c * std::sin(th);
    }
  }
  return C;
}

// Symmetry coordinates S = W y' computed block by block.
inline VectorXd symmetry_coordinates(const SymmetryBasis& basis, const VectorXd& y) {
  const int N = basis.N, M = basis.M();
  if (y.size() != N + M) throw DomainError("internal displacement vector must have length P");
  const auto r = y.head(N);
  const auto g = y.tail(M);
  VectorXd S(N + M);
  S(basis.off_sym_r()) = basis.w_r_sym.dot(r);
  S(basis.off_sym_g()) = basis.w_g_sym.dot(g);
  S.segment(basis.off_std_r(), N - 1) = basis.w_r_std * r;
  if (basis.w_g_std.rows()) S.segment(basis.off_std_g(), basis.w_g_std.rows()) = basis.w_g_std * g;
  if (basis.w_g_two.rows()) S.segment(basis.off_two(), basis.w_g_two.rows()) = basis.w_g_two * g;
  return S;
}

inline VectorXd project_internal_to_normal(const VectorXd& y, const SymmetryBasis& basis,
                                           const SpectralSolution& sol) {
  const VectorXd S = symmetry_coordinates(basis, y);
  VectorXd q(sol.modes.size());
  for (const auto& m : sol.modes) {
    const auto [ir, ig] = symmetry_slots(basis, m.species, m.xi);
    const auto [th, c] = mode_angle_norm(sol, m);
    if (m.species == Species::two_row)
      q(m.b - 1) = c * S(ig);
    else
      q(m.b - 1) = c * (std::cos(th) * S(ir) + (ig >= 0 ? std::sin(th) * S(ig) : 0.0));
  }
  return q;
}

}  // namespace dpt
