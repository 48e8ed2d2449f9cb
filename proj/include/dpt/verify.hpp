#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fg_assembly.hpp"
#include "mode_geometry.hpp"
#include "oracle.hpp"
#include "spectral.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"

namespace dpt {

struct Check {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = true;
  std::string note;  // "skipped: ..." when not applicable
  double seconds = 0;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<std::string> diagnostics;
  bool pass = true;

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  double rel_tol = 1e-9;      // analytic vs dense eigenvalues
  double cluster_tol = 1e-7;
};

inline double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Matrix infinity norm (largest absolute row sum).
inline double inf_norm(const MatrixXd& m) { return m.size() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0; }

// Species and row of every symmetry coordinate, in W-row order.
inline std::vector<std::pair<int, int>> symmetry_row_labels(const SymmetryBasis& b) {
  std::vector<std::pair<int, int>> out(b.P());
  out[b.off_sym_r()] = {0, 1};
  out[b.off_sym_g()] = {0, 1};
  for (int x = 1; x <= b.N - 1; ++x) out[b.off_std_r() + x - 1] = {1, x};
  for (int x = 1; x <= b.w_g_std.rows(); ++x) out[b.off_std_g() + x - 1] = {1, x};
  for (int x = 1; x <= b.w_g_two.rows(); ++x) out[b.off_two() + x - 1] = {2, x};
  return out;
}

// Largest entry of W Q W^T outside the (species, row) diagonal blocks.
inline double off_block_mass(const MatrixXd& C, const SymmetryBasis& b) {
  const auto lab = symmetry_row_labels(b);
  double m = 0;
  for (int j = 0; j < C.cols(); ++j)
    for (int i = 0; i < C.rows(); ++i)
      if (lab[i] != lab[j]) m = std::max(m, std::abs(C(i, j)));
  return m;
}

// Reduced matrix of one species at row xi read from a congruence W Q W^T.
inline MatrixXd sigma_from_congruence(const MatrixXd& C, const SymmetryBasis& b, Species sp, int xi) {
  const auto [ir, ig] = symmetry_slots(b, sp, xi);
  std::vector<int> idx;
  if (ir >= 0) idx.push_back(ir);
  if (ig >= 0) idx.push_back(ig);
  MatrixXd s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = C(idx[i], idx[j]);
  return s;
}

// Sorted analytic eigenvalue list with multiplicities.
inline VectorXd analytic_spectrum(const SpectralSolution& sol) {
  std::vector<double> v;
  for (const auto& m : sol.modes) v.push_back(sol.lambda(m));
  std::sort(v.begin(), v.end());
  return Eigen::Map<VectorXd>(v.data(), v.size());
}

inline VerifyReport verify_report(const SystemSpec& spec, const VerifyOptions& opt = {}) {
  validate_spec(spec);
  VerifyReport rep;
  const int N = spec.N, P = coordinate_count(N), M = pair_count(N);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;

  auto run = [&](const std::string& name, double tol, const std::function<double()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    c.name = name;
    c.tolerance = tol;
    try {
      c.residual = fn();
      c.pass = c.residual <= tol;
    } catch (const Error& e) {
      c.pass = false;
      c.note = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(c);
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    Check c;
    c.name = name;
    c.note = "skipped: " + why;
    rep.checks.push_back(c);
  };

  const SymmetryBasis basis = symmetry_basis(N);
  const MatrixXd W = basis.full();
  const BlockMatrix Fb = assemble_F(spec), Gb = assemble_G(spec), FGb = assemble_FG(spec);
  const MatrixXd F = Fb.assembled(), G = Gb.assembled(), FG = FGb.assembled();
  const auto t = tilde_coefficients(spec);

  run("w_orthogonality", 1e-12, [&] { return inf_norm(W * W.transpose() - MatrixXd::Identity(P, P)); });

  run("w_block_orthonormality", 1e-12, [&] {
    double r = 0;
    auto chk = [&](const MatrixXd& B) {
      if (B.rows()) r = std::max(r, max_abs(B * B.transpose() - MatrixXd::Identity(B.rows(), B.rows())));
    };
    chk(basis.w_r_sym);
    chk(basis.w_g_sym);
    chk(basis.w_r_std);
    chk(basis.w_g_std);
    chk(basis.w_g_two);
    return r;
  });

  run("w_roundtrip", 1e-10, [&] {
    VectorXd y(P);
    for (int i = 0; i < P; ++i) y(i) = nd(rng);
    return max_abs(W.transpose() * (W * y) - y);
  });

  run("fg_consistency", 1e-12, [&] { return inf_norm(F * G - FG) / (1 + inf_norm(FG)); });

  const MatrixXd CFG = W * FG * W.transpose();
  const MatrixXd CG = W * G * W.transpose();

  run("block_structure", 1e-10, [&] {
    return std::max(off_block_mass(CFG, basis) / std::max(1.0, inf_norm(FG)),
                    off_block_mass(CG, basis) / std::max(1.0, inf_norm(G)));
  });

  run("sigma_xi_independence", 1e-12, [&] {
    double r = 0;
    for (Species sp : {Species::symmetric, Species::standard, Species::two_row}) {
      const int d = species_dimensions(N).of(sp);
      if (!d) continue;
      const SigmaPair s = sigma_matrices(sp, t, N);
      const double scale = std::max(1.0, std::max(max_abs(s.FG), max_abs(s.G)));
      for (int xi = 1; xi <= d; ++xi) {
        r = std::max(r, max_abs(sigma_from_congruence(CFG, basis, sp, xi) - s.FG) / scale);
        r = std::max(r, max_abs(sigma_from_congruence(CG, basis, sp, xi) - s.G) / scale);
      }
    }
    return r;
  });

  run("vanishing_identities", 1e-12, [&] {
    double r = 0;
    const MatrixXd JM = MatrixXd::Ones(M, M), JNM = MatrixXd::Ones(N, M);
    if (basis.w_g_std.rows()) {
      r = std::max(r, max_abs(basis.w_g_std * JM * basis.w_g_std.transpose()));
      r = std::max(r, max_abs(basis.w_r_std * JNM * basis.w_g_std.transpose()));
    }
    if (basis.w_g_two.rows()) {
      const MatrixXd RW = build_R(N) * basis.w_g_two.transpose();
      r = std::max(r, max_abs(basis.w_g_two * JM * basis.w_g_two.transpose()));
      r = std::max(r, max_abs(RW.transpose() * RW));
    }
    return r;
  });

  if (N >= 4) {
    run("two_row_rank", 0.0, [&] {
      Eigen::FullPivLU<MatrixXd> lu(wbar_g_two_row(N));
      return double(std::abs(int(lu.rank()) - species_dimensions(N).two_row));
    });
  } else {
    skip("two_row_rank", "absent");
  }

  SpectralSolution sol;
  bool have_sol = true;
  try {
    sol = solve_spectrum(spec);
  } catch (const UnstableStructure& e) {
    have_sol = false;
    rep.diagnostics.push_back(e.what());
  }

  DenseModes dense;
  bool have_dense = true;
  try {
    dense = dense_modes(spec, SqrtRoute::closed_form, true);
  } catch (const Error& e) {
    have_dense = false;
    rep.diagnostics.push_back(std::string("dense oracle: ") + e.what());
  }

  if (have_sol && have_dense) {
    const VectorXd ana = analytic_spectrum(sol);
    run("spectrum_match", opt.rel_tol, [&] {
      return ((dense.values - ana).array().abs() / ana.array().abs().max(1.0)).maxCoeff();
    });
    run("multiplicities", 0.0, [&] {
      const auto cl = cluster_eigenvalues(dense.values, opt.cluster_tol);
      const auto ca = cluster_eigenvalues(ana, opt.cluster_tol);
      if (cl.size() != ca.size()) return 1.0;
      for (std::size_t i = 0; i < cl.size(); ++i)
        if (cl[i].count != ca[i].count) return 1.0;
      return 0.0;
    });
  } else {
    run("spectrum_match", opt.rel_tol, [&]() -> double { throw Error("analytic or dense spectrum unavailable"); });
  }

  if (have_sol) {
    const MatrixXd C = normal_coefficients(sol, basis);
    const MatrixXd B = C * W;  // rows b^T in internal coordinates
    run("normalization_bGb", 1e-10, [&] { return max_abs(B * G * B.transpose() - MatrixXd::Identity(P, P)); });
    run("eigen_residual", 1e-10, [&] {
      double r = 0;
      for (const auto& m : sol.modes) {
        const VectorXd b = B.row(m.b - 1).transpose();
        const double lam = sol.lambda(m);
        r = std::max(r, (FG * b - lam * b).norm() / (std::max(1.0, std::abs(lam)) * b.norm()));
      }
      return r;
    });
    run("mode_roundtrip", 1e-10, [&] {
      VectorXd q(P), y(P);
      for (int i = 0; i < P; ++i) q(i) = nd(rng);
      for (int i = 0; i < P; ++i) y(i) = nd(rng);
      const double e1 = max_abs(project_internal_to_normal(reconstruct_internal(q, sol, basis), basis, sol) - q);
      const double e2 = max_abs(reconstruct_internal(project_internal_to_normal(y, basis, sol), sol, basis) - y);
      return std::max(e1, e2);
    });

    // Five roots pairwise separated: every dense eigenvector must carry one species.
    std::vector<std::pair<double, Species>> roots;
    for (const auto& mu : manifold_labels()) {
      if (!sol.multiplicity(mu)) continue;
      roots.push_back({sol.lambda(mu), mu[0] == '0' ? Species::symmetric
                                       : mu[0] == '1' ? Species::standard
                                                      : Species::two_row});
    }
    double scale = 0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r.first));
    bool separated = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (std::abs(roots[i].first - roots[j].first) <= 1e-6 * std::max(scale, 1e-300)) separated = false;
    if (have_dense && separated) {
      run("species_classification", 0.0, [&] {
        double bad = 0;
        for (int k = 0; k < P; ++k) {
          const std::string got = classify_species(dense.vectors.col(k), basis);
          auto best = roots.front();
          for (const auto& r : roots)
            if (std::abs(r.first - dense.values(k)) < std::abs(best.first - dense.values(k))) best = r;
          if (got != species_name(best.second)) bad += 1;
        }
        return bad;
      });
      run("dense_bGb", 1e-10, [&] {
        return max_abs(dense.vectors.transpose() * G * dense.vectors - MatrixXd::Identity(P, P));
      });
    } else {
      skip("species_classification", "roots not separated");
    }

    for (const auto& mu : manifold_labels())
      if (sol.multiplicity(mu) && sol.lambda(mu) < 0)
        rep.diagnostics.push_back("unstable mode: lambda_" + mu + " < 0");
  }

  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace dpt
