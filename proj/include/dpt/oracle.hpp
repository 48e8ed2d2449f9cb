#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fg_assembly.hpp"
#include "symmetry_basis.hpp"
#include "system_spec.hpp"

namespace dpt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SqrtRoute { closed_form, dense };

// G^p for p = +-1/2 from the spectral projectors of R^T R; no dense factorisation.
inline MatrixXd g_power_closed(const SystemSpec& spec, double p) {
  const auto t = tilde_coefficients(spec);
  const int N = spec.N, M = pair_count(N);
  const double e0 = t.gp + 2.0 * (N - 1) * t.hp, e1 = t.gp + (N - 2.0) * t.hp, e2 = t.gp;
  if (!(t.ap > 0) || !(e0 > 0) || (N >= 3 && !(e1 > 0)) || (N >= 4 && !(e2 > 0)))
    throw SpdError("G is not positive definite");

  const MatrixXd P0 = MatrixXd::Constant(M, M, 1.0 / M);
  MatrixXd gg = std::pow(e0, p) * P0;
  if (N >= 3) {
    const MatrixXd P1 = (build_RtR(N) - 2.0 * (N - 1) * P0) / (N - 2.0);
    gg += std::pow(e1, p) * P1;
    if (N >= 4) gg += std::pow(e2, p) * (MatrixXd::Identity(M, M) - P0 - P1);
  }
  MatrixXd out = MatrixXd::Zero(N + M, N + M);
  out.topLeftCorner(N, N) = std::pow(t.ap, p) * MatrixXd::Identity(N, N);
  out.bottomRightCorner(M, M) = gg;
  return out;
}

inline MatrixXd g_power_dense(const MatrixXd& G, double p) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0))
    throw SpdError("G is not positive definite");
  const VectorXd d = es.eigenvalues().array().pow(p);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

struct DenseModes {
  VectorXd values;   // ascending
  MatrixXd vectors;  // columns b with FG b = lambda b and b^T G b = 1
};

// FG b = lambda b through the symmetric form S F S z = lambda z, S = G^{1/2}, b = S^{-1} z.
inline DenseModes dense_modes(const SystemSpec& spec, SqrtRoute route = SqrtRoute::closed_form,
                              bool with_vectors = true) {
  const MatrixXd F = assemble_F(spec).assembled();
  MatrixXd S, Sinv;
  if (route == SqrtRoute::closed_form) {
    S = g_power_closed(spec, 0.5);
    if (with_vectors) Sinv = g_power_closed(spec, -0.5);
  } else {
    const MatrixXd G = assemble_G(spec).assembled();
    S = g_power_dense(G, 0.5);
    if (with_vectors) Sinv = g_power_dense(G, -0.5);
  }
  MatrixXd K = S * F * S;
  K = 0.5 * (K + K.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(K, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
  DenseModes out;
  out.values = es.eigenvalues();
  if (with_vectors) out.vectors = Sinv * es.eigenvectors();
  return out;
}

struct Cluster {
  double center;
  int count;
};

// Greedy gap clustering of sorted values; a gap above rel_tol * max|v| starts a new cluster.
inline std::vector<Cluster> cluster_eigenvalues(const VectorXd& values, double rel_tol = 1e-7) {
  std::vector<Cluster> out;
  if (values.size() == 0) return out;
  const double tol = rel_tol * values.cwiseAbs().maxCoeff();
  double sum = values(0);
  int count = 1;
  for (int i = 1; i < values.size(); ++i) {
    if (values(i) - values(i - 1) > tol) {
      out.push_back({sum / count, count});
      sum = 0;
      count = 0;
    }
    sum += values(i);
    ++count;
  }
  out.push_back({sum / count, count});
  return out;
}

// Species whose symmetry block holds at least 1 - tol of the vector's weight, or "mixed".
inline std::string classify_species(const VectorXd& v, const SymmetryBasis& basis, double tol = 1e-8) {
  const MatrixXd W = basis.full();
  if (v.size() != W.cols()) throw DomainError("classify_species: vector must have length P");
  const VectorXd s = W * v;
  const double total = s.squaredNorm();
  if (total == 0) return "mixed";
  const int N = basis.N;
  const double sym = s(basis.off_sym_r()) * s(basis.off_sym_r()) + s(basis.off_sym_g()) * s(basis.off_sym_g());
  const double std_w = s.segment(basis.off_std_r(), N - 1).squaredNorm() +
                       s.segment(basis.off_std_g(), basis.w_g_std.rows()).squaredNorm();
  const double two = s.segment(basis.off_two(), basis.w_g_two.rows()).squaredNorm();
  if (sym >= (1 - tol) * total) return species_name(Species::symmetric);
  if (std_w >= (1 - tol) * total) return species_name(Species::standard);
  if (two >= (1 - tol) * total) return species_name(Species::two_row);
  return "mixed";
}

// Random coefficients with a symmetric Hessian and positive-definite G.
template <class Rng>
SystemSpec random_spec(int N, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0), t(-0.45, 2.0);
  SystemSpec s;
  s.N = N;
  s.G.a = pos(rng);
  const double gp = pos(rng);
  const double hp = gp * t(rng) / N;
  s.G.h = hp;
  s.G.g = gp + 2 * hp;
  s.F.a = 2.0 + u(rng);
  s.F.b = 0.5 * u(rng);
  s.F.e = u(rng);
  s.F.f = 0.5 * u(rng);
  s.F.c = s.F.e;
  s.F.d = s.F.f;
  s.F.g = 2.0 + u(rng);
  s.F.h = 0.5 * u(rng);
  s.F.iota = 0.5 * u(rng);
  s.delta = 0.1;
  s.v0 = u(rng);
  s.E_inf = u(rng);
  s.r_inf = pos(rng);
  s.gamma_inf = 0.5 * u(rng);
  s.a_ho = pos(rng);
  return s;
}

}  // namespace dpt
