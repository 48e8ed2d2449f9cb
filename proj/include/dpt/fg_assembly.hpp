#pragma once

#include <Eigen/Dense>

#include "system_spec.hpp"

namespace dpt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct TildeCoefficients {
  double a, b, c, d, e, f, g, h, iota;  // FG
  double ap, gp, hp;                    // G
};

inline TildeCoefficients tilde_coefficients(const SystemSpec& s) {
  const auto& F = s.F;
  const auto& G = s.G;
  const double n = s.N;
  TildeCoefficients t{};
  t.a = (F.a - F.b) * G.a;
  t.b = F.b * G.a;
  t.c = (F.e - F.f) * G.a;
  t.d = F.f * G.a;
  t.e = (F.e - F.f) * (G.g + (n - 4) * G.h);
  t.f = 2 * F.e * G.h + F.f * (G.g + 2 * (n - 3) * G.h);
  t.g = (F.g - 2 * F.h + F.iota) * (G.g - 2 * G.h);
  t.h = F.g * G.h + F.h * (G.g + (n - 6) * G.h) - F.iota * (G.g + (n - 5) * G.h);
  t.iota = 4 * F.h * G.h + F.iota * (G.g + 2 * (n - 4) * G.h);
  t.ap = G.a;
  t.gp = G.g - 2 * G.h;
  t.hp = G.h;
  return t;
}

inline MatrixXd build_R(int N) {
  if (N < 2) throw DomainError("build_R: N must be >= 2");
  MatrixXd R = MatrixXd::Zero(N, pair_count(N));
  int col = 0;
  for (const auto& [i, j] : pair_list(N)) {
    R(i - 1, col) = 1;
    R(j - 1, col) = 1;
    ++col;
  }
  return R;
}

// R^T R by counting shared particles: 2 on the diagonal, 1 for one shared index.
inline MatrixXd build_RtR(int N) {
  const int M = pair_count(N);
  const auto pairs = pair_list(N);
  MatrixXd out(M, M);
  for (int q = 0; q < M; ++q)
    for (int p = 0; p < M; ++p) {
      const auto [i, j] = pairs[p];
      const auto [k, l] = pairs[q];
      out(p, q) = (i == k) + (i == l) + (j == k) + (j == l);
    }
  return out;
}

// Nine scalars of an S_N-invariant matrix over (r, gamma):
//   rr = rr_I I + rr_J J,   rg = rg_R R + rg_J J,   gr = gr_R R^T + gr_J J,
//   gg = gg_I I + gg_RtR R^T R + gg_J J
struct InvariantForm {
  double rr_I = 0, rr_J = 0, rg_R = 0, rg_J = 0, gr_R = 0, gr_J = 0, gg_I = 0, gg_RtR = 0, gg_J = 0;
};

struct BlockMatrix {
  MatrixXd rr, rg, gr, gg;

  MatrixXd assembled() const {
    const int N = rr.rows(), M = gg.rows();
    MatrixXd out(N + M, N + M);
    out.topLeftCorner(N, N) = rr;
    out.topRightCorner(N, M) = rg;
    out.bottomLeftCorner(M, N) = gr;
    out.bottomRightCorner(M, M) = gg;
    return out;
  }
};

inline BlockMatrix assemble(int N, const InvariantForm& q) {
  const int M = pair_count(N);
  BlockMatrix b;
  b.rr.resize(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) b.rr(i, j) = (i == j ? q.rr_I : 0.0) + q.rr_J;
  b.rg.resize(N, M);
  b.gr.resize(M, N);
  b.gg.resize(M, M);
  const auto pairs = pair_list(N);
  for (int p = 0; p < M; ++p) {
    const auto [i, j] = pairs[p];
    for (int k = 1; k <= N; ++k) {
      const bool member = (k == i || k == j);
      b.rg(k - 1, p) = (member ? q.rg_R : 0.0) + q.rg_J;
      b.gr(p, k - 1) = (member ? q.gr_R : 0.0) + q.gr_J;
    }
  }
  for (int r = 0; r < M; ++r)
    for (int p = 0; p < M; ++p) {
      const auto [i, j] = pairs[p];
      const auto [k, l] = pairs[r];
      const int shared = (i == k) + (i == l) + (j == k) + (j == l);
      b.gg(p, r) = (p == r ? q.gg_I : 0.0) + shared * q.gg_RtR + q.gg_J;
    }
  return b;
}

inline InvariantForm fg_form(const TildeCoefficients& t) {
  return {t.a, t.b, t.e, t.f, t.c, t.d, t.g, t.h, t.iota};
}

inline InvariantForm g_form(const TildeCoefficients& t) {
  InvariantForm q;
  q.rr_I = t.ap;
  q.gg_I = t.gp;
  q.gg_RtR = t.hp;
  return q;
}

inline InvariantForm f_form(const FCoefficients& F) {
  return {F.a - F.b, F.b, F.e - F.f, F.f, F.c - F.d, F.d, F.g - 2 * F.h + F.iota, F.h - F.iota, F.iota};
}

inline BlockMatrix assemble_FG(const SystemSpec& s) { return assemble(s.N, fg_form(tilde_coefficients(s))); }
inline BlockMatrix assemble_G(const SystemSpec& s) { return assemble(s.N, g_form(tilde_coefficients(s))); }
inline BlockMatrix assemble_F(const SystemSpec& s) { return assemble(s.N, f_form(s.F)); }

}  // namespace dpt
