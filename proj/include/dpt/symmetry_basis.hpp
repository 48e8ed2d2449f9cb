#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "system_spec.hpp"

namespace dpt {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;

inline int theta_step(int x) { return x > 0 ? 1 : 0; }

inline int kdelta(int a, int b) { return a == b ? 1 : 0; }

// Primitive radial differences r_i - r_{i+1}.
inline MatrixXd wbar_r_standard(int N) {
  if (N < 2) throw DomainError("wbar_r_standard: N must be >= 2");
  MatrixXd W = MatrixXd::Zero(N - 1, N);
  for (int i = 1; i <= N - 1; ++i)
    for (int j = 1; j <= N; ++j) W(i - 1, j - 1) = kdelta(i, j) - kdelta(i + 1, j);
  return W;
}

inline MatrixXd u_r_standard(int N) {
  if (N < 2) throw DomainError("u_r_standard: N must be >= 2");
  MatrixXd U = MatrixXd::Zero(N - 1, N - 1);
  for (int i = 1; i <= N - 1; ++i)
    for (int j = 1; j <= N - 1; ++j)
      U(i - 1, j - 1) = j * theta_step(i - j + 1) / std::sqrt(double(i) * (i + 1));
  return U;
}

inline MatrixXd w_r_standard(int N) {
  if (N < 2) throw DomainError("w_r_standard: N must be >= 2");
  MatrixXd W = MatrixXd::Zero(N - 1, N);
  for (int i = 1; i <= N - 1; ++i) {
    const double s = std::sqrt(double(i) * (i + 1));
    for (int k = 1; k <= N; ++k) W(i - 1, k - 1) = (theta_step(i - k + 1) - i * kdelta(i + 1, k)) / s;
  }
  return W;
}

// Primitive angular coordinates sum_l (gamma_il - gamma_{i+1,l}).
inline MatrixXd wbar_g_standard(int N) {
  if (N < 2) throw DomainError("wbar_g_standard: N must be >= 2");
  const auto pairs = pair_list(N);
  MatrixXd W(N - 1, pairs.size());
  for (int i = 1; i <= N - 1; ++i)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [k, l] = pairs[p];
      W(i - 1, p) = kdelta(i, k) - kdelta(i + 1, k) + kdelta(i, l) - kdelta(i + 1, l);
    }
  return W;
}

inline MatrixXd w_g_standard(int N) {
  if (N < 3) throw SectorAbsent("w_g_standard: [N-1,1] angular sector needs N >= 3");
  const auto pairs = pair_list(N);
  MatrixXd W(N - 1, pairs.size());
  for (int i = 1; i <= N - 1; ++i) {
    const double s = std::sqrt(double(i) * (i + 1) * (N - 2));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [k, l] = pairs[p];
      const int num = theta_step(i - k + 1) + theta_step(i - l + 1) - i * (kdelta(i + 1, k) + kdelta(i + 1, l));
      W(i - 1, p) = num / s;
    }
  }
  return W;
}

// Row labels (i,j) of the [N-2,2] block, ordered by j then i.
inline std::vector<std::pair<int, int>> two_row_labels(int N) {
  std::vector<std::pair<int, int>> out;
  for (int j = 4; j <= N; ++j)
    for (int i = 1; i <= j - 2; ++i) out.emplace_back(i, j);
  return out;
}

inline MatrixXd wbar_g_two_row(int N) {
  const auto labels = two_row_labels(N);
  const auto pairs = pair_list(N);
  MatrixXd W = MatrixXd::Zero(labels.size(), pairs.size());
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto [i, j] = labels[r];
    const int k = (j == i + 2) ? j - 3 : j - 1;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [m, n] = pairs[p];
      W(r, p) = (kdelta(i, m) - kdelta(i + 1, m)) * (kdelta(k, n) - kdelta(j, n)) +
                (kdelta(i, n) - kdelta(i + 1, n)) * (kdelta(k, m) - kdelta(j, m));
    }
  }
  return W;
}

// Block-diagonalises Wbar Wbar^T in the j index.
inline MatrixXd j_factor_two_row(int N) {
  const auto labels = two_row_labels(N);
  const int d = labels.size();
  MatrixXd J = MatrixXd::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    const auto [i, j] = labels[r];
    for (int c = 0; c < d; ++c) {
      const auto [ip, jp] = labels[c];
      J(r, c) = kdelta(i + 1, jp) * (1 - kdelta(i - 1, ip)) * ip +
                kdelta(i, ip) * theta_step(j - jp + 1) * theta_step(jp - i - 1) * (jp - 3);
    }
  }
  return J;
}

inline MatrixXd i_factor_two_row(int N) {
  const auto labels = two_row_labels(N);
  const int d = labels.size();
  MatrixXd I = MatrixXd::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    const auto [i, j] = labels[r];
    const double s = std::sqrt(double(i) * (i + 1) * (j - 3) * (j - 2));
    for (int c = 0; c < d; ++c) {
      const auto [ip, jp] = labels[c];
      I(r, c) = ip * theta_step(i - ip + 1) * kdelta(j, jp) / s;
    }
  }
  return I;
}

inline MatrixXd u_g_two_row(int N) { return i_factor_two_row(N) * j_factor_two_row(N); }

inline MatrixXd w_g_two_row(int N) {
  const auto labels = two_row_labels(N);
  const auto pairs = pair_list(N);
  MatrixXd W(labels.size(), pairs.size());
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto [i, j] = labels[r];
    const double s = std::sqrt(double(i) * (i + 1) * (j - 3) * (j - 2));
    auto A = [&](int m) { return theta_step(i - m + 1) - i * kdelta(i + 1, m); };
    auto B = [&](int n) { return theta_step(j - n) - (j - 3) * kdelta(j, n); };
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [m, n] = pairs[p];
      W(r, p) = (A(m) * B(n) + A(n) * B(m)) / s;
    }
  }
  return W;
}

struct SymmetricRows {
  RowVectorXd r;
  RowVectorXd g;
};

inline SymmetricRows w_symmetric(int N) {
  if (N < 2) throw DomainError("w_symmetric: N must be >= 2");
  const int M = pair_count(N);
  return {RowVectorXd::Constant(N, 1.0 / std::sqrt(double(N))),
          RowVectorXd::Constant(M, 1.0 / std::sqrt(double(M)))};
}

// Orthonormal symmetry coordinates for every species and sector.
struct SymmetryBasis {
  int N = 0;
  RowVectorXd w_r_sym, w_g_sym;
  MatrixXd w_r_std, w_g_std;  // w_g_std has zero rows for N = 2
  MatrixXd w_g_two;           // zero rows for N < 4

  int P() const { return coordinate_count(N); }
  int M() const { return pair_count(N); }

  // Row offsets of each block inside full().
  int off_sym_r() const { return 0; }
  int off_sym_g() const { return 1; }
  int off_std_r() const { return 2; }
  int off_std_g() const { return 2 + (N - 1); }
  int off_two() const { return 2 + (N - 1) + int(w_g_std.rows()); }

  MatrixXd full() const {
    const int n = N, m = M(), p = P();
    MatrixXd W = MatrixXd::Zero(p, p);
    W.block(off_sym_r(), 0, 1, n) = w_r_sym;
    W.block(off_sym_g(), n, 1, m) = w_g_sym;
    W.block(off_std_r(), 0, n - 1, n) = w_r_std;
    if (w_g_std.rows()) W.block(off_std_g(), n, w_g_std.rows(), m) = w_g_std;
    if (w_g_two.rows()) W.block(off_two(), n, w_g_two.rows(), m) = w_g_two;
    return W;
  }
};

inline SymmetryBasis symmetry_basis(int N) {
  SymmetryBasis b;
  b.N = N;
  const auto s = w_symmetric(N);
  b.w_r_sym = s.r;
  b.w_g_sym = s.g;
  b.w_r_std = w_r_standard(N);
  b.w_g_std = N >= 3 ? w_g_standard(N) : MatrixXd(0, pair_count(N));
  b.w_g_two = N >= 4 ? w_g_two_row(N) : MatrixXd(0, pair_count(N));
  return b;
}

inline MatrixXd full_W(int N) { return symmetry_basis(N).full(); }

}  // namespace dpt
