#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "spectral.hpp"
#include "system_spec.hpp"

namespace dpt {

struct BenchRow {
  int N;
  int P;
  double t_analytic;  // seconds per analytic solve (mean over repetitions)
  double t_dense;     // seconds for one dense solve, eigenvalues only
  double speedup;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline double time_analytic(const SystemSpec& spec, double min_seconds = 0.05) {
  volatile double sink = 0;
  long reps = 0;
  const auto t0 = std::chrono::steady_clock::now();
  double elapsed = 0;
  do {
    const SpectralSolution sol = solve_spectrum(spec);
    sink = sink + sol.symmetric.lambda_plus + sol.modes.size();
    ++reps;
    elapsed = seconds_since(t0);
  } while (elapsed < min_seconds || reps < 10);
  return elapsed / reps;
}

inline double time_dense(const SystemSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const DenseModes d = dense_modes(spec, SqrtRoute::closed_form, false);
  volatile double sink = d.values(0);
  (void)sink;
  return seconds_since(t0);
}

inline std::vector<BenchRow> run_bench(const std::vector<int>& Ns, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::vector<BenchRow> rows;
  for (int N : Ns) {
    const SystemSpec spec = random_spec(N, rng);
    const double ta = time_analytic(spec);
    const double td = time_dense(spec);
    rows.push_back({N, coordinate_count(N), ta, td, td / ta});
  }
  return rows;
}

// Least-squares slope of log t_dense against log P.
inline double dense_loglog_slope(const std::vector<BenchRow>& rows) {
  const int n = rows.size();
  if (n < 2) return std::nan("");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(double(r.P)), y = std::log(r.t_dense);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dpt
