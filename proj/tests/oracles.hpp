// Independent reference computations used only by the tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <set>
#include <span>
#include <vector>

#include "torusqi/grid.hpp"
#include "torusqi/kernel.hpp"
#include "torusqi/qi.hpp"

namespace oracle {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{-z} I_nu(z) from the ascending power series, in long double.
inline double bessel_i_scaled_series(int nu, double z) {
  long double half = z / 2.0L;
  long double term = 1.0L;
  for (int j = 1; j <= nu; ++j) term *= half / j;
  long double sum = 0.0L;
  for (int k = 0; k < 400; ++k) {
    sum += term;
    term *= half * half / ((k + 1.0L) * (k + 1.0L + nu));
    if (term < sum * 1e-22L) break;
  }
  return static_cast<double>(sum * std::exp(-static_cast<long double>(z)));
}

/// Generalized Laguerre polynomial from its explicit sum, in long double.
inline double laguerre_explicit(int m, double alpha, double s) {
  long double sum = 0.0L;
  for (int j = 0; j <= m; ++j) {
    long double binom = 1.0L;
    for (int i = 0; i < m - j; ++i) binom *= (m + alpha - i) / static_cast<long double>(i + 1);
    long double term = binom;
    for (int i = 1; i <= j; ++i) term *= -static_cast<long double>(s) / i;
    sum += term;
  }
  return static_cast<double>(sum);
}

/// Composite trapezoid rule for the periodic integral of f over [0, 2 pi).
inline double periodic_trapezoid(const std::function<double(double)>& f, int n) {
  long double sum = 0.0L;
  for (int i = 0; i < n; ++i) sum += f(kTwoPi * i / n);
  return static_cast<double>(sum * (kTwoPi / n));
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Union of the component grids with |N| in [level, level + d - 1], each
/// node scaled to a common integer lattice 2^{max level} per dimension.
inline std::size_t sparse_union_size(int level, int d) {
  const int top = level + d - 1;
  const int finest = top - (d - 1);
  std::set<std::vector<std::uint64_t>> points;
  for (int total = level; total <= top; ++total) {
    for (const torusqi::MultiIndex& idx : torusqi::multi_indices_with_sum(total, d)) {
      std::vector<int> counts;
      for (int n : idx) counts.push_back(1 << n);
      torusqi::for_each_index(counts, [&](std::span<const std::uint64_t> node) {
        std::vector<std::uint64_t> scaled(node.size());
        for (std::size_t r = 0; r < node.size(); ++r) {
          scaled[r] = node[r] << (finest - idx[r]);
        }
        points.insert(std::move(scaled));
      });
    }
  }
  return points.size();
}

/// Quasi-interpolant summed over every grid node without truncation.
inline double dense_qi(const torusqi::QuasiInterpolant& q, std::span<const double> x) {
  const auto& counts = q.grid().counts();
  const std::size_t d = counts.size();
  std::vector<double> diff(d);
  long double sum = 0.0L;
  std::size_t flat = 0;
  torusqi::for_each_index(counts, [&](std::span<const std::uint64_t> node) {
    for (std::size_t r = 0; r < d; ++r) diff[r] = x[r] - kTwoPi * static_cast<double>(node[r]) / counts[r];
    sum += q.samples()[flat++] * torusqi::tensor_kernel_eval(q.kernel(), diff);
  });
  return static_cast<double>(sum);
}

}  // namespace oracle
