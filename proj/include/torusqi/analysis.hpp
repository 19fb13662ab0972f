#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "torusqi/grid.hpp"
#include "torusqi/qi.hpp"

namespace torusqi {

/// g_p(a) = lambda_p (2 + sgn(a - pi) sin^p(a)) on [0, 2 pi) and its d-fold
/// tensor product G_p, normalized to unit L2(T) norm per factor.
struct TestFunctionGp {
  int p = 0;
  int dims = 1;
  double lambda = 0.0;
};

TestFunctionGp make_gp(int p, int dims);
double gp_eval(const TestFunctionGp& tf, double alpha);
double gp_tensor_eval(const TestFunctionGp& tf, std::span<const double> x);

/// f~_k = (1/N) sum_l f(2 pi l / N) e^{-2 pi i l k / N} for k = -N/2 .. N/2-1;
/// entry i of the result holds k = i - N/2.
std::vector<std::complex<double>> dft_coeffs(std::span<const std::complex<double>> samples);
std::vector<std::complex<double>> dft_coeffs(std::span<const double> samples);

/// Trigonometric interpolant through N equispaced real samples, with the
/// Nyquist mode symmetrized to cos(N x / 2).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(std::span<const double> samples);
  double operator()(double x) const;

 private:
  int n_;
  std::vector<std::complex<double>> coeffs_;
};

double trig_interp_eval(std::span<const double> samples, double x);

struct ErrorNorms {
  double err_linf = 0.0;
  double err_l2 = 0.0;
  double rel_linf = 0.0;
  double rel_l2 = 0.0;
};

/// Max and quadrature-weighted L2 deviations, sqrt(mean |e|^2 (2 pi)^d);
/// relative variants divide by ref_scale.
ErrorNorms error_norms(std::span<const double> reference, std::span<const double> approx, int dims,
                       double ref_scale);
ErrorNorms error_norms(const SampleFunction& reference, const SampleFunction& approx,
                       const PointSet& points, double ref_scale);

struct ConvergenceRow {
  int n = 0;
  double err_linf = 0.0;
  std::optional<double> rate_linf;
  double err_l2 = 0.0;
  std::optional<double> rate_l2;
};

/// rate_i = log2(err_{i-1} / err_i) for strictly doubling N; the first is empty.
std::vector<std::optional<double>> convergence_rates(std::span<const std::pair<int, double>> rows);

/// (4N+1)^d uniform points per dimension, shifted by h/3 with h = 2 pi / N.
PointSet offset_eval_grid(int n, int dims);

/// 64-bit linear congruential generator (Knuth's MMIX constants).
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// `count` pseudorandom points uniform on [0, 2 pi)^d.
PointSet random_eval_points(int dims, std::size_t count, std::uint64_t seed);

/// Evaluation set used by the benchmarks: offset grid for d <= 2,
/// 8192 pseudorandom points otherwise.
PointSet benchmark_eval_points(int n, int dims, std::uint64_t seed);

}  // namespace torusqi
