#include "torusqi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "torusqi/error.hpp"
#include "torusqi/fit.hpp"

namespace torusqi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNormalizationNodes = 1 << 14;
constexpr std::size_t kRandomPoints = 8192;

double gp_unnormalized(int p, double alpha) {
  double a = std::fmod(alpha, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  const double diff = a - std::numbers::pi;
  const double sign = (diff > 0.0) ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
  return 2.0 + sign * std::pow(std::sin(a), p);
}

}  // namespace

TestFunctionGp make_gp(int p, int dims) {
  detail::require(p >= 1, "smoothness index p must be positive");
  detail::require(dims >= 1, "dimension must be positive");
  const double h = kTwoPi / kNormalizationNodes;
  CompensatedSum sum;
  for (int i = 0; i < kNormalizationNodes; ++i) {
    const double v = gp_unnormalized(p, h * i);
    sum.add(v * v);
  }
  return {p, dims, 1.0 / std::sqrt(h * sum.value())};
}

double gp_eval(const TestFunctionGp& tf, double alpha) { return tf.lambda * gp_unnormalized(tf.p, alpha); }

double gp_tensor_eval(const TestFunctionGp& tf, std::span<const double> x) {
  detail::require(static_cast<int>(x.size()) == tf.dims, "point dimension mismatch");
  double acc = 1.0;
  for (double xr : x) acc *= gp_eval(tf, xr);
  return acc;
}

std::vector<std::complex<double>> dft_coeffs(std::span<const std::complex<double>> samples) {
  const std::size_t n = samples.size();
  detail::require(n >= 2 && n % 2 == 0, "DFT length must be even");
  detail::require(n <= (std::size_t{1} << 16), "DFT length above 2^16");
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double angle = -kTwoPi * static_cast<double>(q) / static_cast<double>(n);
    twiddle[q] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> out(n);
  const long long half = static_cast<long long>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = static_cast<long long>(i) - half;
    const auto kk = static_cast<std::size_t>(((k % static_cast<long long>(n)) + static_cast<long long>(n)) %
                                             static_cast<long long>(n));
    std::complex<double> acc = 0.0;
    for (std::size_t l = 0; l < n; ++l) acc += samples[l] * twiddle[(l * kk) % n];
    out[i] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<std::complex<double>> dft_coeffs(std::span<const double> samples) {
  std::vector<std::complex<double>> z(samples.begin(), samples.end());
  return dft_coeffs(std::span<const std::complex<double>>(z));
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples)
    : n_(static_cast<int>(samples.size())), coeffs_(dft_coeffs(samples)) {}

double TrigInterpolant::operator()(double x) const {
  const int half = n_ / 2;
  CompensatedSum sum;
  // k = -N/2 contributes only through cos(N x / 2).
  sum.add(coeffs_[0].real() * std::cos(half * x));
  for (int i = 1; i < n_; ++i) {
    const int k = i - half;
    const std::complex<double>& c = coeffs_[static_cast<std::size_t>(i)];
    sum.add(c.real() * std::cos(k * x) - c.imag() * std::sin(k * x));
  }
  return sum.value();
}

double trig_interp_eval(std::span<const double> samples, double x) { return TrigInterpolant(samples)(x); }

ErrorNorms error_norms(std::span<const double> reference, std::span<const double> approx, int dims,
                       double ref_scale) {
  detail::require(!reference.empty() && reference.size() == approx.size(),
                  "need matching, nonempty value sets");
  detail::require(ref_scale > 0.0, "reference scale must be positive");
  ErrorNorms e;
  CompensatedSum squares;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double diff = std::abs(reference[i] - approx[i]);
    if (!std::isfinite(diff)) throw NumericalFailure("non-finite value in error measurement");
    e.err_linf = std::max(e.err_linf, diff);
    squares.add(diff * diff);
  }
  const double mean = squares.value() / static_cast<double>(reference.size());
  e.err_l2 = std::sqrt(mean * std::pow(kTwoPi, dims));
  e.rel_linf = e.err_linf / ref_scale;
  e.rel_l2 = e.err_l2 / ref_scale;
  return e;
}

ErrorNorms error_norms(const SampleFunction& reference, const SampleFunction& approx,
                       const PointSet& points, double ref_scale) {
  std::vector<double> ref(points.size());
  std::vector<double> app(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    ref[i] = reference(points[i]);
    app[i] = approx(points[i]);
  }
  return error_norms(ref, app, points.dims(), ref_scale);
}

std::vector<std::optional<double>> convergence_rates(std::span<const std::pair<int, double>> rows) {
  std::vector<std::optional<double>> rates;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].second > 0.0) || !std::isfinite(rows[i].second)) {
      throw NumericalFailure("convergence rate of a zero or non-finite error");
    }
    if (i == 0) {
      rates.emplace_back();
      continue;
    }
    detail::require(rows[i].first == 2 * rows[i - 1].first, "N must double between rows");
    rates.emplace_back(std::log2(rows[i - 1].second / rows[i].second));
  }
  return rates;
}

PointSet offset_eval_grid(int n, int dims) {
  detail::require(n >= 1 && dims >= 1, "invalid evaluation grid");
  const double h = kTwoPi / n;
  const int per_dim = 4 * n + 1;
  std::vector<double> axis(static_cast<std::size_t>(per_dim));
  for (int i = 0; i < per_dim; ++i) axis[static_cast<std::size_t>(i)] = h / 3.0 + kTwoPi * i / per_dim;
  PointSet out(dims);
  std::vector<double> x(static_cast<std::size_t>(dims));
  const std::vector<int> counts(static_cast<std::size_t>(dims), per_dim);
  for_each_index(counts, [&](std::span<const std::uint64_t> index) {
    for (std::size_t r = 0; r < index.size(); ++r) x[r] = axis[index[r]];
    out.push_back(x);
  });
  return out;
}

PointSet random_eval_points(int dims, std::size_t count, std::uint64_t seed) {
  detail::require(dims >= 1, "dimension must be positive");
  Lcg64 rng(seed);
  std::vector<double> coords(count * static_cast<std::size_t>(dims));
  for (double& c : coords) c = kTwoPi * rng.uniform();
  return PointSet(dims, std::move(coords));
}

PointSet benchmark_eval_points(int n, int dims, std::uint64_t seed) {
  if (dims <= 2) return offset_eval_grid(n, dims);
  return random_eval_points(dims, kRandomPoints, seed);
}

}  // namespace torusqi
