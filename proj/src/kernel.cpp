#include "torusqi/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "torusqi/error.hpp"
#include "torusqi/fit.hpp"
#include "torusqi/specfun.hpp"

namespace torusqi {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Hankel-series branch of psi_fourier_analytic: needs 1/c^2 large and
// ell^2 c^2 moderate so that 32 terms reach round-off.
constexpr double kSeriesMinArgument = 32.0;
constexpr double kSeriesMaxSpread = 2.0;  // bound on ell^2 c^2 / 2
constexpr int kSeriesDegree = 32;

struct GaussLegendre {
  static constexpr int kPoints = 16;
  std::array<double, kPoints> nodes{};
  std::array<double, kPoints> weights{};

  GaussLegendre() {
    for (int i = 0; i < kPoints; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (kPoints + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= kPoints; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kPoints * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[static_cast<std::size_t>(i)] = x;
      weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// psi_hat - 1 from the order-raised Hankel series in rho = c^2; returns false
// when the truncated series has not reached round-off.
bool hankel_series_deviation(const KernelParams& p, int ell, double& deviation) {
  const double rho = p.c() * p.c();
  const double u = 1.0 / rho;
  const double ell2 = static_cast<double>(ell) * ell;
  if (u < kSeriesMinArgument || 0.5 * ell2 * rho > kSeriesMaxSpread) return false;

  // psi_hat_2(ell; rho) ~ sum_k b_k rho^k with b_0 = 1.
  const double mu = 4.0 * ell2;
  std::vector<double> series(kSeriesDegree + 1);
  double term = 1.0;
  series[0] = 1.0;
  for (int k = 1; k <= kSeriesDegree; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) * rho / (8.0 * k);
    series[static_cast<std::size_t>(k)] = term;
  }
  if (std::abs(term) > 1e-18) return false;

  const PolyCoeffs raised = order_raising_transform(PolyCoeffs(std::move(series)), p.m());
  double dev = 0.0;
  for (std::size_t k = raised.coeffs.size(); k-- > 1;) dev += raised.coeffs[k];
  deviation = dev;
  return true;
}

double jet_fourier(const KernelParams& p, int ell) {
  const double rho = p.c() * p.c();
  const Jet jet = jet_psi2_hat(ell, rho, p.m());
  double acc = 0.0;
  double power = 1.0;
  for (int j = 0; j <= p.m(); ++j) {
    acc += power * jet[j];
    power *= -rho;
  }
  return acc;
}

}  // namespace

KernelParams::KernelParams(int m, double c) : m_(m), c_(c) {
  if (m < 0 || m > kMaxKernelOrder) {
    throw UnsupportedOrder("kernel index m = " + std::to_string(m) + " outside [0, 8]");
  }
  detail::require(std::isfinite(c) && c > 0.0 && c <= kPi, "shape c must lie in (0, pi]");
}

TensorKernelSpec::TensorKernelSpec(std::vector<KernelParams> params, std::vector<double> weights)
    : params_(std::move(params)), weights_(std::move(weights)) {
  detail::require(!params_.empty(), "tensor kernel needs at least one dimension");
  detail::require(params_.size() == weights_.size(), "one weight per dimension required");
  for (double w : weights_) {
    detail::require(std::isfinite(w) && w > 0.0, "weights must be finite and positive");
  }
}

RestrictedKernel::RestrictedKernel(const KernelParams& p)
    : params_(p), coeffs_(laguerre_coefficients(p.m(), 0.5)) {
  const double scale = 1.0 / (kSqrt2Pi * p.c());
  for (double& a : coeffs_) a *= scale;
}

double RestrictedKernel::operator()(double alpha) const {
  const double half = std::sin(0.5 * std::fmod(alpha, 2.0 * kPi));
  const double c = params_.c();
  const double u = 2.0 * half * half / (c * c);
  double poly = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) poly = poly * u + *it;
  return poly * std::exp(-u);
}

double RestrictedKernel::peak() const { return coeffs_.front(); }

double RestrictedKernel::truncation_radius(double eps) const {
  detail::require(eps > 0.0 && eps < 1.0, "truncation tolerance must lie in (0, 1)");
  const double threshold = eps * std::abs(coeffs_.front());
  const auto envelope = [&](double u) {
    double poly = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) poly = poly * u + std::abs(*it);
    return poly * std::exp(-u);
  };
  // u^k e^{-u} decreases for u > k, so the envelope is monotone beyond u = m.
  double lo = static_cast<double>(params_.m());
  double hi = std::max(1.0, lo);
  while (envelope(hi) > threshold) hi *= 2.0;
  if (envelope(lo) <= threshold) hi = lo;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (envelope(mid) > threshold ? lo : hi) = mid;
  }
  const double s = params_.c() * std::sqrt(0.5 * hi);
  if (s >= 1.0) return kPi;
  return 2.0 * std::asin(s);
}

double phi_generalized(const KernelParams& p, double s) {
  detail::require(s >= 0.0, "radius must be nonnegative");
  const double u = s * s / (2.0 * p.c() * p.c());
  return laguerre_general(p.m(), 0.5, u) * std::exp(-u) / (kSqrt2Pi * p.c());
}

double psi_restricted(const KernelParams& p, double alpha) { return RestrictedKernel(p)(alpha); }

double f2_phi_closed(const KernelParams& p, double r) {
  detail::require(r >= 0.0, "frequency radius must be nonnegative");
  const double v = 0.5 * p.c() * p.c() * r * r;
  double acc = 0.0;
  for (int j = 0; j <= p.m(); ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom_real(p.m() + 0.5, p.m() - j) * laguerre_general(j, 0.0, v);
  }
  return kSqrt2Pi * p.c() * acc * std::exp(-v);
}

double f2_phi_quadrature(const KernelParams& p, double r) {
  detail::require(r >= 0.0, "frequency radius must be nonnegative");
  detail::require(p.c() >= 0.01, "quadrature oracle needs c >= 0.01");
  const GaussLegendre& rule = gauss_legendre();
  const double upper = 12.0 * p.c() * (p.m() + 2);
  const auto integrate = [&](int panels) {
    const double width = upper / panels;
    CompensatedSum sum;
    for (int k = 0; k < panels; ++k) {
      const double mid = (k + 0.5) * width;
      for (int i = 0; i < GaussLegendre::kPoints; ++i) {
        const double t = mid + 0.5 * width * rule.nodes[static_cast<std::size_t>(i)];
        sum.add(rule.weights[static_cast<std::size_t>(i)] * phi_generalized(p, t) * t *
                std::cyl_bessel_j(0.0, r * t));
      }
    }
    return 2.0 * kPi * 0.5 * width * sum.value();
  };
  const double scale = kSqrt2Pi * p.c();
  double previous = integrate(4);
  for (int panels = 8; panels <= (1 << 14); panels *= 2) {
    const double current = integrate(panels);
    if (std::abs(current - previous) <= 1e-14 * std::max(scale, std::abs(current))) return current;
    previous = current;
  }
  throw NumericalFailure("Hankel-transform quadrature stalled at r = " + std::to_string(r));
}

double psi_fourier_analytic(const KernelParams& p, int ell) {
  detail::require(std::abs(ell) <= 4096, "|ell| must not exceed 4096");
  ell = std::abs(ell);
  double deviation = 0.0;
  if (hankel_series_deviation(p, ell, deviation)) return 1.0 + deviation;
  return jet_fourier(p, ell);
}

double psi_fourier_deviation(const KernelParams& p, int ell) {
  detail::require(std::abs(ell) <= 4096, "|ell| must not exceed 4096");
  ell = std::abs(ell);
  double deviation = 0.0;
  if (hankel_series_deviation(p, ell, deviation)) return deviation;
  return jet_fourier(p, ell) - 1.0;
}

double psi_fourier_quadrature(const KernelParams& p, int ell, int nodes) {
  const long long ell_abs = std::abs(static_cast<long long>(ell));
  detail::require(nodes >= 64 && nodes >= 8 * (ell_abs + 1),
                  "trapezoid rule needs nodes >= max(64, 8 (|ell| + 1))");
  detail::require(p.c() >= 1e-3, "trapezoid oracle needs c >= 1e-3");
  const RestrictedKernel psi(p);
  const double h = 2.0 * kPi / nodes;
  CompensatedSum sum;
  for (int i = 0; i < nodes; ++i) {
    const long long phase = (ell_abs * i) % nodes;
    sum.add(psi(h * i) * std::cos(h * static_cast<double>(phase)));
  }
  return h * sum.value();
}

double tensor_kernel_eval(const TensorKernelSpec& spec, std::span<const double> x) {
  detail::require(static_cast<int>(x.size()) == spec.dims(), "point dimension mismatch");
  double acc = 1.0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    acc *= spec.weights()[r] * psi_restricted(spec.params()[r], x[r]);
  }
  return acc;
}

double fit_strang_fix_order(int m, int ell, std::span<const double> c_list) {
  std::vector<double> residuals;
  residuals.reserve(c_list.size());
  for (double c : c_list) residuals.push_back(std::abs(psi_fourier_deviation(KernelParams(m, c), ell)));
  return loglog_slope(c_list, residuals);
}

StrangFixReport strang_fix_certify(int m, double gamma, std::span<const int> n_list,
                                   std::span<const int> ell_probe) {
  detail::require(n_list.size() >= 2, "certification needs two or more grid sizes");
  detail::require(!ell_probe.empty(), "certification needs at least one probe frequency");
  detail::require(gamma > 0.0, "gamma must be positive");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    detail::require(n_list[i] >= 2 && n_list[i] % 2 == 0, "grid sizes must be even");
    if (i > 0) detail::require(n_list[i] > n_list[i - 1], "grid sizes must increase");
  }
  for (int ell : ell_probe) {
    detail::require(2 * std::abs(ell) < n_list.front(), "probe frequencies must satisfy |ell| < N/2");
  }

  StrangFixReport report;
  report.m = m;
  report.gamma = gamma;
  report.ells.assign(ell_probe.begin(), ell_probe.end());
  std::vector<double> cs;
  for (int n : n_list) cs.push_back(gamma * 2.0 * kPi / n);
  for (int ell : ell_probe) {
    report.orders.push_back(fit_strang_fix_order(m, ell, cs));
  }

  const KernelParams finest(m, cs.back());
  for (int ell : ell_probe) {
    report.saturation_max = std::max(report.saturation_max, std::abs(psi_fourier_deviation(finest, ell)));
  }
  const int n = n_list.back();
  for (int ell = n / 2; ell <= 3 * n / 2; ++ell) {
    report.aliasing_max = std::max(report.aliasing_max, std::abs(psi_fourier_analytic(finest, ell)));
  }
  return report;
}

double comb_identity_residual(int k, int m, double z) {
  detail::require(0 <= k && k <= m && m <= 16, "need 0 <= k <= m <= 16");
  double lhs = 0.0;
  double rhs = 0.0;
  for (int j = k; j <= m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    lhs += sign * binom_real(z, j - k);
    rhs += sign * binom_real(m + 1 - z, m - j) * binom_real(j, k);
  }
  return std::abs(lhs - rhs);
}

}  // namespace torusqi
