#include "torusqi/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "torusqi/error.hpp"

namespace torusqi {

namespace {

// Above this argument the backward recurrence would need too many steps;
// the Hankel expansion is accurate to round-off there for nu <= 2048.
constexpr double kHankelSwitch = 1e8;

double hankel_scaled(int ell, double z, int max_terms, double tol) {
  const double mu = 4.0 * static_cast<double>(ell) * ell;
  double term = 1.0;
  double sum = 1.0;
  for (int g = 1; g < max_terms; ++g) {
    const double odd = 2.0 * g - 1.0;
    term *= -(mu - odd * odd) / (8.0 * z * g);
    sum += term;
    if (std::abs(term) < tol * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace

PolyCoeffs::PolyCoeffs(std::vector<double> c) : coeffs(std::move(c)) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

double PolyCoeffs::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> laguerre_coefficients(int m, double alpha) {
  if (m < 0 || m > kMaxLaguerreDegree) {
    throw UnsupportedOrder("Laguerre degree " + std::to_string(m) + " outside [0, " +
                           std::to_string(kMaxLaguerreDegree) + "]");
  }
  detail::require(alpha > -1.0, "Laguerre parameter must exceed -1");
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  double inv_factorial = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) inv_factorial /= k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(k)] = sign * binom_real(m + alpha, m - k) * inv_factorial;
  }
  return c;
}

double laguerre_general(int m, double alpha, double s) {
  laguerre_coefficients(m, alpha);  // argument validation
  // Forward recurrence; the monomial form cancels badly for large s.
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 1.0 + alpha - s;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - s) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double binom_real(double z, int k) {
  detail::require(k >= 0 && k <= kMaxBinomialK, "binomial index outside [0, 64]");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (z - i) / (i + 1);
  return r;
}

std::vector<double> scaled_bessel_i_sequence(int nu_max, double z) {
  detail::require(nu_max >= 0 && nu_max <= kMaxBesselOrder, "Bessel order outside [0, 2048]");
  detail::require(std::isfinite(z) && z >= 0.0, "Bessel argument must be finite and nonnegative");
  std::vector<double> out(static_cast<std::size_t>(nu_max) + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (z > kHankelSwitch) {
    for (int n = 0; n <= nu_max; ++n) out[static_cast<std::size_t>(n)] = hankel_scaled(n, z, 40, 1e-17);
    return out;
  }

  // Miller: run I_{n-1} = I_{n+1} + (2n/z) I_n downward from an order where
  // e^{-z} I_n(z) is negligible, then normalize with g_0 + 2 sum g_k = 1.
  const int start = nu_max + static_cast<int>(std::ceil(9.0 * std::sqrt(z))) + 30;
  constexpr double kBig = 1e200;
  double next = 0.0;
  double cur = 1e-100;
  double tail = 0.0;
  for (int n = start; n >= 1; --n) {
    if (n <= nu_max) out[static_cast<std::size_t>(n)] = cur;
    tail += cur;
    const double prev = next + (2.0 * n / z) * cur;
    next = cur;
    cur = prev;
    if (cur > kBig) {
      next /= kBig;
      cur /= kBig;
      tail /= kBig;
      for (int k = n; k <= nu_max; ++k) out[static_cast<std::size_t>(k)] /= kBig;
    }
  }
  out[0] = cur;
  const double total = cur + 2.0 * tail;
  if (!std::isfinite(total) || !(total > 0.0)) {
    throw NumericalFailure("Bessel backward recurrence failed to normalize at z = " +
                           std::to_string(z));
  }
  for (double& v : out) v /= total;
  return out;
}

double scaled_bessel_i(int nu, double z) { return scaled_bessel_i_sequence(nu, z).back(); }

double hankel_asymptotic_i(int ell, double z, int terms) {
  detail::require(ell >= 0, "order must be nonnegative");
  detail::require(terms >= 1 && terms <= 8, "Hankel terms outside [1, 8]");
  const double ell_d = ell;
  detail::require(z >= 10.0 * std::max(1.0, ell_d * ell_d),
                  "argument outside the Hankel validity regime z >= 10 max(1, ell^2)");
  return hankel_scaled(ell, z, terms, 0.0);
}

Jet jet_psi2_hat(int ell, double rho0, int order) {
  detail::require(std::isfinite(rho0) && rho0 > 0.0, "rho0 must be positive");
  detail::require(order >= 0 && order <= kMaxJetOrder, "jet order outside [0, 8]");
  ell = std::abs(ell);
  const double u0 = 1.0 / rho0;

  const std::vector<double> g = scaled_bessel_i_sequence(ell + order, u0);
  // v[i] = g_{ell - order + i}, using g_{-n} = g_n.
  std::vector<double> v(2 * static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= 2 * order; ++i) {
    v[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(std::abs(ell - order + i))];
  }

  // d/du g_nu = (g_{nu-1} - 2 g_nu + g_{nu+1}) / 2 applied k times yields the
  // k-th derivative of g_ell from the neighbouring orders.
  std::vector<double> taylor(static_cast<std::size_t>(order) + 1);
  taylor[0] = v[static_cast<std::size_t>(order)];
  double inv_factorial = 1.0;
  for (int k = 1; k <= order; ++k) {
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) w[i] = 0.5 * ((v[i - 1] - v[i]) + (v[i + 1] - v[i]));
    v.swap(w);
    inv_factorial /= k;
    taylor[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(order)] * inv_factorial;
  }

  const Jet rho = Jet::variable(rho0, order);
  const Jet scaled = rho.reciprocal().compose(taylor);
  const Jet prefactor = std::sqrt(2.0 * std::numbers::pi) * rho.pow(-0.5);
  return prefactor * scaled;
}

PolyCoeffs order_raising_transform(const PolyCoeffs& g, int m) {
  detail::require(g.degree() <= 32, "polynomial degree above 32");
  detail::require(m >= 0, "order must be nonnegative");
  // t^j/j! d^j/dt^j t^k = C(k, j) t^k, so coefficient k picks up
  // sum_{j <= min(m, k)} (-1)^j C(k, j), which is exactly zero for 1 <= k <= m.
  std::vector<double> out(g.coeffs.size(), 0.0);
  for (std::size_t k = 0; k < g.coeffs.size(); ++k) {
    std::int64_t weight = 0;
    std::int64_t binom = 1;
    const std::size_t jmax = std::min<std::size_t>(static_cast<std::size_t>(m), k);
    for (std::size_t j = 0; j <= jmax; ++j) {
      weight += (j % 2 == 0) ? binom : -binom;
      binom = binom * static_cast<std::int64_t>(k - j) / static_cast<std::int64_t>(j + 1);
    }
    out[k] = static_cast<double>(weight) * g.coeffs[k];
  }
  return PolyCoeffs(std::move(out));
}

}  // namespace torusqi
