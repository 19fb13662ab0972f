#pragma once

#include <span>
#include <vector>

#include "torusqi/jet.hpp"

namespace torusqi {

/// Largest Laguerre degree accepted by laguerre_general.
inline constexpr int kMaxLaguerreDegree = 12;
/// Largest k accepted by binom_real.
inline constexpr int kMaxBinomialK = 64;
/// Largest Bessel order accepted by scaled_bessel_i.
inline constexpr int kMaxBesselOrder = 2048;
/// Largest Taylor order accepted by jet_psi2_hat.
inline constexpr int kMaxJetOrder = 8;

/// Coefficients of a univariate polynomial; index k multiplies t^k.
/// The zero polynomial has no coefficients.
struct PolyCoeffs {
  std::vector<double> coeffs;

  PolyCoeffs() = default;
  explicit PolyCoeffs(std::vector<double> c);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double t) const;
};

/// Coefficients of L_m^{(alpha)} in ascending powers of s.
std::vector<double> laguerre_coefficients(int m, double alpha);

/// Generalized Laguerre polynomial L_m^{(alpha)}(s), m <= 12.
double laguerre_general(int m, double alpha, double s);

/// Binomial coefficient C(z, k) for real z.
double binom_real(double z, int k);

/// e^{-z} I_nu(z) for integer nu >= 0 and z >= 0.
double scaled_bessel_i(int nu, double z);

/// e^{-z} I_n(z) for n = 0..nu_max, from a single backward recurrence.
std::vector<double> scaled_bessel_i_sequence(int nu_max, double z);

/// Truncated Hankel expansion of I_ell(z), scaled by e^{-z}.
/// Only valid for z >= 10 * max(1, ell^2); used as an oracle.
double hankel_asymptotic_i(int ell, double z, int terms);

/// Taylor jet in rho at rho0 of sqrt(2 pi) rho^{-1/2} e^{-1/rho} I_ell(1/rho),
/// the Fourier coefficient of the restricted m = 0 Gaussian with rho = c^2.
Jet jet_psi2_hat(int ell, double rho0, int order);

/// G_m(t) = sum_{j<=m} (-1)^j t^j g^{(j)}(t) / j!.
PolyCoeffs order_raising_transform(const PolyCoeffs& g, int m);

}  // namespace torusqi
