#pragma once

#include <span>
#include <vector>

namespace torusqi {

/// Largest Laguerre index accepted for kernels (Strang-Fix order 2m+2 <= 18).
inline constexpr int kMaxKernelOrder = 8;

/// One-dimensional restricted generalized Gaussian: Laguerre index m and
/// shape c. Invariant: 0 <= m <= 8, 0 < c <= pi.
class KernelParams {
 public:
  KernelParams(int m, double c);

  int m() const { return m_; }
  double c() const { return c_; }
  /// Strang-Fix order 2m + 2.
  int order() const { return 2 * m_ + 2; }

 private:
  int m_;
  double c_;
};

/// Per-dimension kernel parameters and quadrature weights of a tensor kernel.
class TensorKernelSpec {
 public:
  TensorKernelSpec(std::vector<KernelParams> params, std::vector<double> weights);

  int dims() const { return static_cast<int>(params_.size()); }
  const std::vector<KernelParams>& params() const { return params_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<KernelParams> params_;
  std::vector<double> weights_;
};

/// Restricted kernel psi_{2m+2}(.; c) with the Laguerre coefficients
/// folded in once, for repeated evaluation.
class RestrictedKernel {
 public:
  explicit RestrictedKernel(const KernelParams& p);

  const KernelParams& params() const { return params_; }
  double operator()(double alpha) const;
  /// Value at alpha = 0.
  double peak() const;
  /// Smallest angle beyond which the absolute-coefficient envelope stays
  /// below eps * peak(); returns pi when the envelope never drops that far.
  double truncation_radius(double eps) const;

 private:
  KernelParams params_;
  std::vector<double> coeffs_;  // L_m^{(1/2)} in powers of u, times the prefactor
};

struct StrangFixReport {
  int m = 0;
  double gamma = 0.0;
  std::vector<int> ells;
  /// Fitted exponent of |psi_hat(ell; c) - 1| against c, one per probe.
  std::vector<double> orders;
  /// max over probes of |psi_hat(ell) - 1| at the finest grid.
  double saturation_max = 0.0;
  /// max |psi_hat(ell')| over ell' in [N/2, 3N/2] at the finest grid.
  double aliasing_max = 0.0;
};

/// Planar generalized Gaussian phi_{2m+2}(s; c) at radius s >= 0.
double phi_generalized(const KernelParams& p, double s);

/// Restriction of phi_{2m+2} to the unit circle at geodesic angle alpha.
double psi_restricted(const KernelParams& p, double alpha);

/// Two-dimensional radial Fourier transform of phi_{2m+2}, closed form.
double f2_phi_closed(const KernelParams& p, double r);

/// Same transform via 2 pi int_0^inf phi(t) t J_0(r t) dt on Gauss-Legendre
/// panels. Throws NumericalFailure if refinement stalls.
double f2_phi_quadrature(const KernelParams& p, double r);

/// int_T psi_{2m+2}(alpha; c) e^{-i ell alpha} d alpha (tends to 1 as c -> 0).
double psi_fourier_analytic(const KernelParams& p, int ell);

/// psi_fourier_analytic(p, ell) - 1, evaluated without cancellation when
/// 1/c^2 is large compared with ell^2.
double psi_fourier_deviation(const KernelParams& p, int ell);

/// Trapezoid rule for int_0^{2pi} psi(alpha) cos(ell alpha) d alpha.
double psi_fourier_quadrature(const KernelParams& p, int ell, int nodes);

/// prod_r w_r psi_{2m_r+2}(x_r; c_r).
double tensor_kernel_eval(const TensorKernelSpec& spec, std::span<const double> x);

/// Probes |psi_hat(ell; c) - 1| with c = gamma 2 pi / N over N_list and fits
/// the decay exponent in c for each probe.
StrangFixReport strang_fix_certify(int m, double gamma, std::span<const int> n_list,
                                   std::span<const int> ell_probe);

/// Least-squares exponent of |psi_hat(ell; c) - 1| against c over c_list.
double fit_strang_fix_order(int m, int ell, std::span<const double> c_list);

/// |sum_{j=k}^m (-1)^j C(z, j-k) - sum_{j=k}^m (-1)^j C(m+1-z, m-j) C(j, k)|.
double comb_identity_residual(int k, int m, double z);

}  // namespace torusqi
