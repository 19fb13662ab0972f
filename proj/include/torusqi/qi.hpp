#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "torusqi/grid.hpp"
#include "torusqi/kernel.hpp"

namespace torusqi {

using SampleFunction = std::function<double(std::span<const double>)>;

/// Relative envelope level at which kernel stencils are cut off.
inline constexpr double kTruncationEps = 1e-15;

/// Immutable tensor-product quasi-interpolant
///   Q f(x) = sum_j f(x_j) prod_r (2 pi / N_r) psi_{2m_r+2}(x_r - x_{j,r}; c_r)
/// evaluated over a truncated, periodically wrapped stencil.
class QuasiInterpolant {
 public:
  /// Kernel weights must equal the grid spacings 2 pi / N_r.
  QuasiInterpolant(FullGridSpec grid, TensorKernelSpec kernel, std::vector<double> samples);

  const FullGridSpec& grid() const { return grid_; }
  const TensorKernelSpec& kernel() const { return kernel_; }
  const std::vector<double>& samples() const { return samples_; }
  /// Per-dimension stencil halfwidth in nodes; equals N_r when the stencil
  /// covers the whole circle.
  const std::vector<int>& stencil_halfwidths() const { return halfwidths_; }

  double operator()(std::span<const double> x) const;
  std::vector<double> evaluate(const PointSet& points) const;

 private:
  FullGridSpec grid_;
  TensorKernelSpec kernel_;
  std::vector<double> samples_;
  std::vector<RestrictedKernel> factors_;
  std::vector<int> halfwidths_;
  std::vector<bool> full_;
  std::vector<std::size_t> strides_;
};

/// Signed combination of anisotropic quasi-interpolants over a sparse grid.
class SparseQuasiInterpolant {
 public:
  using Term = std::pair<CombinationTerm, QuasiInterpolant>;

  SparseQuasiInterpolant(SparseGridSpec spec, std::vector<Term> terms,
                         std::map<DyadicKey, double> samples);

  const SparseGridSpec& spec() const { return spec_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::map<DyadicKey, double>& sample_store() const { return store_; }

  double operator()(std::span<const double> x) const;
  std::vector<double> evaluate(const PointSet& points) const;

 private:
  SparseGridSpec spec_;
  std::vector<Term> terms_;
  std::map<DyadicKey, double> store_;
};

/// Isotropic quasi-interpolant on the N^d grid with c = gamma 2 pi / N.
QuasiInterpolant build_full(const SampleFunction& f, int n, int d, int m, double gamma);

/// Directionally uniform quasi-interpolant with per-dimension N_r, m_r, gamma_r.
QuasiInterpolant build_aniso(const SampleFunction& f, std::span<const int> counts,
                             std::span<const int> ms, std::span<const double> gammas);

/// Sparse-grid quasi-interpolant; f is called once per distinct node.
SparseQuasiInterpolant build_sparse(const SampleFunction& f, const SparseGridSpec& spec, int m,
                                    double gamma);

std::vector<double> evaluate(const QuasiInterpolant& q, const PointSet& points);
std::vector<double> evaluate(const SparseQuasiInterpolant& q, const PointSet& points);

namespace detail {

/// Runs body(i) for i in [0, n) on hardware threads; each index is handled
/// by exactly one call, so per-index results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace detail
}  // namespace torusqi
