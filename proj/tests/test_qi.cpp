#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "torusqi/analysis.hpp"
#include "torusqi/error.hpp"
#include "torusqi/fit.hpp"
#include "torusqi/qi.hpp"

using namespace torusqi;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

double at(const QuasiInterpolant& q, std::vector<double> x) { return q(x); }

// Random trigonometric polynomial of degree <= 4 per dimension with a
// positive offset, so values stay away from zero.
struct TrigPoly {
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
  double operator()(std::span<const double> x) const {
    double v = 1.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      double f = 2.5;
      for (std::size_t k = 0; k < a[r].size(); ++k) {
        f += a[r][k] * std::cos((k + 1.0) * x[r]) + b[r][k] * std::sin((k + 1.0) * x[r]);
      }
      v *= f;
    }
    return v;
  }
};

TrigPoly random_poly(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  TrigPoly p;
  for (int r = 0; r < d; ++r) {
    p.a.emplace_back();
    p.b.emplace_back();
    for (int k = 0; k < 4; ++k) {
      p.a.back().push_back(u(rng));
      p.b.back().push_back(u(rng));
    }
  }
  return p;
}

double max_error_1d(const SampleFunction& f, const QuasiInterpolant& q, int n) {
  double err = 0.0;
  const PointSet pts = offset_eval_grid(n, 1);
  for (std::size_t i = 0; i < pts.size(); ++i) err = std::max(err, std::abs(f(pts[i]) - q(pts[i])));
  return err;
}

}  // namespace

TEST_CASE("constant saturation at N = 32") {
  const SampleFunction one = [](std::span<const double>) { return 1.0; };
  const QuasiInterpolant q = build_full(one, 32, 1, 0, 1.0);
  const double rho = std::pow(kTwoPi / 32.0, 2);
  const KernelParams p(0, kTwoPi / 32.0);
  for (double x : {0.0, 0.1, 1.0, 3.0}) {
    // Q1(x) = sum_nu psi_hat(32 nu) e^{i 32 nu x}
    double expected = psi_fourier_deviation(p, 0);
    for (int nu = 1; nu <= 3; ++nu) expected += 2.0 * psi_fourier_analytic(p, 32 * nu) * std::cos(32.0 * nu * x);
    const double delta = at(q, {x}) - 1.0;
    CHECK(std::abs(delta - expected) <= 1e-14);
    CHECK(delta == doctest::Approx(rho / 8.0).epsilon(0.05));
  }
}

TEST_CASE("truncated evaluation agrees with dense summation") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  std::uniform_real_distribution<double> gam(0.3, 2.0);
  const int sizes[] = {4, 6, 8, 16, 24, 32, 64};
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<int> counts;
    std::vector<int> ms;
    std::vector<double> gammas;
    for (int r = 0; r < d; ++r) {
      counts.push_back(sizes[(trial + 3 * r) % (d == 3 ? 5 : 7)]);
      ms.push_back((trial + r) % 3);
      gammas.push_back(gam(rng));
    }
    const TrigPoly f = random_poly(rng, d);
    const QuasiInterpolant q = build_aniso(f, counts, ms, gammas);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (double& v : x) v = angle(rng);
      const double dense = oracle::dense_qi(q, x);
      const double fast = q(x);
      worst = std::max(worst, std::abs(fast - dense) / std::abs(dense));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("evaluate matches pointwise calls") {
  const TestFunctionGp tf = make_gp(6, 2);
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  const QuasiInterpolant q = build_full(f, 16, 2, 1, 1.5);
  const PointSet pts = random_eval_points(2, 1000, 7);
  const std::vector<double> v = q.evaluate(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(v[i] == q(pts[i]));
}

TEST_CASE("zero samples give zero") {
  const SampleFunction zero = [](std::span<const double>) { return 0.0; };
  const QuasiInterpolant q = build_full(zero, 16, 2, 2, 1.0);
  for (const double x : {0.0, 0.3927, 2.0}) CHECK(at(q, {x, x + 0.5}) == 0.0);
}

TEST_CASE("sin x converges at rate 2m + 2") {
  const SampleFunction f = [](std::span<const double> x) { return std::sin(x[0]); };
  for (int m = 0; m <= 2; ++m) {
    std::vector<double> ns;
    std::vector<double> errs;
    for (int n = 32; n <= 512; n *= 2) {
      ns.push_back(n);
      errs.push_back(max_error_1d(f, build_full(f, n, 1, m, 1.5), n));
    }
    CAPTURE(m);
    CHECK(-loglog_slope(ns, errs) == doctest::Approx(2.0 * m + 2.0).epsilon(0.05));
  }
}

TEST_CASE("single modes decay at rate 2m + 2") {
  for (int k : {1, 3}) {
    const SampleFunction f = [k](std::span<const double> x) { return std::cos(k * x[0]); };
    for (int m = 0; m <= 2; ++m) {
      double prev = 0.0;
      for (int n = 64; n <= 512; n *= 2) {
        const double err = max_error_1d(f, build_full(f, n, 1, m, 1.5), n);
        if (prev > 0.0) {
          CAPTURE(k);
          CAPTURE(m);
          CAPTURE(n);
          CHECK(std::abs(std::log2(prev / err) - (2 * m + 2)) <= 0.3);
        }
        prev = err;
      }
    }
  }
}

TEST_CASE("g6 with m = 1 between N = 128 and 256") {
  const TestFunctionGp tf = make_gp(6, 1);
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  const double e128 = max_error_1d(f, build_full(f, 128, 1, 1, 1.5), 128);
  const double e256 = max_error_1d(f, build_full(f, 256, 1, 1, 1.5), 256);
  CHECK(std::log2(e128 / e256) == doctest::Approx(3.98).epsilon(0.03));
}

TEST_CASE("constant saturation order under c-halving") {
  const SampleFunction one = [](std::span<const double>) { return 1.0; };
  for (int m = 0; m <= 2; ++m) {
    std::vector<double> cs;
    std::vector<double> devs;
    for (double gamma : {8.0, 4.0, 2.0}) {
      const QuasiInterpolant q = build_full(one, 512, 1, m, gamma);
      cs.push_back(gamma * kTwoPi / 512.0);
      devs.push_back(std::abs(at(q, {0.3}) - 1.0));
    }
    CAPTURE(m);
    CHECK(std::abs(loglog_slope(cs, devs) - (2 * m + 2)) <= 0.2);
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(99);
  const TrigPoly f = random_poly(rng, 2);
  const TrigPoly g = random_poly(rng, 2);
  const double a = 0.7;
  const double b = -1.9;
  const SampleFunction h = [&](std::span<const double> x) { return a * f(x) + b * g(x); };
  const QuasiInterpolant qf = build_full(f, 16, 2, 1, 1.2);
  const QuasiInterpolant qg = build_full(g, 16, 2, 1, 1.2);
  const QuasiInterpolant qh = build_full(h, 16, 2, 1, 1.2);
  for (double x : {0.1, 1.3, 4.4}) {
    const std::vector<double> p = {x, 2.0 * x};
    CHECK(std::abs(qh(p) - (a * qf(p) + b * qg(p))) <= 1e-13 * (std::abs(a * qf(p)) + std::abs(b * qg(p))));
  }
}

TEST_CASE("shift equivariance") {
  const TestFunctionGp tf = make_gp(4, 1);
  const int n = 32;
  const int shift = 5;
  const double s = kTwoPi * shift / n;
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  const SampleFunction g = [&](std::span<const double> x) { return gp_eval(tf, x[0] + s); };
  const QuasiInterpolant qf = build_full(f, n, 1, 2, 1.0);
  const QuasiInterpolant qg = build_full(g, n, 1, 2, 1.0);
  for (double x : {0.05, 1.0, 2.7, 5.9}) {
    CHECK(at(qf, {x + s}) == doctest::Approx(at(qg, {x})).epsilon(1e-13));
  }
}

TEST_CASE("anisotropic builder") {
  const SampleFunction f = [](std::span<const double> x) { return std::sin(x[0]) + 0.5 * std::cos(2.0 * x[1]); };
  const std::vector<int> counts = {32, 32};
  const std::vector<int> ms = {1, 1};
  const std::vector<double> gammas = {1.5, 1.5};
  const QuasiInterpolant iso = build_full(f, 32, 2, 1, 1.5);
  const QuasiInterpolant ani = build_aniso(f, counts, ms, gammas);
  for (double x : {0.2, 2.2}) CHECK(at(iso, {x, 1.0 - x}) == at(ani, {x, 1.0 - x}));

  // f constant in y: error set by the x resolution, within the y-kernel saturation
  const SampleFunction sx = [](std::span<const double> x) { return std::sin(x[0]); };
  const QuasiInterpolant coarse_y = build_aniso(sx, std::vector<int>{64, 8}, std::vector<int>{1, 1},
                                                std::vector<double>{1.5, 1.5});
  const QuasiInterpolant one_d = build_full(sx, 64, 1, 1, 1.5);
  const double sat_y = std::abs(psi_fourier_deviation(KernelParams(1, 1.5 * kTwoPi / 8.0), 0));
  for (double x : {0.3, 1.7, 4.0}) {
    const double err2 = std::abs(at(coarse_y, {x, 0.4}) - std::sin(x));
    const double err1 = std::abs(at(one_d, {x}) - std::sin(x));
    CHECK(err2 <= err1 + 1.01 * sat_y);
    CHECK(std::abs(at(coarse_y, {x, 0.4}) - oracle::dense_qi(coarse_y, std::vector<double>{x, 0.4})) <= 1e-14);
  }

  // refining only dimension 2 plateaus at the dimension-1 error
  const TestFunctionGp tf = make_gp(6, 2);
  const SampleFunction g = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  const PointSet pts = random_eval_points(2, 400, 3);
  std::vector<double> errs;
  for (int n2 : {32, 64, 128, 256}) {
    const QuasiInterpolant q =
        build_aniso(g, std::vector<int>{32, n2}, std::vector<int>{0, 2}, std::vector<double>{1.5, 1.5});
    double e = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) e = std::max(e, std::abs(q(pts[i]) - g(pts[i])));
    errs.push_back(e);
  }
  CHECK(errs[3] / errs[2] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(errs[3] > 1e-3);

  CHECK_THROWS_AS(build_aniso(f, std::vector<int>{32}, std::vector<int>{1, 1}, std::vector<double>{1.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(build_full(f, 31, 1, 1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(build_full(f, 32, 1, 9, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(build_full(f, 32, 1, 1, 0.0), InvalidArgument);
}

TEST_CASE("non-finite samples are rejected") {
  const SampleFunction bad = [](std::span<const double> x) { return x[0] > 3.0 ? std::nan("") : 1.0; };
  CHECK_THROWS_AS(build_full(bad, 16, 1, 0, 1.0), NumericalFailure);
  const SampleFunction one = [](std::span<const double>) { return 1.0; };
  const QuasiInterpolant q = build_full(one, 16, 1, 0, 1.0);
  CHECK_THROWS_AS(at(q, {std::nan("")}), InvalidArgument);
  CHECK_THROWS_AS(at(q, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("sparse with d = 1 equals the full grid") {
  const TestFunctionGp tf = make_gp(6, 1);
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  for (int level = 2; level <= 6; ++level) {
    const SparseQuasiInterpolant s = build_sparse(f, SparseGridSpec(level, 1), 1, 1.0);
    const QuasiInterpolant q = build_full(f, 1 << level, 1, 1, 1.0);
    for (double x : {0.1, 2.0, 5.5}) CHECK(s(std::vector<double>{x}) == doctest::Approx(at(q, {x})).epsilon(1e-15));
  }
}

TEST_CASE("sparse samples once per distinct node") {
  for (int d = 2; d <= 4; ++d) {
    for (int level = 1; level <= 5; ++level) {
      std::size_t calls = 0;
      const SampleFunction f = [&calls](std::span<const double> x) {
        ++calls;
        return std::cos(x[0]);
      };
      const SparseGridSpec spec(level, d);
      const SparseQuasiInterpolant s = build_sparse(f, spec, 0, 1.0);
      CHECK(static_cast<std::int64_t>(calls) == sparse_grid_count_formula(spec));
      CHECK(s.sample_store().size() == calls);
      CHECK(s.terms().size() == combination_terms(spec).size());
    }
  }
}

TEST_CASE("sparse constant reproduction") {
  const SampleFunction one = [](std::span<const double>) { return 1.0; };
  const SparseGridSpec spec(4, 2);
  const double gamma = 1.0;
  const SparseQuasiInterpolant s = build_sparse(one, spec, 1, gamma);
  // each component's saturation is psi_hat(0; c_r) per factor; bound by the coarsest
  double bound = 0.0;
  for (const auto& [term, q] : s.terms()) {
    double prod = 1.0;
    for (const KernelParams& p : q.kernel().params()) prod *= 1.0 + std::abs(psi_fourier_deviation(p, 0));
    bound += std::abs(term.coeff) * (prod - 1.0);
  }
  const PointSet pts = random_eval_points(2, 200, 11);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(s(pts[i]) - 1.0) <= bound);
    // dense oracle per term
    double dense = 0.0;
    for (const auto& [term, q] : s.terms()) dense += term.coeff * oracle::dense_qi(q, pts[i]);
    CHECK(std::abs(s(pts[i]) - dense) <= 1e-13);
  }
}

TEST_CASE("sparse telescoping on a smooth product") {
  const SampleFunction f = [](std::span<const double> x) {
    return (1.0 + 0.5 * std::cos(x[0])) * (1.0 + 0.3 * std::sin(2.0 * x[1]));
  };
  const PointSet pts = random_eval_points(2, 500, 5);
  double prev = 1e300;
  for (int level = 3; level <= 9; ++level) {
    const SparseQuasiInterpolant s = build_sparse(f, SparseGridSpec(level, 2), 1, 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) err = std::max(err, std::abs(s(pts[i]) - f(pts[i])));
    CAPTURE(level);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("sparse rejects kernels wider than the torus") {
  const SampleFunction one = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(build_sparse(one, SparseGridSpec(3, 2), 1, 1.5), InvalidArgument);
}
