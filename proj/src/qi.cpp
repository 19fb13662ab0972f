#include "torusqi/qi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "torusqi/error.hpp"
#include "torusqi/fit.hpp"

namespace torusqi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Window {
  std::vector<std::size_t> index;
  std::vector<double> weight;
};

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void check_dimension(int n, int m, double gamma) {
  detail::require(n >= 4 && n % 2 == 0, "grid size N must be even and at least 4");
  if (m < 0 || m > kMaxKernelOrder) throw UnsupportedOrder("kernel index m must lie in [0, 8]");
  detail::require(gamma > 0.0 && gamma <= 8.0, "gamma must lie in (0, 8]");
}

TensorKernelSpec grid_kernel(const FullGridSpec& grid, std::span<const int> ms,
                             std::span<const double> gammas) {
  std::vector<KernelParams> params;
  std::vector<double> weights;
  for (int r = 0; r < grid.dims(); ++r) {
    const double h = grid.spacing(r);
    params.emplace_back(ms[static_cast<std::size_t>(r)], gammas[static_cast<std::size_t>(r)] * h);
    weights.push_back(h);
  }
  return TensorKernelSpec(std::move(params), std::move(weights));
}

std::vector<double> sample_grid(const SampleFunction& f, const FullGridSpec& grid) {
  const PointSet nodes = full_grid_nodes(grid);
  std::vector<double> samples(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) samples[i] = f(nodes[i]);
  return samples;
}

}  // namespace

namespace detail {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), (n + 255) / 256);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace detail

QuasiInterpolant::QuasiInterpolant(FullGridSpec grid, TensorKernelSpec kernel,
                                   std::vector<double> samples)
    : grid_(std::move(grid)), kernel_(std::move(kernel)), samples_(std::move(samples)) {
  detail::require(kernel_.dims() == grid_.dims(), "kernel and grid dimensions differ");
  detail::require(static_cast<std::int64_t>(samples_.size()) == grid_.size(),
                  "one sample per grid node required");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw NumericalFailure("non-finite sample value");
  }
  const int d = grid_.dims();
  strides_.assign(static_cast<std::size_t>(d), 1);
  for (int r = d - 1; r > 0; --r) {
    strides_[static_cast<std::size_t>(r) - 1] =
        strides_[static_cast<std::size_t>(r)] * static_cast<std::size_t>(grid_.counts()[static_cast<std::size_t>(r)]);
  }
  for (int r = 0; r < d; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const double h = grid_.spacing(r);
    detail::require(std::abs(kernel_.weights()[ur] - h) <= 1e-14 * h,
                    "kernel weight must equal the grid spacing 2 pi / N");
    factors_.emplace_back(kernel_.params()[ur]);
    const double radius = factors_.back().truncation_radius(kTruncationEps);
    const int n = grid_.counts()[ur];
    const int half = static_cast<int>(std::ceil(radius / h));
    const bool full = 2 * half + 2 >= n;
    full_.push_back(full);
    halfwidths_.push_back(full ? n : half);
  }
}

double QuasiInterpolant::operator()(std::span<const double> x) const {
  const int d = grid_.dims();
  detail::require(static_cast<int>(x.size()) == d, "point dimension mismatch");
  std::vector<Window> windows(static_cast<std::size_t>(d));
  for (int r = 0; r < d; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    if (!std::isfinite(x[ur])) throw InvalidArgument("evaluation point is not finite");
    const int n = grid_.counts()[ur];
    const double h = grid_.spacing(r);
    const double xr = reduce_angle(x[ur]);
    Window& w = windows[ur];
    long long lo = 0;
    long long hi = n - 1;
    if (!full_[ur]) {
      const auto base = static_cast<long long>(std::floor(xr / h));
      lo = base - halfwidths_[ur];
      hi = base + halfwidths_[ur] + 1;
    }
    for (long long j = lo; j <= hi; ++j) {
      const long long wrapped = ((j % n) + n) % n;
      w.index.push_back(static_cast<std::size_t>(wrapped) * strides_[ur]);
      w.weight.push_back(h * factors_[ur](xr - h * static_cast<double>(j)));
    }
  }

  // Lexicographic walk over the window, last dimension fastest.
  CompensatedSum sum;
  std::vector<std::size_t> pos(static_cast<std::size_t>(d), 0);
  std::vector<double> partial(static_cast<std::size_t>(d) + 1, 1.0);
  std::vector<std::size_t> offset(static_cast<std::size_t>(d) + 1, 0);
  std::size_t level = 0;
  while (true) {
    for (; level < static_cast<std::size_t>(d); ++level) {
      partial[level + 1] = partial[level] * windows[level].weight[pos[level]];
      offset[level + 1] = offset[level] + windows[level].index[pos[level]];
    }
    const Window& last = windows.back();
    const std::size_t l = static_cast<std::size_t>(d) - 1;
    const double prefix = partial[l];
    const std::size_t base = offset[l];
    for (std::size_t k = 0; k < last.weight.size(); ++k) {
      sum.add(prefix * last.weight[k] * samples_[base + last.index[k]]);
    }
    // advance the odometer on dimensions 0..d-2
    std::size_t r = l;
    while (r > 0) {
      --r;
      if (++pos[r] < windows[r].weight.size()) break;
      pos[r] = 0;
      if (r == 0) return sum.value();
    }
    if (l == 0) return sum.value();
    level = r;
  }
}

std::vector<double> QuasiInterpolant::evaluate(const PointSet& points) const {
  detail::require(points.dims() == grid_.dims(), "point dimension mismatch");
  std::vector<double> out(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) { out[i] = (*this)(points[i]); });
  return out;
}

SparseQuasiInterpolant::SparseQuasiInterpolant(SparseGridSpec spec, std::vector<Term> terms,
                                               std::map<DyadicKey, double> samples)
    : spec_(spec), terms_(std::move(terms)), store_(std::move(samples)) {}

double SparseQuasiInterpolant::operator()(std::span<const double> x) const {
  CompensatedSum sum;
  for (const Term& term : terms_) sum.add(term.first.coeff * term.second(x));
  return sum.value();
}

std::vector<double> SparseQuasiInterpolant::evaluate(const PointSet& points) const {
  detail::require(points.dims() == spec_.dims(), "point dimension mismatch");
  std::vector<double> out(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) { out[i] = (*this)(points[i]); });
  return out;
}

QuasiInterpolant build_full(const SampleFunction& f, int n, int d, int m, double gamma) {
  detail::require(d >= 1, "dimension must be at least 1");
  const std::vector<int> counts(static_cast<std::size_t>(d), n);
  const std::vector<int> ms(static_cast<std::size_t>(d), m);
  const std::vector<double> gammas(static_cast<std::size_t>(d), gamma);
  return build_aniso(f, counts, ms, gammas);
}

QuasiInterpolant build_aniso(const SampleFunction& f, std::span<const int> counts,
                             std::span<const int> ms, std::span<const double> gammas) {
  detail::require(!counts.empty(), "at least one dimension required");
  detail::require(counts.size() == ms.size() && counts.size() == gammas.size(),
                  "counts, ms and gammas must have equal length");
  for (std::size_t r = 0; r < counts.size(); ++r) check_dimension(counts[r], ms[r], gammas[r]);
  FullGridSpec grid(std::vector<int>(counts.begin(), counts.end()));
  TensorKernelSpec kernel = grid_kernel(grid, ms, gammas);
  std::vector<double> samples = sample_grid(f, grid);
  return QuasiInterpolant(std::move(grid), std::move(kernel), std::move(samples));
}

SparseQuasiInterpolant build_sparse(const SampleFunction& f, const SparseGridSpec& spec, int m,
                                    double gamma) {
  if (m < 0 || m > kMaxKernelOrder) throw UnsupportedOrder("kernel index m must lie in [0, 8]");
  detail::require(gamma > 0.0 && gamma <= 8.0, "gamma must lie in (0, 8]");
  const int d = spec.dims();

  std::map<DyadicKey, double> store;
  for (DyadicKey& key : sparse_grid_points(spec)) {
    const std::vector<double> x = key.point();
    store.emplace(std::move(key), f(x));
  }

  std::vector<SparseQuasiInterpolant::Term> terms;
  const std::vector<int> ms(static_cast<std::size_t>(d), m);
  const std::vector<double> gammas(static_cast<std::size_t>(d), gamma);
  for (CombinationTerm& term : combination_terms(spec)) {
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(term.grid.size()));
    for_each_index(term.grid.counts(), [&](std::span<const std::uint64_t> node) {
      const auto it = store.find(DyadicKey::from_node(node, term.index));
      if (it == store.end()) throw MissingSample("combination term requested an unsampled node");
      samples.push_back(it->second);
    });
    TensorKernelSpec kernel = grid_kernel(term.grid, ms, gammas);
    QuasiInterpolant q(term.grid, std::move(kernel), std::move(samples));
    terms.emplace_back(std::move(term), std::move(q));
  }
  return SparseQuasiInterpolant(spec, std::move(terms), std::move(store));
}

std::vector<double> evaluate(const QuasiInterpolant& q, const PointSet& points) {
  return q.evaluate(points);
}

std::vector<double> evaluate(const SparseQuasiInterpolant& q, const PointSet& points) {
  return q.evaluate(points);
}

}  // namespace torusqi
