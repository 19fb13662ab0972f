#include "torusqi/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "torusqi/error.hpp"

namespace torusqi {

namespace {

constexpr std::int64_t kMaxFullGrid = std::int64_t{1} << 26;
constexpr std::size_t kMaxSparseGrid = std::size_t{1} << 24;
constexpr int kMaxDyadicLevel = 40;

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void collect(int remaining, int slots, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (slots == 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = 1; v <= remaining - (slots - 1); ++v) {
    current.push_back(v);
    collect(remaining - v, slots - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

PointSet::PointSet(int dims, std::vector<double> coords) : dims_(dims), coords_(std::move(coords)) {
  detail::require(dims_ >= 1, "points need at least one dimension");
  detail::require(coords_.size() % static_cast<std::size_t>(dims_) == 0, "ragged point storage");
}

void PointSet::push_back(std::span<const double> point) {
  detail::require(static_cast<int>(point.size()) == dims_, "point dimension mismatch");
  coords_.insert(coords_.end(), point.begin(), point.end());
}

FullGridSpec::FullGridSpec(std::vector<int> counts) : counts_(std::move(counts)) {
  detail::require(!counts_.empty(), "grid needs at least one dimension");
  for (int n : counts_) detail::require(n >= 2, "each grid dimension needs at least 2 points");
}

std::int64_t FullGridSpec::size() const {
  std::int64_t total = 1;
  for (int n : counts_) {
    total *= n;
    if (total > kMaxFullGrid) return total;
  }
  return total;
}

double FullGridSpec::spacing(int r) const {
  return 2.0 * std::numbers::pi / counts_.at(static_cast<std::size_t>(r));
}

SparseGridSpec::SparseGridSpec(int level, int dims) : level_(level), dims_(dims) {
  detail::require(level >= 1, "sparse grid level must be at least 1");
  detail::require(dims >= 1, "sparse grid needs at least one dimension");
  detail::require(level + dims - 1 <= kMaxDyadicLevel, "sparse grid level too deep");
}

DyadicKey DyadicKey::from_node(std::span<const std::uint64_t> index, std::span<const int> levels) {
  DyadicKey key;
  key.coords.reserve(index.size());
  for (std::size_t r = 0; r < index.size(); ++r) {
    std::uint64_t num = index[r];
    int level = levels[r];
    if (num == 0) {
      level = 0;
    } else {
      while ((num & 1u) == 0) {
        num >>= 1;
        --level;
      }
    }
    key.coords.push_back({num, level});
  }
  return key;
}

std::vector<double> DyadicKey::point() const {
  std::vector<double> x;
  x.reserve(coords.size());
  for (const DyadicCoord& c : coords) {
    x.push_back(2.0 * std::numbers::pi * std::ldexp(static_cast<double>(c.numerator), -c.level));
  }
  return x;
}

PointSet full_grid_nodes(const FullGridSpec& spec) {
  if (spec.size() > kMaxFullGrid) {
    throw InvalidArgument("full grid of " + std::to_string(spec.size()) + " nodes exceeds 2^26");
  }
  PointSet out(spec.dims());
  std::vector<double> x(static_cast<std::size_t>(spec.dims()));
  for_each_index(spec.counts(), [&](std::span<const std::uint64_t> index) {
    for (std::size_t r = 0; r < index.size(); ++r) {
      x[r] = spec.spacing(static_cast<int>(r)) * static_cast<double>(index[r]);
    }
    out.push_back(x);
  });
  return out;
}

std::vector<MultiIndex> multi_indices_with_sum(int total, int d) {
  detail::require(d >= 1, "dimension must be at least 1");
  std::vector<MultiIndex> out;
  if (total < d) return out;
  MultiIndex current;
  collect(total, d, current, out);
  return out;
}

std::vector<CombinationTerm> combination_terms(const SparseGridSpec& spec) {
  const int d = spec.dims();
  std::vector<CombinationTerm> terms;
  for (int j = 0; j < d; ++j) {
    const int sign = ((d - 1 + j) % 2 == 0) ? 1 : -1;
    const int coeff = sign * static_cast<int>(binomial(d - 1, j));
    for (MultiIndex& index : multi_indices_with_sum(spec.level() + j, d)) {
      std::vector<int> counts;
      for (int n : index) counts.push_back(1 << n);
      terms.push_back({coeff, std::move(index), FullGridSpec(std::move(counts))});
    }
  }
  return terms;
}

std::vector<DyadicKey> sparse_grid_points(const SparseGridSpec& spec) {
  const int d = spec.dims();
  if (static_cast<std::uint64_t>(sparse_grid_count_formula(spec)) > kMaxSparseGrid) {
    throw InvalidArgument("sparse grid exceeds 2^24 points");
  }
  std::vector<DyadicKey> keys;
  for (const MultiIndex& index : multi_indices_with_sum(spec.level() + d - 1, d)) {
    std::vector<int> counts;
    for (int n : index) counts.push_back(1 << n);
    for_each_index(counts, [&](std::span<const std::uint64_t> node) {
      keys.push_back(DyadicKey::from_node(node, index));
    });
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::int64_t sparse_grid_count_formula(const SparseGridSpec& spec) {
  const int d = spec.dims();
  std::int64_t total = 0;
  for (int j = 0; j < d; ++j) {
    std::int64_t level_sum = 0;
    for (const MultiIndex& index : multi_indices_with_sum(spec.level() + j, d)) {
      std::int64_t size = 1;
      for (int n : index) size <<= n;
      level_sum += size;
    }
    total += ((j % 2 == 0) ? 1 : -1) * binomial(d - 1, j) * level_sum;
  }
  return ((d - 1) % 2 == 0) ? total : -total;
}

}  // namespace torusqi
