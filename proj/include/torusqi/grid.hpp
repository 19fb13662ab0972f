#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace torusqi {

using MultiIndex = std::vector<int>;

/// Flat storage for points on the d-torus, one row per point.
class PointSet {
 public:
  explicit PointSet(int dims) : dims_(dims) {}
  PointSet(int dims, std::vector<double> coords);

  int dims() const { return dims_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dims_); }
  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dims_), static_cast<std::size_t>(dims_)};
  }
  void push_back(std::span<const double> point);
  const std::vector<double>& raw() const { return coords_; }

 private:
  int dims_;
  std::vector<double> coords_;
};

/// Tensor grid with counts[r] equispaced nodes 2 pi j / counts[r] per dimension.
class FullGridSpec {
 public:
  explicit FullGridSpec(std::vector<int> counts);

  int dims() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& counts() const { return counts_; }
  std::int64_t size() const;
  double spacing(int r) const;

 private:
  std::vector<int> counts_;
};

/// Level-l dyadic sparse grid on the d-torus.
class SparseGridSpec {
 public:
  SparseGridSpec(int level, int dims);

  int level() const { return level_; }
  int dims() const { return dims_; }

 private:
  int level_;
  int dims_;
};

struct CombinationTerm {
  int coeff;
  MultiIndex index;
  FullGridSpec grid;  // 2^{index[r]} points per dimension
};

/// Node 2 pi numerator / 2^level of one coordinate, in lowest terms.
struct DyadicCoord {
  std::uint64_t numerator = 0;
  int level = 0;
  auto operator<=>(const DyadicCoord&) const = default;
};

/// Canonical label of a dyadic grid node on the torus.
struct DyadicKey {
  std::vector<DyadicCoord> coords;

  /// Key of node `index` on the grid with 2^{levels[r]} points per dimension.
  static DyadicKey from_node(std::span<const std::uint64_t> index, std::span<const int> levels);
  std::vector<double> point() const;
  auto operator<=>(const DyadicKey&) const = default;
};

/// All nodes of `spec` in lexicographic order of the index tuple.
PointSet full_grid_nodes(const FullGridSpec& spec);

/// All N with N_r >= 1 and sum N_r = total, in lexicographic order.
std::vector<MultiIndex> multi_indices_with_sum(int total, int d);

/// Signed component grids of the combination technique.
std::vector<CombinationTerm> combination_terms(const SparseGridSpec& spec);

/// Deduplicated union of the grids with |N| = level + d - 1, sorted.
std::vector<DyadicKey> sparse_grid_points(const SparseGridSpec& spec);

/// Closed-form point count of the sparse grid.
std::int64_t sparse_grid_count_formula(const SparseGridSpec& spec);

/// Calls visit(index) for every index tuple of `counts`, last index fastest.
template <class Visit>
void for_each_index(std::span<const int> counts, Visit&& visit) {
  std::vector<std::uint64_t> index(counts.size(), 0);
  for (int c : counts) {
    if (c <= 0) return;
  }
  while (true) {
    visit(std::span<const std::uint64_t>(index));
    std::size_t r = counts.size();
    while (r > 0) {
      --r;
      if (++index[r] < static_cast<std::uint64_t>(counts[r])) break;
      index[r] = 0;
      if (r == 0) return;
    }
    if (counts.empty()) return;
  }
}

}  // namespace torusqi
