#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "torusqi/analysis.hpp"
#include "torusqi/kernel.hpp"

namespace torusqi {

enum class Subcommand { table1, conv2d, sparse, strangfix, kernel };

struct RunConfig {
  Subcommand subcommand = Subcommand::table1;
  int p = 6;
  std::vector<int> m_list;
  std::vector<double> gammas;
  int nmin = 32;
  int nmax = 512;
  int dims = 1;
  int level_min = 5;
  int level_max = 10;
  double c = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out = ".";
};

/// Defaults for each subcommand before flags are applied.
RunConfig default_config(Subcommand sub);

/// nmin, 2 nmin, ..., nmax; nmax / nmin must be a power of two.
std::vector<int> doubling_range(int nmin, int nmax);

/// Full-grid errors of G_p on T^d (absolute norms) for each N, with rates.
std::vector<ConvergenceRow> full_grid_convergence(int p, int dims, int m, double gamma,
                                                  std::span<const int> ns);

struct ConvergenceTable {
  int m = 0;
  double gamma = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// Published Gaussian-kernel L-infinity errors and rates for g_6, N = 32..512.
struct ReferenceTable1 {
  static constexpr std::array<int, 5> n = {32, 64, 128, 256, 512};
  static constexpr std::array<std::array<double, 5>, 3> err = {{
      {7.057e-03, 1.894e-03, 4.824e-04, 1.212e-04, 3.034e-05},
      {1.360e-03, 1.043e-04, 6.869e-06, 4.350e-07, 2.778e-08},
      {6.334e-04, 1.485e-05, 2.563e-07, 4.105e-09, 6.453e-11},
  }};
  static constexpr std::array<std::array<double, 4>, 3> rate = {{
      {1.90, 1.97, 1.99, 2.00},
      {3.71, 3.92, 3.98, 3.97},
      {5.41, 5.86, 5.96, 5.99},
  }};
};

struct GammaMatch {
  double gamma = 0.0;
  bool rates_ok = false;           // every rate within rate_tol of the reference
  double max_rate_dev = 0.0;
  double max_log10_ratio = 0.0;    // max |log10(err / reference err)|
};

struct Table1Result {
  std::vector<ConvergenceTable> tables;
  std::vector<GammaMatch> matches;
  std::optional<double> best_gamma;
};

/// Tables per (m, gamma). Comparison with the reference table is made only when
/// p = 6, the m lie in {0,1,2} and N = 32..512.
Table1Result run_table1(const RunConfig& cfg, double rate_tol = 0.3);
std::vector<ConvergenceTable> run_conv2d(const RunConfig& cfg);

struct SparseRow {
  int level = 0;
  std::int64_t points = 0;
  double rel_linf = 0.0;
  double rel_l2 = 0.0;
};

struct SparseTable {
  int m = 0;
  double gamma = 0.0;
  std::vector<SparseRow> rows;
};

std::vector<SparseTable> run_sparse(const RunConfig& cfg);
std::vector<StrangFixReport> run_strangfix(const RunConfig& cfg);

struct KernelDump {
  int m = 0;
  double c = 0.0;
  std::vector<std::pair<double, double>> profile;  // (alpha, psi)
  std::vector<int> ells;
  std::vector<double> coeff_analytic;
  std::vector<double> coeff_quadrature;
};

std::vector<KernelDump> run_kernel_dump(const RunConfig& cfg);

/// Writers; file names are derived from (m, gamma) or (m, c). Each returns
/// the paths written.
std::string convergence_csv(const ConvergenceTable& table);
std::vector<std::filesystem::path> write_table1(const Table1Result& r, const RunConfig& cfg);
std::vector<std::filesystem::path> write_conv2d(const std::vector<ConvergenceTable>& t,
                                                const RunConfig& cfg);
std::vector<std::filesystem::path> write_sparse(const std::vector<SparseTable>& t,
                                                const RunConfig& cfg);
std::vector<std::filesystem::path> write_strangfix(const std::vector<StrangFixReport>& r,
                                                   const RunConfig& cfg);
std::vector<std::filesystem::path> write_kernel_dump(const std::vector<KernelDump>& d,
                                                     const RunConfig& cfg);

}  // namespace torusqi
