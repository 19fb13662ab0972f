#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "torusqi/bench.hpp"
#include "torusqi/error.hpp"

using namespace torusqi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("torusqi_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubling_range") {
  CHECK(doubling_range(32, 512) == std::vector<int>{32, 64, 128, 256, 512});
  CHECK(doubling_range(16, 16) == std::vector<int>{16});
  CHECK_THROWS_AS(doubling_range(32, 96), InvalidArgument);
  CHECK_THROWS_AS(doubling_range(64, 32), InvalidArgument);
}

TEST_CASE("table1 row-count contract") {
  RunConfig cfg = default_config(Subcommand::table1);
  cfg.m_list = {0};
  cfg.gammas = {1.0};
  cfg.nmin = 32;
  cfg.nmax = 64;
  const Table1Result r = run_table1(cfg);
  REQUIRE(r.tables.size() == 1);
  REQUIRE(r.tables[0].rows.size() == 2);
  CHECK(!r.tables[0].rows[0].rate_linf.has_value());
  CHECK(r.tables[0].rows[1].rate_linf.has_value());
  CHECK(r.matches.empty());
}

TEST_CASE("table1 output is deterministic") {
  RunConfig cfg = default_config(Subcommand::table1);
  cfg.out = scratch("det_a");
  const auto a = write_table1(run_table1(cfg), cfg);
  RunConfig cfg2 = cfg;
  cfg2.out = scratch("det_b");
  const auto b = write_table1(run_table1(cfg2), cfg2);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 13);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].filename() == b[i].filename());
    CHECK(slurp(a[i]) == slurp(b[i]));
  }
  const std::string first = slurp(a[0]);
  CHECK(first.rfind("N,h,gamma,err_linf,rate_linf,err_l2,rate_l2\n", 0) == 0);
  CHECK(first.find("3.20000000000e+01") == std::string::npos);
  CHECK(first.find("\n32,") != std::string::npos);
  fs::remove_all(cfg.out);
  fs::remove_all(cfg2.out);
}

TEST_CASE("table1 picks a best gamma") {
  const Table1Result r = run_table1(default_config(Subcommand::table1));
  REQUIRE(r.best_gamma.has_value());
  CHECK(*r.best_gamma == 1.5);
  CHECK(r.matches.size() == 4);
}

TEST_CASE("kernel dump integrates to the zeroth coefficient") {
  RunConfig cfg = default_config(Subcommand::kernel);
  cfg.out = scratch("kernel");
  const auto dumps = run_kernel_dump(cfg);
  REQUIRE(dumps.size() == 1);
  const KernelDump& d = dumps[0];
  double integral = 0.0;
  for (const auto& [a, v] : d.profile) integral += v;
  integral *= 2.0 * std::numbers::pi / static_cast<double>(d.profile.size());
  CHECK(std::abs(integral - d.coeff_analytic[0]) <= 1e-9);
  for (std::size_t i = 0; i < d.ells.size(); ++i) {
    CHECK(std::abs(d.coeff_analytic[i] - d.coeff_quadrature[i]) <= 1e-12);
  }
  const auto paths = write_kernel_dump(dumps, cfg);
  REQUIRE(paths.size() == 2);
  CHECK(slurp(paths[0]).rfind("alpha psi\n", 0) == 0);
  CHECK(slurp(paths[1]).rfind("ell psi_hat psi_hat_quadrature\n", 0) == 0);
  fs::remove_all(cfg.out);
}

TEST_CASE("strangfix and sparse writers") {
  RunConfig cfg = default_config(Subcommand::strangfix);
  cfg.out = scratch("sf");
  const auto reports = run_strangfix(cfg);
  CHECK(reports.size() == 3);
  const std::string csv = slurp(write_strangfix(reports, cfg).at(0));
  CHECK(csv.rfind("m,gamma,ell,order,saturation_max,aliasing_max\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);

  RunConfig sp = default_config(Subcommand::sparse);
  sp.out = cfg.out;
  sp.level_min = 2;
  sp.level_max = 4;
  sp.m_list = {0};
  const auto tables = run_sparse(sp);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].rows.size() == 3);
  CHECK(tables[0].rows[0].points == 32);
  const std::string dat = slurp(write_sparse(tables, sp).at(0));
  CHECK(dat.rfind("level points rel_linf rel_l2\n", 0) == 0);
  fs::remove_all(cfg.out);
}

TEST_CASE("config validation") {
  RunConfig cfg = default_config(Subcommand::conv2d);
  cfg.m_list = {9};
  CHECK_THROWS_AS(run_conv2d(cfg), UnsupportedOrder);
  cfg = default_config(Subcommand::conv2d);
  cfg.gammas = {};
  CHECK_THROWS_AS(run_conv2d(cfg), InvalidArgument);
  cfg = default_config(Subcommand::sparse);
  cfg.level_min = 4;
  cfg.level_max = 3;
  CHECK_THROWS_AS(run_sparse(cfg), InvalidArgument);
  cfg = default_config(Subcommand::sparse);
  cfg.dims = 1;
  CHECK_THROWS_AS(run_sparse(cfg), InvalidArgument);
}
