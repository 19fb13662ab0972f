#include "torusqi/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "torusqi/error.hpp"
#include "torusqi/grid.hpp"
#include "torusqi/qi.hpp"

namespace torusqi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProfileSamples = 4096;
constexpr int kCoeffMaxEll = 64;
constexpr int kCoeffNodes = 4096;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::filesystem::path write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(cfg.out);
  const std::filesystem::path path = cfg.out / name;
  std::ofstream os(path, std::ios::binary);
  os << body;
  if (!os) throw Error("cannot write " + path.string());
  return path;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void fill_rates(std::vector<ConvergenceRow>& rows) {
  std::vector<std::pair<int, double>> linf;
  std::vector<std::pair<int, double>> l2;
  for (const ConvergenceRow& r : rows) {
    linf.emplace_back(r.n, r.err_linf);
    l2.emplace_back(r.n, r.err_l2);
  }
  const auto a = convergence_rates(linf);
  const auto b = convergence_rates(l2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate_linf = a[i];
    rows[i].rate_l2 = b[i];
  }
}

void validate(const RunConfig& cfg) {
  detail::require(cfg.p >= 1, "--p must be positive");
  detail::require(!cfg.m_list.empty(), "--m must list at least one index");
  detail::require(!cfg.gammas.empty(), "--gamma must list at least one value");
  for (int m : cfg.m_list) {
    if (m < 0 || m > kMaxKernelOrder) throw UnsupportedOrder("kernel index m must lie in [0, 8]");
  }
  for (double g : cfg.gammas) detail::require(g > 0.0 && g <= 8.0, "gamma must lie in (0, 8]");
}

}  // namespace

RunConfig default_config(Subcommand sub) {
  RunConfig cfg;
  cfg.subcommand = sub;
  switch (sub) {
    case Subcommand::table1:
      cfg.m_list = {0, 1, 2};
      cfg.gammas = {0.6, 0.8, 1.0, 1.5};
      cfg.nmin = 32;
      cfg.nmax = 512;
      cfg.dims = 1;
      break;
    case Subcommand::conv2d:
      cfg.m_list = {0, 1, 2};
      cfg.gammas = {1.5};
      cfg.nmin = 16;
      cfg.nmax = 256;
      cfg.dims = 2;
      break;
    case Subcommand::sparse:
      cfg.m_list = {2};
      cfg.gammas = {1.0};
      cfg.dims = 3;
      cfg.level_min = 5;
      cfg.level_max = 10;
      break;
    case Subcommand::strangfix:
      cfg.m_list = {0, 1, 2};
      // c = 0.1 at N = 64
      cfg.gammas = {0.1 * 64.0 / kTwoPi};
      cfg.nmin = 64;
      cfg.nmax = 512;
      break;
    case Subcommand::kernel:
      cfg.m_list = {0};
      cfg.gammas = {1.0};
      cfg.c = 1.0;
      break;
  }
  return cfg;
}

std::vector<int> doubling_range(int nmin, int nmax) {
  detail::require(nmin >= 1 && nmax >= nmin, "need 1 <= nmin <= nmax");
  std::vector<int> ns;
  long long n = nmin;
  for (; n < nmax; n *= 2) ns.push_back(static_cast<int>(n));
  detail::require(n == nmax, "nmax / nmin must be a power of two");
  ns.push_back(nmax);
  return ns;
}

std::vector<ConvergenceRow> full_grid_convergence(int p, int dims, int m, double gamma,
                                                  std::span<const int> ns) {
  const TestFunctionGp tf = make_gp(p, dims);
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    const QuasiInterpolant q = build_full(f, n, dims, m, gamma);
    const PointSet pts = benchmark_eval_points(n, dims, kDefaultSeed);
    std::vector<double> ref(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ref[i] = f(pts[i]);
    const std::vector<double> app = q.evaluate(pts);
    const ErrorNorms e = error_norms(ref, app, dims, max_abs(ref));
    ConvergenceRow row;
    row.n = n;
    row.err_linf = e.err_linf;
    row.err_l2 = e.err_l2;
    rows.push_back(row);
  }
  fill_rates(rows);
  return rows;
}

Table1Result run_table1(const RunConfig& cfg, double rate_tol) {
  validate(cfg);
  const std::vector<int> ns = doubling_range(cfg.nmin, cfg.nmax);
  Table1Result result;
  for (double g : cfg.gammas) {
    for (int m : cfg.m_list) result.tables.push_back({m, g, full_grid_convergence(cfg.p, 1, m, g, ns)});
  }

  const bool comparable =
      cfg.p == 6 && std::equal(ns.begin(), ns.end(), ReferenceTable1::n.begin(), ReferenceTable1::n.end()) &&
      std::all_of(cfg.m_list.begin(), cfg.m_list.end(), [](int m) { return m <= 2; });
  if (!comparable) return result;

  for (double g : cfg.gammas) {
    GammaMatch match{g, true, 0.0, 0.0};
    for (const ConvergenceTable& t : result.tables) {
      if (t.gamma != g) continue;
      const auto mi = static_cast<std::size_t>(t.m);
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double ratio = t.rows[i].err_linf / ReferenceTable1::err[mi][i];
        match.max_log10_ratio = std::max(match.max_log10_ratio, std::abs(std::log10(ratio)));
        if (i > 0) {
          const double dev = std::abs(*t.rows[i].rate_linf - ReferenceTable1::rate[mi][i - 1]);
          match.max_rate_dev = std::max(match.max_rate_dev, dev);
        }
      }
    }
    match.rates_ok = match.max_rate_dev <= rate_tol;
    result.matches.push_back(match);
  }
  for (const GammaMatch& gm : result.matches) {
    if (!gm.rates_ok) continue;
    if (!result.best_gamma) {
      result.best_gamma = gm.gamma;
      continue;
    }
    const auto best = std::find_if(result.matches.begin(), result.matches.end(),
                                   [&](const GammaMatch& x) { return x.gamma == *result.best_gamma; });
    if (gm.max_log10_ratio < best->max_log10_ratio) result.best_gamma = gm.gamma;
  }
  return result;
}

std::vector<ConvergenceTable> run_conv2d(const RunConfig& cfg) {
  validate(cfg);
  detail::require(cfg.dims >= 1 && cfg.dims <= 3, "--dims must lie in [1, 3] for full grids");
  const std::vector<int> ns = doubling_range(cfg.nmin, cfg.nmax);
  std::vector<ConvergenceTable> out;
  for (double g : cfg.gammas) {
    for (int m : cfg.m_list) out.push_back({m, g, full_grid_convergence(cfg.p, cfg.dims, m, g, ns)});
  }
  return out;
}

std::vector<SparseTable> run_sparse(const RunConfig& cfg) {
  validate(cfg);
  detail::require(cfg.dims >= 2, "--dims must be at least 2 for sparse grids");
  detail::require(cfg.level_min >= 1 && cfg.level_max >= cfg.level_min, "invalid --levels range");
  const TestFunctionGp tf = make_gp(cfg.p, cfg.dims);
  const SampleFunction f = [&tf](std::span<const double> x) { return gp_tensor_eval(tf, x); };
  const PointSet pts = random_eval_points(cfg.dims, 8192, cfg.seed);
  std::vector<double> ref(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) ref[i] = f(pts[i]);
  const double scale = max_abs(ref);

  std::vector<SparseTable> out;
  for (double g : cfg.gammas) {
    for (int m : cfg.m_list) {
      SparseTable table{m, g, {}};
      for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
        const SparseGridSpec spec(level, cfg.dims);
        const SparseQuasiInterpolant q = build_sparse(f, spec, m, g);
        const ErrorNorms e = error_norms(ref, q.evaluate(pts), cfg.dims, scale);
        table.rows.push_back({level, static_cast<std::int64_t>(q.sample_store().size()), e.rel_linf, e.rel_l2});
      }
      out.push_back(std::move(table));
    }
  }
  return out;
}

std::vector<StrangFixReport> run_strangfix(const RunConfig& cfg) {
  validate(cfg);
  const std::vector<int> ns = doubling_range(cfg.nmin, cfg.nmax);
  const std::vector<int> ells = {1, 2, 3};
  std::vector<StrangFixReport> out;
  for (double g : cfg.gammas) {
    for (int m : cfg.m_list) out.push_back(strang_fix_certify(m, g, ns, ells));
  }
  return out;
}

std::vector<KernelDump> run_kernel_dump(const RunConfig& cfg) {
  validate(cfg);
  std::vector<KernelDump> out;
  for (int m : cfg.m_list) {
    const KernelParams params(m, cfg.c);
    const RestrictedKernel psi(params);
    KernelDump dump{m, cfg.c, {}, {}, {}, {}};
    for (int i = 0; i < kProfileSamples; ++i) {
      const double alpha = kTwoPi * i / kProfileSamples;
      dump.profile.emplace_back(alpha, psi(alpha));
    }
    for (int ell = 0; ell <= kCoeffMaxEll; ++ell) {
      dump.ells.push_back(ell);
      dump.coeff_analytic.push_back(psi_fourier_analytic(params, ell));
      dump.coeff_quadrature.push_back(psi_fourier_quadrature(params, ell, kCoeffNodes));
    }
    out.push_back(std::move(dump));
  }
  return out;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::string s = "N,h,gamma,err_linf,rate_linf,err_l2,rate_l2\n";
  for (const ConvergenceRow& r : table.rows) {
    s += std::to_string(r.n) + "," + fmt(kTwoPi / r.n) + "," + fmt(table.gamma) + "," + fmt(r.err_linf) +
         "," + fmt_opt(r.rate_linf) + "," + fmt(r.err_l2) + "," + fmt_opt(r.rate_l2) + "\n";
  }
  return s;
}

std::vector<std::filesystem::path> write_table1(const Table1Result& r, const RunConfig& cfg) {
  std::vector<std::filesystem::path> paths;
  for (const ConvergenceTable& t : r.tables) {
    paths.push_back(write_file(cfg, "table1_p" + std::to_string(cfg.p) + "_m" + std::to_string(t.m) + "_g" +
                                        tag(t.gamma) + ".csv",
                               convergence_csv(t)));
  }
  if (!r.matches.empty()) {
    std::string s = "gamma rates_ok max_rate_dev max_log10_ratio best\n";
    for (const GammaMatch& gm : r.matches) {
      const bool best = r.best_gamma && *r.best_gamma == gm.gamma;
      s += fmt(gm.gamma) + " " + (gm.rates_ok ? "1" : "0") + " " + fmt(gm.max_rate_dev) + " " +
           fmt(gm.max_log10_ratio) + " " + (best ? "1" : "0") + "\n";
    }
    paths.push_back(write_file(cfg, "table1_summary.dat", s));
  }
  return paths;
}

std::vector<std::filesystem::path> write_conv2d(const std::vector<ConvergenceTable>& t,
                                                const RunConfig& cfg) {
  std::vector<std::filesystem::path> paths;
  for (const ConvergenceTable& table : t) {
    const std::string stem = "conv" + std::to_string(cfg.dims) + "d_p" + std::to_string(cfg.p) + "_m" +
                             std::to_string(table.m) + "_g" + tag(table.gamma);
    paths.push_back(write_file(cfg, stem + ".csv", convergence_csv(table)));
    std::string dat = "N err_linf err_l2\n";
    for (const ConvergenceRow& r : table.rows) {
      dat += std::to_string(r.n) + " " + fmt(r.err_linf) + " " + fmt(r.err_l2) + "\n";
    }
    paths.push_back(write_file(cfg, stem + ".dat", dat));
  }
  return paths;
}

std::vector<std::filesystem::path> write_sparse(const std::vector<SparseTable>& t,
                                                const RunConfig& cfg) {
  std::vector<std::filesystem::path> paths;
  for (const SparseTable& table : t) {
    std::string s = "level points rel_linf rel_l2\n";
    for (const SparseRow& r : table.rows) {
      s += std::to_string(r.level) + " " + std::to_string(r.points) + " " + fmt(r.rel_linf) + " " +
           fmt(r.rel_l2) + "\n";
    }
    paths.push_back(write_file(cfg, "sparse_d" + std::to_string(cfg.dims) + "_p" + std::to_string(cfg.p) +
                                        "_m" + std::to_string(table.m) + "_g" + tag(table.gamma) + ".dat",
                               s));
  }
  return paths;
}

std::vector<std::filesystem::path> write_strangfix(const std::vector<StrangFixReport>& r,
                                                   const RunConfig& cfg) {
  std::string s = "m,gamma,ell,order,saturation_max,aliasing_max\n";
  for (const StrangFixReport& rep : r) {
    for (std::size_t i = 0; i < rep.ells.size(); ++i) {
      s += std::to_string(rep.m) + "," + fmt(rep.gamma) + "," + std::to_string(rep.ells[i]) + "," +
           fmt(rep.orders[i]) + "," + fmt(rep.saturation_max) + "," + fmt(rep.aliasing_max) + "\n";
    }
  }
  return {write_file(cfg, "strangfix.csv", s)};
}

std::vector<std::filesystem::path> write_kernel_dump(const std::vector<KernelDump>& d,
                                                     const RunConfig& cfg) {
  std::vector<std::filesystem::path> paths;
  for (const KernelDump& k : d) {
    const std::string stem = "_m" + std::to_string(k.m) + "_c" + tag(k.c) + ".dat";
    std::string prof = "alpha psi\n";
    for (const auto& [a, v] : k.profile) prof += fmt(a) + " " + fmt(v) + "\n";
    paths.push_back(write_file(cfg, "kernel_profile" + stem, prof));
    std::string coef = "ell psi_hat psi_hat_quadrature\n";
    for (std::size_t i = 0; i < k.ells.size(); ++i) {
      coef += std::to_string(k.ells[i]) + " " + fmt(k.coeff_analytic[i]) + " " + fmt(k.coeff_quadrature[i]) + "\n";
    }
    paths.push_back(write_file(cfg, "kernel_coeffs" + stem, coef));
  }
  return paths;
}

}  // namespace torusqi
