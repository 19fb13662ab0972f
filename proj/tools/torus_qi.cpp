#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "torusqi/bench.hpp"
#include "torusqi/error.hpp"

namespace {

using torusqi::RunConfig;
using torusqi::Subcommand;

struct Flags {
  int p = 0;
  std::vector<int> m;
  std::vector<double> gamma;
  int nmin = 0;
  int nmax = 0;
  int dims = 0;
  std::string levels;
  std::string seed;
  std::string out;
  double c = 0.0;
};

struct Registered {
  Subcommand sub;
  CLI::App* app;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--p", f.p, "smoothness index of the test function");
  sub->add_option("--m", f.m, "comma list of Laguerre indices")->delimiter(',');
  sub->add_option("--gamma", f.gamma, "comma list of shape factors, c = gamma 2 pi / N")->delimiter(',');
  sub->add_option("--nmin", f.nmin, "smallest grid size");
  sub->add_option("--nmax", f.nmax, "largest grid size (nmin times a power of two)");
  sub->add_option("--dims", f.dims, "torus dimension");
  sub->add_option("--levels", f.levels, "sparse level range A..B");
  sub->add_option("--seed", f.seed, "hex seed of the evaluation points");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--c", f.c, "kernel shape for the kernel dump");
}

std::uint64_t parse_hex(const std::string& s) {
  std::string body = s;
  if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
  if (body.empty() || body.size() > 16 || body.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw torusqi::InvalidArgument("--seed must be a hexadecimal 64-bit integer");
  }
  return std::stoull(body, nullptr, 16);
}

void parse_levels(const std::string& s, RunConfig& cfg) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw torusqi::InvalidArgument("--levels must look like A..B");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = s.substr(0, dots);
    const std::string b = s.substr(dots + 2);
    cfg.level_min = std::stoi(a, &used_a);
    cfg.level_max = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw torusqi::InvalidArgument("--levels must look like A..B");
  }
}

RunConfig make_config(Subcommand sub, const CLI::App& app, const Flags& f) {
  RunConfig cfg = torusqi::default_config(sub);
  if (app.count("--p")) cfg.p = f.p;
  if (app.count("--m")) cfg.m_list = f.m;
  if (app.count("--gamma")) cfg.gammas = f.gamma;
  if (app.count("--nmin")) cfg.nmin = f.nmin;
  if (app.count("--nmax")) cfg.nmax = f.nmax;
  if (app.count("--dims")) cfg.dims = f.dims;
  if (app.count("--levels")) parse_levels(f.levels, cfg);
  if (app.count("--seed")) cfg.seed = parse_hex(f.seed);
  if (app.count("--out")) cfg.out = f.out;
  if (app.count("--c")) cfg.c = f.c;
  return cfg;
}

void report(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::printf("wrote %s\n", p.string().c_str());
}

void run(const RunConfig& cfg) {
  switch (cfg.subcommand) {
    case Subcommand::table1: {
      const auto r = torusqi::run_table1(cfg);
      report(torusqi::write_table1(r, cfg));
      if (r.best_gamma) {
        std::printf("best gamma: %g\n", *r.best_gamma);
      } else if (!r.matches.empty()) {
        std::printf("best gamma: none within the rate tolerance\n");
      }
      break;
    }
    case Subcommand::conv2d:
      report(torusqi::write_conv2d(torusqi::run_conv2d(cfg), cfg));
      break;
    case Subcommand::sparse:
      report(torusqi::write_sparse(torusqi::run_sparse(cfg), cfg));
      break;
    case Subcommand::strangfix:
      report(torusqi::write_strangfix(torusqi::run_strangfix(cfg), cfg));
      break;
    case Subcommand::kernel:
      report(torusqi::write_kernel_dump(torusqi::run_kernel_dump(cfg), cfg));
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-interpolation on tori with restricted generalized Gaussian kernels"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<Subcommand, std::string>> names = {
      {Subcommand::table1, "table1"},       {Subcommand::conv2d, "conv2d"}, {Subcommand::sparse, "sparse"},
      {Subcommand::strangfix, "strangfix"}, {Subcommand::kernel, "kernel"},
  };
  std::vector<Registered> subs;
  for (const auto& [sub, name] : names) {
    CLI::App* s = app.add_subcommand(name);
    add_flags(s, flags);
    subs.push_back({sub, s});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const Registered& r : subs) {
      if (r.app->parsed()) run(make_config(r.sub, *r.app, flags));
    }
  } catch (const torusqi::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const torusqi::NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
