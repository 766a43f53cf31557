#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stovex/asymptotics.hpp"
#include "stovex/csv.hpp"
#include "stovex/errors.hpp"
#include "stovex/lattice.hpp"
#include "stovex/model.hpp"
#include "stovex/particles.hpp"
#include "stovex/rng.hpp"
#include "stovex/tracy_widom.hpp"
#include "stovex/verification.hpp"
#include "stovex_cli/config.hpp"
#include "stovex_cli/svg.hpp"

namespace {

using namespace stovex;
using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumeric = 3;

struct Weights {
  double b1 = 0.6;
  double b2 = 0.2;
  ModelParams params() const { return validate_params(b1, b2); }
};

void add_weights(CLI::App* cmd, Weights& w) {
  cmd->add_option("--b1", w.b1, "stay weight b1")->capture_default_str();
  cmd->add_option("--b2", w.b2, "stay weight b2 (< b1)")->capture_default_str();
}

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "random seed")->capture_default_str();
}

std::string fmt(double v) { return format_real(v); }

void write_json(const ordered_json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) fail(Errc::IoError, "write failed for " + path);
}

std::vector<std::pair<double, double>> parse_grid(const std::string& text) {
  std::vector<std::pair<double, double>> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(Errc::InvalidArgument, "grid item needs x:y: " + item);
    try {
      grid.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      fail(Errc::InvalidArgument, "bad grid item: " + item);
    }
  }
  if (grid.empty()) fail(Errc::InvalidArgument, "empty grid");
  return grid;
}

struct Global {
  int threads = 0;
  std::string config;
};

// --- params ---------------------------------------------------------------

struct ParamsCmd {
  Weights w;
  double nu = 0.0;
};

int run_params(const ParamsCmd& c) {
  const ModelParams p = c.w.params();
  std::printf("tau=%.6g\nkappa=%.6g\n", p.tau(), p.kappa());
  if (c.nu > 0.0) {
    std::printf("m=%.6g\n", current_lln(c.nu, p));
    if (in_liquid_region(c.nu, p)) {
      std::printf("sigma=%.6g\nrho=%.6g\n", current_scale(c.nu, p), critical_point(c.nu, p).rho);
    }
  }
  return 0;
}

// --- sample-lattice / height ------------------------------------------------

struct LatticeCmd {
  Weights w;
  int X = 20;
  int Y = 20;
  std::uint64_t seed = kDefaultSeed;
  std::string order = "antidiagonal";
  std::string out;
  std::string svg;
};

LatticeConfig sample(const LatticeCmd& c) {
  const ModelParams p = c.w.params();
  if (c.order != "antidiagonal" && c.order != "rowmajor") {
    fail(Errc::InvalidArgument, "order must be antidiagonal or rowmajor");
  }
  return sample_configuration(p, c.X, c.Y, c.seed,
                              c.order == "rowmajor" ? SamplingOrder::RowMajor
                                                    : SamplingOrder::AntiDiagonal);
}

std::vector<std::vector<double>> height_grid(const LatticeConfig& cfg) {
  std::vector<std::vector<double>> h(static_cast<std::size_t>(cfg.height()));
  for (int y = 1; y <= cfg.height(); ++y) {
    for (int x = 1; x <= cfg.width(); ++x) {
      h[static_cast<std::size_t>(y - 1)].push_back(height_function(cfg, x, y));
    }
  }
  return h;
}

int run_sample_lattice(const LatticeCmd& c) {
  const LatticeConfig cfg = sample(c);
  const ValidationReport rep = validate_configuration(cfg);
  std::printf("lattice %dx%d seed=%llu valid=%s\n", c.X, c.Y,
              static_cast<unsigned long long>(c.seed), rep.ok ? "yes" : "no");
  if (!rep.ok) {
    std::fprintf(stderr, "invalid configuration: %s\n", rep.first_violation.c_str());
    return kExitVerification;
  }
  if (!c.out.empty()) {
    CsvTable t({"x", "y", "vertex"}, {c.w.b1, c.w.b2, c.seed});
    for (int y = 1; y <= c.Y; ++y) {
      for (int x = 1; x <= c.X; ++x) {
        t.add_row({std::int64_t{x}, std::int64_t{y}, std::string(label(cfg.at(x, y)))});
      }
    }
    t.write_file(c.out);
  }
  if (!c.svg.empty()) {
    cli::write_heatmap_svg(height_grid(cfg), {"height function H(x,y)", "x", "y"}, c.svg);
  }
  return 0;
}

struct HeightCmd {
  LatticeCmd lattice;
  double x = -1.0;
  double y = -1.0;
};

int run_height(const HeightCmd& c) {
  const LatticeConfig cfg = sample(c.lattice);
  if (c.x >= 0.0 && c.y >= 0.0) std::printf("H=%d\n", height_function(cfg, c.x, c.y));
  if (!c.lattice.out.empty()) {
    CsvTable t({"x", "y", "H"}, {c.lattice.w.b1, c.lattice.w.b2, c.lattice.seed});
    for (int y = 0; y <= cfg.height(); ++y) {
      for (int x = 0; x <= cfg.width(); ++x) {
        t.add_row({std::int64_t{x}, std::int64_t{y}, std::int64_t{height_function(cfg, x, y)}});
      }
    }
    t.write_file(c.lattice.out);
  }
  if (!c.lattice.svg.empty()) {
    cli::write_heatmap_svg(height_grid(cfg), {"height function H(x,y)", "x", "y"},
                           c.lattice.svg);
  }
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct SimulateCmd {
  Weights w;
  int t = 10;
  int x_max = 10;
  std::uint64_t seed = kDefaultSeed;
  std::string mode = "particle";
  std::string out;
};

int run_simulate(const SimulateCmd& c) {
  const ModelParams p = c.w.params();
  if (c.t < 0 || c.x_max < 1) fail(Errc::InvalidArgument, "need t >= 0 and x-max >= 1");
  if (c.mode != "particle" && c.mode != "site") fail(Errc::InvalidArgument, "mode: particle|site");
  const StepRandomness rng{c.seed, c.mode == "site" ? RandomnessMode::SiteKeyed
                                                    : RandomnessMode::ParticleKeyed};
  CsvTable traj({"t", "index", "position"}, {c.w.b1, c.w.b2, c.seed});
  ParticleState s = ParticleState::init_step(c.x_max + c.t);
  auto record = [&] {
    for (int i = 0; i < s.exact_count(); ++i) {
      const int x = s.positions()[static_cast<std::size_t>(i)];
      if (x > c.x_max) break;
      traj.add_row({std::int64_t{s.time()}, std::int64_t{i + 1}, std::int64_t{x}});
    }
  };
  record();
  for (int done = 1; done <= c.t; ++done) {
    step_in_place(s, p, rng);
    s.truncate(c.x_max + c.t - done);
    record();
  }
  std::printf("t=%d N_%d=%d\n", c.t, c.x_max, s.count_left(c.x_max));
  if (!c.out.empty()) traj.write_file(c.out);
  return 0;
}

// --- limit-shape ------------------------------------------------------------

struct LimitCmd {
  Weights w;
  double x = 1.0;
  double y = 1.0;
  int n = 0;
  std::string out;
  std::string svg;
};

int run_limit_shape(const LimitCmd& c) {
  const ModelParams p = c.w.params();
  std::printf("H=%.6g\n", limit_shape_height(c.x, c.y, p));
  if (in_liquid_region(c.x / c.y, p)) {
    std::printf("fluctuation_scale=%.6g\n", fluctuation_scale_xy(c.x, c.y, p));
  }
  if (c.n > 0 && (!c.out.empty() || !c.svg.empty())) {
    CsvTable t({"x", "y", "H"}, {c.w.b1, c.w.b2, 0});
    std::vector<std::vector<double>> grid;
    for (int j = 1; j <= c.n; ++j) {
      grid.emplace_back();
      for (int i = 1; i <= c.n; ++i) {
        const double x = c.x * i / c.n, y = c.y * j / c.n;
        const double h = limit_shape_height(x, y, p);
        t.add_row({x, y, h});
        grid.back().push_back(h);
      }
    }
    if (!c.out.empty()) t.write_file(c.out);
    if (!c.svg.empty()) cli::write_heatmap_svg(grid, {"limit shape", "x", "y"}, c.svg);
  }
  return 0;
}

// --- verify -----------------------------------------------------------------

struct VerifyCmd {
  Weights w;
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  int samples = 100000;
  std::string out;
};

int run_verify(const VerifyCmd& c, int threads) {
  const ModelParams p = c.w.params();
  const std::vector<std::string> known{"stochasticity", "bethe", "transition", "marginal",
                                       "identities", "mu-k", "fredholm", "routes",
                                       "equivalence", "all"};
  if (std::find(known.begin(), known.end(), c.suite) == known.end()) {
    fail(Errc::InvalidArgument, "unknown suite " + c.suite);
  }
  auto want = [&](const char* s) { return c.suite == "all" || c.suite == s; };
  CheckList checks;
  auto append = [&](CheckList l) { checks.insert(checks.end(), l.begin(), l.end()); };
  if (want("stochasticity")) append(verify_stochasticity(p));
  if (want("bethe")) append(verify_bethe(p, c.seed));
  if (want("transition")) append(verify_transition(p));
  if (want("marginal")) append(verify_marginal(p));
  if (want("identities")) append(verify_identities(c.seed));
  if (want("mu-k")) append(verify_mu_k(p));
  if (want("fredholm")) append(verify_fredholm(p, threads));
  if (want("routes")) append(verify_observable_routes(p, c.samples, c.seed, threads));
  if (want("equivalence")) append(verify_model_equivalence(p, c.seed));

  CsvTable t({"check", "value", "tolerance", "pass"}, {c.w.b1, c.w.b2, c.seed});
  for (const CheckResult& r : checks) {
    std::printf("%s %-36s %-12.4g tol=%-8.2g %s\n", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                r.value, r.tolerance, r.detail.c_str());
    t.add_row({r.name, r.value, r.tolerance, std::int64_t{r.passed()}});
  }
  if (!c.out.empty()) t.write_file(c.out);
  return all_passed(checks) ? 0 : kExitVerification;
}

// --- tracy-widom ------------------------------------------------------------

struct TwCmd {
  double lo = -10.0;
  double hi = 6.0;
  int points = 801;
  int nodes = 48;
  std::string out;
  std::string svg;
};

int run_tracy_widom(const TwCmd& c, int threads) {
  const TwTable tw = tw_table(c.lo, c.hi, c.points, c.nodes, threads);
  std::printf("mean=%.6f\nvariance=%.6f\nmax_doubling=%.3g\n", tw.mean(), tw.variance(),
              tw.max_doubling);
  if (!c.out.empty()) {
    std::ofstream out(c.out, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open " + c.out);
    out << "s,F_GUE(s)\n";
    for (std::size_t i = 0; i < tw.s.size(); ++i) out << fmt(tw.s[i]) << ',' << fmt(tw.F[i]) << '\n';
    if (!out) fail(Errc::IoError, "write failed for " + c.out);
  }
  if (!c.svg.empty()) {
    cli::write_series_svg({{"F_GUE", tw.s, tw.F, false}}, {"GUE Tracy-Widom CDF", "s", "F"}, c.svg);
  }
  return 0;
}

// --- experiments ------------------------------------------------------------

struct LlnCmd {
  Weights w;
  int L = 1000;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string grid = "0.25:1,1:1,1.5:1,3:1";
  std::string out;
  std::string json;
};

int run_lln(const LlnCmd& c, int threads) {
  const ModelParams p = c.w.params();
  const LlnResult r = lln_experiment(p, c.L, parse_grid(c.grid), c.samples, c.seed, threads);
  CsvTable t({"x", "y", "mean", "stddev", "limit", "deviation", "L", "samples"},
             {c.w.b1, c.w.b2, c.seed});
  ordered_json j{{"L", c.L}, {"S", c.samples}, {"b1", c.w.b1}, {"b2", c.w.b2}, {"seed", c.seed}};
  j["points"] = ordered_json::array();
  for (const LlnPoint& pt : r.points) {
    t.add_row({pt.x, pt.y, pt.mean, pt.stddev, pt.limit, pt.deviation(), std::int64_t{c.L},
               std::int64_t{c.samples}});
    j["points"].push_back({{"x", pt.x}, {"y", pt.y}, {"mean", pt.mean}, {"stddev", pt.stddev},
                           {"limit", pt.limit}, {"deviation", pt.deviation()}});
  }
  std::cout << j.dump(2) << '\n';
  if (!c.out.empty()) t.write_file(c.out);
  if (!c.json.empty()) write_json(j, c.json);
  return 0;
}

struct FluctCmd {
  Weights w;
  double nu = 1.0;
  int L = 1000;
  int samples = 4000;
  std::uint64_t seed = kDefaultSeed;
  std::string out_xi;
  std::string out_ecdf;
  std::string svg;
  std::string json;
};

int run_fluctuations(const FluctCmd& c, int threads) {
  const ModelParams p = c.w.params();
  if (!in_liquid_region(c.nu, p)) {
    fail(Errc::OutsideLiquidRegion, "nu must lie in (kappa, 1/kappa)");
  }
  const TwTable tw = tw_table(-10.0, 6.0, 801, 48, threads);
  const FluctuationResult r = fluctuation_experiment(p, c.nu, c.L, c.samples, c.seed, tw, threads);
  const Provenance prov{c.w.b1, c.w.b2, c.seed};
  if (!c.out_xi.empty()) {
    CsvTable t({"sample", "xi"}, prov);
    for (std::size_t i = 0; i < r.xi.size(); ++i) t.add_row({static_cast<std::int64_t>(i), r.xi[i]});
    t.write_file(c.out_xi);
  }
  if (!c.out_ecdf.empty()) {
    CsvTable t({"grid_s", "ecdf", "f_gue"}, prov);
    for (std::size_t i = 0; i < r.grid.size(); ++i) t.add_row({r.grid[i], r.ecdf[i], r.f_gue[i]});
    t.write_file(c.out_ecdf);
  }
  if (!c.svg.empty()) {
    cli::write_series_svg({{"empirical", r.grid, r.ecdf, true}, {"F_GUE", r.grid, r.f_gue, false}},
                          {"rescaled current vs GUE Tracy-Widom", "s", "CDF"}, c.svg);
  }
  const ordered_json j{{"ks", r.ks},      {"mean", r.mean},  {"var", r.variance},
                       {"L", c.L},        {"S", c.samples},  {"nu", c.nu},
                       {"b1", c.w.b1},    {"b2", c.w.b2},    {"seed", c.seed},
                       {"tw_mean", tw.mean()}, {"tw_var", tw.variance()}};
  std::cout << j.dump(2) << '\n';
  if (!c.json.empty()) write_json(j, c.json);
  return 0;
}

int exit_code(Errc e) {
  switch (e) {
    case Errc::QuadratureNotConverged:
    case Errc::ContourFamilyInfeasible:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic six-vertex model simulator and verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--threads", g.threads, "worker threads (default: STOVEX_THREADS or all cores)");
  app.add_option("--config", g.config, "JSON file with flat keys mirroring the flags");

  ParamsCmd params;
  auto* c_params = app.add_subcommand("params", "derived parameters tau, kappa, m, sigma, rho");
  add_weights(c_params, params.w);
  c_params->add_option("--nu", params.nu, "ratio x/t of the observation ray");

  LatticeCmd lat;
  auto* c_lat = app.add_subcommand("sample-lattice", "sample a six-vertex configuration");
  add_weights(c_lat, lat.w);
  add_seed(c_lat, lat.seed);
  c_lat->add_option("--X", lat.X, "columns")->capture_default_str();
  c_lat->add_option("--Y", lat.Y, "rows")->capture_default_str();
  c_lat->add_option("--order", lat.order, "antidiagonal | rowmajor")->capture_default_str();
  c_lat->add_option("--out", lat.out, "CSV of vertex types");
  c_lat->add_option("--svg", lat.svg, "height heatmap");

  HeightCmd height;
  auto* c_h = app.add_subcommand("height", "height function of a sampled configuration");
  add_weights(c_h, height.lattice.w);
  add_seed(c_h, height.lattice.seed);
  c_h->add_option("--X", height.lattice.X, "columns")->capture_default_str();
  c_h->add_option("--Y", height.lattice.Y, "rows")->capture_default_str();
  c_h->add_option("--order", height.lattice.order, "antidiagonal | rowmajor");
  c_h->add_option("--x", height.x, "query column");
  c_h->add_option("--y", height.y, "query row");
  c_h->add_option("--out", height.lattice.out, "CSV of H on the integer grid");
  c_h->add_option("--svg", height.lattice.svg, "height heatmap");

  SimulateCmd sim;
  auto* c_sim = app.add_subcommand("simulate", "run the particle system from step initial data");
  add_weights(c_sim, sim.w);
  add_seed(c_sim, sim.seed);
  c_sim->add_option("--t", sim.t, "time steps")->capture_default_str();
  c_sim->add_option("--x-max", sim.x_max, "window of exact positions")->capture_default_str();
  c_sim->add_option("--mode", sim.mode, "particle | site randomness")->capture_default_str();
  c_sim->add_option("--out", sim.out, "CSV trajectory t,index,position");

  LimitCmd lim;
  auto* c_lim = app.add_subcommand("limit-shape", "limit shape of H(Lx, Ly)/L");
  add_weights(c_lim, lim.w);
  c_lim->add_option("--x", lim.x)->capture_default_str();
  c_lim->add_option("--y", lim.y)->capture_default_str();
  c_lim->add_option("--n", lim.n, "grid resolution on (0,x]x(0,y]");
  c_lim->add_option("--out", lim.out, "CSV grid");
  c_lim->add_option("--svg", lim.svg, "heatmap of the grid");

  VerifyCmd ver;
  auto* c_ver = app.add_subcommand("verify", "run a verification suite");
  add_weights(c_ver, ver.w);
  add_seed(c_ver, ver.seed);
  c_ver->add_option("--suite", ver.suite,
                    "stochasticity | bethe | transition | marginal | identities | mu-k | "
                    "fredholm | routes | equivalence | all")
      ->capture_default_str();
  c_ver->add_option("--samples", ver.samples, "Monte Carlo samples for routes")
      ->capture_default_str();
  c_ver->add_option("--out", ver.out, "CSV of check results");

  TwCmd tw;
  auto* c_tw = app.add_subcommand("tracy-widom", "tabulate F_GUE");
  c_tw->add_option("--lo", tw.lo)->capture_default_str();
  c_tw->add_option("--hi", tw.hi)->capture_default_str();
  c_tw->add_option("--points", tw.points)->capture_default_str();
  c_tw->add_option("--nodes", tw.nodes, "Gauss-Legendre nodes (doubled for the check)")
      ->capture_default_str();
  c_tw->add_option("--out", tw.out, "CSV s,F_GUE(s)");
  c_tw->add_option("--svg", tw.svg, "plot of the table");

  auto* c_exp = app.add_subcommand("experiment", "desk-scale asymptotic experiments");
  c_exp->require_subcommand(1);
  c_exp->fallthrough();
  LlnCmd lln;
  auto* c_lln = c_exp->add_subcommand("lln", "law of large numbers for H(Lx, Ly)/L");
  add_weights(c_lln, lln.w);
  add_seed(c_lln, lln.seed);
  c_lln->add_option("--L", lln.L)->capture_default_str();
  c_lln->add_option("--samples", lln.samples)->capture_default_str();
  c_lln->add_option("--grid", lln.grid, "x:y,x:y,...")->capture_default_str();
  c_lln->add_option("--out", lln.out, "CSV table");
  c_lln->add_option("--json", lln.json, "JSON summary");

  FluctCmd fl;
  auto* c_fl = c_exp->add_subcommand("fluctuations", "rescaled current against F_GUE");
  add_weights(c_fl, fl.w);
  add_seed(c_fl, fl.seed);
  c_fl->add_option("--nu", fl.nu)->capture_default_str();
  c_fl->add_option("--L", fl.L)->capture_default_str();
  c_fl->add_option("--samples", fl.samples)->capture_default_str();
  c_fl->add_option("--out-xi", fl.out_xi, "CSV of xi per sample");
  c_fl->add_option("--out-ecdf", fl.out_ecdf, "CSV grid_s,ecdf,f_gue");
  c_fl->add_option("--svg", fl.svg, "ECDF overlay");
  c_fl->add_option("--json", fl.json, "JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (active == c_exp) active = c_exp->get_subcommands().front();
    if (!g.config.empty()) cli::apply_json_config(*active, g.config);
    const int threads = cli::resolve_threads(g.threads);
    if (active == c_params) return run_params(params);
    if (active == c_lat) return run_sample_lattice(lat);
    if (active == c_h) return run_height(height);
    if (active == c_sim) return run_simulate(sim);
    if (active == c_lim) return run_limit_shape(lim);
    if (active == c_ver) return run_verify(ver, threads);
    if (active == c_tw) return run_tracy_widom(tw, threads);
    if (active == c_lln) return run_lln(lln, threads);
    if (active == c_fl) return run_fluctuations(fl, threads);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
