#include "jackdiv/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jackdiv/errors.hpp"
#include "jackdiv/jack.hpp"
#include "jackdiv/special.hpp"
#include "jackdiv/verify.hpp"
#include "jackdiv/wishart.hpp"

namespace jackdiv {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError(what + ": '" + s + "' is not a number");
}

const char* command_names[] = {"jack",       "pfq",     "gamma",  "cdf-max", "cdf-min",
                               "cdf-region", "density", "verify", "figures"};

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

DivisionAlgebra algebra_of(const RunConfig& c) {
  require(c.beta.has_value(), "--beta is required");
  return DivisionAlgebra(*c.beta);
}

WishartModel model_of(const RunConfig& c) {
  WishartModel w;
  w.algebra = algebra_of(c);
  require(c.n.has_value(), "--n is required");
  require(!c.sigma.empty() || c.m.has_value(), "--sigma or --m is required");
  w.m = c.m ? *c.m : static_cast<int>(c.sigma.size());
  w.n = *c.n;
  w.sigma_eigs = c.sigma.empty() ? std::vector<double>(static_cast<std::size_t>(std::max(w.m, 0)), 1.0)
                                 : c.sigma;
  require(static_cast<int>(w.sigma_eigs.size()) == w.m,
          "--sigma has " + std::to_string(w.sigma_eigs.size()) + " eigenvalues but m = " +
              std::to_string(w.m));
  w.validate();
  return w;
}

std::vector<double> abscissae(const RunConfig& c) {
  require(c.x.has_value() != c.grid.has_value(), "give exactly one of --x and --grid");
  return c.x ? std::vector<double>{*c.x} : c.grid->values();
}

template <class F>
void write_curve(std::ostream& out, const std::vector<double>& xs, const char* header, F&& f) {
  out << header << "\n";
  for (double x : xs) out << g17(x) << "," << g17(f(x)) << "\n";
}

void log_series(std::ostream& err, const SeriesResult& r) {
  err << "degrees=" << r.degrees_used << " converged=" << (r.converged ? "yes" : "no") << "\n";
}

int run_figures(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const bool fig1 = c.target == "fig1";
  require(fig1 || c.target == "fig2", "figures needs target fig1 or fig2, got '" + c.target + "'");
  const Grid grid = c.grid ? *c.grid : fig1 ? Grid{0.0, 30.0, 121} : Grid{0.0, 20.0, 101};
  const double n = fig1 ? 4.0 : 7.0;
  std::vector<WishartModel> models;
  for (int beta : {1, 2, 4, 8}) {
    WishartModel w;
    w.m = 2;
    w.n = n;
    w.sigma_eigs = {1.0, 2.0};
    w.algebra = DivisionAlgebra(beta);
    w.validate();
    models.push_back(w);
  }
  err << (fig1 ? "lambda_max" : "lambda_min") << " CDF, m=2, n=" << n << ", sigma=1,2, "
      << grid.points << " points\n";
  out << "x,cdf_beta1,cdf_beta2,cdf_beta4,cdf_beta8\n";
  for (double x : grid.values()) {
    out << g17(x);
    for (const auto& w : models) {
      const double v = fig1 ? cdf_lambda_max(w, x, c.trunc).value : cdf_lambda_min(w, x);
      out << "," << g17(v);
    }
    out << "\n";
  }
  return 0;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(c.target == "all", "verify supports target 'all', got '" + c.target + "'");
  require(c.criteria.z_max > 0 && c.criteria.rel_max > 0, "--z-max and --rel-max must be positive");
  err << "seed=" << c.seed << " threads=" << c.threads << " z_max=" << c.criteria.z_max
      << " rel_max=" << c.criteria.rel_max << (c.quick ? " quick" : "") << "\n";
  const auto reports = run_verify_all(c.quick, c.seed, c.threads, c.samples, c.criteria);
  out << VerificationReport::record_header() << "\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    out << r.to_record() << "\n";
    if (r.pass) ++passed;
  }
  err << "verify: " << passed << "/" << reports.size() << " passed\n";
  return passed == reports.size() ? 0 : 1;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  c.trunc.validate();
  switch (c.command) {
    case Command::kJack: {
      require(!c.kappa.empty(), "--kappa is required");
      require(!c.eigs.empty(), "--eigs is required");
      const double v = jack_C(Partition::parse(c.kappa), SpectralArgument(c.eigs), algebra_of(c));
      out << g17(v) << "\n";
      return 0;
    }
    case Command::kPfq: {
      require(!c.eigs.empty(), "--eigs is required");
      HypergeomSpec spec{c.upper, c.lower, algebra_of(c), static_cast<int>(c.eigs.size())};
      const SeriesResult r = c.eigs2.empty()
                                 ? pfq(spec, SpectralArgument(c.eigs), c.trunc)
                                 : pfq_two(spec, SpectralArgument(c.eigs), SpectralArgument(c.eigs2),
                                           c.trunc);
      out << g17(r.value) << "\n";
      log_series(err, r);
      return 0;
    }
    case Command::kGamma: {
      require(c.a.has_value(), "--a is required");
      require(c.m.has_value(), "--m is required");
      const DivisionAlgebra alg = algebra_of(c);
      double v;
      if (c.kappa.empty()) {
        v = mv_gamma(*c.m, alg, *c.a);
      } else {
        WeightedGammaQuery q;
        q.a = *c.a;
        q.m = *c.m;
        q.algebra = alg;
        q.weight = Partition::parse(c.kappa);
        q.sign = c.minus ? WeightSign::kMinus : WeightSign::kPlus;
        v = mv_gamma_weighted(q);
      }
      out << g17(v) << "\n";
      return 0;
    }
    case Command::kCdfMax: {
      const WishartModel w = model_of(c);
      write_curve(out, abscissae(c), "x,cdf", [&](double x) { return cdf_lambda_max(w, x, c.trunc).value; });
      return 0;
    }
    case Command::kCdfMin: {
      const WishartModel w = model_of(c);
      lambda_min_order(w);  // fail before any output
      write_curve(out, abscissae(c), "x,cdf", [&](double x) { return cdf_lambda_min(w, x); });
      return 0;
    }
    case Command::kCdfRegion: {
      const WishartModel w = model_of(c);
      require(!c.omega.empty(), "--omega is required");
      const SeriesResult r = cdf_wishart_region(w, c.omega, c.trunc);
      out << g17(r.value) << "\n";
      log_series(err, r);
      return 0;
    }
    case Command::kDensity: {
      const WishartModel w = model_of(c);
      require(!c.lambdas.empty(), "--lambdas is required");
      out << g17(joint_eigen_density(w, c.lambdas, c.trunc)) << "\n";
      return 0;
    }
    case Command::kVerify:
      return run_verify(c, out, err);
    case Command::kFigures:
      return run_figures(c, out, err);
  }
  return 2;
}

}  // namespace

Grid Grid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  require(parts.size() == 3, "--grid must be start:stop:points, got '" + text + "'");
  Grid g;
  g.start = parse_double(parts[0], "grid start");
  g.stop = parse_double(parts[1], "grid stop");
  const double pts = parse_double(parts[2], "grid points");
  require(pts >= 2 && pts == static_cast<int>(pts), "grid points must be an integer >= 2");
  require(g.stop > g.start, "grid needs stop > start");
  g.points = static_cast<int>(pts);
  return g;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double h = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = start + i * h;
  v.back() = stop;
  return v;
}

Command parse_command(const std::string& name) {
  for (int i = 0; i < 9; ++i) {
    if (name == command_names[i]) return static_cast<Command>(i);
  }
  throw DomainError("unknown command '" + name + "'");
}

ParseOutcome parse_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Jack polynomials, matrix-argument hypergeometric functions and Wishart "
               "eigenvalue distributions"};
  app.set_config("--config", "", "key=value file mirroring the long options");
  std::string command, grid, threads;
  double x = 0, n = 0, a = 0;
  int beta = 0, m = 0;
  app.add_option("command", command,
                 "jack | pfq | gamma | cdf-max | cdf-min | cdf-region | density | verify | figures")
      ->required();
  app.add_option("target", c.target, "verify: all; figures: fig1 | fig2");
  auto* o_beta = app.add_option("--beta", beta, "1, 2, 4 or 8");
  auto* o_m = app.add_option("--m", m, "matrix size");
  auto* o_n = app.add_option("--n", n, "Wishart degrees of freedom");
  app.add_option("--sigma", c.sigma, "eigenvalues of Sigma")->delimiter(',');
  auto* o_x = app.add_option("--x", x, "evaluation point");
  auto* o_grid = app.add_option("--grid", grid, "start:stop:points");
  app.add_option("--kappa", c.kappa, "partition, e.g. [2,1]");
  app.add_option("--eigs", c.eigs, "eigenvalues of the argument")->delimiter(',');
  app.add_option("--eigs2", c.eigs2, "second argument (two-matrix pFq)")->delimiter(',');
  app.add_option("--upper", c.upper, "upper parameters")->delimiter(',');
  app.add_option("--lower", c.lower, "lower parameters")->delimiter(',');
  auto* o_a = app.add_option("--a", a, "gamma argument");
  app.add_flag("--minus", c.minus, "weighted gamma with -kappa");
  app.add_option("--omega", c.omega, "eigenvalues of Omega (commuting with Sigma)")->delimiter(',');
  app.add_option("--lambdas", c.lambdas, "ordered eigenvalues for the density")->delimiter(',');
  app.add_option("--max-degree", c.trunc.max_degree, "series degree cap");
  app.add_option("--rel-tol", c.trunc.rel_tol, "series relative tolerance");
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--samples", c.samples, "base Monte Carlo sample count (0: default)");
  app.add_flag("--quick", c.quick, "smaller verification samples");
  app.add_option("--z-max", c.criteria.z_max, "pass threshold on |z|")->capture_default_str();
  app.add_option("--rel-max", c.criteria.rel_max, "pass threshold on relative error")
      ->capture_default_str();
  auto* o_threads = app.add_option("--threads", threads, "worker threads (default JACKDIV_THREADS or 1)");
  app.add_option("--output", c.output, "output file (default stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, app.exit(e, out, err) == 0 ? 0 : 2};
  }
  try {
    c.command = parse_command(command);
    if (*o_beta) c.beta = beta;
    if (*o_m) c.m = m;
    if (*o_n) c.n = n;
    if (*o_x) c.x = x;
    if (*o_a) c.a = a;
    if (*o_grid) c.grid = Grid::parse(grid);
    const char* env = std::getenv("JACKDIV_THREADS");
    const std::string t = *o_threads ? threads : env && *env ? std::string(env) : "1";
    const double tv = parse_double(t, "threads");
    require(tv >= 1 && tv == static_cast<int>(tv), "threads must be a positive integer, got " + t);
    c.threads = static_cast<int>(tv);
    if (c.command == Command::kVerify && c.target.empty()) c.target = "all";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }
  return {c, 0};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!config.output.empty()) {
    file.open(config.output);
    if (!file) {
      err << "error: cannot open output file '" << config.output << "'\n";
      return 2;
    }
    dst = &file;
  }
  // Buffer so a failure part-way leaves no partial artifact.
  std::ostringstream buf;
  int code;
  try {
    code = dispatch(config, buf, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  *dst << buf.str();
  dst->flush();
  return code;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseOutcome p = parse_cli(argc, argv, out, err);
  if (!p.config) return p.exit_code;
  return run(*p.config, out, err);
}

}  // namespace jackdiv
