#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mellin/american.hpp"
#include "mellin/black_scholes.hpp"
#include "mellin/errors.hpp"
#include "mellin/fractional_green.hpp"
#include "mellin/golden.hpp"
#include "report.hpp"

namespace mellin::cli {
namespace {

// Thrown for bad user input that the library itself would accept.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double tol = 1e-10;
  int max_terms = 400;
  std::string format = "human";
  std::string out;
  std::string config;
};

struct State {
  Common common;
  OptionContract contract;
  FractionalDiffusionParams frac{2.0, 1.0, 0.0, 0.5};
  double time = 1.0;
  std::string x_grid;
  double rate = 0.1;
  double sigma = 0.3;
  std::string tau_grid;
  int n = 1;
  int m = 1;
  double tau = 1.0;
  int threads = 1;
  std::string golden;
  std::vector<double> x;
  std::string side = "auto";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol", c.tol, "Series tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-terms", c.max_terms, "Maximum poles or shells")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
  sub->add_option("--out", c.out, "Write the report to a file");
  sub->add_option("--config", c.config, "key=value file; flags take precedence");
}

// Required flags are enforced only when strict; the relaxed pass just locates --config.
void build(CLI::App& app, State& s, bool strict) {
  app.require_subcommand(1);

  auto* price = app.add_subcommand("price", "Black-Scholes call: closed form against the residue series");
  price->add_option("--spot", s.contract.spot)->required(strict);
  price->add_option("--strike", s.contract.strike)->required(strict);
  price->add_option("--tau", s.contract.tau)->required(strict);
  price->add_option("--sigma", s.contract.sigma)->required(strict);
  price->add_option("--rate", s.contract.rate, "Riskless rate")->capture_default_str();
  add_common(price, s.common);

  auto* green = app.add_subcommand("green", "Space-time fractional diffusion Green function on an x grid");
  green->add_option("--alpha", s.frac.alpha)->required(strict);
  green->add_option("--gamma-t", s.frac.gamma_t, "Time-fractional order")->capture_default_str();
  green->add_option("--theta", s.frac.theta, "Skewness")->capture_default_str();
  green->add_option("--mu", s.frac.mu)->required(strict);
  green->add_option("--time", s.time, "Time t")->capture_default_str();
  green->add_option("--x-grid", s.x_grid, "lo:hi:step")->required(strict);
  add_common(green, s.common);

  auto* american = app.add_subcommand("american", "American option exercise boundary and kernel");
  american->require_subcommand(1);
  auto* boundary = american->add_subcommand("boundary", "Exercise boundary by two Laplace inversions");
  boundary->add_option("--rate", s.rate)->capture_default_str();
  boundary->add_option("--sigma", s.sigma)->capture_default_str();
  boundary->add_option("--tau-grid", s.tau_grid, "lo:hi:step")->required(strict);
  boundary->add_option("--threads", s.threads, "Threads for contour nodes")->check(CLI::PositiveNumber);
  boundary->add_option("--golden", s.golden, "Write golden records to this file");
  add_common(boundary, s.common);
  auto* kernel = american->add_subcommand("kernel", "Kernel A_{n,m}(tau): residue series against Bromwich inversion");
  kernel->add_option("--n", s.n)->required(strict)->check(CLI::PositiveNumber);
  kernel->add_option("--m", s.m)->required(strict)->check(CLI::PositiveNumber);
  kernel->add_option("--tau", s.tau)->required(strict);
  kernel->add_option("--rate", s.rate)->capture_default_str();
  kernel->add_option("--sigma", s.sigma)->capture_default_str();
  kernel->add_option("--threads", s.threads, "Threads for contour nodes")->check(CLI::PositiveNumber);
  kernel->add_option("--golden", s.golden, "Write golden records to this file");
  add_common(kernel, s.common);

  auto* demo = app.add_subcommand("demo", "Residue-series demonstrations");
  demo->require_subcommand(1);
  auto* exp = demo->add_subcommand("exp", "e^{-x} from Gamma(z) x^{-z}");
  exp->add_option("--x", s.x)->required(strict)->expected(1);
  add_common(exp, s.common);
  auto* beta = demo->add_subcommand("beta", "1/(1+x) from Gamma(z) Gamma(1-z) x^{-z}");
  beta->add_option("--x", s.x)->required(strict)->expected(1);
  beta->add_option("--side", s.side, "left, right or auto")->check(CLI::IsMember({"left", "right", "auto"}));
  add_common(beta, s.common);
  auto* exp2d = demo->add_subcommand("exp2d", "e^{-(x1+x2)} from Gamma(z1) Gamma(z2) x1^{-z1} x2^{-z2}");
  exp2d->add_option("--x", s.x, "x1 x2")->required(strict)->expected(2);
  add_common(exp2d, s.common);
}

CLI::App* leaf(CLI::App* app) {
  for (auto* sub : app->get_subcommands()) return leaf(sub);
  return app;
}

std::string path_of(CLI::App* app) {
  std::string p;
  for (auto* a = app; a && a->get_parent(); a = a->get_parent()) p = a->get_name() + (p.empty() ? "" : " " + p);
  return p;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string item = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": expected lo:hi:step, got '" + text + "'");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw UsageError(std::string(what) + ": expected lo:hi:step, got '" + text + "'");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0) || !(hi >= lo)) throw UsageError(std::string(what) + ": need hi >= lo and step > 0");
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 1000000) throw UsageError(std::string(what) + ": too many grid points");
  std::vector<double> grid(count);
  for (long i = 0; i < count; ++i) {
    grid[i] = lo + i * step;
    if (std::fabs(grid[i]) < 1e-12 * step) grid[i] = 0.0;
  }
  return grid;
}

SeriesOptions series_options(const Common& c, bool trace) {
  SeriesOptions o;
  o.tol = c.tol;
  o.max_terms = c.max_terms;
  o.record_trace = trace;
  return o;
}

void add_series_diagnostics(Report& r, const ResidueSeriesResult& s) {
  r.diagnostics.emplace_back("terms_used", static_cast<long long>(s.terms_used));
  r.diagnostics.emplace_back("last_term_magnitude", s.last_shell_magnitude);
  r.diagnostics.emplace_back("diverged", s.diverged);
}

Table trace_table(const ResidueSeriesResult& s, bool two_d) {
  Table t{"terms", {}, {}};
  t.columns = two_d ? std::vector<std::string>{"k1", "k2", "z1", "z2", "term", "partial_sum"}
                    : std::vector<std::string>{"index", "pole", "term", "partial_sum"};
  for (const auto& e : s.trace) {
    if (two_d) {
      t.rows.push_back({static_cast<long long>(e.index[0]), static_cast<long long>(e.index[1]), e.location[0] + 0.0,
                        e.location[1] + 0.0, e.residue.real(), e.partial_sum.real()});
    } else {
      // + 0.0 turns a pole at -0 into 0.
      t.rows.push_back({static_cast<long long>(e.index[0]), e.location[0] + 0.0, e.residue.real(), e.partial_sum.real()});
    }
  }
  return t;
}

int cmd_price(const State& s, Report& r) {
  const OptionContract& c = s.contract;
  c.validate();
  r.params = {{"spot", c.spot}, {"strike", c.strike}, {"tau", c.tau}, {"sigma", c.sigma}, {"rate", c.rate}};
  const double closed = bs_closed_form(c);
  const auto series = bs_series(c, series_options(s.common, true));
  const double v = series.value.real();
  r.summary = {{"closed_form", closed},
               {"series", v},
               {"forward_term", bs_forward_term(c)},
               {"converged", series.converged},
               {"abs_gap", std::fabs(v - closed)},
               {"rel_gap", std::fabs(v - closed) / std::fabs(closed)}};
  Table t{"terms", {"n", "m", "term", "partial_sum"}, {}};
  for (const auto& e : series.trace)
    t.rows.push_back({static_cast<long long>(e.index[0]), static_cast<long long>(e.index[1]), e.residue.real(),
                      e.partial_sum.real()});
  r.tables.push_back(std::move(t));
  add_series_diagnostics(r, series);
  r.diagnostics.emplace_back("moneyness_ratio", std::fabs(log_moneyness(c)) / (c.sigma * std::sqrt(c.tau)));
  if (!series.converged) {
    r.warnings.push_back("series did not converge; use the closed-form price");
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_green(const State& s, Report& r) {
  const auto& p = s.frac;
  p.validate();
  if (!(s.time > 0.0)) throw InvalidArgument("--time must be positive");
  const std::vector<double> grid = parse_grid(s.x_grid, "--x-grid");
  r.params = {{"alpha", p.alpha}, {"gamma_t", p.gamma_t}, {"theta", p.theta}, {"mu", p.mu},
              {"time", s.time},   {"x_grid", s.x_grid}};
  Table t{"density", {"x", "g", "converged", "flag"}, {}};
  bool all_ok = true;
  for (double x : grid) {
    if (x == 0.0) {
      t.rows.push_back({x, NAN, false, std::string("domain")});
      continue;
    }
    const auto g = green_fractional(x, s.time, p, s.common.tol, s.common.max_terms);
    all_ok = all_ok && g.converged;
    t.rows.push_back({x, g.value.real(), g.converged, std::string(g.converged ? "ok" : "unconverged")});
  }
  r.tables.push_back(std::move(t));
  r.summary.emplace_back("all_converged", all_ok);
  if (grid.size() >= 2) {
    try {
      const auto norm = green_normalization_check(
          p, s.time, {grid.front(), grid.back(), static_cast<int>(grid.size()) - 1}, s.common.tol, s.common.max_terms);
      r.summary.emplace_back("normalization", norm.integral);
      r.summary.emplace_back("min_density", norm.min_density);
    } catch (const DomainError& e) {
      r.summary.emplace_back("normalization", std::string("unavailable"));
      r.warnings.push_back(std::string("normalization skipped: ") + e.what());
    }
  }
  if (!all_ok) {
    r.warnings.push_back("series did not converge at some grid points");
    return kExitNumerical;
  }
  return kExitOk;
}

InversionOptions inversion_options(const State& s) {
  InversionOptions o;
  o.tolerance = s.common.tol;
  o.threads = s.threads;
  return o;
}

int cmd_boundary(const State& s, Report& r) {
  const auto c = AmericanConstants::from_market(s.rate, s.sigma);
  const std::vector<double> taus = parse_grid(s.tau_grid, "--tau-grid");
  if (!(taus.front() > 0.0)) throw UsageError("--tau-grid: tau must be positive");
  r.params = {{"rate", s.rate}, {"sigma", s.sigma}, {"tau_grid", s.tau_grid}};
  const InversionOptions opt = inversion_options(s);
  Table t{"boundary", {"tau", "boundary", "talbot", "trapezoid", "agreement", "flag"}, {}};
  std::vector<GoldenRecord> golden;
  bool reliable = true, monotone = true;
  double previous = INFINITY, worst = 0.0;
  for (double tau : taus) {
    try {
      const auto v = exercise_boundary(tau, s.rate, s.sigma, opt);
      t.rows.push_back({tau, v.value(), v.talbot, v.trapezoid, v.discrepancy(), std::string("ok")});
      monotone = monotone && v.value() <= previous + 1e-6;
      previous = v.value();
      worst = std::max(worst, v.discrepancy());
      golden.push_back({{{"tau", tau}, {"rate", s.rate}, {"sigma", s.sigma}}, v.value(), "talbot", 1e-5});
    } catch (const UnreliableInversionError&) {
      reliable = false;
      t.rows.push_back({tau, NAN, NAN, NAN, NAN, std::string("unreliable")});
    }
  }
  r.tables.push_back(std::move(t));
  r.summary = {{"gamma", c.gamma_c}, {"perpetual_limit", c.gamma_c / (1.0 + c.gamma_c)}};
  r.diagnostics = {{"monotone", monotone},
                   {"max_agreement", worst},
                   {"units", std::string("raw inversion value; fraction of strike if S_f is normalized by K")}};
  if (!s.golden.empty()) write_golden(s.golden, golden, "exercise boundary: params value method tolerance");
  if (!reliable) {
    r.warnings.push_back("the two inversion methods disagree at some tau");
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_kernel(const State& s, Report& r) {
  const auto c = AmericanConstants::from_market(s.rate, s.sigma);
  r.params = {{"n", static_cast<long long>(s.n)}, {"m", static_cast<long long>(s.m)}, {"tau", s.tau},
              {"rate", s.rate},                   {"sigma", s.sigma}};
  const auto series = american_kernel_series(s.n, s.m, s.tau, c, s.common.tol, s.common.max_terms);
  int code = kExitOk;
  double oracle = NAN;
  try {
    oracle = american_kernel_oracle(s.n, s.m, s.tau, c, inversion_options(s)).value();
  } catch (const UnreliableInversionError& e) {
    r.warnings.push_back(e.what());
    code = kExitNumerical;
  }
  const double v = series.value.real();
  const double gap = std::fabs(v - oracle) / std::max(1e-300, std::fabs(oracle));
  r.tables.push_back({"kernel",
                      {"n", "m", "tau", "series", "oracle", "gap"},
                      {{static_cast<long long>(s.n), static_cast<long long>(s.m), s.tau, v, oracle, gap}}});
  r.summary = {{"converged", series.converged}};
  add_series_diagnostics(r, series);
  r.diagnostics.emplace_back("b", c.b);
  if (!s.golden.empty() && std::isfinite(oracle))
    write_golden(s.golden,
                 {{{{"n", double(s.n)}, {"m", double(s.m)}, {"tau", s.tau}, {"rate", s.rate}, {"sigma", s.sigma}}, oracle, "talbot", 1e-4}},
                 "american kernel: params value method tolerance");
  if (!series.converged) {
    r.warnings.push_back("kernel series did not converge");
    code = kExitNumerical;
  }
  return code;
}

void demo_summary(Report& r, const ResidueSeriesResult& s, double exact) {
  r.summary = {{"value", s.value.real()},
               {"exact", exact},
               {"abs_error", std::fabs(s.value.real() - exact)},
               {"converged", s.converged}};
  add_series_diagnostics(r, s);
}

int cmd_demo(const std::string& which, const State& s, Report& r) {
  for (double x : s.x)
    if (!(x >= 0.0) || !std::isfinite(x)) throw UsageError("--x must be nonnegative");
  const SeriesOptions o = series_options(s.common, true);
  ResidueSeriesResult res;
  if (which == "exp") {
    r.params = {{"x", s.x[0]}};
    const auto f = GammaFraction::Builder(1).numerator({1.0}, 0.0).power(s.x[0], {-1.0}).build();
    res = sum_residues_1d(f, Contour{{0.5}}, Direction::kLeft, o);
    demo_summary(r, res, std::exp(-s.x[0]));
  } else if (which == "beta") {
    const double x = s.x[0];
    const Direction side =
        s.side == "left" ? Direction::kLeft : s.side == "right" ? Direction::kRight : (x < 1.0 ? Direction::kLeft : Direction::kRight);
    r.params = {{"x", x}, {"side", std::string(to_string(side))}};
    const auto f =
        GammaFraction::Builder(1).numerator({1.0}, 0.0).numerator({-1.0}, 1.0).power(x, {-1.0}).build();
    res = sum_residues_1d(f, Contour{{0.5}}, side, o);
    demo_summary(r, res, 1.0 / (1.0 + x));
  } else {
    r.params = {{"x1", s.x[0]}, {"x2", s.x[1]}};
    const auto f = GammaFraction::Builder(2)
                       .numerator({1.0, 0.0}, 0.0)
                       .numerator({0.0, 1.0}, 0.0)
                       .power(s.x[0], {-1.0, 0.0})
                       .power(s.x[1], {0.0, -1.0})
                       .build();
    const Contour contour{{0.5, 0.5}};
    res = sum_residues_2d(f, contour, compatible_cone_2d(f, contour), o);
    demo_summary(r, res, std::exp(-s.x[0] - s.x[1]));
  }
  r.tables.push_back(trace_table(res, which == "exp2d"));
  if (!res.converged) {
    r.warnings.push_back("series did not converge on this side");
    return kExitNumerical;
  }
  return kExitOk;
}

int dispatch(const std::string& command, State& s, Report& r) {
  if (command == "price") return cmd_price(s, r);
  if (command == "green") return cmd_green(s, r);
  if (command == "american boundary") return cmd_boundary(s, r);
  if (command == "american kernel") return cmd_kernel(s, r);
  return cmd_demo(command.substr(command.find(' ') + 1), s, r);
}

Format parse_format(const std::string& f) {
  if (f == "json") return Format::kJson;
  if (f == "csv") return Format::kCsv;
  return Format::kHuman;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto parse = [&](CLI::App& app, State& s, bool strict) {
    build(app, s, strict);
    std::vector<const char*> v{argc > 0 ? argv[0] : "mellin_cli"};
    for (const auto& a : args) v.push_back(a.c_str());
    app.parse(static_cast<int>(v.size()), v.data());
  };

  // Config values become --key=value flags for options of the selected command not given explicitly.
  try {
    State relaxed_state;
    CLI::App relaxed;
    bool located = true;
    try {
      parse(relaxed, relaxed_state, false);
    } catch (const CLI::ParseError&) {
      located = false;  // the strict pass reports it
    }
    if (located && !relaxed_state.common.config.empty()) {
      CLI::App* sub = leaf(&relaxed);
      for (const auto& [key, value] : read_config(relaxed_state.common.config)) {
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (key == "config" || !opt) {
          err << "warning: config key '" << key << "' does not apply to '" << path_of(sub) << "'\n";
          continue;
        }
        if (opt->count() == 0) args.push_back("--" + key + "=" + value);
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  State state;
  CLI::App app{"Mellin-Barnes residue series for option pricing"};
  try {
    parse(app, state, true);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = path_of(leaf(&app));

  Report report;
  report.command = command;
  int code = kExitOk;
  try {
    code = dispatch(command, state, report);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  const Format format = parse_format(state.common.format);
  if (state.common.out.empty()) {
    write_report(report, format, out);
  } else {
    std::ofstream file(state.common.out);
    if (!file) {
      err << "error: cannot write " << state.common.out << '\n';
      return kExitUsage;
    }
    write_report(report, format, file);
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  return code;
}

}  // namespace mellin::cli
