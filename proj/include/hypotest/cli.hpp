#ifndef HYPOTEST_CLI_HPP
#define HYPOTEST_CLI_HPP

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypotest/bounds.hpp"
#include "hypotest/distributions.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/experiments.hpp"
#include "hypotest/oracle.hpp"

namespace hypotest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

namespace cli_detail {

inline nlohmann::json optional_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline nlohmann::json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

struct BoundArgs {
  std::string pair;
  std::string bound;
  long long n = 0;
  std::optional<double> eps;
  std::optional<double> log_eps;
  std::optional<double> c;
  std::optional<std::string> regime;
  std::optional<double> tau;
  std::optional<double> log_alpha;
  std::optional<double> delta_param;
  std::optional<double> t;
};

inline int run_bound(const BoundArgs& a, std::ostream& out) {
  const DistributionPair pair = parse_pair(a.pair);
  const auto which = parse_bound_name(a.bound);
  if (!which) throw ConfigError("unknown bound '" + a.bound + "'");
  if (a.n < 1) throw ConfigError("--n must be a positive integer");
  const int sources = (a.eps ? 1 : 0) + (a.log_eps ? 1 : 0) + (a.c ? 1 : 0) + (a.regime ? 1 : 0);
  if (sources != 1) throw ConfigError("give exactly one of --eps, --log-eps, --c, --regime");
  EpsAt e{};
  if (a.eps) {
    if (!(*a.eps > 0.0 && *a.eps < 1.0)) throw ConfigError("--eps must lie in (0, 1)");
    e = {*a.eps, std::log(*a.eps)};
  } else if (a.log_eps) {
    if (!(*a.log_eps < 0.0)) throw ConfigError("--log-eps must be negative");
    e = {std::exp(*a.log_eps), *a.log_eps};
  } else if (a.c) {
    if (!(*a.c > 0.0)) throw ConfigError("--c must be positive");
    e = eps_at(ErrorRegime::exponential(*a.c), a.n);
  } else {
    const ErrorRegime regime = parse_regime(*a.regime, pair);
    if (a.n < regime.min_n()) throw ConfigError("--n below the regime's minimum");
    e = eps_at(regime, a.n);
  }
  const double c = -e.log_eps / static_cast<double>(a.n);

  std::optional<BoundResult> result;
  std::optional<NPResult> np;
  switch (*which) {
    case BoundName::RenyiConverse: result = renyi_converse(pair, a.n, e.log_eps); break;
    case BoundName::Achievability: {
      double tau = 0.0;
      if (a.tau) {
        tau = *a.tau;
      } else {
        const BoundResult pa = phase_transition_achievability(pair, a.n, c);
        tau = threshold_for_rate(pair, a.n, c, *pa.optimizer);
      }
      result = renyi_achievability_at_threshold(pair, a.n, tau, a.log_alpha.value_or(-kInf));
      break;
    }
    case BoundName::PhaseConverse: result = phase_transition_converse(pair, a.n, c); break;
    case BoundName::PhaseAchievability: result = phase_transition_achievability(pair, a.n, c); break;
    case BoundName::Fano: result = fano_bound(pair, a.n, e.log_eps); break;
    case BoundName::Hellinger: result = hellinger_bound(pair, a.n, e.log_eps); break;
    case BoundName::BerryEsseen: result = berry_esseen_bound(pair, a.n, e.log_eps, a.delta_param); break;
    case BoundName::SmoothingOut: result = smoothing_out_bound(pair, a.n, e.log_eps, a.t); break;
    case BoundName::NpExact: np = np_exact(pair, a.n, e.log_eps); break;
  }

  nlohmann::ordered_json j;
  j["bound"] = a.bound;
  j["pair"] = format_pair(pair);
  j["n"] = a.n;
  j["eps"] = e.eps;
  j["log_eps"] = e.log_eps;
  if (result) {
    out << "value     " << format_real(result->value) << "\n";
    out << "log_value " << format_real(result->log_value) << "\n";
    out << "optimizer " << (result->optimizer ? format_real(*result->optimizer) : std::string("-")) << "\n";
    out << "valid     " << (result->valid ? "true" : "false") << "\n";
    j["kind"] = to_string(result->kind);
    j["value"] = result->value;
    j["log_value"] = real_json(result->log_value);
    j["optimizer"] = optional_json(result->optimizer);
    j["valid"] = result->valid;
  } else {
    out << "value          " << format_real(np->beta) << "\n";
    out << "log_value      " << format_real(np->log_beta) << "\n";
    out << "threshold      " << format_real(np->threshold) << "\n";
    out << "randomization  " << format_real(np->randomization) << "\n";
    out << "achieved_alpha " << format_real(np->achieved_alpha) << "\n";
    j["kind"] = "exact_beta";
    j["value"] = np->beta;
    j["log_value"] = real_json(np->log_beta);
    j["threshold"] = real_json(np->threshold);
    j["randomization"] = np->randomization;
    j["achieved_alpha"] = np->achieved_alpha;
    j["valid"] = true;
  }
  out << j.dump() << "\n";
  return kExitOk;
}

inline int run_samplesize(const std::string& pair_spec, double eps, double delta, std::optional<double> lambda,
                          std::ostream& out) {
  const DistributionPair pair = parse_pair(pair_spec);
  if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0)) {
    throw ConfigError("--eps and --delta must lie in (0, 1)");
  }
  if (lambda && !(*lambda > 1.0)) throw ConfigError("--lambda must exceed 1");
  const BoundResult renyi = sample_complexity_renyi(pair, eps, delta, lambda);
  nlohmann::ordered_json j;
  j["pair"] = format_pair(pair);
  j["eps"] = eps;
  j["delta"] = delta;
  out << "renyi  n >= " << static_cast<long long>(std::ceil(renyi.value)) << "  (" << format_real(renyi.value)
      << ", lambda " << format_real(*renyi.optimizer) << ")\n";
  j["renyi"] = {{"value", renyi.value},
                {"ceil", static_cast<long long>(std::ceil(renyi.value))},
                {"lambda", optional_json(renyi.optimizer)},
                {"valid", renyi.valid}};
  if (eps < 0.5 && delta < 0.5) {
    const BoundResult p = sample_complexity_pensia(pair, eps, delta);
    out << "pensia n >= " << static_cast<long long>(std::ceil(p.value)) << "  (" << format_real(p.value)
        << ", lambda " << format_real(*p.optimizer) << ")\n";
    j["pensia"] = {{"value", p.value},
                   {"ceil", static_cast<long long>(std::ceil(p.value))},
                   {"lambda", optional_json(p.optimizer)},
                   {"valid", p.valid}};
  } else {
    out << "pensia n/a (requires eps, delta < 1/2)\n";
    j["pensia"] = nullptr;
  }
  out << j.dump() << "\n";
  return kExitOk;
}

inline std::vector<BoundName> parse_bound_list(const std::string& text, const DistributionPair& pair) {
  if (text.empty() || text == "all") return applicable_bounds(pair);
  std::vector<BoundName> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = parse_bound_name(item);
    if (!b) throw ConfigError("unknown bound '" + item + "'");
    out.push_back(*b);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline void run_and_emit(const ExperimentGrid& grid, const SvgOptions& svg, std::ostream& out) {
  const Table table = run_grid(grid);
  emit_csv(table, grid.csv_path);
  out << "wrote " << grid.csv_path << "\n";
  if (grid.svg_path) {
    emit_svg(table, *grid.svg_path, svg);
    out << "wrote " << *grid.svg_path << "\n";
  }
}

}  // namespace cli_detail

/// Entry point of the `hypotest` tool. Returns 0 on success, 2 on a
/// configuration or usage error, 3 on an I/O error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Finite-sample bounds on the Type II error of binary hypothesis tests", "hypotest"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate bounds over a grid of sample sizes; write CSV and SVG");
  std::string sweep_pair, sweep_regime = "constant:0.01", sweep_n = "10:500:10", sweep_bounds = "all", sweep_csv;
  std::string sweep_svg, sweep_title;
  bool sweep_log_y = false;
  sweep->add_option("--pair", sweep_pair, "bernoulli:p0,p1 | gaussian:mu,delta[,sigma] | discrete:p,...|q,...")
      ->required();
  sweep->add_option("--regime", sweep_regime, "constant:<eps> | linear | exponential:<c> | exponential-kl:<k>");
  sweep->add_option("--n", sweep_n, "n values: a,b,c | lo:hi:step | geom:lo:hi:count");
  sweep->add_option("--bounds", sweep_bounds, "comma-separated bound names, or 'all'");
  sweep->add_option("--csv", sweep_csv, "CSV output path")->required();
  sweep->add_option("--svg", sweep_svg, "SVG output path");
  sweep->add_flag("--log-y", sweep_log_y, "logarithmic y axis in the SVG");
  sweep->add_option("--title", sweep_title, "SVG title");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate a single bound");
  cli_detail::BoundArgs ba;
  bound->add_option("--pair", ba.pair, "hypothesis pair spec")->required();
  bound->add_option("--bound", ba.bound,
                    "renyi_converse | achievability | phase_converse | phase_achievability | fano | hellinger | "
                    "berry_esseen | smoothing_out | np_exact")
      ->required();
  bound->add_option("--n", ba.n, "sample size")->required();
  bound->add_option("--eps", ba.eps, "Type I error budget");
  bound->add_option("--log-eps", ba.log_eps, "log of the Type I error budget");
  bound->add_option("--c", ba.c, "exponential rate: eps = exp(-n c)");
  bound->add_option("--regime", ba.regime, "error regime spec");
  bound->add_option("--tau", ba.tau, "LLR threshold (achievability)");
  bound->add_option("--log-alpha", ba.log_alpha, "log Type I error of the LLRT (achievability)");
  bound->add_option("--delta-param", ba.delta_param, "fixed Delta (berry_esseen)");
  bound->add_option("--t", ba.t, "fixed t (smoothing_out)");

  // samplesize
  auto* ss = app.add_subcommand("samplesize", "Necessary sample sizes for beta_n(eps) <= delta");
  std::string ss_pair;
  double ss_eps = 0.0, ss_delta = 0.0;
  std::optional<double> ss_lambda;
  ss->add_option("--pair", ss_pair, "hypothesis pair spec")->required();
  ss->add_option("--eps", ss_eps, "Type I error budget")->required();
  ss->add_option("--delta", ss_delta, "Type II error target")->required();
  ss->add_option("--lambda", ss_lambda, "fixed Renyi order > 1 (optimized when omitted)");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Run the figure grids: fig1 | fig2 | appF");
  std::string rep_which, rep_out = ".";
  rep->add_option("figure", rep_which, "fig1 | fig2 | appF")->required();
  rep->add_option("--out", rep_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (*sweep) {
      ExperimentGrid g;
      const DistributionPair pair = parse_pair(sweep_pair);
      g.pair_spec = sweep_pair;
      g.regime = parse_regime(sweep_regime, pair);
      g.n_values = parse_n_values(sweep_n);
      g.bounds = cli_detail::parse_bound_list(sweep_bounds, pair);
      g.csv_path = sweep_csv;
      if (!sweep_svg.empty()) g.svg_path = sweep_svg;
      SvgOptions so{sweep_log_y, sweep_title.empty() ? format_pair(pair) + ", " + sweep_regime : sweep_title};
      cli_detail::run_and_emit(g, so, out);
      return kExitOk;
    }
    if (*bound) return cli_detail::run_bound(ba, out);
    if (*ss) return cli_detail::run_samplesize(ss_pair, ss_eps, ss_delta, ss_lambda, out);
    if (*rep) {
      const auto panels = reproduction_panels(rep_which);
      std::error_code ec;
      std::filesystem::create_directories(rep_out, ec);
      if (ec) throw IoError("cannot create '" + rep_out + "': " + ec.message());
      for (const auto& panel : panels) {
        cli_detail::run_and_emit(panel_grid(panel, rep_out), SvgOptions{false, panel.title}, out);
      }
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace hypotest

#endif  // HYPOTEST_CLI_HPP
