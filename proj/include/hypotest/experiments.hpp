#ifndef HYPOTEST_EXPERIMENTS_HPP
#define HYPOTEST_EXPERIMENTS_HPP

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hypotest/bounds.hpp"
#include "hypotest/distributions.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/oracle.hpp"

namespace hypotest {

/// Columns a sweep can evaluate, in canonical output order.
enum class BoundName {
  RenyiConverse,
  Achievability,
  PhaseConverse,
  PhaseAchievability,
  Fano,
  Hellinger,
  BerryEsseen,
  SmoothingOut,
  NpExact,
};

inline constexpr std::array kAllBounds = {
    BoundName::RenyiConverse, BoundName::Achievability, BoundName::PhaseConverse,
    BoundName::PhaseAchievability, BoundName::Fano, BoundName::Hellinger,
    BoundName::BerryEsseen, BoundName::SmoothingOut, BoundName::NpExact,
};

inline std::string_view bound_name(BoundName b) {
  switch (b) {
    case BoundName::RenyiConverse: return "renyi_converse";
    case BoundName::Achievability: return "achievability";
    case BoundName::PhaseConverse: return "phase_converse";
    case BoundName::PhaseAchievability: return "phase_achievability";
    case BoundName::Fano: return "fano";
    case BoundName::Hellinger: return "hellinger";
    case BoundName::BerryEsseen: return "berry_esseen";
    case BoundName::SmoothingOut: return "smoothing_out";
    case BoundName::NpExact: return "np_exact";
  }
  return "?";
}

inline std::optional<BoundName> parse_bound_name(std::string_view s) {
  for (BoundName b : kAllBounds) {
    if (bound_name(b) == s) return b;
  }
  return std::nullopt;
}

/// Lower bounds on beta that a sweep compares against the Renyi converse.
inline bool is_baseline(BoundName b) {
  return b == BoundName::Fano || b == BoundName::Hellinger || b == BoundName::BerryEsseen ||
         b == BoundName::SmoothingOut;
}

// ---------------------------------------------------------------------------
// Grid specification
// ---------------------------------------------------------------------------

struct ExperimentGrid {
  std::string pair_spec;
  ErrorRegime regime = ErrorRegime::constant(0.01);
  std::vector<long long> n_values;
  std::vector<BoundName> bounds;
  std::string csv_path;
  std::optional<std::string> svg_path;
};

/// "constant:<eps>" | "linear" | "exponential:<c>" | "exponential-kl:<k>"
/// (the last sets c = k * D(P1||P0) of the given pair).
inline ErrorRegime parse_regime(std::string_view text, const DistributionPair& pair) {
  auto number_after = [&](std::size_t colon) {
    double v = 0.0;
    const char* first = text.data() + colon + 1;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || ptr == first) throw ParseError("expected a number", colon + 1);
    return v;
  };
  try {
    if (text == "linear") return ErrorRegime::linear();
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
      const std::string_view kind = text.substr(0, colon);
      if (kind == "constant") return ErrorRegime::constant(number_after(colon));
      if (kind == "exponential") return ErrorRegime::exponential(number_after(colon));
      if (kind == "exponential-kl") {
        return ErrorRegime::exponential(number_after(colon) * kl_divergence(pair, Direction::Reverse));
      }
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid regime: ") + e.what(), 0);
  }
  throw ParseError("unknown regime '" + std::string(text) + "'", 0);
}

/// "10,20,50" | "lo:hi:step" (arithmetic) | "geom:lo:hi:count" (geometric,
/// rounded, duplicates removed).
inline std::vector<long long> parse_n_values(std::string_view text) {
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const auto p = s.find(sep, start);
      parts.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
      if (p == std::string_view::npos) break;
      start = p + 1;
    }
    return parts;
  };
  auto to_int = [&](std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("expected an integer", static_cast<std::size_t>(s.data() - text.data()));
    }
    return v;
  };
  std::vector<long long> out;
  if (text.starts_with("geom:")) {
    const auto parts = split(text.substr(5), ':');
    if (parts.size() != 3) throw ParseError("geom takes lo:hi:count", 5);
    const long long lo = to_int(parts[0]), hi = to_int(parts[1]), count = to_int(parts[2]);
    if (lo < 1 || hi < lo || count < 1) throw ParseError("geom needs 1 <= lo <= hi and count >= 1", 5);
    for (long long i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      const auto v = static_cast<long long>(std::llround(lo * std::pow(static_cast<double>(hi) / lo, f)));
      if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
  }
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ParseError("range takes lo:hi:step", 0);
    const long long lo = to_int(parts[0]), hi = to_int(parts[1]), step = to_int(parts[2]);
    if (step < 1 || hi < lo) throw ParseError("range needs lo <= hi and step >= 1", 0);
    for (long long v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(to_int(part));
  return out;
}

/// Default figure grid: 10..500 in steps of 10, then geometric to 2000.
inline std::vector<long long> figure_n_grid() {
  std::vector<long long> out;
  for (long long n = 10; n <= 500; n += 10) out.push_back(n);
  for (int i = 1; i <= 12; ++i) out.push_back(std::llround(500.0 * std::pow(4.0, i / 12.0)));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// One bound at one n. An empty value marks an undefined or infeasible cell.
struct Cell {
  std::optional<double> value;
  std::optional<double> optimizer;
  bool valid = false;
};

struct Row {
  long long n = 0;
  double eps = 0.0;
  double log_eps = 0.0;
  std::vector<Cell> cells;
};

struct Table {
  std::string pair_spec;
  std::vector<BoundName> columns;
  std::vector<Row> rows;

  std::optional<std::size_t> column(BoundName b) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == b) return i;
    }
    return std::nullopt;
  }
};

namespace detail {

inline Cell from_bound(const BoundResult& r) { return Cell{r.value, r.optimizer, r.valid}; }

}  // namespace detail

/// Evaluates one bound. The phase-transition and achievability columns use
/// the effective rate c = -log(eps)/n, so they apply to every regime.
inline Cell evaluate_cell(const DistributionPair& pair, BoundName bound, long long n, const EpsAt& e) {
  const double nd = static_cast<double>(n);
  const double c_eff = -e.log_eps / nd;
  const double d_rev = kl_divergence(pair, Direction::Reverse);
  try {
    switch (bound) {
      case BoundName::RenyiConverse: return detail::from_bound(renyi_converse(pair, n, e.log_eps));
      case BoundName::Achievability: {
        if (!(c_eff < d_rev)) return {};
        const BoundResult pa = phase_transition_achievability(pair, n, c_eff);
        if (!pa.valid || !pa.optimizer) return {};
        const double tau = threshold_for_rate(pair, n, c_eff, *pa.optimizer);
        return detail::from_bound(renyi_achievability_at_threshold(pair, n, tau, -kInf));
      }
      case BoundName::PhaseConverse:
        if (!(c_eff > d_rev)) return {};
        return detail::from_bound(phase_transition_converse(pair, n, c_eff));
      case BoundName::PhaseAchievability:
        if (!(c_eff < d_rev)) return {};
        return detail::from_bound(phase_transition_achievability(pair, n, c_eff));
      case BoundName::Fano: return detail::from_bound(fano_bound(pair, n, e.log_eps));
      case BoundName::Hellinger: return detail::from_bound(hellinger_bound(pair, n, e.log_eps));
      case BoundName::BerryEsseen: {
        const BoundResult r = berry_esseen_bound(pair, n, e.log_eps);
        if (!r.optimizer) return {};
        return detail::from_bound(r);
      }
      case BoundName::SmoothingOut: return detail::from_bound(smoothing_out_bound(pair, n, e.log_eps));
      case BoundName::NpExact: {
        const NPResult r = np_exact(pair, n, e.log_eps);
        return Cell{r.beta, r.threshold, true};
      }
    }
  } catch (const DomainError&) {
    return {};
  }
  return {};
}

/// Worker count from HYPOTEST_THREADS, else the number of cores.
inline int thread_count_from_env() {
  if (const char* env = std::getenv("HYPOTEST_THREADS")) {
    const std::string_view s(env);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw ConfigError("HYPOTEST_THREADS must be a positive integer");
    }
    return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Validates the grid against the pair before any evaluation.
inline DistributionPair validate_grid(const ExperimentGrid& grid) {
  DistributionPair pair = parse_pair(grid.pair_spec);
  if (grid.n_values.empty()) throw ConfigError("grid: n_values is empty");
  for (std::size_t i = 0; i < grid.n_values.size(); ++i) {
    if (grid.n_values[i] < grid.regime.min_n()) throw ConfigError("grid: n below the regime's minimum");
    if (i > 0 && grid.n_values[i] <= grid.n_values[i - 1]) {
      throw ConfigError("grid: n_values must be strictly increasing");
    }
  }
  if (grid.bounds.empty()) throw ConfigError("grid: no bounds selected");
  for (BoundName b : grid.bounds) {
    if (b == BoundName::SmoothingOut && !pair.is_gaussian()) {
      throw ConfigError("grid: smoothing_out is only defined for Gaussian pairs");
    }
    if (b == BoundName::NpExact && pair.is_discrete() &&
        std::pow(static_cast<double>(pair.alphabet_size()), static_cast<double>(grid.n_values.back())) >
            kBruteForceBudget) {
      throw ConfigError("grid: np_exact on a discrete pair needs |support|^n <= 1e7");
    }
  }
  return pair;
}

/// Evaluates every selected bound at every n. Rows are independent and may
/// be computed in parallel; output order and content do not depend on the
/// thread count.
inline Table run_grid(const ExperimentGrid& grid, int threads) {
  const DistributionPair pair = validate_grid(grid);
  Table table;
  table.pair_spec = format_pair(pair);
  const std::set<BoundName> selected(grid.bounds.begin(), grid.bounds.end());
  for (BoundName b : kAllBounds) {
    if (selected.count(b)) table.columns.push_back(b);
  }
  table.rows.resize(grid.n_values.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      Row& row = table.rows[i];
      row.n = grid.n_values[i];
      const EpsAt e = eps_at(grid.regime, row.n);
      row.eps = e.eps;
      row.log_eps = e.log_eps;
      row.cells.reserve(table.columns.size());
      for (BoundName b : table.columns) row.cells.push_back(evaluate_cell(pair, b, row.n, e));
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(table.rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return table;
}

inline Table run_grid(const ExperimentGrid& grid) { return run_grid(grid, thread_count_from_env()); }

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Header `n,eps,log_eps` followed by `<bound>_value,<bound>_optimizer,<bound>_valid`
/// per column; 17 significant digits; empty fields for undefined cells.
inline std::string to_csv(const Table& table) {
  if (table.rows.empty()) throw ConfigError("csv: table has no rows");
  std::string out = "n,eps,log_eps";
  for (BoundName b : table.columns) {
    const std::string name(bound_name(b));
    out += "," + name + "_value," + name + "_optimizer," + name + "_valid";
  }
  out += "\n";
  for (const Row& row : table.rows) {
    out += std::to_string(row.n) + "," + format_real(row.eps) + "," + format_real(row.log_eps);
    for (const Cell& c : row.cells) {
      out += ",";
      if (c.value) out += format_real(*c.value);
      out += ",";
      if (c.optimizer) out += format_real(*c.optimizer);
      out += c.valid ? ",1" : ",0";
    }
    out += "\n";
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline void emit_csv(const Table& table, const std::string& path) { write_file(path, to_csv(table)); }

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

struct SvgOptions {
  bool log_y = false;
  std::string title;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string_view series_color(BoundName b) {
  switch (b) {
    case BoundName::RenyiConverse: return "#d62728";
    case BoundName::Achievability: return "#9467bd";
    case BoundName::PhaseConverse: return "#ff7f0e";
    case BoundName::PhaseAchievability: return "#8c564b";
    case BoundName::Fano: return "#1f77b4";
    case BoundName::Hellinger: return "#2ca02c";
    case BoundName::BerryEsseen: return "#17becf";
    case BoundName::SmoothingOut: return "#bcbd22";
    case BoundName::NpExact: return "#000000";
  }
  return "#777777";
}

}  // namespace detail

/// Line plot of every column against n. Invalid cells break a polyline; with
/// a log axis, zero values are dropped and counted in the legend.
inline std::string to_svg(const Table& table, const SvgOptions& options) {
  if (table.rows.size() < 2) throw ConfigError("svg: table needs at least 2 rows");
  constexpr double kWidth = 800, kHeight = 500, kLeft = 70, kRight = 220, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_lo = static_cast<double>(table.rows.front().n);
  const double x_hi = static_cast<double>(table.rows.back().n);

  // y range: [0, 1] linear; decades down to the smallest positive value on a log axis
  double y_lo = 0.0, y_hi = 1.0;
  if (options.log_y) {
    double min_pos = 1.0;
    for (const Row& r : table.rows) {
      for (const Cell& c : r.cells) {
        if (c.valid && c.value && *c.value > 0.0) min_pos = std::min(min_pos, *c.value);
      }
    }
    y_lo = std::floor(std::log10(min_pos));
    if (y_lo >= 0.0) y_lo = -1.0;
    y_hi = 0.0;
  } else {
    for (const Row& r : table.rows) {
      for (const Cell& c : r.cells) {
        if (c.valid && c.value) y_hi = std::max(y_hi, *c.value);
      }
    }
  }
  auto px = [&](double n) { return kLeft + (n - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) {
    const double y = options.log_y ? std::log10(v) : v;
    return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
    << detail::xml_escape(options.title) << "</text>\n";
  // axes and ticks
  s << "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
    << kTop + plot_h << "\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  s << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double n = x_lo + (x_hi - x_lo) * i / 5.0;
    s << "<text x=\"" << detail::fixed3(px(n)) << "\" y=\"" << kTop + plot_h + 16
      << "\" text-anchor=\"middle\">" << std::llround(n) << "</text>\n";
  }
  const int y_ticks = options.log_y ? static_cast<int>(y_hi - y_lo) : 5;
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / y_ticks;
    const double v = options.log_y ? std::pow(10.0, y) : y;
    char label[32];
    std::snprintf(label, sizeof label, options.log_y ? "1e%.0f" : "%.2f", options.log_y ? y : v);
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << detail::fixed3(py(v) + 4) << "\" text-anchor=\"end\">" << label
      << "</text>\n";
  }
  s << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">n</text>\n";
  s << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
    << ")\" text-anchor=\"middle\">Type II error</text>\n";
  s << "</g>\n";

  std::vector<std::string> legend;
  std::vector<std::string_view> legend_colors;
  for (std::size_t col = 0; col < table.columns.size(); ++col) {
    const BoundName b = table.columns[col];
    const std::string name(bound_name(b));
    const std::string_view color = detail::series_color(b);
    std::vector<std::vector<std::pair<double, double>>> segments(1);
    int dropped_zero = 0;
    int drawn = 0;
    for (const Row& r : table.rows) {
      const Cell& c = r.cells[col];
      const bool zero_on_log = options.log_y && c.valid && c.value && !(*c.value > 0.0);
      if (zero_on_log) ++dropped_zero;
      if (!c.valid || !c.value || zero_on_log) {
        if (!segments.back().empty()) segments.emplace_back();
        continue;
      }
      segments.back().emplace_back(px(static_cast<double>(r.n)), py(*c.value));
      ++drawn;
    }
    if (drawn == 0) {
      legend.push_back(name + ": no valid points (omitted)");
      legend_colors.push_back("#999999");
      continue;
    }
    for (const auto& seg : segments) {
      if (seg.empty()) continue;
      if (seg.size() == 1) {
        s << "<circle class=\"series\" data-series=\"" << name << "\" cx=\"" << detail::fixed3(seg[0].first)
          << "\" cy=\"" << detail::fixed3(seg[0].second) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
        continue;
      }
      s << "<polyline class=\"series\" data-series=\"" << name << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
      for (std::size_t i = 0; i < seg.size(); ++i) {
        s << (i ? " " : "") << detail::fixed3(seg[i].first) << "," << detail::fixed3(seg[i].second);
      }
      s << "\"/>\n";
    }
    std::string entry = name;
    if (dropped_zero > 0) entry += " (" + std::to_string(dropped_zero) + " zero points dropped)";
    legend.push_back(entry);
    legend_colors.push_back(color);
  }
  s << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kLeft + plot_w + 15;
    s << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y << "\" stroke=\""
      << legend_colors[i] << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << x + 26 << "\" y=\"" << y + 4 << "\">" << detail::xml_escape(legend[i]) << "</text>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

inline void emit_svg(const Table& table, const std::string& path, const SvgOptions& options) {
  write_file(path, to_svg(table, options));
}

// ---------------------------------------------------------------------------
// Figure reproduction
// ---------------------------------------------------------------------------

struct FigurePanel {
  std::string file_stem;
  std::string pair_spec;
  std::string regime_spec;
  std::string title;
};

/// Panels for "fig1" (Bernoulli, delta 0.01), "fig2" (Gaussian, delta 0.05)
/// and "appF" (Bernoulli delta 0.1/0.2, Gaussian delta 0.1/0.3), each under the
/// constant 0.01, linear 1/n and exponential c = 20 D(P1||P0) regimes.
inline std::vector<FigurePanel> reproduction_panels(std::string_view which) {
  struct Setting {
    std::string stem;
    std::string pair;
    std::string label;
  };
  std::vector<Setting> settings;
  if (which == "fig1") {
    settings = {{"fig1", "bernoulli:0.5,0.51", "Bern(0.5) vs Bern(0.51)"}};
  } else if (which == "fig2") {
    settings = {{"fig2", "gaussian:2,0.05,1", "N(2,1) vs N(2.05,1)"}};
  } else if (which == "appF") {
    settings = {
        {"appF_bernoulli_d0.1", "bernoulli:0.5,0.6", "Bern(0.5) vs Bern(0.6)"},
        {"appF_bernoulli_d0.2", "bernoulli:0.5,0.7", "Bern(0.5) vs Bern(0.7)"},
        {"appF_gaussian_d0.1", "gaussian:2,0.1,1", "N(2,1) vs N(2.1,1)"},
        {"appF_gaussian_d0.3", "gaussian:2,0.3,1", "N(2,1) vs N(2.3,1)"},
    };
  } else {
    throw ConfigError("reproduce: unknown figure '" + std::string(which) + "' (expected fig1, fig2 or appF)");
  }
  const std::array<std::array<std::string, 3>, 3> regimes = {{
      {"constant", "constant:0.01", "eps = 0.01"},
      {"linear", "linear", "eps = 1/n"},
      {"exponential", "exponential-kl:20", "eps = exp(-nc), c = 20 D(P1||P0)"},
  }};
  std::vector<FigurePanel> panels;
  for (const auto& s : settings) {
    for (const auto& r : regimes) {
      panels.push_back({s.stem + "_" + r[0], s.pair, r[1], s.label + ", " + r[2]});
    }
  }
  return panels;
}

/// Every bound applicable to the pair.
inline std::vector<BoundName> applicable_bounds(const DistributionPair& pair) {
  std::vector<BoundName> out;
  for (BoundName b : kAllBounds) {
    if (b == BoundName::SmoothingOut && !pair.is_gaussian()) continue;
    out.push_back(b);
  }
  return out;
}

inline ExperimentGrid panel_grid(const FigurePanel& panel, const std::string& out_dir) {
  const DistributionPair pair = parse_pair(panel.pair_spec);
  ExperimentGrid g;
  g.pair_spec = panel.pair_spec;
  g.regime = parse_regime(panel.regime_spec, pair);
  g.n_values = figure_n_grid();
  g.bounds = applicable_bounds(pair);
  g.csv_path = out_dir + "/" + panel.file_stem + ".csv";
  g.svg_path = out_dir + "/" + panel.file_stem + ".svg";
  return g;
}

}  // namespace hypotest

#endif  // HYPOTEST_EXPERIMENTS_HPP
