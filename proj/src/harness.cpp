#include "nufactor/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nufactor/counts.hpp"
#include "nufactor/errors.hpp"
#include "nufactor/minorants.hpp"
#include "nufactor/params.hpp"
#include "nufactor/sieve.hpp"

namespace nufactor {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '-', '_');
  std::transform(k.begin(), k.end(), k.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return k;
}

unsigned parse_unsigned(std::string_view text) {
  const std::uint64_t v = parse_count(text);
  if (v > 1'000'000) throw ParameterError("value out of range: " + std::string(text));
  return static_cast<unsigned>(v);
}

std::optional<double> parse_cap(std::string_view text) {
  const auto t = trim(text);
  if (t == "none" || t.empty()) return std::nullopt;
  return parse_real(t);
}

std::string cap_text(const std::optional<double>& cap) {
  return cap ? format_real(*cap) : std::string("none");
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void meta(std::string_view key, const std::string& value) {
    out_ << "# " << key << " = " << value << '\n';
  }
  void columns(std::initializer_list<std::string_view> names) {
    columns_ = names.size();
    bool first = true;
    for (auto n : names) {
      out_ << (first ? "" : ",") << n;
      first = false;
    }
    out_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::size_t width() const { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

std::string csv_text(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

std::string u64(std::uint64_t v) { return std::to_string(v); }
std::string flag(bool v) { return v ? "true" : "false"; }

double log_x_of(std::uint64_t x) { return std::log(static_cast<double>(x)); }

void write_common_header(CsvWriter& w, const ExperimentConfig& cfg, bool shadow,
                         const std::vector<std::string>& warnings) {
  w.meta("format", "nufactor-csv-1");
  w.meta("command", std::string(to_string(cfg.command)));
  w.meta("x", u64(cfg.x));
  w.meta("y", u64(cfg.y));
  w.meta("nu_min", u64(cfg.nu_min));
  w.meta("nu_max", u64(cfg.nu_max));
  w.meta("k_min", u64(cfg.k_min));
  w.meta("k_max", u64(cfg.k_max));
  w.meta("a", format_real(cfg.a));
  w.meta("c", format_real(cfg.c));
  w.meta("B", format_real(cfg.divisor.B));
  w.meta("gamma", format_real(cfg.divisor.gamma));
  w.meta("epsilon", format_real(cfg.divisor.epsilon));
  w.meta("cap_mode", cfg.cap_mode ? std::string(to_string(*cfg.cap_mode)) : "all");
  w.meta("regime_choice", std::string(to_string(cfg.regime)));
  w.meta("prime_limit", u64(cfg.euler.prime_limit));
  w.meta("tail_tolerance", format_real(cfg.euler.tail_tolerance));
  w.meta("newton_tolerance", format_real(cfg.euler.newton_tolerance));
  w.meta("max_newton_iterations", u64(cfg.euler.max_newton_iterations));
  w.meta("tau_cap", cap_text(cfg.tau_cap));
  w.meta("t_cap", cap_text(cfg.t_cap));
  w.meta("seed", u64(cfg.seed));
  w.meta("regime", shadow ? "shadow" : "asymptotic");
  for (const auto& warning : warnings) w.meta("warning", csv_text(warning));
}

PrimeTable table_for(const ExperimentConfig& cfg, std::uint64_t top) {
  return cached_prime_table(std::max<std::uint64_t>(isqrt(top), 2), cfg.cache_dir);
}

SieveOptions sieve_options(const ExperimentConfig& cfg) {
  SieveOptions o;
  o.threads = std::max(1u, cfg.threads);
  return o;
}

void check_interval(const ExperimentConfig& cfg) {
  if (cfg.y < 1) throw PreconditionError("y must be at least 1");
  if (cfg.x > UINT64_MAX - cfg.y) throw BoundsError("x + y overflows 64 bits");
}

std::vector<unsigned> nu_grid(const ExperimentConfig& cfg) {
  std::vector<unsigned> g;
  for (unsigned nu = cfg.nu_min; nu <= cfg.nu_max; ++nu) g.push_back(nu);
  return g;
}

DensityEstimate predict(unsigned nu, double log_x, const ExperimentConfig& cfg) {
  RegimeChoice r = cfg.regime;
  if (r == RegimeChoice::automatic) {
    const double l2 = log2_of(log_x);
    r = nu < l2 * l2 ? RegimeChoice::small_nu : RegimeChoice::saddle;
  }
  switch (r) {
    case RegimeChoice::small_nu:
      return density_small_nu(nu, log_x, cfg.euler);
    case RegimeChoice::landau:
      return density_landau(nu, log_x);
    default:
      return density_ht(nu, log_x, cfg.euler);
  }
}

// Runs `fill` for one row. On failure the cells after `lead` become nan and
// the message goes to the error column.
template <class Fill>
void guarded_row(CsvWriter& w, RunSummary& s, std::vector<std::string> lead, Fill&& fill) {
  std::vector<std::string> cells = lead;
  std::string error;
  try {
    fill(cells);
  } catch (const std::exception& e) {
    error = csv_text(e.what());
    cells = lead;
    ++s.row_errors;
  }
  while (cells.size() + 1 < w.width()) cells.emplace_back("nan");
  cells.push_back(error);
  w.row(cells);
  ++s.rows;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::compare:
      return "compare";
    case Command::minorant:
      return "minorant";
    case Command::divisor:
      return "divisor";
    case Command::density:
      return "density";
    case Command::saddle:
      return "saddle";
    case Command::sieve:
      return "sieve";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::compare, Command::minorant, Command::divisor, Command::density,
                    Command::saddle, Command::sieve}) {
    if (to_string(c) == name) return c;
  }
  throw ParameterError("unknown command: " + std::string(name));
}

std::string_view to_string(RegimeChoice regime) {
  switch (regime) {
    case RegimeChoice::automatic:
      return "auto";
    case RegimeChoice::saddle:
      return "saddle";
    case RegimeChoice::small_nu:
      return "smallNuSeries";
    case RegimeChoice::landau:
      return "landau";
  }
  return "unknown";
}

RegimeChoice regime_from_string(std::string_view name) {
  if (name == "auto") return RegimeChoice::automatic;
  if (name == "saddle") return RegimeChoice::saddle;
  if (name == "smallNuSeries" || name == "small") return RegimeChoice::small_nu;
  if (name == "landau") return RegimeChoice::landau;
  throw ParameterError("unknown regime: " + std::string(name));
}

std::uint64_t parse_count(std::string_view text) {
  const auto t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size()) return v;
  // Exact scientific notation such as 1e11 or 2.5e6.
  const double d = parse_real(t);
  if (!(d >= 0) || d >= 1.8446744073709552e19 || d != std::floor(d) || d > 9.007199254740992e15) {
    throw ParameterError("not a non-negative integer: " + std::string(t));
  }
  return static_cast<std::uint64_t>(d);
}

double parse_real(std::string_view text) {
  const auto t = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParameterError("not a number: " + std::string(t));
  }
  return v;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = normalize_key(key_in);
  const std::string_view value = trim(value_in);
  if (key == "command") {
    cfg.command = command_from_string(value);
  } else if (key == "x") {
    cfg.x = parse_count(value);
  } else if (key == "y") {
    cfg.y = parse_count(value);
  } else if (key == "nu_min") {
    cfg.nu_min = parse_unsigned(value);
  } else if (key == "nu_max") {
    cfg.nu_max = parse_unsigned(value);
  } else if (key == "k_min") {
    cfg.k_min = parse_unsigned(value);
  } else if (key == "k_max") {
    cfg.k_max = parse_unsigned(value);
  } else if (key == "a") {
    cfg.a = parse_real(value);
  } else if (key == "c") {
    cfg.c = parse_real(value);
  } else if (key == "b") {
    cfg.divisor.B = parse_real(value);
  } else if (key == "gamma") {
    cfg.divisor.gamma = parse_real(value);
  } else if (key == "epsilon") {
    cfg.divisor.epsilon = parse_real(value);
  } else if (key == "cap_mode") {
    if (value == "all") {
      cfg.cap_mode.reset();
    } else {
      cfg.cap_mode = cap_mode_from_string(value);
    }
  } else if (key == "regime") {
    cfg.regime = regime_from_string(value);
  } else if (key == "prime_limit") {
    cfg.euler.prime_limit = parse_count(value);
  } else if (key == "tol" || key == "tail_tolerance") {
    cfg.euler.tail_tolerance = parse_real(value);
  } else if (key == "newton_tolerance") {
    cfg.euler.newton_tolerance = parse_real(value);
  } else if (key == "max_newton_iterations") {
    cfg.euler.max_newton_iterations = parse_unsigned(value);
  } else if (key == "tau_cap") {
    cfg.tau_cap = parse_cap(value);
  } else if (key == "t_cap") {
    cfg.t_cap = parse_cap(value);
  } else if (key == "threads") {
    cfg.threads = parse_unsigned(value);
  } else if (key == "out" || key == "output") {
    cfg.output_path = std::string(value);
  } else if (key == "seed") {
    cfg.seed = parse_count(value);
  } else if (key == "cache_dir") {
    cfg.cache_dir = std::string(value);
  } else {
    throw ParameterError("unknown configuration key: " + std::string(key_in));
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

RunSummary run_compare(const ExperimentConfig& cfg, std::ostream& out) {
  check_interval(cfg);
  const bool long_count = cfg.x == 0;
  // A long count compares pi_nu(y) with y delta_nu(y).
  const std::uint64_t scale = long_count ? cfg.y : cfg.x;
  if (scale < 16) throw PreconditionError("compare needs max(x, y) >= 16");
  const double log_x = log_x_of(scale);
  std::vector<std::string> warnings;
  bool shadow = false;
  if (!long_count) {
    const double lo = std::pow(static_cast<double>(cfg.x), 17.0 / 30.0);
    if (static_cast<double>(cfg.y) < lo || cfg.y > cfg.x) {
      warnings.push_back("y outside x^(17/30+eps) <= y <= x");
      shadow = true;
    }
  }
  const auto grid = nu_grid(cfg);
  if (!grid.empty() && grid.back() > script_L(2.0, log_x)) shadow = true;
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  CsvWriter w(out);
  write_common_header(w, cfg, shadow, warnings);
  w.columns({"x", "y", "nu", "exact", "predicted", "ratio", "regime", "log_delta", "error_scale",
             "error"});
  RunSummary s;
  s.shadow = shadow;
  if (grid.empty()) return s;
  const auto hist = pi_nu(cfg.x, cfg.y, OmegaMode::distinct, table_for(cfg, cfg.x + cfg.y),
                          sieve_options(cfg));
  for (unsigned nu : grid) {
    const std::uint64_t exact = hist.count(nu);
    guarded_row(w, s, {u64(cfg.x), u64(cfg.y), u64(nu), u64(exact)}, [&](auto& cells) {
      const DensityEstimate d = predict(nu, log_x, cfg);
      const double predicted = static_cast<double>(cfg.y) * std::exp(d.log_delta);
      const CountRecord r = make_count_record(cfg.x, cfg.y, nu, exact, predicted);
      cells.push_back(format_real(r.predicted));
      cells.push_back(format_real(r.ratio));
      cells.emplace_back(to_string(d.regime));
      cells.push_back(format_real(d.log_delta));
      cells.push_back(format_real(d.error_scale));
    });
  }
  return s;
}

RunSummary run_minorant(const ExperimentConfig& cfg, std::ostream& out) {
  check_interval(cfg);
  if (cfg.x < 16) throw PreconditionError("minorant needs x >= 16");
  if (!(cfg.a > 4.0)) throw ParameterError("minorant needs a > 4");
  const double log_x = log_x_of(cfg.x);
  const auto grid = nu_grid(cfg);
  const bool clamps = cfg.tau_cap.has_value() || cfg.t_cap.has_value();
  const double simple_range = log2_of(log_x) / std::pow(log3_of(log_x), 0.75);
  bool shadow = clamps;
  if (!grid.empty() && grid.back() > script_L(cfg.a, log_x)) shadow = true;

  CsvWriter w(out);
  write_common_header(w, cfg, shadow, {});
  w.meta("simple_anatomy_nu_bound", format_real(simple_range));
  w.columns({"nu", "pi_nu", "m_prime_pairs", "m_prime_distinct", "m_sharp", "capture_prime",
             "capture_prime_literal", "capture_sharp", "tau", "t", "ell", "clamps_active",
             "degenerate", "error"});
  RunSummary s;
  s.shadow = shadow;
  if (grid.empty()) return s;
  const PrimeTable table = table_for(cfg, cfg.x + cfg.y);
  const SieveOptions opts = sieve_options(cfg);
  const auto hist = pi_nu(cfg.x, cfg.y, OmegaMode::distinct, table, opts);
  MinorantCaps caps;
  caps.tau_cap = cfg.tau_cap;
  caps.t_cap = cfg.t_cap;
  for (unsigned nu : grid) {
    const std::uint64_t pi = hist.count(nu);
    guarded_row(w, s, {u64(nu), u64(pi)}, [&](auto& cells) {
      const MinorantParams p = resolve_minorant_params(cfg.x, nu, cfg.a, caps);
      const MinorantPrimeCount mp = minorant_prime(cfg.x, cfg.y, nu, p, table, opts);
      const MinorantSharpCount ms = minorant_sharp(cfg.x, cfg.y, nu, p, table, opts);
      const double denom = static_cast<double>(pi);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      cells.push_back(u64(mp.pairs));
      cells.push_back(u64(mp.distinct));
      cells.push_back(u64(ms.count));
      cells.push_back(format_real(pi ? static_cast<double>(mp.distinct) / denom : nan));
      cells.push_back(format_real(pi ? static_cast<double>(mp.pairs) / denom : nan));
      cells.push_back(format_real(pi ? static_cast<double>(ms.count) / denom : nan));
      cells.push_back(format_real(p.tau));
      cells.push_back(format_real(p.t));
      cells.push_back(format_real(p.ell));
      cells.push_back(flag(p.clamped()));
      cells.push_back(flag(ms.degenerate));
    });
  }
  return s;
}

RunSummary run_divisor(const ExperimentConfig& cfg, std::ostream& out) {
  check_interval(cfg);
  if (cfg.x < 16) throw PreconditionError("divisor needs x >= 16");
  const double log_x = log_x_of(cfg.x);
  std::vector<std::string> warnings;
  bool shadow = false;
  if (static_cast<double>(cfg.y) < std::pow(static_cast<double>(cfg.x), 17.0 / 30.0)) {
    warnings.push_back("y below x^(17/30+eps)");
    shadow = true;
  }
  if (cfg.k_max >= 2 && cfg.k_max > script_L(cfg.divisor.gamma, log_x)) shadow = true;
  for (const auto& warning : warnings) std::fprintf(stderr, "warning: %s\n", warning.c_str());

  CsvWriter w(out);
  write_common_header(w, cfg, shadow, warnings);
  w.columns({"k", "cap_mode", "cap", "terms", "total", "log_total", "paper_bound",
             "within_bound", "log_ratio", "sharp_bound", "sharp_within", "error"});
  RunSummary s;
  s.shadow = shadow;
  if (cfg.k_min > cfg.k_max) return s;
  const PrimeTable table = table_for(cfg, cfg.x + cfg.y);
  const SieveOptions opts = sieve_options(cfg);
  std::vector<CapMode> modes;
  if (cfg.cap_mode) {
    modes.push_back(*cfg.cap_mode);
  } else {
    modes = {CapMode::omega, CapMode::big_omega, CapMode::none};
  }
  for (unsigned k = cfg.k_min; k <= cfg.k_max; ++k) {
    for (CapMode mode : modes) {
      guarded_row(w, s, {u64(k), std::string(to_string(mode))}, [&](auto& cells) {
        const auto r = short_divisor_sum_a(cfg.x, cfg.y, k, cfg.a, mode, table, cfg.divisor, opts);
        cells.push_back(format_real(r.cap));
        cells.push_back(u64(r.terms));
        cells.push_back(format_real(r.total));
        cells.push_back(format_real(r.log_total));
        cells.push_back(format_real(r.paper_bound));
        cells.push_back(flag(r.within_bound));
        cells.push_back(format_real(r.log_ratio));
        cells.push_back(format_real(r.sharp_bound));
        cells.push_back(flag(r.sharp_within));
      });
    }
  }
  return s;
}

RunSummary run_density_table(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.x < 16) throw PreconditionError("density needs x >= 16");
  const double log_x = log_x_of(cfg.x);
  const auto grid = nu_grid(cfg);
  const bool shadow = !grid.empty() && grid.back() > script_L(2.0, log_x);
  CsvWriter w(out);
  write_common_header(w, cfg, shadow, {});
  w.columns({"nu", "L", "log_delta", "regime", "log_delta_saddle", "log_delta_small_nu",
             "log_delta_landau", "crude_lower", "crude_upper", "error_scale", "e_nu",
             "in_asymptotic_range", "error"});
  RunSummary s;
  s.shadow = shadow;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (unsigned nu : grid) {
    guarded_row(w, s, {u64(nu), format_real(scale_L(nu, log_x))}, [&](auto& cells) {
      const DensityEstimate chosen = predict(nu, log_x, cfg);
      const SaddlePoint sp = solve_saddle(nu, log_x, cfg.euler);
      const DensityEstimate ht = density_ht(sp);
      const double l2 = log2_of(log_x);
      const double small = nu < l2 * l2 ? density_small_nu(sp, cfg.euler).log_delta : nan;
      CrudeBounds crude{nan, nan};
      if (nu == 1 || scale_L(nu, log_x) > 0) crude = density_crude_bounds(nu, log_x);
      cells.push_back(format_real(chosen.log_delta));
      cells.emplace_back(to_string(chosen.regime));
      cells.push_back(format_real(ht.log_delta));
      cells.push_back(format_real(small));
      cells.push_back(format_real(density_landau(nu, log_x).log_delta));
      cells.push_back(format_real(crude.lower));
      cells.push_back(format_real(crude.upper));
      cells.push_back(format_real(chosen.error_scale));
      cells.push_back(format_real(chosen.e_nu));
      cells.push_back(flag(chosen.in_asymptotic_range));
    });
  }
  return s;
}

RunSummary run_saddle_diag(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.x < 16) throw PreconditionError("saddle needs x >= 16");
  const double log_x = log_x_of(cfg.x);
  const auto grid = nu_grid(cfg);
  const bool shadow = !grid.empty() && grid.back() > script_L(2.0, log_x);
  CsvWriter w(out);
  write_common_header(w, cfg, shadow, {});
  w.columns({"nu", "rho", "alpha", "residual_r", "residual_a", "objective", "iterations",
             "used_fallback", "prime_limit", "tail_error", "rho_over_nu_on_L",
             "alpha_excess_over_rho_on_logx", "error"});
  RunSummary s;
  s.shadow = shadow;
  for (unsigned nu : grid) {
    guarded_row(w, s, {u64(nu)}, [&](auto& cells) {
      const SaddlePoint sp = solve_saddle(nu, log_x, cfg.euler);
      const double L = scale_L(nu, log_x);
      cells.push_back(format_real(sp.rho));
      cells.push_back(format_real(sp.alpha));
      cells.push_back(format_real(sp.residual_r));
      cells.push_back(format_real(sp.residual_a));
      cells.push_back(format_real(sp.objective));
      cells.push_back(u64(sp.iterations));
      cells.push_back(flag(sp.used_fallback));
      cells.push_back(u64(sp.truncation.prime_limit));
      cells.push_back(format_real(sp.tail_error));
      cells.push_back(format_real(sp.rho * L / nu));
      cells.push_back(format_real((sp.alpha - 1.0) * log_x / sp.rho));
    });
  }
  return s;
}

RunSummary run_sieve(const ExperimentConfig& cfg, std::ostream& out) {
  check_interval(cfg);
  CsvWriter w(out);
  write_common_header(w, cfg, false, {});
  const auto both =
      pi_nu_both(cfg.x, cfg.y, table_for(cfg, cfg.x + cfg.y), sieve_options(cfg));
  w.meta("total", u64(both.distinct.total()));
  w.columns({"nu", "count_distinct", "count_with_multiplicity", "error"});
  RunSummary s;
  const std::size_t top =
      std::max(both.distinct.counts_by_nu.size(), both.with_multiplicity.counts_by_nu.size());
  for (unsigned nu = 0; nu < top; ++nu) {
    w.row({u64(nu), u64(both.distinct.count(nu)), u64(both.with_multiplicity.count(nu)), ""});
    ++s.rows;
  }
  return s;
}

RunSummary run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::compare:
      return run_compare(cfg, out);
    case Command::minorant:
      return run_minorant(cfg, out);
    case Command::divisor:
      return run_divisor(cfg, out);
    case Command::density:
      return run_density_table(cfg, out);
    case Command::saddle:
      return run_saddle_diag(cfg, out);
    case Command::sieve:
      return run_sieve(cfg, out);
  }
  throw ParameterError("unknown command");
}

}  // namespace nufactor
