#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "nufactor/density.hpp"
#include "nufactor/divisors.hpp"

namespace nufactor {

enum class Command { compare, minorant, divisor, density, saddle, sieve };

std::string_view to_string(Command command);
Command command_from_string(std::string_view name);

// Density used for predictions: auto picks the small-nu series below
// (log log x)^2 and the saddle formula above it.
enum class RegimeChoice { automatic, saddle, small_nu, landau };

std::string_view to_string(RegimeChoice regime);
RegimeChoice regime_from_string(std::string_view name);

struct ExperimentConfig {
  Command command = Command::compare;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned nu_min = 1;
  unsigned nu_max = 0;  // an empty range when below nu_min
  unsigned k_min = 2;
  unsigned k_max = 6;
  double a = 4.5;
  double c = 0.5;
  DivisorBoundConfig divisor;
  std::optional<CapMode> cap_mode;  // unset: every mode
  RegimeChoice regime = RegimeChoice::automatic;
  EulerProductConfig euler;
  std::optional<double> tau_cap;
  std::optional<double> t_cap;
  unsigned threads = 1;
  std::string output_path;
  std::uint64_t seed = 0;
  std::string cache_dir;
};

// Parses 64-bit integers written plainly or as exact scientific notation
// ("1e11"). Throws ParameterError otherwise.
std::uint64_t parse_count(std::string_view text);
double parse_real(std::string_view text);

// Applies one key = value setting. Keys accept '-' or '_' as separator.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Reads `key = value` lines; blank lines and text after '#' are ignored.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

struct RunSummary {
  std::size_t rows = 0;
  std::size_t row_errors = 0;
  bool shadow = false;  // an asymptotic-regime precondition failed at this x

  int exit_code() const { return row_errors == 0 ? 0 : 1; }
};

// Each writes a CSV report (a '#' header block with the resolved
// configuration, then a column header and one row per grid point). Row
// failures go to the `error` column; configuration errors throw.
RunSummary run_compare(const ExperimentConfig& cfg, std::ostream& out);
RunSummary run_minorant(const ExperimentConfig& cfg, std::ostream& out);
RunSummary run_divisor(const ExperimentConfig& cfg, std::ostream& out);
RunSummary run_density_table(const ExperimentConfig& cfg, std::ostream& out);
RunSummary run_saddle_diag(const ExperimentConfig& cfg, std::ostream& out);
RunSummary run_sieve(const ExperimentConfig& cfg, std::ostream& out);

RunSummary run_experiment(const ExperimentConfig& cfg, std::ostream& out);

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double v);

}  // namespace nufactor
