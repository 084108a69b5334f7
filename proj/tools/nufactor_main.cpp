#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nufactor/errors.hpp"
#include "nufactor/harness.hpp"

namespace {

struct Flag {
  const char* key;
  std::optional<std::string> value;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime-factor-count statistics in short intervals"};
  app.set_version_flag("--version", "nufactor 0.1.0");

  std::string command;
  app.add_option("command", command, "compare | minorant | divisor | density | saddle | sieve")
      ->required()
      ->check(CLI::IsMember({"compare", "minorant", "divisor", "density", "saddle", "sieve"}));

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  // Every flag below overrides the same key from the config file.
  std::vector<std::pair<std::string, Flag>> flags = {
      {"--x", {"x", {}}},
      {"--y", {"y", {}}},
      {"--nu-min", {"nu_min", {}}},
      {"--nu-max", {"nu_max", {}}},
      {"--a", {"a", {}}},
      {"--out", {"out", {}}},
      {"--threads", {"threads", {}}},
      {"--tau-cap", {"tau_cap", {}}},
      {"--t-cap", {"t_cap", {}}},
      {"--prime-limit", {"prime_limit", {}}},
      {"--tol", {"tol", {}}},
      {"--k-min", {"k_min", {}}},
      {"--k-max", {"k_max", {}}},
      {"--c", {"c", {}}},
      {"--B", {"B", {}}},
      {"--cap-mode", {"cap_mode", {}}},
      {"--regime", {"regime", {}}},
      {"--seed", {"seed", {}}},
  };
  for (auto& [name, flag] : flags) app.add_option(name, flag.value);

  CLI11_PARSE(app, argc, argv);

  try {
    nufactor::ExperimentConfig cfg;
    if (const char* dir = std::getenv("NUFACTOR_CACHE_DIR")) cfg.cache_dir = dir;
    if (config_path) nufactor::apply_config_file(cfg, *config_path);
    cfg.command = nufactor::command_from_string(command);
    for (const auto& [name, flag] : flags) {
      if (flag.value) nufactor::apply_setting(cfg, flag.key, *flag.value);
    }

    nufactor::RunSummary summary;
    if (cfg.output_path.empty() || cfg.output_path == "-") {
      summary = nufactor::run_experiment(cfg, std::cout);
      std::cout.flush();
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!out) throw nufactor::IoError("cannot write " + cfg.output_path);
      summary = nufactor::run_experiment(cfg, out);
      out.close();
      if (!out) throw nufactor::IoError("write failed: " + cfg.output_path);
    }
    if (summary.row_errors > 0) {
      std::fprintf(stderr, "nufactor: %zu of %zu rows failed\n", summary.row_errors,
                   summary.rows);
    }
    return summary.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "nufactor: error: %s\n", e.what());
    return 2;
  }
}
