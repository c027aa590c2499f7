// Command line front end: one subcommand per experiment, each writing
// <outdir>/<experiment>.csv and <outdir>/<experiment>.summary.json.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incexp/error.hpp"
#include "incexp/harness.hpp"

namespace {

struct Overrides {
  std::string config;
  std::vector<std::pair<std::string, std::string>> flags;  // (key, value) in application order
  std::vector<std::string> sets;
  bool contrast = false;
};

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

constexpr Flag common_flags[] = {
    {"--model", "model", "increment-variance model spec, e.g. fbm:r=1.8"},
    {"--f", "f", "test function spec, e.g. abs, hermite:k=2, poly:0,1,0,1"},
    {"--T", "T", "horizon"},
    {"--n", "n", "grid steps (power of two, 2^k accepted)"},
    {"--window", "window", "a,b"},
    {"--h-list", "h_list", "lags in grid units, comma separated"},
    {"--R", "R", "Monte Carlo replicates"},
    {"--seed", "seed", "base seed"},
    {"--j0", "j0", "expansion order"},
    {"--orders", "orders", "orders, comma separated"},
    {"--threads", "threads", "worker threads (0 = all cores)"},
    {"--outdir", "outdir", "output directory"},
    {"--method", "method", "circulant | spectral"},
    {"--M", "M", "upper end of the regularity grid"},
};

void add_common(CLI::App* sub, Overrides& o, std::vector<std::pair<std::string, std::optional<std::string>>>& slots) {
  sub->add_option("--config", o.config, "flat key = value config file");
  for (const auto& f : common_flags) slots.emplace_back(f.key, std::nullopt);
  for (std::size_t i = 0; i < std::size(common_flags); ++i) {
    sub->add_option(common_flags[i].name, slots[slots.size() - std::size(common_flags) + i].second, common_flags[i].help);
  }
  sub->add_option("--set", o.sets, "extra key=value settings (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Increment functionals of Gaussian processes with stationary increments: chaos expansions, "
               "kernel limits and Monte Carlo checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(incexp::build_version()));

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"models-check", "regularity certification of a model"},
      {"kernel-limits", "scaled kernel integrals against their limits"},
      {"simulate", "synthesize paths and check increment covariances"},
      {"expand", "increment functional against its truncated chaos expansion"},
      {"rank", "first chaos term at the Hermite rank"},
      {"wick-rate", "decay of Wick functionals toward the chaos"},
      {"clt", "normality of the standardized functional"},
      {"variance", "variance asymptotics for rank-one functions"},
  };

  Overrides o;
  std::vector<std::pair<std::string, std::optional<std::string>>> slots;
  slots.reserve(std::size(common_flags) * commands.size());
  std::string dump_paths;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o, slots);
    if (name == "clt") sub->add_flag("--contrast", o.contrast, "allow models outside the CLT hypothesis");
    if (name == "simulate") sub->add_option("--dump-paths", dump_paths, "write each path as a binary file here");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  try {
    incexp::ExperimentConfig cfg;
    if (experiment == "clt" || experiment == "variance") {
      cfg.n = std::size_t{1} << 16;
      cfg.h_list = {16, 32, 64, 128, 256, 512, 1024};
    }
    if (!o.config.empty()) cfg = incexp::load_config(o.config, cfg);
    for (const auto& [key, value] : slots) {
      if (value) incexp::apply_setting(cfg, key, *value);
    }
    for (const auto& kv : o.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw incexp::InvalidParameter("--set expects key=value, got '" + kv + "'");
      incexp::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.contrast) cfg.contrast = true;
    if (!dump_paths.empty()) cfg.dump_paths = dump_paths;

    const auto report = incexp::run_experiment(experiment, cfg);
    incexp::write_report(report, cfg);
    for (const auto& v : report.verdicts) {
      std::printf("%-44s %s  value=%.6g  (%s)\n", v.name.c_str(), v.pass ? "PASS" : "FAIL", v.value, v.threshold.c_str());
    }
    std::printf("wrote %s/%s.csv and %s.summary.json\n", cfg.outdir.c_str(), report.experiment.c_str(),
                report.experiment.c_str());
    return report.all_pass() ? 0 : 1;
  } catch (const incexp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == incexp::Error::Kind::numerical ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
