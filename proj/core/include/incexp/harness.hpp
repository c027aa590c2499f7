#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "incexp/models.hpp"
#include "incexp/pathgen.hpp"

namespace incexp {

/// Pass thresholds. These are calibration choices, echoed in every summary.
struct Thresholds {
  double rel_tol = 0.05;      // relative error / gap verdicts
  double slope_margin = 0.15; // allowed shortfall of a fitted decay slope
  double se_slack = 1.0;      // standard errors of slack in monotonicity checks
  double skew_tol = 0.1;
  double kurt_tol = 0.2;
  double n_se = 3.0;          // SE multiplier in the normality check
  double mc_se = 4.0;         // SE multiplier in Monte Carlo vs oracle checks
};

struct ExperimentConfig {
  std::string model = "fbm:r=1.8";
  std::string f = "abs";
  double T = 2.0;
  std::size_t n = std::size_t{1} << 18;
  double a = 0.25;
  double b = 1.25;
  std::vector<std::size_t> h_list = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};  // grid units
  std::size_t R = 1000;
  std::uint64_t seed = 1;
  int j0 = 2;
  std::vector<int> orders = {1, 2};
  std::size_t threads = 0;
  std::string outdir = ".";
  Thresholds thresholds;
  std::size_t n_quad = 128;
  int J = 12;
  bool contrast = false;
  PathMethod method = PathMethod::circulant;
  std::size_t n_bins = 4096;
  // Regularity and kernel checks (absolute units).
  double M = 1.0;
  double kernel_h_max = 1e-2;
  double kernel_h_min = 1e-4;
  std::size_t kernel_points = 9;
  std::string dump_paths;
};

/// Sets one `key = value` entry; throws InvalidParameter on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` file; `#` starts a comment. Later keys override earlier ones.
ExperimentConfig load_config(const std::string& file, ExperimentConfig base = {});

/// Grid, window, and h-grid consistency; throws InvalidParameter.
void validate_grid(const ExperimentConfig& cfg);

/// Ordered (key, value) echo of every setting, values as they would be written in a config file.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

/// A named numeric table plus verdicts, the common output shape of every experiment.
struct Report {
  std::string experiment;
  /// When set, the CSV gains a leading `model` column holding this spec.
  std::string model_column;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Verdict> verdicts;
  /// Scalar results that are not per-row (fitted slopes, flags).
  std::map<std::string, double> scalars;

  bool all_pass() const;
};

/// F_h against the truncated chaos expansion sum_{j <= j0}; one row per h, h descending.
/// Columns h, m, h_over_sigma, l2_error, l2_error_se, normalized, normalized_se, f_l2,
/// last_term_l2, relative_error.
Report run_expansion(const ExperimentConfig& cfg);

/// (F_h - a0 (b-a)) / (h/sigma)^k0 against (a_k0/sqrt(k0!)) chaos(k0).
/// Columns h, m, h_over_sigma, distance, distance_se, target_l2, relative_distance,
/// relative_distance_se.
Report run_corollary_rank(const ExperimentConfig& cfg);

/// ||W_j(h) - chaos(j)||_2 per order and h. Columns j, h, m, l2, l2_se.
Report run_wick_rate(const ExperimentConfig& cfg);

/// Moments of (F_h - (b-a) a0) standardized by its Monte Carlo standard deviation.
/// Columns h, m, phi, phi_se, mean, mean_se, variance, variance_se, skewness, skewness_se,
/// excess_kurtosis, excess_kurtosis_se.
Report run_clt(const ExperimentConfig& cfg);

/// Phi(h) sigma(h) / h against sigma(b-a) |a1|. Columns h, m, phi, phi_se, scaled, scaled_se,
/// target, rel_gap.
Report run_variance_asymptotics(const ExperimentConfig& cfg);

/// Regularity report, sigma^2-from-rho identity, spectral cross-check where available.
Report run_models_check(const ExperimentConfig& cfg);

/// Scaled kernel integrals on a log h-grid over window length b - a.
Report run_kernel_limits(const ExperimentConfig& cfg);

/// Empirical increment covariances at lags 0..4 against the model; optional path dumps.
Report run_simulate(const ExperimentConfig& cfg);

/// Dispatch by CLI subcommand name.
Report run_experiment(const std::string& name, const ExperimentConfig& cfg);

/// `<outdir>/<experiment>.csv` (17 significant digits) and `<outdir>/<experiment>.summary.json`.
void write_report(const Report& report, const ExperimentConfig& cfg);
void write_csv(const Report& report, std::ostream& os);
std::string summary_json(const Report& report, const ExperimentConfig& cfg);

/// `git describe` of the source tree at configure time.
const char* build_version();

}  // namespace incexp
