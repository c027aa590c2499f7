#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incexp/quadrature.hpp"

namespace incexp {

/// One-sided spectral density g on lambda > 0. The spectral measure is the symmetric
/// extension nu(d lambda) = g(|lambda|) d lambda.
struct SpectralDensity {
  std::function<double(double)> density;
  /// g vanishes below this frequency.
  double lower = 0.0;
  /// Optional closed form of int_L^inf g(lambda) d lambda.
  std::function<double(double)> tail_mass;
};

/// Model-specific parameters. Power-sum families store sigma^2(x) = sum_i w_i x^{e_i}.
struct ModelParams {
  std::string family;
  std::vector<double> weights;
  std::vector<double> exponents;
};

namespace detail {
class ModelImpl;
}

/// Increment variance sigma^2 of a Gaussian process with stationary increments, together
/// with rho = (sigma^2)''/2 and the regularity metadata the limit results depend on.
///
/// Cheap to copy (shared immutable implementation); all evaluators are pure and thread-safe.
class IncrementVarianceModel {
 public:
  explicit IncrementVarianceModel(std::shared_ptr<const detail::ModelImpl> impl);

  /// Canonical spec string; `parse_model(m.spec())` reproduces the model.
  const std::string& spec() const;
  const std::string& name() const;
  const ModelParams& params() const;

  /// sigma^2(x) for 0 <= x <= x_max(); sigma^2(0) == 0 exactly.
  double sigma2(double x) const;
  /// sigma(x) = sqrt(sigma^2(x)).
  double sigma(double x) const;
  /// rho(s), s > 0. Closed form when available, otherwise finite differences of sigma2.
  double rho(double s) const;
  /// Central second difference with step s*1e-4 and one Richardson step, for any model.
  double rho_finite_difference(double s) const;
  bool rho_is_closed_form() const;

  /// sigma^2(s+h) + sigma^2(|s-h|) - 2 sigma^2(s), free of cancellation where possible.
  double second_difference(double s, double h) const;

  double beta_index() const;
  double zeta() const;
  /// Order 0 always; order j >= 1 iff j * zeta < 1.
  bool supports_order(int j) const;
  int max_supported_order() const;

  const std::optional<SpectralDensity>& spectral_density() const;
  double x_max() const;
  /// Lower end of the default regularity-check grid.
  double asymptotic_floor() const;

 private:
  std::shared_ptr<const detail::ModelImpl> impl_;
};

// Constructors. Each validates its parameters and throws InvalidParameter.

/// sigma^2(x) = x^r, 0 < r <= 2. Brownian motion at r = 1.
IncrementVarianceModel make_fbm(double r);

/// sigma^2(x) = x^r with r <= 3/2: concave (r <= 1) or the boundary power-law class.
IncrementVarianceModel make_concave(double r);

/// sum_k a_k x^{beta_k}, a_k > 0, 1 < beta_k <= 2. beta = min beta_k, zeta = 2 - beta.
IncrementVarianceModel make_fb_mixture_discrete(std::vector<double> weights, std::vector<double> exponents);

/// psi(x) = int_beta^2 x^s dmu(s) for a measure given by quadrature nodes in [beta, 2] and
/// nonnegative weights. Requires int dmu(s)/(2-s) < infinity (no mass at s = 2).
IncrementVarianceModel make_fb_mixture_measure(std::vector<double> nodes, std::vector<double> weights,
                                               double beta);

/// psi(x) = x^beta * hat_rho(log 1/x), hat_rho the Laplace transform of a jump measure
/// d rho with jumps `jumps` at `locations` in [0, 2-beta).
IncrementVarianceModel make_fb_mixture_laplace(double beta, std::vector<double> locations,
                                               std::vector<double> jumps);

/// sigma^2 from the spectral density g(lambda) = (log lambda - 1)/lambda^3 on lambda >= e.
/// Behaves like u^2 log^2(1/u) at zero (regularly varying of index 2, rho ~ log^2).
IncrementVarianceModel make_log_spectral();

/// Measure on [beta, 2] whose distribution function is s -> F(s - beta) with
/// F(v) = v^p / Gamma(1+p) on [0, (2-beta)/2], discretised on geometric cells.
/// Then psi(x) ~ x^beta (log 1/x)^{-p} at zero.
struct MeasureNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};
MeasureNodes regularly_varying_measure(double beta, double p, std::size_t cells);

/// Parses `fbm:r=1.8`, `concave:r=1.0`, `fbmix:a=1,1;beta=1.7,1.9`,
/// `fbmeasure:beta=1.5;nodes=...;weights=...`, `fbmeasure:beta=1.5;p=1;cells=200`,
/// `fblaplace:beta=1.5;s=0,0.1;w=1,1`, `logspec`.
IncrementVarianceModel parse_model(std::string_view spec);

// Operations.

/// tau_h(s) = (sigma^2(s+h) + sigma^2(|s-h|) - 2 sigma^2(s)) / (2 sigma^2(h)); |tau_h| <= 1.
double tau_h(const IncrementVarianceModel& model, double h, double s);

struct SpectralQuadrature {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  /// Oscillation periods integrated explicitly beyond the split point before the tail closes.
  std::size_t max_periods = 4000;
};

/// 2 int_R (1 - cos 2 pi lambda u) nu(d lambda) by adaptive quadrature, split at
/// lambda = 1/(pi u) with period-by-period integration of the oscillatory part.
double sigma2_from_spectral(const SpectralDensity& density, double u, const SpectralQuadrature& quad = {});

/// max over `xs` of |2 int_0^x (x-s) rho(s) ds - sigma^2(x)| / sigma^2(x), graded-mesh quadrature.
/// Throws DomainError when zeta >= 1 (rho not locally integrable).
double sigma2_from_rho_consistency(const IncrementVarianceModel& model, const std::vector<double>& xs);

struct RegularityGrid {
  /// Smallest x; 0 selects model.asymptotic_floor().
  double x_min = 0.0;
  std::size_t points_per_decade = 10;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string threshold;
  double value = 0.0;
};

struct RegularityReport {
  std::string model_spec;
  double M = 1.0;
  std::vector<double> h_grid;  // decreasing
  std::vector<double> ratio_h2_over_sigma2;
  std::vector<double> ratio_sigma2_over_h;
  double rv_index_estimate = 0.0;
  double rv_fit_residual = 0.0;
  double second_difference_constant = 0.0;
  double zeta_estimate = 0.0;
  double C_M_estimate = 0.0;
  double lipschitz_ratio_max = 0.0;
  std::vector<Verdict> verdicts;

  bool all_pass() const;
};

/// Numerical certification of the regularity hypotheses on a log grid [x_min, M].
RegularityReport check_regularity(const IncrementVarianceModel& model, double M, const RegularityGrid& grid = {});

/// Least-squares slope and RMS residual of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double slope_se = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace incexp
