#include "incexp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "incexp/error.hpp"
#include "incexp/functionals.hpp"
#include "incexp/hermite_wick.hpp"
#include "incexp/monte_carlo.hpp"
#include "model_impl.hpp"

namespace incexp {

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

using detail::format_number;

// Everything an experiment needs that is derived from the config once.
struct Setup {
  IncrementVarianceModel model;
  Grid grid;
  std::vector<std::size_t> ms;  // lags in grid units, descending
  double delta;
  double length;  // (hi - lo) delta of the resolved window
};

Setup make_setup(const ExperimentConfig& cfg) {
  validate_grid(cfg);
  Setup s{parse_model(cfg.model), Grid{cfg.T, cfg.n}, cfg.h_list, 0.0, 0.0};
  std::sort(s.ms.begin(), s.ms.end(), std::greater<>());
  s.ms.erase(std::unique(s.ms.begin(), s.ms.end()), s.ms.end());
  s.delta = s.grid.delta();
  const auto w = window_index(s.grid, cfg.a, cfg.b, s.ms.front());
  s.length = w.length(s.delta);
  return s;
}

// Produces the path of replicate r; shared read-only across workers.
class PathSource {
 public:
  PathSource(const ExperimentConfig& cfg, const Setup& s) : base_(cfg.seed) {
    if (cfg.method == PathMethod::circulant) {
      circulant_ = std::make_unique<CirculantSampler>(s.model, s.grid);
    } else {
      spectral_ = std::make_unique<SpectralSynthesizer>(s.model, s.grid, cfg.n_bins);
    }
  }

  PathSample operator()(std::size_t r) const {
    const auto seed = replicate_seed(base_, r);
    return circulant_ ? circulant_->sample(seed) : spectral_->sample(seed);
  }

 private:
  std::uint64_t base_;
  std::unique_ptr<CirculantSampler> circulant_;
  std::unique_ptr<SpectralSynthesizer> spectral_;
};

double h_over_sigma(const Setup& s, std::size_t m) {
  const double h = static_cast<double>(m) * s.delta;
  return h / s.model.sigma(h);
}

// Indices (into rows sorted by h descending) of the bottom decade of h.
std::vector<std::size_t> bottom_decade(const Setup& s) {
  const double h_min = static_cast<double>(s.ms.back());
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.ms.size(); ++i) {
    if (static_cast<double>(s.ms[i]) <= 10.0 * h_min * (1.0 + 1e-12)) idx.push_back(i);
  }
  return idx;
}

// value[i] <= value[i-1] + slack * max(se[i], se[i-1]) along `idx`.
Verdict monotone_verdict(const std::string& name, const std::vector<std::size_t>& idx, const std::vector<double>& value,
                         const std::vector<double>& se, double slack) {
  bool ok = idx.size() >= 2;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < idx.size(); ++t) {
    const auto i = idx[t];
    const auto p = idx[t - 1];
    const double excess = value[i] - value[p] - slack * std::max(se[i], se[p]);
    worst = std::max(worst, excess);
    ok = ok && excess <= 0.0;
  }
  return {name, ok,
          "non-increasing as h decreases over the bottom decade of h, slack " + format_number(slack) + " SE",
          idx.size() >= 2 ? worst : std::numeric_limits<double>::quiet_NaN()};
}

HermiteCoeffs coefficients_for(const ExperimentConfig& cfg, int min_J) {
  const int J = std::max(cfg.J, min_J);
  return hermite_coeffs(parse_test_function(cfg.f), J, std::max(cfg.n_quad, 2 * static_cast<std::size_t>(J) + 2));
}

void require_order(const IncrementVarianceModel& model, int j, const std::string& what) {
  if (!model.supports_order(j)) {
    throw UnsupportedOrder(what + " = " + std::to_string(j) + " needs j*zeta < 1, but zeta = " +
                           format_number(model.zeta()) + " for " + model.spec());
  }
}

double power_over_sqrt_factorial(double ratio, int j) {
  double v = 1.0;
  for (int i = 1; i <= j; ++i) v *= ratio / std::sqrt(static_cast<double>(i));
  return v;
}

std::vector<double> chaos_refs(const PathSample& path, const Setup& s, const ExperimentConfig& cfg, int up_to) {
  std::vector<double> c(static_cast<std::size_t>(up_to) + 1);
  for (int j = 0; j <= up_to; ++j) c[static_cast<std::size_t>(j)] = chaos_reference(path, s.model, j, cfg.a, cfg.b, false).value;
  return c;
}

}  // namespace

Report run_expansion(const ExperimentConfig& cfg) {
  const Setup s = make_setup(cfg);
  if (cfg.j0 < 0) throw InvalidParameter("config: j0 must be nonnegative");
  require_order(s.model, cfg.j0, "j0");
  const auto coeffs = coefficients_for(cfg, cfg.j0);
  const auto f = parse_test_function(cfg.f);
  const PathSource source(cfg, s);
  const int j0 = cfg.j0;

  const auto table = mc::run_replicates(cfg.R, cfg.threads, [&](std::size_t r) {
    const PathSample path = source(r);
    const auto refs = chaos_refs(path, s, cfg, j0);
    std::vector<double> out;
    for (auto m : s.ms) {
      const double ratio = h_over_sigma(s, m);
      const double F = increment_functional(path, s.model, f, m, cfg.a, cfg.b).value;
      double S = 0.0;
      double last = 0.0;
      for (int j = 0; j <= j0; ++j) {
        last = power_over_sqrt_factorial(ratio, j) * coeffs.a[static_cast<std::size_t>(j)] * refs[static_cast<std::size_t>(j)];
        S += last;
      }
      out.insert(out.end(), {F - S, F, last});
    }
    return out;
  });

  Report rep;
  rep.experiment = "expand";
  rep.columns = {"h", "m", "h_over_sigma", "l2_error", "l2_error_se", "normalized", "normalized_se", "f_l2",
                 "last_term_l2", "relative_error"};
  std::vector<double> norm, norm_se, lx, ly;
  for (std::size_t i = 0; i < s.ms.size(); ++i) {
    const double ratio = h_over_sigma(s, s.ms[i]);
    const auto e = mc::l2_norm(mc::column(table, 3 * i));
    const auto fl2 = mc::l2_norm(mc::column(table, 3 * i + 1));
    const auto tl2 = mc::l2_norm(mc::column(table, 3 * i + 2));
    const double scale = std::pow(ratio, j0);
    norm.push_back(e.value / scale);
    norm_se.push_back(e.se / scale);
    rep.rows.push_back({static_cast<double>(s.ms[i]) * s.delta, static_cast<double>(s.ms[i]), ratio, e.value, e.se,
                        norm.back(), norm_se.back(), fl2.value, tl2.value, e.value / fl2.value});
    if (e.value > 0.0) {
      lx.push_back(std::log(ratio));
      ly.push_back(std::log(e.value));
    }
  }
  if (lx.size() >= 2) {
    const auto fit = fit_line(lx, ly);
    rep.scalars["slope"] = fit.slope;
    rep.scalars["slope_half_width"] = 1.96 * fit.slope_se;
  }
  rep.scalars["k0"] = coeffs.k0;
  rep.verdicts.push_back(
      monotone_verdict("normalized_error_decreasing", bottom_decade(s), norm, norm_se, cfg.thresholds.se_slack));
  if (j0 == 1 && coeffs.k0 == 1) {
    const double rel = rep.rows.back().back();
    rep.verdicts.push_back({"relative_error_at_smallest_h", rel <= cfg.thresholds.rel_tol,
                            "||F_h - S||_2 / ||F_h||_2 <= " + format_number(cfg.thresholds.rel_tol), rel});
  }
  return rep;
}

Report run_corollary_rank(const ExperimentConfig& cfg) {
  const Setup s = make_setup(cfg);
  const auto coeffs = coefficients_for(cfg, 1);
  const int k0 = hermite_rank(coeffs);
  if (!s.model.supports_order(k0)) {
    throw PreconditionError("Hermite rank " + std::to_string(k0) + " of " + cfg.f + " needs k0*zeta < 1, but zeta = " +
                            format_number(s.model.zeta()) + " for " + s.model.spec());
  }
  if (k0 > coeffs.J) throw InvalidParameter("config: J must be at least the Hermite rank");
  // h / (h^2/sigma^2(h))^k0 must shrink with h.
  std::string failing;
  for (std::size_t i = 1; i < s.ms.size(); ++i) {
    auto q = [&](std::size_t m) {
      const double h = static_cast<double>(m) * s.delta;
      return h / std::pow(h * h / s.model.sigma2(h), k0);
    };
    if (!(q(s.ms[i]) < q(s.ms[i - 1]))) failing += (failing.empty() ? "" : ", ") + format_number(static_cast<double>(s.ms[i]) * s.delta);
  }
  if (!failing.empty()) {
    throw PreconditionError("h = o((h^2/sigma^2(h))^k0) fails on the h grid for k0 = " + std::to_string(k0) +
                            " at h = " + failing);
  }
  const auto f = parse_test_function(cfg.f);
  const PathSource source(cfg, s);
  const double a0 = coeffs.a[0];
  const double ak = coeffs.a[static_cast<std::size_t>(k0)] / std::sqrt(std::tgamma(k0 + 1.0));

  const auto table = mc::run_replicates(cfg.R, cfg.threads, [&](std::size_t r) {
    const PathSample path = source(r);
    const double target = ak * chaos_reference(path, s.model, k0, cfg.a, cfg.b, false).value;
    std::vector<double> out;
    for (auto m : s.ms) {
      const double F = increment_functional(path, s.model, f, m, cfg.a, cfg.b).value;
      const double X = (F - a0 * s.length) / std::pow(h_over_sigma(s, m), k0);
      out.insert(out.end(), {X - target, target});
    }
    return out;
  });

  Report rep;
  rep.experiment = "rank";
  rep.columns = {"h", "m", "h_over_sigma", "distance", "distance_se", "target_l2", "relative_distance",
                 "relative_distance_se"};
  std::vector<double> dist, dist_se;
  const auto target = mc::l2_norm(mc::column(table, 1));
  for (std::size_t i = 0; i < s.ms.size(); ++i) {
    const auto d = mc::l2_norm(mc::column(table, 2 * i));
    dist.push_back(d.value);
    dist_se.push_back(d.se);
    rep.rows.push_back({static_cast<double>(s.ms[i]) * s.delta, static_cast<double>(s.ms[i]), h_over_sigma(s, s.ms[i]),
                        d.value, d.se, target.value, d.value / target.value, d.se / target.value});
  }
  rep.scalars["k0"] = k0;
  rep.scalars["a_k0"] = coeffs.a[static_cast<std::size_t>(k0)];
  rep.verdicts.push_back(monotone_verdict("distance_decreasing", bottom_decade(s), dist, dist_se, cfg.thresholds.se_slack));
  if (k0 == 1) {
    const double rel = rep.rows.back()[6];
    rep.verdicts.push_back({"relative_distance_at_smallest_h", rel <= cfg.thresholds.rel_tol,
                            "distance / ||a1 (G(b)-G(a))||_2 <= " + format_number(cfg.thresholds.rel_tol), rel});
  }
  return rep;
}

Report run_wick_rate(const ExperimentConfig& cfg) {
  const Setup s = make_setup(cfg);
  if (cfg.orders.empty()) throw InvalidParameter("config: orders is empty");
  for (int j : cfg.orders) {
    if (j < 0) throw InvalidParameter("config: orders must be nonnegative");
    require_order(s.model, j, "order j");
  }
  const PathSource source(cfg, s);
  const auto table = mc::run_replicates(cfg.R, cfg.threads, [&](std::size_t r) {
    const PathSample path = source(r);
    std::vector<double> out;
    for (int j : cfg.orders) {
      const double ref = chaos_reference(path, s.model, j, cfg.a, cfg.b, false).value;
      for (auto m : s.ms) out.push_back(wick_functional(path, s.model, j, m, cfg.a, cfg.b, false).value - ref);
    }
    return out;
  });

  Report rep;
  rep.experiment = "wick-rate";
  rep.columns = {"j", "h", "m", "l2", "l2_se"};
  std::size_t col = 0;
  for (int j : cfg.orders) {
    std::vector<double> lx, ly;
    double max_abs = 0.0;
    for (auto m : s.ms) {
      const auto values = mc::column(table, col++);
      for (double v : values) max_abs = std::max(max_abs, std::abs(v));
      const auto e = mc::l2_norm(values);
      const double h = static_cast<double>(m) * s.delta;
      rep.rows.push_back({static_cast<double>(j), h, static_cast<double>(m), e.value, e.se});
      if (e.value > 0.0) {
        lx.push_back(std::log(h));
        ly.push_back(std::log(e.value));
      }
    }
    const std::string tag = "j" + std::to_string(j);
    if (j == 0) {
      rep.verdicts.push_back({"zero_distance_" + tag, max_abs == 0.0, "W_0 - chaos_0 identically 0", max_abs});
      continue;
    }
    if (lx.size() < 2) throw InvalidParameter("wick-rate: need at least two h values with nonzero distance");
    const auto fit = fit_line(lx, ly);
    const double target = (1.0 - j * s.model.zeta()) / 2.0;
    rep.scalars["slope_" + tag] = fit.slope;
    rep.scalars["slope_se_" + tag] = fit.slope_se;
    rep.scalars["bound_exponent_" + tag] = target;
    rep.verdicts.push_back({"decay_slope_" + tag, fit.slope >= target - cfg.thresholds.slope_margin,
                            "fitted slope >= (1 - j zeta)/2 - " + format_number(cfg.thresholds.slope_margin) + " = " +
                                format_number(target - cfg.thresholds.slope_margin),
                            fit.slope});
  }
  return rep;
}

namespace {

bool clt_hypothesis(const IncrementVarianceModel& model) {
  const auto& p = model.params();
  if (p.family != "fbm" && p.family != "concave") return false;
  return p.exponents.size() == 1 && p.exponents[0] <= 1.5;
}

std::vector<std::vector<double>> functional_table(const ExperimentConfig& cfg, const Setup& s, const TestFunction& f,
                                                  double centre) {
  const PathSource source(cfg, s);
  return mc::run_replicates(cfg.R, cfg.threads, [&](std::size_t r) {
    const PathSample path = source(r);
    std::vector<double> out;
    for (auto m : s.ms) out.push_back(increment_functional(path, s.model, f, m, cfg.a, cfg.b).value - centre);
    return out;
  });
}

}  // namespace

Report run_clt(const ExperimentConfig& cfg) {
  const Setup s = make_setup(cfg);
  const bool hypothesis = clt_hypothesis(s.model);
  if (!hypothesis && !cfg.contrast) {
    throw PreconditionError("clt: " + s.model.spec() +
                            " is neither concave nor x^r with r <= 3/2 (set contrast = true for a contrast run)");
  }
  const auto coeffs = coefficients_for(cfg, 1);
  for (std::size_t k = 1; k < coeffs.a.size(); k += 2) {
    if (std::abs(coeffs.a[k]) > rank_tolerance) {
      throw PreconditionError("clt: " + cfg.f + " is not symmetric (a_" + std::to_string(k) + " = " +
                              format_number(coeffs.a[k]) + ")");
    }
  }
  const auto table = functional_table(cfg, s, parse_test_function(cfg.f), coeffs.a[0] * s.length);

  Report rep;
  rep.experiment = "clt";
  rep.columns = {"h", "m", "phi", "phi_se", "mean", "mean_se", "variance", "variance_se", "skewness", "skewness_se",
                 "excess_kurtosis", "excess_kurtosis_se"};
  mc::Moments last;
  for (std::size_t i = 0; i < s.ms.size(); ++i) {
    const auto x = mc::column(table, i);
    const auto phi = mc::standard_deviation(x);
    const auto mo = mc::moments(x);
    const double v = phi.value * phi.value;
    rep.rows.push_back({static_cast<double>(s.ms[i]) * s.delta, static_cast<double>(s.ms[i]), phi.value, phi.se,
                        mo.mean.value / phi.value, mo.mean.se / phi.value, mo.variance.value / v, mo.variance.se / v,
                        mo.skewness.value, mo.skewness.se, mo.excess_kurtosis.value, mo.excess_kurtosis.se});
    last = mo;
  }
  const auto& th = cfg.thresholds;
  const bool skew_ok = std::abs(last.skewness.value) <= th.skew_tol + th.n_se * last.skewness.se;
  const bool kurt_ok = std::abs(last.excess_kurtosis.value) <= th.kurt_tol + th.n_se * last.excess_kurtosis.se;
  rep.scalars["hypothesis_met"] = hypothesis ? 1.0 : 0.0;
  rep.scalars["skewness"] = last.skewness.value;
  rep.scalars["excess_kurtosis"] = last.excess_kurtosis.value;
  rep.verdicts.push_back({"normal_limit_at_smallest_h", skew_ok && kurt_ok,
                          "|skew| <= " + format_number(th.skew_tol) + " + " + format_number(th.n_se) +
                              " SE and |excess kurtosis| <= " + format_number(th.kurt_tol) + " + " +
                              format_number(th.n_se) + " SE",
                          last.excess_kurtosis.value});
  return rep;
}

Report run_variance_asymptotics(const ExperimentConfig& cfg) {
  const Setup s = make_setup(cfg);
  require_order(s.model, 1, "order");
  const auto coeffs = coefficients_for(cfg, 1);
  const double a1 = coeffs.a[1];
  if (std::abs(a1) <= rank_tolerance) {
    throw PreconditionError("variance: E[eta f(eta)] = " + format_number(a1) + " vanishes for " + cfg.f +
                            " (symmetric f has no first-order term)");
  }
  const auto table = functional_table(cfg, s, parse_test_function(cfg.f), coeffs.a[0] * s.length);
  const double target = s.model.sigma(s.length) * std::abs(a1);

  Report rep;
  rep.experiment = "variance";
  rep.columns = {"h", "m", "phi", "phi_se", "scaled", "scaled_se", "target", "rel_gap"};
  for (std::size_t i = 0; i < s.ms.size(); ++i) {
    const auto phi = mc::standard_deviation(mc::column(table, i));
    const double factor = 1.0 / h_over_sigma(s, s.ms[i]);
    const double scaled = phi.value * factor;
    rep.rows.push_back({static_cast<double>(s.ms[i]) * s.delta, static_cast<double>(s.ms[i]), phi.value, phi.se, scaled,
                        phi.se * factor, target, std::abs(scaled - target) / target});
  }
  rep.scalars["a1"] = a1;
  const double gap = rep.rows.back().back();
  rep.verdicts.push_back({"scaled_phi_at_smallest_h", gap <= cfg.thresholds.rel_tol,
                          "|Phi sigma(h)/h - sigma(b-a)|a1|| / target <= " + format_number(cfg.thresholds.rel_tol), gap});
  return rep;
}

Report run_models_check(const ExperimentConfig& cfg) {
  const auto model = parse_model(cfg.model);
  const auto reg = check_regularity(model, cfg.M);
  Report rep;
  rep.experiment = "models-check";
  rep.model_column = model.spec();
  rep.columns = {"h", "h2_over_sigma2", "sigma2_over_h", "sigma2", "rho"};
  for (std::size_t i = 0; i < reg.h_grid.size(); ++i) {
    const double h = reg.h_grid[i];
    rep.rows.push_back({h, reg.ratio_h2_over_sigma2[i], reg.ratio_sigma2_over_h[i], model.sigma2(h), model.rho(h)});
  }
  rep.verdicts = reg.verdicts;
  rep.scalars["rv_index_estimate"] = reg.rv_index_estimate;
  rep.scalars["rv_fit_residual"] = reg.rv_fit_residual;
  rep.scalars["zeta_estimate"] = reg.zeta_estimate;
  rep.scalars["second_difference_constant"] = reg.second_difference_constant;
  rep.scalars["C_M_estimate"] = reg.C_M_estimate;
  rep.scalars["lipschitz_ratio_max"] = reg.lipschitz_ratio_max;
  std::vector<double> xs;
  for (int i = 0; i <= 12; ++i) xs.push_back(cfg.M * std::pow(10.0, -3.0 + 0.25 * i));
  if (model.zeta() < 1.0) {
    const double err = sigma2_from_rho_consistency(model, xs);
    rep.scalars["sigma2_from_rho_max_rel_error"] = err;
    rep.verdicts.push_back({"sigma2_from_rho_identity", err <= 1e-4,
                            "max relative error of 2 int_0^x (x-s) rho over x in [1e-3 M, M] <= 1e-4", err});
  }
  if (model.spectral_density()) {
    double worst = 0.0;
    for (double x : xs) {
      const double direct = model.sigma2(x);
      worst = std::max(worst, std::abs(sigma2_from_spectral(*model.spectral_density(), x) - direct) / direct);
    }
    rep.scalars["spectral_max_rel_error"] = worst;
    rep.verdicts.push_back({"spectral_route_agreement", worst <= 1e-8,
                            "spectral-quadrature sigma^2 vs model sigma^2, relative <= 1e-8", worst});
  }
  return rep;
}

Report run_kernel_limits(const ExperimentConfig& cfg) {
  const auto model = parse_model(cfg.model);
  if (cfg.kernel_points < 2 || !(cfg.kernel_h_min > 0.0) || !(cfg.kernel_h_max > cfg.kernel_h_min)) {
    throw InvalidParameter("config: kernel h grid needs 0 < kernel_h_min < kernel_h_max and >= 2 points");
  }
  std::vector<double> hs;
  const double step = std::log(cfg.kernel_h_max / cfg.kernel_h_min) / static_cast<double>(cfg.kernel_points - 1);
  for (std::size_t i = 0; i < cfg.kernel_points; ++i) hs.push_back(cfg.kernel_h_max * std::exp(-step * static_cast<double>(i)));
  hs.back() = cfg.kernel_h_min;
  const auto table = kernel_limits_check(model, cfg.orders, hs, cfg.b - cfg.a);
  Report rep;
  rep.experiment = "kernel-limits";
  rep.model_column = model.spec();
  rep.columns = {"k", "h", "I_k", "scaled", "oracle", "rel_gap"};
  for (const auto& r : table.rows) rep.rows.push_back({static_cast<double>(r.k), r.h, r.I_k, r.scaled, r.oracle, r.rel_gap});
  rep.verdicts = table.verdicts;
  return rep;
}

Report run_simulate(const ExperimentConfig& cfg) {
  const auto model = parse_model(cfg.model);
  const Grid grid{cfg.T, cfg.n};
  grid.validate();
  if (cfg.R < 8) throw InvalidParameter("config: R must be at least 8");
  constexpr std::size_t lags = 5;
  if (grid.n <= lags) throw InvalidParameter("config: n too small for lag-4 covariances");
  Setup s{model, grid, {1}, grid.delta(), 0.0};
  const PathSource source(cfg, s);
  if (!cfg.dump_paths.empty()) std::filesystem::create_directories(cfg.dump_paths);
  const auto table = mc::run_replicates(cfg.R, cfg.threads, [&](std::size_t r) {
    const PathSample path = source(r);
    if (!cfg.dump_paths.empty()) {
      write_path(path, (std::filesystem::path(cfg.dump_paths) / ("path_" + std::to_string(r) + ".bin")).string());
    }
    const auto& G = path.values;
    std::vector<double> out;
    for (std::size_t l = 0; l < lags; ++l) {
      double acc = 0.0;
      for (std::size_t i = 0; i + l < grid.n; ++i) acc += (G[i + 1] - G[i]) * (G[i + l + 1] - G[i + l]);
      out.push_back(acc / static_cast<double>(grid.n - l));
    }
    out.push_back(G.back());
    return out;
  });
  Report rep;
  rep.experiment = "simulate";
  rep.model_column = model.spec();
  rep.columns = {"lag", "empirical", "se", "exact", "z"};
  for (std::size_t l = 0; l < lags; ++l) {
    const auto e = mc::mean(mc::column(table, l));
    const double exact = increment_covariance(model, grid.delta(), l);
    const double z = (e.value - exact) / e.se;
    rep.rows.push_back({static_cast<double>(l), e.value, e.se, exact, z});
    rep.verdicts.push_back({"increment_covariance_lag" + std::to_string(l), std::abs(z) <= cfg.thresholds.mc_se,
                            "|empirical - exact| <= " + format_number(cfg.thresholds.mc_se) + " SE", z});
  }
  const auto var_T = mc::variance(mc::column(table, lags));
  rep.scalars["var_G_T"] = var_T.value;
  rep.scalars["var_G_T_se"] = var_T.se;
  rep.scalars["sigma2_T"] = model.sigma2(grid.T);
  return rep;
}

Report run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "models-check") return run_models_check(cfg);
  if (name == "kernel-limits") return run_kernel_limits(cfg);
  if (name == "simulate") return run_simulate(cfg);
  if (name == "expand") return run_expansion(cfg);
  if (name == "rank") return run_corollary_rank(cfg);
  if (name == "wick-rate") return run_wick_rate(cfg);
  if (name == "clt") return run_clt(cfg);
  if (name == "variance") return run_variance_asymptotics(cfg);
  throw InvalidParameter("unknown experiment '" + name + "'");
}

}  // namespace incexp
