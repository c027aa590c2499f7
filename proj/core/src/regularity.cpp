#include <algorithm>
#include <cmath>
#include <numbers>

#include "incexp/error.hpp"
#include "incexp/models.hpp"
#include "model_impl.hpp"

namespace incexp {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InvalidParameter("fit_line: need at least two matching points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidParameter("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  fit.slope_se = n > 2 ? std::sqrt(ss / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

double sigma2_from_spectral(const SpectralDensity& density, double u, const SpectralQuadrature& quad) {
  if (!(u >= 0.0)) throw DomainError("sigma2_from_spectral: u must be nonnegative");
  if (u == 0.0) return 0.0;
  const double pi = std::numbers::pi;
  const auto& g = density.density;
  // One-sided g, symmetric nu: 2 int_R (1 - cos) nu = 4 int_0^inf (1 - cos) g.
  // 1 - cos(2 pi lambda u) = 2 sin^2(pi lambda u), written without cancellation.
  auto one_minus_cos = [&](double lambda) {
    const double s = std::sin(pi * lambda * u);
    return 2.0 * s * s;
  };
  const double lo = density.lower > 0.0 ? density.lower : std::numeric_limits<double>::min();
  const double split = 1.0 / (pi * u);
  quad::AdaptiveOptions opts;
  opts.rel_tol = quad.rel_tol;
  opts.abs_tol = quad.abs_tol;

  double total = 0.0;
  double err = 0.0;
  if (lo < split) {
    // Non-oscillatory range, integrated in log lambda.
    const auto r = quad::integrate(
        [&](double t) {
          const double lambda = std::exp(t);
          return one_minus_cos(lambda) * g(lambda) * lambda;
        },
        std::log(lo), std::log(split), opts);
    if (!r.converged) {
      throw NumericalError("sigma2_from_spectral: low-frequency piece did not converge (error " +
                           detail::format_number(r.error) + ")");
    }
    total += r.value;
    err += r.error;
  }

  const double period = 1.0 / u;
  const double omega = 2.0 * pi * u;
  double start = std::max(lo, split);
  auto tail_mass = [&](double L) {
    if (density.tail_mass) return density.tail_mass(L);
    const auto r = quad::integrate([&](double t) { return t > 0.0 ? g(L / t) * L / (t * t) : 0.0; }, 0.0, 1.0, opts);
    return r.value;
  };
  for (std::size_t k = 0; k < quad.max_periods; ++k) {
    const double end = start + period;
    const auto r = quad::integrate([&](double lambda) { return one_minus_cos(lambda) * g(lambda); }, start, end, opts);
    total += r.value;
    err += r.error;
    start = end;
    // int_L^inf (1 - cos w l) g = int_L^inf g - int_L^inf cos(w l) g, the latter closed by three
    // integrations by parts; the neglected remainder is bounded by |g''(L)| / w^3.
    const double step = start * 1e-3;
    const double gm = g(start - step);
    const double g0 = g(start);
    const double gp = g(start + step);
    const double dg = (gp - gm) / (2.0 * step);
    const double d2g = (gp - 2.0 * g0 + gm) / (step * step);
    const double w3 = omega * omega * omega;
    const double remainder = std::abs(d2g) / w3;
    if (remainder <= 0.1 * quad.rel_tol * std::abs(total) || remainder <= quad.abs_tol) {
      const double sn = std::sin(omega * start);
      const double cs = std::cos(omega * start);
      const double cos_tail = -sn * g0 / omega - cs * dg / (omega * omega) + sn * d2g / w3;
      return 4.0 * (total + tail_mass(start) - cos_tail);
    }
  }
  throw NumericalError("sigma2_from_spectral: oscillatory tail not closed after " +
                       std::to_string(quad.max_periods) + " periods at u=" + detail::format_number(u) +
                       " (accumulated error " + detail::format_number(err) + ")");
}

double sigma2_from_rho_consistency(const IncrementVarianceModel& model, const std::vector<double>& xs) {
  const double zeta = model.zeta();
  if (zeta >= 1.0) {
    throw DomainError("sigma2_from_rho_consistency: rho is not locally integrable for " + model.spec() +
                      " (zeta = " + detail::format_number(zeta) + " >= 1)");
  }
  double worst = 0.0;
  for (double x : xs) {
    const double direct = model.sigma2(x);
    const double via_rho = quad::translation_reduced_integral([&](double s) { return model.rho(s); }, x, zeta);
    worst = std::max(worst, std::abs(via_rho - direct) / direct);
  }
  return worst;
}

bool RegularityReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

RegularityReport check_regularity(const IncrementVarianceModel& model, double M, const RegularityGrid& grid) {
  const double x_min = grid.x_min > 0.0 ? grid.x_min : model.asymptotic_floor();
  if (!(M > 0.0) || M > model.x_max()) throw InvalidParameter("check_regularity: M outside model domain");
  const double decades = std::log10(M / x_min);
  if (decades < 3.0 - 1e-12) {
    throw InvalidParameter("check_regularity: grid must span at least three decades below M");
  }
  if (grid.points_per_decade < 2) throw InvalidParameter("check_regularity: need >= 2 points per decade");

  RegularityReport rep;
  rep.model_spec = model.spec();
  rep.M = M;
  const auto ppd = static_cast<double>(grid.points_per_decade);
  const auto count = static_cast<std::size_t>(std::floor(decades * ppd + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) rep.h_grid.push_back(M * std::pow(10.0, -static_cast<double>(i) / ppd));

  for (double h : rep.h_grid) {
    const double s2 = model.sigma2(h);
    rep.ratio_h2_over_sigma2.push_back(h * h / s2);
    rep.ratio_sigma2_over_h.push_back(s2 / h);
  }

  // Fits over the bottom two decades.
  std::vector<double> lx, ls2, linv, lrho;
  bool rho_vanishes = true;
  for (double h : rep.h_grid) {
    if (h > 100.0 * x_min * (1.0 + 1e-9)) continue;
    lx.push_back(std::log(h));
    ls2.push_back(std::log(model.sigma2(h)));
    const double r = model.rho(h);
    if (r != 0.0) rho_vanishes = false;
    linv.push_back(std::log(1.0 / h));
    lrho.push_back(std::log(std::abs(r)));
  }
  const LineFit rv = fit_line(lx, ls2);
  rep.rv_index_estimate = rv.slope;
  rep.rv_fit_residual = rv.rms_residual;
  rep.zeta_estimate = rho_vanishes ? 0.0 : fit_line(linv, lrho).slope;

  bool rho_finite = true;
  for (double s : rep.h_grid) {
    const double sig = model.sigma2(s);
    for (int k = 3; k <= 10; ++k) {
      const double h = s * std::ldexp(1.0, -k);
      const double c = std::abs(model.second_difference(s, h)) * s * s / (h * h * sig);
      rep.second_difference_constant = std::max(rep.second_difference_constant, c);
    }
    const double r = model.rho(s);
    rho_finite = rho_finite && std::isfinite(r);
    rep.C_M_estimate = std::max(rep.C_M_estimate, std::abs(r) * std::pow(s, model.zeta()));
    if (r == 0.0) continue;
    for (int k = 2; k <= 10; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double h = sign * s * std::ldexp(1.0, -k);
        const double ratio = std::abs(model.rho(s + h) - r) * s / (std::abs(h) * std::abs(r));
        rep.lipschitz_ratio_max = std::max(rep.lipschitz_ratio_max, ratio);
      }
    }
  }

  const auto& q1 = rep.ratio_h2_over_sigma2;
  const auto& q2 = rep.ratio_sigma2_over_h;
  const bool vanish = strictly_decreasing(q1) && strictly_decreasing(q2) && q1.back() < q1.front() &&
                      q2.back() < q2.front();
  const double bound = 1e12;
  rep.verdicts = {
      {"regular_variation", rv.rms_residual < 0.05 && rv.slope >= 0.95 && rv.slope <= 2.05,
       "log-log fit residual < 0.05 and index in [1,2] +- 0.05", rv.slope},
      {"h2_over_sigma2_and_sigma2_over_h_vanish", vanish, "both ratios strictly decreasing toward 0 as h decreases",
       std::max(q1.back(), q2.back())},
      {"second_difference_bound", std::isfinite(rep.second_difference_constant) && rep.second_difference_constant < bound,
       "finite empirical constant (< 1e12) over h <= s/8", rep.second_difference_constant},
      {"second_derivative_exists", rho_finite, "rho finite at every grid point", 0.0},
      {"rho_power_bound", std::isfinite(rep.C_M_estimate) && rep.C_M_estimate < bound,
       "finite C_M for |rho(x)| <= C_M x^-zeta on the grid", rep.C_M_estimate},
      {"rho_lipschitz_bound", std::isfinite(rep.lipschitz_ratio_max) && rep.lipschitz_ratio_max < bound,
       "finite C_M for the relative Lipschitz ratio over 4|h| <= x", rep.lipschitz_ratio_max},
      {"beta_metadata", std::abs(rv.slope - model.beta_index()) <= 0.05, "|fitted index - declared beta| <= 0.05",
       rv.slope - model.beta_index()},
      {"zeta_metadata", rho_vanishes || std::abs(rep.zeta_estimate - model.zeta()) <= 0.05,
       "|fitted zeta - declared zeta| <= 0.05 (skipped when rho vanishes)", rep.zeta_estimate - model.zeta()},
  };
  return rep;
}

}  // namespace incexp
