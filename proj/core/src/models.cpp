#include "incexp/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "incexp/error.hpp"
#include "model_impl.hpp"

namespace incexp {

namespace detail {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw InvalidParameter("format_number: conversion failed");
  return std::string(buf, ptr);
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

/// sigma^2(x) = sum_i w_i x^{e_i}.
class PowerSumModel final : public ModelImpl {
 public:
  double sigma2(double x) const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < params.weights.size(); ++i) {
      sum += params.weights[i] * std::pow(x, params.exponents[i]);
    }
    return sum;
  }

  std::optional<double> rho_closed(double s) const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < params.weights.size(); ++i) {
      const double e = params.exponents[i];
      const double c = params.weights[i] * e * (e - 1.0);
      if (c != 0.0) sum += c * std::pow(s, e - 2.0);
    }
    return 0.5 * sum;
  }

  // (1+t)^e + (1-t)^e - 2 = 2 sum_{m>=1} C(e, 2m) t^{2m}; used for t = h/s <= 1/4 where the
  // direct form loses digits to cancellation.
  double second_difference(double s, double h) const override {
    if (s <= 0.0 || h > 0.25 * s) return ModelImpl::second_difference(s, h);
    const double t = h / s;
    const double t2 = t * t;
    double total = 0.0;
    for (std::size_t i = 0; i < params.weights.size(); ++i) {
      const double e = params.exponents[i];
      double binom = 1.0;  // C(e, k)
      double tpow = 1.0;
      double series = 0.0;
      for (int k = 0; k < 400; k += 2) {
        binom *= (e - k) / (k + 1.0);
        binom *= (e - k - 1.0) / (k + 2.0);
        tpow *= t2;
        const double term = 2.0 * binom * tpow;
        series += term;
        if (std::abs(term) <= 1e-18 * std::abs(series) || binom == 0.0) break;
      }
      total += params.weights[i] * std::pow(s, e) * series;
    }
    return total;
  }
};

/// Example spectral model: g(lambda) = (log lambda - 1)/lambda^3 on lambda >= e.
///
/// With s = pi*lambda*u, sigma^2(u) = 8 pi^2 u^2 [(L - 1) A(x0) + B(x0)] where x0 = pi e u,
/// L = log(1/(pi u)), A(x) = int_x^inf sin^2 s / s^3 ds and B(x) = int_x^inf sin^2 s log s / s^3 ds.
class LogSpectralModel final : public ModelImpl {
 public:
  LogSpectralModel() {
    static const std::pair<double, double> tails = unit_tails();
    a1_ = tails.first;
    b1_ = tails.second;
  }

  double sigma2(double u) const override {
    const double pi = std::numbers::pi;
    const double x0 = pi * std::numbers::e * u;
    const double L = -std::log(pi * u);
    double A;
    double B;
    if (x0 <= 1.0) {
      series_from_unit(x0, A, B);
    } else {
      const auto [da, db] = finite_range(x0);
      A = a1_ - da;
      B = b1_ - db;
    }
    return 8.0 * pi * pi * u * u * ((L - 1.0) * A + B);
  }

  double a1() const { return a1_; }
  double b1() const { return b1_; }

 private:
  // sin^2 s / s^3 = sum_{m>=1} c_m s^{2m-3}, c_1 = 1, c_{m+1} = -4 c_m / ((2m+1)(2m+2)).
  void series_from_unit(double x0, double& A, double& B) const {
    const double lx = std::log(x0);
    A = a1_ - lx;
    B = b1_ - 0.5 * lx * lx;
    double c = 1.0;
    for (int m = 1; m < 60; ++m) {
      c *= -4.0 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
      const double p = 2.0 * m;  // exponent for c_{m+1}
      const double xp = std::pow(x0, p);
      A += c * (1.0 - xp) / p;
      B += c * (-1.0 / (p * p) - xp * lx / p + xp / (p * p));
      if (std::abs(c) < 1e-20) break;
    }
  }

  static std::pair<double, double> finite_range(double x0) {
    static const quad::Rule gl = quad::gauss_legendre(12);
    const std::size_t panels = static_cast<std::size_t>(std::ceil((x0 - 1.0) / 0.25));
    std::vector<double> edges(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
      edges[i] = 1.0 + (x0 - 1.0) * static_cast<double>(i) / static_cast<double>(panels);
    }
    const double a = quad::composite([](double s) { const double sn = std::sin(s); return sn * sn / (s * s * s); },
                                     edges, gl);
    const double b = quad::composite(
        [](double s) { const double sn = std::sin(s); return sn * sn * std::log(s) / (s * s * s); }, edges, gl);
    return {a, b};
  }

  // A(1), B(1): composite Gauss-Legendre on [1, S] plus an integration-by-parts tail.
  static std::pair<double, double> unit_tails() {
    constexpr double S = 4096.0;
    const auto [a_body, b_body] = finite_range(S);
    // int_S^inf sin^2 s g = (1/2) int_S^inf g - (1/2) int_S^inf cos(2s) g,
    // int_S^inf cos(2s) g ~ -sin(2S) g(S)/2 - cos(2S) g'(S)/4.
    const double lS = std::log(S);
    const double g0 = 1.0 / (S * S * S);
    const double dg0 = -3.0 / (S * S * S * S);
    const double g1 = lS / (S * S * S);
    const double dg1 = (1.0 - 3.0 * lS) / (S * S * S * S);
    const double cos_tail0 = -std::sin(2 * S) * g0 / 2.0 - std::cos(2 * S) * dg0 / 4.0;
    const double cos_tail1 = -std::sin(2 * S) * g1 / 2.0 - std::cos(2 * S) * dg1 / 4.0;
    const double tail0 = 0.5 * (1.0 / (2.0 * S * S)) - 0.5 * cos_tail0;
    const double tail1 = 0.5 * ((2.0 * lS + 1.0) / (4.0 * S * S)) - 0.5 * cos_tail1;
    return {a_body + tail0, b_body + tail1};
  }

  double a1_ = 0.0;
  double b1_ = 0.0;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidParameter(msg);
}

std::shared_ptr<ModelImpl> power_sum(std::string family, std::vector<double> weights,
                                     std::vector<double> exponents, double beta, std::string spec) {
  auto impl = std::make_shared<PowerSumModel>();
  impl->name = family;
  impl->params = ModelParams{std::move(family), std::move(weights), std::move(exponents)};
  impl->beta = beta;
  impl->zeta = 2.0 - beta;
  impl->spec = std::move(spec);
  return impl;
}

}  // namespace
}  // namespace detail

IncrementVarianceModel::IncrementVarianceModel(std::shared_ptr<const detail::ModelImpl> impl)
    : impl_(std::move(impl)) {}

const std::string& IncrementVarianceModel::spec() const { return impl_->spec; }
const std::string& IncrementVarianceModel::name() const { return impl_->name; }
const ModelParams& IncrementVarianceModel::params() const { return impl_->params; }

double IncrementVarianceModel::sigma2(double x) const {
  if (!(x >= 0.0)) throw DomainError("sigma2: negative lag " + detail::format_number(x));
  if (x > impl_->x_max) {
    throw DomainError("sigma2: lag " + detail::format_number(x) + " beyond calibrated domain (0, " +
                      detail::format_number(impl_->x_max) + "] of " + impl_->spec);
  }
  if (x == 0.0) return 0.0;
  return impl_->sigma2(x);
}

double IncrementVarianceModel::sigma(double x) const { return std::sqrt(sigma2(x)); }

double IncrementVarianceModel::rho(double s) const {
  if (!(s > 0.0)) throw DomainError("rho: requires s > 0 (rho(0) is infinite), got " + detail::format_number(s));
  if (auto closed = impl_->rho_closed(s)) return *closed;
  return rho_finite_difference(s);
}

double IncrementVarianceModel::rho_finite_difference(double s) const {
  if (!(s > 0.0)) throw DomainError("rho: requires s > 0, got " + detail::format_number(s));
  const double f0 = impl_->sigma2(s);
  auto d2 = [&](double d) { return (impl_->sigma2(s + d) + impl_->sigma2(s - d) - 2.0 * f0) / (2.0 * d * d); };
  const double delta = s * 1e-4;
  return (4.0 * d2(0.5 * delta) - d2(delta)) / 3.0;
}

bool IncrementVarianceModel::rho_is_closed_form() const { return impl_->rho_closed(1.0).has_value(); }

double IncrementVarianceModel::second_difference(double s, double h) const {
  if (!(h > 0.0)) throw DomainError("second_difference: h must be positive");
  s = std::abs(s);
  if (s + h > impl_->x_max) throw DomainError("second_difference: beyond calibrated domain of " + impl_->spec);
  return impl_->second_difference(s, h);
}

double IncrementVarianceModel::beta_index() const { return impl_->beta; }
double IncrementVarianceModel::zeta() const { return impl_->zeta; }
bool IncrementVarianceModel::supports_order(int j) const { return detail::order_integrable(j, impl_->zeta); }

int IncrementVarianceModel::max_supported_order() const {
  constexpr int cap = 64;
  int j = 0;
  while (j < cap && detail::order_integrable(j + 1, impl_->zeta)) ++j;
  return j;
}

const std::optional<SpectralDensity>& IncrementVarianceModel::spectral_density() const { return impl_->spectral; }
double IncrementVarianceModel::x_max() const { return impl_->x_max; }
double IncrementVarianceModel::asymptotic_floor() const { return impl_->floor; }

IncrementVarianceModel make_fbm(double r) {
  detail::require(r > 0.0 && r <= 2.0, "fbm: exponent r must lie in (0, 2], got " + detail::format_number(r));
  return IncrementVarianceModel(detail::power_sum("fbm", {1.0}, {r}, r, "fbm:r=" + detail::format_number(r)));
}

IncrementVarianceModel make_concave(double r) {
  detail::require(r > 0.0 && r <= 1.5, "concave: exponent r must lie in (0, 1.5], got " + detail::format_number(r));
  return IncrementVarianceModel(
      detail::power_sum("concave", {1.0}, {r}, r, "concave:r=" + detail::format_number(r)));
}

IncrementVarianceModel make_fb_mixture_discrete(std::vector<double> weights, std::vector<double> exponents) {
  detail::require(!weights.empty() && weights.size() == exponents.size(),
                  "fbmix: need matching, non-empty weight and exponent lists");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    detail::require(weights[i] > 0.0, "fbmix: weights must be positive");
    detail::require(exponents[i] > 1.0 && exponents[i] <= 2.0, "fbmix: exponents must lie in (1, 2]");
  }
  const double beta = *std::min_element(exponents.begin(), exponents.end());
  std::string spec = "fbmix:a=" + detail::join(weights) + ";beta=" + detail::join(exponents);
  return IncrementVarianceModel(
      detail::power_sum("fbmix", std::move(weights), std::move(exponents), beta, std::move(spec)));
}

IncrementVarianceModel make_fb_mixture_measure(std::vector<double> nodes, std::vector<double> weights, double beta) {
  detail::require(beta > 1.0 && beta < 2.0, "fbmeasure: beta must lie in (1, 2)");
  detail::require(!nodes.empty() && nodes.size() == weights.size(), "fbmeasure: need matching node/weight lists");
  double integrability = 0.0;
  double lowest = 2.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    detail::require(weights[i] >= 0.0, "fbmeasure: weights must be nonnegative");
    detail::require(nodes[i] >= beta && nodes[i] <= 2.0, "fbmeasure: nodes must lie in [beta, 2]");
    if (weights[i] == 0.0) continue;
    detail::require(nodes[i] < 2.0, "fbmeasure: int dmu(s)/(2-s) diverges (mass at s = 2)");
    integrability += weights[i] / (2.0 - nodes[i]);
    lowest = std::min(lowest, nodes[i]);
  }
  detail::require(std::isfinite(integrability) && integrability > 0.0,
                  "fbmeasure: measure must carry positive, (2-s)^-1 integrable mass");
  std::string spec = "fbmeasure:beta=" + detail::format_number(beta) + ";nodes=" + detail::join(nodes) +
                     ";weights=" + detail::join(weights);
  auto impl = detail::power_sum("fbmeasure", std::move(weights), std::move(nodes), lowest, std::move(spec));
  // Log-corrected power laws have local slope beta + p/log(1/x); fit far enough down.
  impl->floor = 1e-16;
  return IncrementVarianceModel(std::move(impl));
}

IncrementVarianceModel make_fb_mixture_laplace(double beta, std::vector<double> locations, std::vector<double> jumps) {
  detail::require(beta > 1.0 && beta < 2.0, "fblaplace: beta must lie in (1, 2)");
  detail::require(!locations.empty() && locations.size() == jumps.size(),
                  "fblaplace: need matching location/jump lists");
  std::vector<double> exponents;
  double lowest = 2.0;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    detail::require(jumps[i] > 0.0, "fblaplace: jumps must be positive (rho increasing)");
    detail::require(locations[i] >= 0.0 && locations[i] < 2.0 - beta,
                    "fblaplace: jump locations must lie in [0, 2-beta) for d rho/(2-beta-v) to be integrable");
    exponents.push_back(beta + locations[i]);
    lowest = std::min(lowest, beta + locations[i]);
  }
  std::string spec = "fblaplace:beta=" + detail::format_number(beta) + ";s=" + detail::join(locations) +
                     ";w=" + detail::join(jumps);
  return IncrementVarianceModel(
      detail::power_sum("fblaplace", std::move(jumps), std::move(exponents), lowest, std::move(spec)));
}

IncrementVarianceModel make_log_spectral() {
  auto impl = std::make_shared<detail::LogSpectralModel>();
  impl->name = "logspec";
  impl->spec = "logspec";
  impl->params = ModelParams{"logspec", {}, {}};
  impl->beta = 2.0;
  impl->zeta = 0.05;
  impl->x_max = 64.0;
  impl->floor = 1e-32;
  SpectralDensity g;
  g.lower = std::numbers::e;
  g.density = [](double lambda) { return lambda < std::numbers::e ? 0.0 : (std::log(lambda) - 1.0) / (lambda * lambda * lambda); };
  g.tail_mass = [](double L) {
    L = std::max(L, std::numbers::e);
    return (2.0 * std::log(L) - 1.0) / (4.0 * L * L);
  };
  impl->spectral = std::move(g);
  return IncrementVarianceModel(std::move(impl));
}

MeasureNodes regularly_varying_measure(double beta, double p, std::size_t cells) {
  detail::require(beta > 1.0 && beta < 2.0, "regularly_varying_measure: beta must lie in (1, 2)");
  detail::require(p > 0.0, "regularly_varying_measure: p must be positive");
  detail::require(cells >= 2, "regularly_varying_measure: need at least two cells");
  const double top = 0.5 * (2.0 - beta);
  const double bottom = top * 1e-12;
  const double gamma = std::tgamma(1.0 + p);
  auto F = [&](double v) { return std::pow(v, p) / gamma; };
  MeasureNodes out;
  const double ratio = std::pow(bottom / top, 1.0 / static_cast<double>(cells));
  double hi = top;
  for (std::size_t k = 0; k < cells; ++k) {
    const double lo = hi * ratio;
    out.nodes.push_back(beta + std::sqrt(lo * hi));
    out.weights.push_back(F(hi) - F(lo));
    hi = lo;
  }
  out.nodes.push_back(beta + 0.5 * hi);
  out.weights.push_back(F(hi));
  return out;
}

double tau_h(const IncrementVarianceModel& model, double h, double s) {
  const double denom = model.sigma2(h);
  if (!(denom > 0.0)) throw DomainError("tau_h: sigma^2(h) must be positive");
  return model.second_difference(s, h) / (2.0 * denom);
}

}  // namespace incexp
