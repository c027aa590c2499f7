#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "incexp/error.hpp"
#include "incexp/pathgen.hpp"
#include "model_impl.hpp"

namespace incexp {

SpectralSynthesizer::SpectralSynthesizer(const IncrementVarianceModel& model, const Grid& grid, std::size_t n_bins)
    : grid_(grid), spec_(model.spec()) {
  grid_.validate();
  if (n_bins < 1024) throw InvalidParameter("spectral synthesis: need at least 1024 frequency bins");
  const auto& density = model.spectral_density();
  if (!density) throw PreconditionError("spectral synthesis: model " + spec_ + " has no spectral density");
  const auto& g = density->density;

  quad::AdaptiveOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-10;
  auto mass = [&](double lo, double hi) {
    if (density->tail_mass) return density->tail_mass(lo) - density->tail_mass(hi);
    return quad::integrate(g, lo, hi, opts).value;
  };
  auto tail = [&](double L) {
    if (density->tail_mass) return density->tail_mass(L);
    return quad::integrate([&](double t) { return t > 0.0 ? g(L / t) * L / (t * t) : 0.0; }, 0.0, 1.0, opts).value;
  };

  const double delta = grid_.delta();
  const double target = model.sigma2(delta);
  const double lambda_min = density->lower > 0.0 ? density->lower : 1e-6 / grid_.T;
  // Dropped high frequencies add at most 8 int_L^inf g to the lag-0 variance.
  lambda_max_ = std::max(2.0 * lambda_min, 1.0 / delta);
  while (8.0 * tail(lambda_max_) > 1e-4 * target) {
    lambda_max_ *= 2.0;
    if (lambda_max_ > 1e300) throw NumericalError("spectral synthesis: spectral tail does not decay");
  }

  const double ratio = std::pow(lambda_max_ / lambda_min, 1.0 / static_cast<double>(n_bins));
  freq_.resize(n_bins);
  amp_.resize(n_bins);
  double lo = lambda_min;
  for (std::size_t j = 0; j < n_bins; ++j) {
    const double hi = j + 1 == n_bins ? lambda_max_ : lo * ratio;
    freq_[j] = std::sqrt(lo * hi);
    amp_[j] = std::sqrt(std::max(0.0, 2.0 * mass(lo, hi)));
    lo = hi;
  }
  lag0_bias_ = std::abs(synthesized_variance(delta) - target) / target;
  if (lag0_bias_ > max_lag0_bias) {
    throw NumericalError("spectral synthesis: lag-0 covariance bias " + detail::format_number(lag0_bias_) +
                         " exceeds " + detail::format_number(max_lag0_bias) + "; increase n_bins");
  }
}

double SpectralSynthesizer::synthesized_variance(double x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < freq_.size(); ++j) {
    const double s = std::sin(std::numbers::pi * freq_[j] * x);
    v += amp_[j] * amp_[j] * 4.0 * s * s;
  }
  return v;
}

namespace {

std::vector<double> draw(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> xi(2 * count);
  for (auto& v : xi) v = normal(rng);
  return xi;
}

}  // namespace

std::vector<double> SpectralSynthesizer::values_at(const std::vector<double>& points, std::uint64_t seed) const {
  const auto xi = draw(freq_.size(), seed);
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < freq_.size(); ++j) {
      const double phase = 2.0 * std::numbers::pi * freq_[j] * points[p];
      const double half = std::sin(0.5 * phase);
      // cos - 1 = -2 sin^2(phase/2), exact near x = 0.
      acc += amp_[j] * (xi[2 * j] * (-2.0 * half * half) + xi[2 * j + 1] * std::sin(phase));
    }
    out[p] = acc;
  }
  return out;
}

PathSample SpectralSynthesizer::sample(std::uint64_t seed) const {
  const auto xi = draw(freq_.size(), seed);
  const std::size_t n = grid_.n;
  const double delta = grid_.delta();
  std::vector<double> values(n + 1, 0.0);
  constexpr std::size_t reanchor = 256;
  for (std::size_t j = 0; j < freq_.size(); ++j) {
    const double theta = 2.0 * std::numbers::pi * freq_[j] * delta;
    const std::complex<double> step(std::cos(theta), std::sin(theta));
    std::complex<double> z(1.0, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
      if (i % reanchor == 0) {
        const double ph = theta * static_cast<double>(i);
        z = {std::cos(ph), std::sin(ph)};
      } else {
        z *= step;
      }
      values[i] += amp_[j] * (xi[2 * j] * (z.real() - 1.0) + xi[2 * j + 1] * z.imag());
    }
  }
  PathSample p;
  p.grid = grid_;
  p.values = std::move(values);
  p.seed = seed;
  p.method = PathMethod::spectral;
  p.model_spec = spec_;
  return p;
}

PathSample simulate_spectral(const IncrementVarianceModel& model, const Grid& grid, std::uint64_t seed,
                             std::size_t n_bins) {
  return SpectralSynthesizer(model, grid, n_bins).sample(seed);
}

}  // namespace incexp
