#include "incexp/pathgen.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "fft.hpp"
#include "incexp/error.hpp"
#include "model_impl.hpp"

namespace incexp {

void Grid::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParameter("grid: horizon T must be positive");
  if (n < 2 || (n & (n - 1)) != 0) throw InvalidParameter("grid: n must be a power of two >= 2, got " + std::to_string(n));
}

const char* to_string(PathMethod m) { return m == PathMethod::circulant ? "circulant" : "spectral"; }

PathMethod parse_path_method(const std::string& name) {
  if (name == "circulant") return PathMethod::circulant;
  if (name == "spectral") return PathMethod::spectral;
  throw InvalidParameter("unknown path method '" + name + "' (circulant, spectral)");
}

double increment_covariance(const IncrementVarianceModel& model, double delta, std::size_t lag) {
  if (!(delta > 0.0)) throw DomainError("increment_covariance: delta must be positive");
  if (lag == 0) return model.sigma2(delta);
  // second_difference avoids the cancellation of the three-term sum at large lags.
  return 0.5 * model.second_difference(static_cast<double>(lag) * delta, delta);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t r) { return base ^ splitmix64(r); }

struct CirculantSampler::Plan {
  explicit Plan(std::size_t m) : fft(m) {}
  detail::RealFft fft;
};

CirculantSampler::CirculantSampler(const IncrementVarianceModel& model, const Grid& grid)
    : grid_(grid), spec_(model.spec()) {
  grid_.validate();
  const std::size_t n = grid_.n;
  const std::size_t m = 2 * n;
  const double delta = grid_.delta();
  if (grid_.T > model.x_max()) throw DomainError("circulant: horizon exceeds the model's calibrated domain");

  // First row of the 2n circulant: c_0..c_n, c_{n-1}..c_1.
  std::vector<double> row(m);
  for (std::size_t k = 0; k <= n; ++k) row[k] = increment_covariance(model, delta, k);
  for (std::size_t k = n + 1; k < m; ++k) row[k] = row[m - k];

  plan_ = std::make_unique<Plan>(m);
  std::vector<std::complex<double>> spectrum(n + 1);
  plan_->fft.forward(row.data(), spectrum.data());

  double max_eig = 0.0;
  double min_eig = 0.0;
  for (const auto& e : spectrum) {
    max_eig = std::max(max_eig, e.real());
    min_eig = std::min(min_eig, e.real());
  }
  if (!(max_eig > 0.0)) throw NumericalError("circulant embedding: no positive eigenvalue");
  min_ratio_ = min_eig / max_eig;
  if (min_ratio_ < -tol_neg) {
    throw NumericalError("circulant embedding failed for " + spec_ + ": most negative eigenvalue ratio " +
                         detail::format_number(min_ratio_) + " below -" + detail::format_number(tol_neg));
  }
  scale_.resize(n + 1);
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j <= n; ++j) {
    double lambda = spectrum[j].real();
    if (lambda < 0.0) {
      lambda = 0.0;
      ++clipped_;
    }
    // Endpoints carry real coefficients; interior frequencies split their variance over
    // real and imaginary parts.
    const bool real_only = j == 0 || j == n;
    scale_[j] = std::sqrt(lambda / (real_only ? md : 2.0 * md));
  }
}

CirculantSampler::~CirculantSampler() = default;
CirculantSampler::CirculantSampler(CirculantSampler&&) noexcept = default;
CirculantSampler& CirculantSampler::operator=(CirculantSampler&&) noexcept = default;

void CirculantSampler::sample_into(std::uint64_t seed, std::vector<double>& out) const {
  const std::size_t n = grid_.n;
  const std::size_t m = 2 * n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> coeffs(n + 1);
  coeffs[0] = {scale_[0] * normal(rng), 0.0};
  for (std::size_t j = 1; j < n; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    coeffs[j] = {scale_[j] * re, scale_[j] * im};
  }
  coeffs[n] = {scale_[n] * normal(rng), 0.0};

  // The c2r transform of the half spectrum equals the full Hermitian sum, whose covariance
  // at lag k is sum_j lambda_j cos(2 pi jk/m) / m = c_k.
  std::vector<double> increments(m);
  plan_->fft.inverse(coeffs.data(), increments.data());

  out.resize(n + 1);
  out[0] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += increments[i];
    out[i + 1] = acc;
  }
}

PathSample CirculantSampler::sample(std::uint64_t seed) const {
  PathSample p;
  p.grid = grid_;
  p.seed = seed;
  p.method = PathMethod::circulant;
  p.model_spec = spec_;
  sample_into(seed, p.values);
  return p;
}

PathSample simulate_circulant(const IncrementVarianceModel& model, const Grid& grid, std::uint64_t seed) {
  return CirculantSampler(model, grid).sample(seed);
}

}  // namespace incexp
