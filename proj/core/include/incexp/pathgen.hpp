#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "incexp/models.hpp"

namespace incexp {

/// Uniform grid 0, delta, ..., T with n a power of two.
struct Grid {
  double T = 1.0;
  std::size_t n = 2;

  double delta() const { return T / static_cast<double>(n); }
  /// Throws InvalidParameter unless n >= 2 is a power of two and T > 0.
  void validate() const;
};

enum class PathMethod { circulant, spectral };
const char* to_string(PathMethod m);
PathMethod parse_path_method(const std::string& name);

struct PathSample {
  Grid grid;
  std::vector<double> values;  // G(0)=0, G(delta), ..., G(T)
  std::uint64_t seed = 0;
  PathMethod method = PathMethod::circulant;
  std::string model_spec;
};

/// Covariance of unit-lag increments at `lag`:
/// (sigma^2((lag+1) delta) + sigma^2(|lag-1| delta) - 2 sigma^2(lag delta)) / 2.
double increment_covariance(const IncrementVarianceModel& model, double delta, std::size_t lag);

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of replicate r: base ^ splitmix64(r). Independent of how replicates are scheduled.
std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t r);

/// Exact sampler for the increments of a model on a grid (circulant embedding of size 2n).
/// The square-root spectrum is computed once; `sample` is const and thread-safe.
class CirculantSampler {
 public:
  CirculantSampler(const IncrementVarianceModel& model, const Grid& grid);
  ~CirculantSampler();
  CirculantSampler(CirculantSampler&&) noexcept;
  CirculantSampler& operator=(CirculantSampler&&) noexcept;

  PathSample sample(std::uint64_t seed) const;
  /// Writes the n+1 path values into `out` without allocating a PathSample.
  void sample_into(std::uint64_t seed, std::vector<double>& out) const;

  const Grid& grid() const { return grid_; }
  /// Most negative eigenvalue over the largest one (0 when the embedding is nonnegative).
  double min_eigenvalue_ratio() const { return min_ratio_; }
  std::size_t clipped_eigenvalues() const { return clipped_; }

  static constexpr double tol_neg = 1e-8;

 private:
  struct Plan;
  Grid grid_;
  std::string spec_;
  std::vector<double> scale_;  // per-frequency standard deviation, size n+1
  double min_ratio_ = 0.0;
  std::size_t clipped_ = 0;
  std::unique_ptr<Plan> plan_;
};

PathSample simulate_circulant(const IncrementVarianceModel& model, const Grid& grid, std::uint64_t seed);

/// Approximate synthesis from a spectral density over geometric frequency bins:
/// G(x) = sum_j sqrt(m_j) [xi_j (cos 2 pi l_j x - 1) + xi'_j sin 2 pi l_j x], where m_j is twice
/// the density mass of bin j and l_j its geometric midpoint.
class SpectralSynthesizer {
 public:
  SpectralSynthesizer(const IncrementVarianceModel& model, const Grid& grid, std::size_t n_bins = 4096);

  PathSample sample(std::uint64_t seed) const;
  /// G at arbitrary points, same coefficients as `sample` for the same seed.
  std::vector<double> values_at(const std::vector<double>& points, std::uint64_t seed) const;

  /// Variance of G(x) implied by the binned spectrum, sum_j 2 m_j (1 - cos 2 pi l_j x).
  double synthesized_variance(double x) const;
  /// Relative gap between the synthesized and model lag-0 increment variance.
  double lag0_bias() const { return lag0_bias_; }
  double lambda_max() const { return lambda_max_; }

  static constexpr double max_lag0_bias = 0.02;

 private:
  Grid grid_;
  std::string spec_;
  std::vector<double> freq_;
  std::vector<double> amp_;  // sqrt(m_j)
  double lambda_max_ = 0.0;
  double lag0_bias_ = 0.0;
};

PathSample simulate_spectral(const IncrementVarianceModel& model, const Grid& grid, std::uint64_t seed,
                             std::size_t n_bins = 4096);

/// Binary dump: little-endian u64 n, f64 T, u64 seed, u64 spec length, spec bytes, then n+1 f64.
void write_path(const PathSample& path, const std::string& file);
PathSample read_path(const std::string& file);

}  // namespace incexp
