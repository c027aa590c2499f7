#pragma once

#include <limits>
#include <optional>
#include <string>

#include "incexp/models.hpp"

namespace incexp::detail {

class ModelImpl {
 public:
  virtual ~ModelImpl() = default;

  /// sigma^2 for x > 0; callers have validated the domain.
  virtual double sigma2(double x) const = 0;
  virtual std::optional<double> rho_closed(double /*s*/) const { return std::nullopt; }
  virtual double second_difference(double s, double h) const {
    return sigma2(s + h) + sigma2_or_zero(std::abs(s - h)) - 2.0 * sigma2_or_zero(s);
  }

  double sigma2_or_zero(double x) const { return x == 0.0 ? 0.0 : sigma2(x); }

  std::string spec;
  std::string name;
  ModelParams params;
  double beta = 0.0;
  double zeta = 0.0;
  double x_max = std::numeric_limits<double>::infinity();
  double floor = 1e-8;
  std::optional<SpectralDensity> spectral;
};

/// Shared orders test with slack for exponents like 2 - 1.8 that are not exact in binary.
inline bool order_integrable(int j, double zeta) {
  if (j <= 0) return true;
  return static_cast<double>(j) * zeta < 1.0 - 1e-9;
}

std::string format_number(double v);

}  // namespace incexp::detail
