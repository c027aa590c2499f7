#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "incexp/hermite_wick.hpp"
#include "incexp/models.hpp"
#include "incexp/pathgen.hpp"

namespace incexp {

/// Grid points a <= x_i < b of a path, as index range [lo, hi).
struct WindowIndex {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double length(double delta) const { return static_cast<double>(hi - lo) * delta; }
};

/// Resolves [a, b) on the grid and checks that x_i + m delta stays inside [0, T] for every x_i.
/// Throws InvalidParameter.
WindowIndex window_index(const Grid& grid, double a, double b, std::size_t m);

struct FunctionalEstimate {
  double value = 0.0;
  double h = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::string f_spec;
  std::uint64_t path_seed = 0;
  /// Midpoint rule on the 2-delta mesh minus the left-endpoint sum.
  double midpoint_diagnostic = 0.0;
};

/// delta * sum_{a <= x_i < b} f((G(x_i + h) - G(x_i)) / sigma(h)), h = m delta.
FunctionalEstimate increment_functional(const PathSample& path, const IncrementVarianceModel& model,
                                        const TestFunction& f, std::size_t m, double a, double b);

struct ChaosEstimate {
  double value = 0.0;
  int k = 0;
  double delta = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t path_seed = 0;
  /// k! int int rho^k over the window; NaN when k zeta >= 1 or not requested.
  double oracle_second_moment = 0.0;
};

/// delta * sum wick_power((G(x_i + d) - G(x_i)) / d, sigma^2(d)/d^2, k) over [a, b), d = m delta.
ChaosEstimate wick_functional(const PathSample& path, const IncrementVarianceModel& model, int k, std::size_t m,
                              double a, double b, bool with_oracle = true);

/// Proxy for the order-k Wick chaos of G' on [a, b]: the Wick functional at d = delta, or
/// G(b) - G(a) for k = 1. UnsupportedOrder when k zeta >= 1.
ChaosEstimate chaos_reference(const PathSample& path, const IncrementVarianceModel& model, int k, double a, double b,
                              bool with_oracle = true);

/// sum_{j <= j0} (h/sigma(h))^j a_j / sqrt(j!) chaos_reference(j), h = m delta.
double expansion_rhs(const PathSample& path, const IncrementVarianceModel& model, const HermiteCoeffs& coeffs, int j0,
                     std::size_t m, double a, double b);

/// I_k(h) = 2 int_0^c (c - s) tau_h(s)^k ds by adaptive quadrature, absolute target 1e-8 c^2.
double kernel_integral(const IncrementVarianceModel& model, int k, double h, double c);

/// k! 2 int_0^c (c - s) rho(s)^k ds on a graded mesh. UnsupportedOrder when k zeta >= 1.
double chaos_second_moment(const IncrementVarianceModel& model, int k, double c);

struct KernelRow {
  int k = 0;
  double h = 0.0;
  double I_k = 0.0;
  double scaled = 0.0;   // I_k (sigma^2(h)/h^2)^k
  double oracle = 0.0;   // 2 int_0^c (c-s) rho^k; NaN when unsupported
  double rel_gap = 0.0;  // |scaled - oracle| / |oracle|; NaN when unsupported
};

struct KernelIntegralTable {
  std::string model_spec;
  double c = 1.0;
  std::vector<KernelRow> rows;  // by order, then h descending
  std::vector<Verdict> verdicts;

  bool all_pass() const;
};

/// Scaled kernel integrals against their limits, plus the ratio trend of consecutive orders.
/// h_grid must span at least two decades.
KernelIntegralTable kernel_limits_check(const IncrementVarianceModel& model, const std::vector<int>& orders,
                                        std::vector<double> h_grid, double c);

/// Columns model,k,h,I_k,scaled,oracle,rel_gap.
void write_kernel_csv(const KernelIntegralTable& table, std::ostream& os);

}  // namespace incexp
