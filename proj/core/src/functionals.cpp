#include "incexp/functionals.hpp"

#include <cmath>
#include <limits>

#include "incexp/error.hpp"
#include "model_impl.hpp"

namespace incexp {

WindowIndex window_index(const Grid& grid, double a, double b, std::size_t m) {
  if (m < 1) throw InvalidParameter("window: lag must be a positive multiple of the grid step");
  if (!(a >= 0.0) || !(b > a)) throw InvalidParameter("window: need 0 <= a < b");
  const double delta = grid.delta();
  WindowIndex w;
  w.lo = static_cast<std::size_t>(std::ceil(a / delta - 1e-9));
  w.hi = static_cast<std::size_t>(std::ceil(b / delta - 1e-9));
  if (w.hi <= w.lo) throw InvalidParameter("window: [a, b) contains no grid point");
  if (w.hi - 1 + m > grid.n) {
    throw InvalidParameter("window: x + h leaves [0, T] (b=" + detail::format_number(b) +
                           ", h=" + detail::format_number(static_cast<double>(m) * delta) +
                           ", T=" + detail::format_number(grid.T) + ")");
  }
  return w;
}

FunctionalEstimate increment_functional(const PathSample& path, const IncrementVarianceModel& model,
                                        const TestFunction& f, std::size_t m, double a, double b) {
  const WindowIndex w = window_index(path.grid, a, b, m);
  const double delta = path.grid.delta();
  const double h = static_cast<double>(m) * delta;
  const double inv_sigma = 1.0 / model.sigma(h);
  const auto& G = path.values;
  double left = 0.0;
  double mid = 0.0;
  for (std::size_t i = w.lo; i < w.hi; ++i) {
    const double v = f((G[i + m] - G[i]) * inv_sigma);
    left += v;
    if ((i - w.lo) % 2 == 1) mid += v;
  }
  FunctionalEstimate e;
  e.value = delta * left;
  e.h = h;
  e.a = a;
  e.b = b;
  e.f_spec = f.spec();
  e.path_seed = path.seed;
  e.midpoint_diagnostic = 2.0 * delta * mid - e.value;
  return e;
}

ChaosEstimate wick_functional(const PathSample& path, const IncrementVarianceModel& model, int k, std::size_t m,
                              double a, double b, bool with_oracle) {
  if (k < 0) throw InvalidParameter("wick_functional: order must be nonnegative");
  const WindowIndex w = window_index(path.grid, a, b, m);
  const double delta = path.grid.delta();
  const double d = static_cast<double>(m) * delta;
  const double v = model.sigma2(d) / (d * d);
  const auto& G = path.values;
  ChaosEstimate e;
  e.k = k;
  e.delta = d;
  e.a = a;
  e.b = b;
  e.path_seed = path.seed;
  if (k == 0) {
    e.value = w.length(delta);
  } else {
    double acc = 0.0;
    for (std::size_t i = w.lo; i < w.hi; ++i) acc += wick_power((G[i + m] - G[i]) / d, v, k);
    e.value = delta * acc;
  }
  e.oracle_second_moment = std::numeric_limits<double>::quiet_NaN();
  if (with_oracle && model.supports_order(k)) e.oracle_second_moment = chaos_second_moment(model, k, w.length(delta));
  return e;
}

ChaosEstimate chaos_reference(const PathSample& path, const IncrementVarianceModel& model, int k, double a, double b,
                              bool with_oracle) {
  if (!model.supports_order(k)) {
    throw UnsupportedOrder("chaos of order " + std::to_string(k) + " is undefined for " + model.spec() + ": k*zeta = " +
                           detail::format_number(k * model.zeta()) + " >= 1, rho^k is not locally integrable");
  }
  ChaosEstimate e = wick_functional(path, model, k, 1, a, b, with_oracle);
  if (k == 1) {
    const WindowIndex w = window_index(path.grid, a, b, 1);
    e.value = path.values[w.hi] - path.values[w.lo];
  }
  return e;
}

double expansion_rhs(const PathSample& path, const IncrementVarianceModel& model, const HermiteCoeffs& coeffs, int j0,
                     std::size_t m, double a, double b) {
  if (j0 < 0 || j0 > coeffs.J) throw InvalidParameter("expansion_rhs: need 0 <= j0 <= J");
  const double h = static_cast<double>(m) * path.grid.delta();
  const double ratio = h / model.sigma(h);
  double sum = 0.0;
  double scale = 1.0;  // ratio^j / sqrt(j!)
  for (int j = 0; j <= j0; ++j) {
    if (j > 0) scale *= ratio / std::sqrt(static_cast<double>(j));
    const double aj = coeffs.a[static_cast<std::size_t>(j)];
    sum += scale * aj * chaos_reference(path, model, j, a, b, false).value;
  }
  return sum;
}

}  // namespace incexp
