#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace incexp::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on the Legendre recurrence.
Rule gauss_legendre(std::size_t n);

/// Gauss-Hermite rule for the weight exp(-t^2) on the real line. Weights sum to sqrt(pi).
/// Newton iteration on the orthonormal recurrence, converged to 1e-14. Valid for n <= 512.
Rule gauss_hermite(std::size_t n);

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  std::size_t intervals = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b] with bisection of the worst interval.
Result integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opts = {});

/// Same, over consecutive breakpoints; errors and tolerances are shared across pieces.
Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 const AdaptiveOptions& opts = {});

/// Composite Gauss-Legendre over the mesh `edges` with `rule` on every panel.
double composite(const Integrand& f, std::span<const double> edges, const Rule& rule);

/// Mesh x * (i/n)^(1/(1-zeta)), i = 0..n, clustering points at 0 so that panels
/// carry equal shares of an integrand behaving like s^(-zeta). Requires zeta < 1.
std::vector<double> graded_mesh(double x, std::size_t n, double zeta);

/// 2 * int_0^x (x - s) w(s) ds with s = x t^(1/(1-zeta)) and 8-point Gauss-Legendre on uniform t panels.
/// This is the one-dimensional reduction of int_0^x int_0^x w(|s - t|) ds dt.
double translation_reduced_integral(const Integrand& w, double x, double zeta,
                                    std::size_t panels = 4096);

}  // namespace incexp::quad
