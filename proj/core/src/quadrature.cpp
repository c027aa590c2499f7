#include "incexp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <string>

#include <Eigen/Eigenvalues>

#include "incexp/error.hpp"

namespace incexp::quad {

Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidParameter("gauss_legendre: n must be positive");
  Rule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 - (static_cast<double>(j) - 1.0) * p3) /
             static_cast<double>(j);
      }
      dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

Rule gauss_hermite(std::size_t n) {
  if (n == 0 || n > 512) {
    throw InvalidParameter("gauss_hermite: node count must be in [1, 512], got " + std::to_string(n));
  }
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  const double dn = static_cast<double>(n);
  // Starting points from the Jacobi matrix, then Newton on the orthonormal recurrence.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd off(static_cast<Eigen::Index>(n - 1));
  for (std::size_t j = 1; j < n; ++j) off[static_cast<Eigen::Index>(j - 1)] = std::sqrt(0.5 * static_cast<double>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi;
  jacobi.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (jacobi.info() != Eigen::Success) throw NumericalError("gauss_hermite: Jacobi eigenvalues did not converge");
  const Eigen::VectorXd& guess = jacobi.eigenvalues();
  Rule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = (n % 2 == 1 && i + 1 == half) ? 0.0 : std::abs(guess[static_cast<Eigen::Index>(i)]);
    double pp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * dn) * p2;
      const double step = pp == 0.0 ? 0.0 : p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("gauss_hermite: Newton iteration did not converge for n=" + std::to_string(n));
    }
    const double w = pp == 0.0 ? 0.0 : 2.0 / (pp * pp);
    rule.nodes[i] = -z;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = z;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace {

// Kronrod abscissae / weights for the 7/15 pair (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double absh = std::abs(half);
  resasc *= absh;
  resabs *= absh;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, resk * half, err};
}

}  // namespace

Result integrate(const Integrand& f, std::span<const double> breakpoints, const AdaptiveOptions& opts) {
  if (breakpoints.size() < 2) throw InvalidParameter("integrate: need at least two breakpoints");
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] <= breakpoints[i + 1])) {
      throw InvalidParameter("integrate: breakpoints must be non-decreasing");
    }
    if (breakpoints[i] == breakpoints[i + 1]) continue;
    Segment s = gk15(f, breakpoints[i], breakpoints[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }
  Result out;
  out.intervals = heap.size();
  while (!heap.empty()) {
    if (total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
      out.converged = true;
      break;
    }
    if (out.intervals >= opts.max_intervals) break;
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval can no longer be split in floating point.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++out.intervals;
  }
  if (heap.empty()) out.converged = true;
  // Re-sum from the leaves to shed the drift of incremental updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

Result integrate(const Integrand& f, double a, double b, const AdaptiveOptions& opts) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), opts);
}

double composite(const Integrand& f, std::span<const double> edges, const Rule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    double panel = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      panel += rule.weights[k] * f(mid + half * rule.nodes[k]);
    }
    sum += half * panel;
  }
  return sum;
}

std::vector<double> graded_mesh(double x, std::size_t n, double zeta) {
  if (zeta >= 1.0) throw DomainError("graded_mesh: zeta must be < 1");
  if (n == 0) throw InvalidParameter("graded_mesh: need at least one panel");
  const double grading = 1.0 / (1.0 - std::max(zeta, 0.0));
  std::vector<double> mesh(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    mesh[i] = x * std::pow(static_cast<double>(i) / static_cast<double>(n), grading);
  }
  mesh[n] = x;
  return mesh;
}

double translation_reduced_integral(const Integrand& w, double x, double zeta, std::size_t panels) {
  static const Rule gl8 = gauss_legendre(8);
  if (x <= 0.0) return 0.0;
  if (zeta >= 1.0) throw DomainError("translation_reduced_integral: zeta must be < 1");
  if (panels == 0) throw InvalidParameter("translation_reduced_integral: need at least one panel");
  const Integrand f = [&](double s) { return (x - s) * w(s); };
  // s = x t^g turns an s^-zeta singularity into a smooth integrand in t.
  const double g = 1.0 / (1.0 - std::max(zeta, 0.0));
  const double dn = static_cast<double>(panels);
  const Integrand ft = [&](double t) { return f(x * std::pow(t, g)) * x * g * std::pow(t, g - 1.0); };
  // The panel touching 0 carries the singularity; bisect it adaptively (log-type kernels
  // are not absorbed by the substitution alone).
  AdaptiveOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-12;
  const double head = integrate(ft, 0.0, 1.0 / dn, opts).value;
  std::vector<double> edges(panels);
  for (std::size_t i = 1; i <= panels; ++i) edges[i - 1] = static_cast<double>(i) / dn;
  return 2.0 * (head + composite(ft, edges, gl8));
}

}  // namespace incexp::quad
