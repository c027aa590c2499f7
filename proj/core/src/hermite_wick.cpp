#include "incexp/hermite_wick.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "incexp/error.hpp"
#include "incexp/quadrature.hpp"

namespace incexp {

void hermite_all(int k, double x, double* out) {
  // Normalized recurrence: H_{j+1} = (x H_j - sqrt(j) H_{j-1}) / sqrt(j+1).
  out[0] = 1.0;
  if (k == 0) return;
  out[1] = x;
  for (int j = 1; j < k; ++j) {
    out[j + 1] = (x * out[j] - std::sqrt(static_cast<double>(j)) * out[j - 1]) / std::sqrt(static_cast<double>(j + 1));
  }
}

double hermite(int k, double x) {
  if (k < 0) throw InvalidParameter("hermite: order must be nonnegative");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = (x * cur - std::sqrt(static_cast<double>(j)) * prev) / std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

double wick_power(double x, double v, int k) {
  if (!(v > 0.0)) throw DomainError("wick_power: variance must be positive");
  if (k < 0) throw InvalidParameter("wick_power: order must be nonnegative");
  if (k == 0) return 1.0;
  if (k == 1) return x;
  const double sv = std::sqrt(v);
  return std::pow(sv, k) * std::sqrt(std::tgamma(static_cast<double>(k) + 1.0)) * hermite(k, x / sv);
}

double wick_power_alternating(double x, double v, int k) {
  if (!(v > 0.0)) throw DomainError("wick_power_alternating: variance must be positive");
  if (k < 0) throw InvalidParameter("wick_power_alternating: order must be nonnegative");
  double sum = 0.0;
  double binom = 1.0;   // C(k, 2j)
  double dfact = 1.0;   // (2j-1)!!
  double vpow = 1.0;
  for (int j = 0; 2 * j <= k; ++j) {
    if (j > 0) {
      binom *= static_cast<double>(k - 2 * j + 2) * static_cast<double>(k - 2 * j + 1) /
               (static_cast<double>(2 * j - 1) * static_cast<double>(2 * j));
      dfact *= static_cast<double>(2 * j - 1);
      vpow *= v;
    }
    const double term = binom * dfact * vpow * std::pow(x, k - 2 * j);
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum;
}

TestFunction::TestFunction(std::string spec, std::function<double(double)> f, std::vector<double> breakpoints,
                           bool symmetric)
    : spec_(std::move(spec)), f_(std::move(f)), breakpoints_(std::move(breakpoints)), symmetric_(symmetric) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw InvalidParameter("test function: bad number '" + s + "' for " + std::string(what));
  }
  return v;
}

std::string_view value_of(std::string_view params, std::string_view key) {
  if (params.substr(0, key.size()) != key || params.size() <= key.size() || params[key.size()] != '=') {
    throw InvalidParameter("test function: expected " + std::string(key) + "=<value>, got '" + std::string(params) + "'");
  }
  return params.substr(key.size() + 1);
}

}  // namespace

TestFunction parse_test_function(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view params = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto no_params = [&] {
    if (colon != std::string_view::npos) throw InvalidParameter("test function '" + std::string(name) + "' takes no parameters");
  };
  if (name == "identity" || name == "x") {
    no_params();
    return TestFunction("identity", [](double x) { return x; });
  }
  if (name == "abs") {
    no_params();
    return TestFunction("abs", [](double x) { return std::abs(x); }, {0.0}, true);
  }
  if (name == "sign") {
    no_params();
    return TestFunction("sign", [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }, {0.0});
  }
  if (name == "square") {
    no_params();
    return TestFunction("square", [](double x) { return x * x; }, {}, true);
  }
  if (name == "hermite") {
    const double kd = parse_double(value_of(params, "k"), "hermite order");
    const int k = static_cast<int>(kd);
    if (kd != k || k < 0 || k > 64) throw InvalidParameter("test function: hermite order must be an integer in [0, 64]");
    return TestFunction("hermite:k=" + std::to_string(k), [k](double x) { return hermite(k, x); }, {}, k % 2 == 0);
  }
  if (name == "poly") {
    std::vector<double> c;
    std::string_view rest = params;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      c.push_back(parse_double(rest.substr(0, comma), "poly coefficient"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (c.empty()) throw InvalidParameter("test function: poly needs coefficients, e.g. poly:0,1,0,1");
    bool even = true;
    for (std::size_t i = 1; i < c.size(); i += 2) even = even && c[i] == 0.0;
    return TestFunction(
        "poly:" + std::string(params),
        [c](double x) {
          double acc = 0.0;
          for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
          return acc;
        },
        {}, even);
  }
  if (name == "indicator") {
    const double c = parse_double(value_of(params, "c"), "indicator threshold");
    return TestFunction("indicator:c=" + std::string(value_of(params, "c")), [c](double x) { return x > c ? 1.0 : 0.0; },
                        {c});
  }
  throw InvalidParameter("unknown test function '" + std::string(spec) +
                         "' (identity, abs, sign, square, hermite:k=K, poly:c0,c1,..., indicator:c=C)");
}

namespace {

// Integrates f(x) H_j(x) for all j <= J and f(x)^2 against the standard Gaussian density.
void gaussian_moments(const TestFunction& f, int J, std::size_t n_quad, std::vector<double>& a, double& norm_sq) {
  a.assign(static_cast<std::size_t>(J) + 1, 0.0);
  norm_sq = 0.0;
  std::vector<double> h(static_cast<std::size_t>(J) + 1);
  auto accumulate = [&](double x, double w) {
    const double fx = f(x);
    hermite_all(J, x, h.data());
    for (int k = 0; k <= J; ++k) a[static_cast<std::size_t>(k)] += w * fx * h[static_cast<std::size_t>(k)];
    norm_sq += w * fx * fx;
  };

  if (f.breakpoints().empty()) {
    const auto rule = quad::gauss_hermite(n_quad);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    if (std::abs(wsum - sqrt_pi) > 1e-12 * sqrt_pi) {
      throw NumericalError("hermite_coeffs: Gauss-Hermite weights sum to " + std::to_string(wsum) + ", not sqrt(pi)");
    }
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      accumulate(std::numbers::sqrt2 * rule.nodes[i], rule.weights[i] / sqrt_pi);
    }
    return;
  }

  // Piecewise-smooth f: panels of width <= 0.25 between breakpoints on [-14, 14], 20-point
  // Gauss-Legendre on each; the Gaussian mass beyond 14 is below 1e-44.
  static const quad::Rule gl = quad::gauss_legendre(20);
  std::vector<double> cuts{-14.0};
  for (double b : f.breakpoints()) {
    if (b > -14.0 && b < 14.0) cuts.push_back(b);
  }
  cuts.push_back(14.0);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c];
    const double hi = cuts[c + 1];
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / 0.25));
    const double width = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = lo + (static_cast<double>(p) + 0.5) * width;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double x = mid + 0.5 * width * gl.nodes[i];
        accumulate(x, 0.5 * width * gl.weights[i] * inv_sqrt_2pi * std::exp(-0.5 * x * x));
      }
    }
  }
}

}  // namespace

HermiteCoeffs hermite_coeffs(const TestFunction& f, int J, std::size_t n_quad) {
  if (J < 0) throw InvalidParameter("hermite_coeffs: truncation J must be nonnegative");
  if (n_quad < 2 * static_cast<std::size_t>(J) + 2) {
    throw InvalidParameter("hermite_coeffs: need n_quad >= 2J+2 (J=" + std::to_string(J) +
                           ", n_quad=" + std::to_string(n_quad) + ")");
  }
  HermiteCoeffs c;
  c.J = J;
  gaussian_moments(f, J, n_quad, c.a, c.f_norm_sq);
  double captured = 0.0;
  for (double ak : c.a) captured += ak * ak;
  c.tail_mass = c.f_norm_sq - captured;
  for (int k = 1; k <= J; ++k) {
    if (std::abs(c.a[static_cast<std::size_t>(k)]) > rank_tolerance) {
      c.k0 = k;
      break;
    }
  }
  return c;
}

int hermite_rank(const HermiteCoeffs& coeffs) {
  if (coeffs.k0 == 0) {
    throw PreconditionError("hermite_rank: no coefficient of order 1.." + std::to_string(coeffs.J) +
                            " exceeds the rank tolerance (f is constant up to truncation)");
  }
  return coeffs.k0;
}

double hermite_orthonormality_error(int K, std::size_t n) {
  const auto rule = quad::gauss_hermite(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  std::vector<double> gram(static_cast<std::size_t>((K + 1) * (K + 1)), 0.0);
  std::vector<double> h(static_cast<std::size_t>(K) + 1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    hermite_all(K, std::numbers::sqrt2 * rule.nodes[i], h.data());
    const double w = rule.weights[i] / sqrt_pi;
    for (int j = 0; j <= K; ++j) {
      for (int k = 0; k <= K; ++k) {
        gram[static_cast<std::size_t>(j * (K + 1) + k)] += w * h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k)];
      }
    }
  }
  double worst = 0.0;
  for (int j = 0; j <= K; ++j) {
    for (int k = 0; k <= K; ++k) {
      const double target = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram[static_cast<std::size_t>(j * (K + 1) + k)] - target));
    }
  }
  return worst;
}

}  // namespace incexp
