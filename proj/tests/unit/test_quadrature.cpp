#include <doctest.h>

#include <cmath>
#include <numbers>

#include "incexp/error.hpp"
#include "incexp/quadrature.hpp"

using namespace incexp;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  const auto rule = quad::gauss_legendre(6);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 10);
  CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Hermite weights sum to sqrt(pi) and reproduce Gaussian moments") {
  for (std::size_t n : {1u, 2u, 16u, 64u, 200u, 512u}) {
    const auto rule = quad::gauss_hermite(n);
    double w = 0.0;
    for (double v : rule.weights) w += v;
    CHECK(std::abs(w - std::sqrt(std::numbers::pi)) < 1e-12);
  }
  // E eta^4 = 3 with x = sqrt(2) t.
  const auto rule = quad::gauss_hermite(20);
  double m4 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = std::numbers::sqrt2 * rule.nodes[i];
    m4 += rule.weights[i] * x * x * x * x;
  }
  CHECK(m4 / std::sqrt(std::numbers::pi) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS_AS(quad::gauss_hermite(0), InvalidParameter);
  CHECK_THROWS_AS(quad::gauss_hermite(513), InvalidParameter);
}

TEST_CASE("adaptive integration handles endpoint singularities and breakpoints") {
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  const std::vector<double> cuts{-1.0, 0.0, 1.0};
  const auto k = quad::integrate([](double x) { return std::abs(x); }, cuts);
  CHECK(k.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("graded mesh clusters at zero and absorbs power singularities") {
  const auto mesh = quad::graded_mesh(1.0, 8, 0.5);
  CHECK(mesh.front() == 0.0);
  CHECK(mesh.back() == doctest::Approx(1.0));
  CHECK(mesh[1] == doctest::Approx(std::pow(1.0 / 8.0, 2.0)));
  CHECK_THROWS(quad::graded_mesh(1.0, 8, 1.0));
  // 2 int_0^1 (1-s) s^-0.8 ds = 2 (1/0.2 - 1/1.2).
  const double v = quad::translation_reduced_integral([](double s) { return std::pow(s, -0.8); }, 1.0, 0.8);
  CHECK(v == doctest::Approx(2.0 * (5.0 - 1.0 / 1.2)).epsilon(1e-8));
}
