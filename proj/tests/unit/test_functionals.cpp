#include <doctest.h>

#include <cmath>

#include "incexp/error.hpp"
#include "incexp/functionals.hpp"
#include "incexp/monte_carlo.hpp"

using namespace incexp;

namespace {
const IncrementVarianceModel& fbm18() {
  static const auto m = make_fbm(1.8);
  return m;
}
}  // namespace

TEST_CASE("increment functional: constants and window checks") {
  const auto p = simulate_circulant(fbm18(), Grid{2.0, 1024}, 3);
  const auto one = parse_test_function("poly:1");
  CHECK(increment_functional(p, fbm18(), one, 4, 0.25, 1.25).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(increment_functional(p, fbm18(), one, 600, 0.25, 1.25), InvalidParameter);
  CHECK_THROWS_AS(increment_functional(p, fbm18(), one, 0, 0.25, 1.25), InvalidParameter);
}

TEST_CASE("H_k functional equals the scaled Wick functional on every path") {
  const auto p = simulate_circulant(fbm18(), Grid{2.0, 4096}, 8);
  for (int k = 1; k <= 4; ++k) {
    const auto f = parse_test_function("hermite:k=" + std::to_string(k));
    for (std::size_t m : {1u, 8u, 64u}) {
      const double h = m * p.grid.delta();
      const double F = increment_functional(p, fbm18(), f, m, 0.25, 1.25).value;
      const double W = wick_functional(p, fbm18(), k, m, 0.25, 1.25, false).value;
      const double scale = std::pow(h * h / fbm18().sigma2(h), 0.5 * k) / std::sqrt(std::tgamma(k + 1.0));
      CHECK(F == doctest::Approx(scale * W).epsilon(1e-10));
    }
  }
}

TEST_CASE("Wick functional and chaos reference basics") {
  const auto p = simulate_circulant(fbm18(), Grid{2.0, 4096}, 9);
  CHECK(wick_functional(p, fbm18(), 0, 5, 0.25, 1.25).value == doctest::Approx(1.0));
  const double inc = p.values[2560] - p.values[512];
  CHECK(wick_functional(p, fbm18(), 1, 1, 0.25, 1.25, false).value == doctest::Approx(inc).epsilon(1e-10));
  CHECK(chaos_reference(p, fbm18(), 1, 0.25, 1.25).value == inc);
  CHECK_THROWS_AS(chaos_reference(p, fbm18(), 5, 0.25, 1.25), UnsupportedOrder);
  const auto c2 = chaos_reference(p, fbm18(), 2, 0.25, 1.25);
  CHECK(c2.oracle_second_moment == doctest::Approx(2.16).epsilon(1e-6));
}

TEST_CASE("expansion right-hand side special cases") {
  const auto p = simulate_circulant(fbm18(), Grid{2.0, 4096}, 10);
  const auto ab = hermite_coeffs(parse_test_function("abs"), 8);
  CHECK(expansion_rhs(p, fbm18(), ab, 0, 16, 0.25, 1.25) == doctest::Approx(ab.a[0]));
  const auto id = hermite_coeffs(parse_test_function("identity"), 4);
  const double h = 16 * p.grid.delta();
  CHECK(expansion_rhs(p, fbm18(), id, 1, 16, 0.25, 1.25) ==
        doctest::Approx(h / fbm18().sigma(h) * (p.values[2560] - p.values[512])).epsilon(1e-9));
  CHECK_THROWS_AS(expansion_rhs(p, fbm18(), ab, 5, 16, 0.25, 1.25), UnsupportedOrder);
}

TEST_CASE("f = H_k with j0 = k has zero expansion error at h = delta") {
  const auto p = simulate_circulant(fbm18(), Grid{2.0, 4096}, 12);
  for (int k = 1; k <= 4; ++k) {
    const auto f = parse_test_function("hermite:k=" + std::to_string(k));
    const auto c = hermite_coeffs(f, 8);
    const double F = increment_functional(p, fbm18(), f, 1, 0.25, 1.25).value;
    const double S = expansion_rhs(p, fbm18(), c, k, 1, 0.25, 1.25);
    CHECK(std::abs(F - S) <= 1e-8 * std::max(1.0, std::abs(F)));
  }
}

TEST_CASE("kernel integrals: bounds and limits") {
  const auto& m = fbm18();
  for (int k = 1; k <= 3; ++k) {
    for (double h : {1e-1, 1e-2, 1e-3}) CHECK(std::abs(kernel_integral(m, k, h, 1.0)) <= 1.0);
  }
  const double h = 1e-4;
  const double q = m.sigma2(h) / (h * h);
  CHECK(std::abs(kernel_integral(m, 1, h, 1.0) * q - 1.0) <= 0.02);
  CHECK(std::abs(kernel_integral(m, 2, h, 1.0) * q * q - 1.08) / 1.08 <= 0.05);
  // Brownian: tau_h(s) = (1 - s/h)_+ gives I_k = 2hc/(k+1) - 2h^2/((k+1)(k+2)).
  const auto bm = make_fbm(1.0);
  for (int k = 1; k <= 3; ++k) {
    const double hh = 0.01;
    CHECK(kernel_integral(bm, k, hh, 1.0) ==
          doctest::Approx(2 * hh / (k + 1) - 2 * hh * hh / ((k + 1) * (k + 2))).epsilon(1e-7));
  }
}

TEST_CASE("chaos second moments") {
  CHECK(chaos_second_moment(fbm18(), 1, 1.0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(chaos_second_moment(fbm18(), 2, 1.0) == doctest::Approx(2.16).epsilon(1e-7));
  CHECK(chaos_second_moment(fbm18(), 3, 1.0) ==
        doctest::Approx(6.0 * 2 * std::pow(0.72, 3) * (1 / 0.4 - 1 / 1.4)).epsilon(1e-6));
  CHECK(std::isfinite(chaos_second_moment(fbm18(), 4, 1.0)));
  CHECK_THROWS_AS(chaos_second_moment(fbm18(), 5, 1.0), UnsupportedOrder);
  const auto mix = make_fb_mixture_discrete({1.0, 1.0}, {1.7, 1.9});
  CHECK(chaos_second_moment(mix, 1, 0.8) == doctest::Approx(mix.sigma2(0.8)).epsilon(1e-5));
}

TEST_CASE("kernel limit tables") {
  std::vector<double> hs;
  for (int i = 0; i <= 8; ++i) hs.push_back(std::pow(10.0, -2.0 - 0.25 * i));
  const auto t = kernel_limits_check(fbm18(), {1, 2, 3}, hs, 1.0);
  CHECK(t.all_pass());
  CHECK(t.rows.size() == 27);
  // Brownian motion: the ratio trend holds, with limit 2/3 rather than 0.
  const auto bm = kernel_limits_check(make_fbm(1.0), {1, 2}, hs, 1.0);
  CHECK(bm.all_pass());
  const double ratio = bm.rows[17].I_k / bm.rows[8].I_k;
  CHECK(ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  const auto mix = kernel_limits_check(make_fb_mixture_discrete({1.0, 1.0}, {1.7, 1.9}), {1}, hs, 1.0);
  CHECK(mix.rows.back().rel_gap <= 0.05);
  CHECK_THROWS_AS(kernel_limits_check(fbm18(), {1}, {1e-2, 1e-3}, 1.0), InvalidParameter);
}

TEST_CASE("Monte Carlo: second moments, cross moments, and the k = 1 kernel identity") {
  const auto& m = fbm18();
  const Grid g{1.0, std::size_t{1} << 12};
  const CirculantSampler s(m, g);
  // W_3^2 is heavy-tailed enough that its jackknife SE is unreliable much below R = 4000.
  const std::size_t R = 4000;
  std::vector<double> w1, w2, w3, w12, x;
  const std::size_t mh = 16;
  const double h = mh * g.delta();
  for (std::size_t r = 0; r < R; ++r) {
    const auto p = s.sample(replicate_seed(31, r));
    const double a = wick_functional(p, m, 1, 1, 0.0, 0.5, false).value;
    const double b = wick_functional(p, m, 2, 1, 0.0, 0.5, false).value;
    const double c = wick_functional(p, m, 3, 1, 0.0, 0.5, false).value;
    w1.push_back(a * a);
    w2.push_back(b * b);
    w3.push_back(c * c);
    w12.push_back(a * b);
    x.push_back(wick_functional(p, m, 1, mh, 0.0, 0.5, false).value);
  }
  const double c = 0.5;
  for (auto [k, v] : {std::pair{1, &w1}, std::pair{2, &w2}, std::pair{3, &w3}}) {
    const auto e = mc::mean(*v);
    CHECK(std::abs(e.value - chaos_second_moment(m, k, c)) <= 4.0 * e.se);
  }
  const auto cross = mc::mean(w12);
  CHECK(std::abs(cross.value) <= 4.0 * cross.se);
  // E X_h^2 h^2 / sigma^2(h) = I_1(h), X_h the k=1 Wick functional at scale h.
  std::vector<double> xs;
  for (double v : x) xs.push_back(v * v * h * h / m.sigma2(h));
  const auto e = mc::mean(xs);
  CHECK(std::abs(e.value - kernel_integral(m, 1, h, c)) <= 4.0 * e.se);
}
