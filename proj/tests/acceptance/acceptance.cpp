// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incexp/error.hpp"
#include "incexp/functionals.hpp"
#include "incexp/harness.hpp"
#include "incexp/hermite_wick.hpp"
#include "incexp/models.hpp"
#include "incexp/monte_carlo.hpp"
#include "incexp/pathgen.hpp"

using namespace incexp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool verdict(const Report& r, const std::string& name, std::string& detail) {
  for (const auto& v : r.verdicts) {
    if (v.name == name) {
      detail += name + fmt(" = %.4g", v.value) + " (" + v.threshold + "); ";
      return v.pass;
    }
  }
  detail += name + ": missing; ";
  return false;
}

std::vector<std::size_t> pow2_range(int lo, int hi) {
  std::vector<std::size_t> v;
  for (int e = lo; e <= hi; ++e) v.push_back(std::size_t{1} << e);
  return v;
}

Outcome orthonormality() {
  const double err = hermite_orthonormality_error(20, 64);
  return {err <= 1e-10, fmt("max error %.3g", err)};
}

Outcome wick_identity() {
  constexpr std::size_t N = 100000;
  bool pass = true;
  std::string detail;
  for (double r : {-0.5, 0.0, 0.7}) {
    std::mt19937_64 rng(20240917 + static_cast<std::uint64_t>(std::lround(10 * r + 10)));
    std::normal_distribution<double> nd;
    std::vector<double> x(N), y(N);
    for (std::size_t i = 0; i < N; ++i) {
      x[i] = nd(rng);
      y[i] = r * x[i] + std::sqrt(1.0 - r * r) * nd(rng);
    }
    double fact = 1.0;
    for (int k = 1; k <= 3; ++k) {
      fact *= k;
      std::vector<double> prod(N);
      for (std::size_t i = 0; i < N; ++i) prod[i] = wick_power(x[i], 1.0, k) * wick_power(y[i], 1.0, k);
      const auto m = mc::mean(prod);
      const double target = fact * std::pow(r, k);
      const double z = (m.value - target) / m.se;
      pass = pass && std::abs(z) <= 4.0;
      detail += fmt("r=%g k=%g z=%.2f ", r, k, z);
    }
  }
  return {pass, detail};
}

Outcome kernel_limits() {
  const auto model = make_fbm(1.8);
  const double h = 1e-4;
  const double s = model.sigma2(h) / (h * h);
  const double i1 = kernel_integral(model, 1, h, 1.0) * s;
  // 2 int_0^1 (1-s) (0.72 s^-0.2)^2 ds = 2 0.72^2 B(0.6, 2).
  const double oracle2 = 2.0 * 0.72 * 0.72 * std::tgamma(0.6) * std::tgamma(2.0) / std::tgamma(2.6);
  const double i2 = kernel_integral(model, 2, h, 1.0) * s * s;
  bool decreasing = true;
  double prev = INFINITY;
  for (int e = 0; e <= 16; ++e) {
    const double hh = 1e-4 * std::pow(10.0, e / 8.0);
    const double ratio = kernel_integral(model, 3, hh, 1.0) / kernel_integral(model, 2, hh, 1.0);
    if (e > 0 && !(ratio > prev)) decreasing = false;
    prev = ratio;
  }
  const double g1 = std::abs(i1 - 1.0), g2 = std::abs(i2 - oracle2) / oracle2;
  return {g1 <= 0.02 && g2 <= 0.05 && decreasing && std::abs(oracle2 - 1.08) < 1e-12,
          fmt("|I1 scaled - 1| = %.3g, I2 gap %.3g, ", g1, g2) + (decreasing ? "I3/I2 decreasing" : "I3/I2 not decreasing")};
}

Outcome chaos_second_moment_mc() {
  const auto model = make_fbm(1.8);
  const Grid grid{1.0, std::size_t{1} << 14};
  const CirculantSampler sampler(model, grid);
  constexpr std::size_t R = 2000;
  const auto table = mc::run_replicates(R, 0, [&](std::size_t r) {
    const auto path = sampler.sample(replicate_seed(11, r));
    return std::vector<double>{wick_functional(path, model, 2, 1, 0.0, 1.0, false).value};
  });
  const auto v = mc::variance(mc::column(table, 0));
  const double oracle = 2.0 * 2.0 * 0.72 * 0.72 * std::tgamma(0.6) / std::tgamma(2.6);
  const double z = (v.value - oracle) / v.se;
  return {std::abs(z) <= 4.0, fmt("variance %.4f +- %.4f vs %.4f", v.value, v.se, oracle)};
}

Outcome rho_identity() {
  const std::vector<std::string> zoo = {"fbm:r=1.2", "fbm:r=1.5", "fbm:r=1.8", "fbm:r=2",
                                        "concave:r=1.2", "concave:r=1.5",
                                        "fbmix:a=1,0.5;beta=1.3,1.9", "fbmix:a=0.2,1,3;beta=1.1,1.6,2",
                                        "fbmeasure:beta=1.5;nodes=1.5,1.7,1.9;weights=1,1,1",
                                        "fblaplace:beta=1.4;s=0.1,0.3;w=1,2", "logspec"};
  double worst = 0.0;
  int checked = 0;
  std::string detail;
  std::vector<double> xs;
  for (int i = 0; i <= 30; ++i) xs.push_back(std::pow(10.0, -3.0 + i / 10.0));
  for (const auto& spec : zoo) {
    IncrementVarianceModel m = make_fbm(1.8);
    try {
      m = parse_model(spec);
    } catch (const Error& e) {
      detail += spec + " unparsed (" + e.what() + "); ";
      continue;
    }
    if (!m.rho_is_closed_form() || m.zeta() >= 1.0) continue;
    const double err = sigma2_from_rho_consistency(m, xs);
    worst = std::max(worst, err);
    ++checked;
    detail += m.spec() + fmt(" %.2g; ", err);
  }
  return {checked >= 5 && worst <= 1e-4, fmt("%g models, worst %.3g: ", checked, worst) + detail};
}

ExperimentConfig base(std::uint64_t seed) {
  ExperimentConfig c;
  c.seed = seed;
  c.threads = 0;
  return c;
}

Outcome path_exactness() {
  auto c = base(21);
  c.n = std::size_t{1} << 12;
  c.R = 2000;
  c.h_list = {16};
  std::string detail;
  const auto rep = run_simulate(c);
  bool pass = true;
  for (int lag = 0; lag <= 4; ++lag) pass = verdict(rep, "increment_covariance_lag" + std::to_string(lag), detail) && pass;
  return {pass, detail};
}

Outcome wick_rate() {
  auto c = base(31);
  c.R = 500;
  c.h_list = pow2_range(4, 10);
  c.orders = {1, 2};
  std::string detail;
  const auto rep = run_wick_rate(c);
  const bool p1 = verdict(rep, "decay_slope_j1", detail);
  const bool p2 = verdict(rep, "decay_slope_j2", detail);
  return {p1 && p2, detail};
}

Outcome expansion() {
  auto c = base(41);
  c.f = "abs";
  c.j0 = 2;
  c.R = 1000;
  std::string detail;
  const bool p = verdict(run_expansion(c), "normalized_error_decreasing", detail);
  return {p, detail};
}

Outcome corollary_rank_one() {
  auto c = base(51);
  c.f = "poly:0,1,0,1";
  c.R = 1000;
  std::string detail;
  const bool p = verdict(run_corollary_rank(c), "relative_distance_at_smallest_h", detail);
  return {p, detail};
}

Outcome clt_contrast() {
  auto c = base(61);
  c.f = "hermite:k=2";
  c.n = std::size_t{1} << 16;
  c.h_list = pow2_range(4, 10);
  c.R = 5000;
  c.model = "fbm:r=1";
  std::string detail = "brownian ";
  const bool brownian = verdict(run_clt(c), "normal_limit_at_smallest_h", detail);
  c.model = "fbm:r=1.8";
  c.contrast = true;
  detail += "| fbm 1.8 ";
  const bool fbm = verdict(run_clt(c), "normal_limit_at_smallest_h", detail);
  return {brownian && !fbm, detail};
}

Outcome determinism() {
  ExperimentConfig c;
  c.n = std::size_t{1} << 12;
  c.h_list = {4, 8, 16, 32, 64};
  c.R = 64;
  c.seed = 7;
  struct Case {
    std::string name, model, f;
  };
  const std::vector<Case> cases = {{"models-check", "fbm:r=1.8", "abs"},  {"kernel-limits", "fbm:r=1.8", "abs"},
                                   {"simulate", "fbm:r=1.8", "abs"},      {"expand", "fbm:r=1.8", "abs"},
                                   {"rank", "fbm:r=1.8", "poly:0,1,0,1"}, {"wick-rate", "fbm:r=1.8", "abs"},
                                   {"clt", "fbm:r=1", "hermite:k=2"},     {"variance", "fbm:r=1.8", "poly:0,1,0,1"}};
  bool pass = true;
  std::string detail;
  for (const auto& k : cases) {
    c.model = k.model;
    c.f = k.f;
    std::string out[3];
    const std::size_t threads[3] = {1, 1, 3};
    for (int i = 0; i < 3; ++i) {
      c.threads = threads[i];
      std::ostringstream os;
      write_csv(run_experiment(k.name, c), os);
      out[i] = os.str();
    }
    const bool same = out[0] == out[1] && out[0] == out[2] && !out[0].empty();
    pass = pass && same;
    detail += k.name + (same ? " identical; " : " DIFFERS; ");
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Hermite orthonormality", orthonormality},
      {"Wick identity", wick_identity},
      {"kernel limits", kernel_limits},
      {"chaos second moment", chaos_second_moment_mc},
      {"sigma2 from rho identity", rho_identity},
      {"path synthesis exactness", path_exactness},
      {"Wick rate bound", wick_rate},
      {"chaos expansion error", expansion},
      {"rank-one limit", corollary_rank_one},
      {"normal limit contrast", clt_contrast},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %zu: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
