#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "incexp/error.hpp"
#include "incexp/harness.hpp"
#include "incexp/monte_carlo.hpp"

using namespace incexp;

namespace {

ExperimentConfig small() {
  ExperimentConfig c;
  c.n = std::size_t{1} << 12;
  c.h_list = {4, 8, 16, 32, 64};
  c.R = 64;
  c.seed = 5;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("config file parsing and overrides") {
  const auto file = (std::filesystem::temp_directory_path() / "incexp_test.cfg").string();
  {
    std::ofstream os(file);
    os << "# comment\nmodel = fbmix:a=1,1;beta=1.7,1.9\nn = 2^14  # trailing\nwindow = 0.5, 1.0\n"
       << "h_list = 2,4\nthresholds.rel_tol = 0.1\ncontrast = true\n";
  }
  const auto cfg = load_config(file);
  std::filesystem::remove(file);
  CHECK(cfg.model == "fbmix:a=1,1;beta=1.7,1.9");
  CHECK(cfg.n == 16384);
  CHECK(cfg.a == 0.5);
  CHECK(cfg.b == 1.0);
  CHECK(cfg.h_list == std::vector<std::size_t>{2, 4});
  CHECK(cfg.thresholds.rel_tol == 0.1);
  CHECK(cfg.contrast);
  ExperimentConfig c;
  CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), InvalidParameter);
  CHECK_THROWS_AS(apply_setting(c, "n", "abc"), InvalidParameter);
  c.h_list = {1u << 20};
  CHECK_THROWS_AS(validate_grid(c), InvalidParameter);
}

TEST_CASE("jackknife estimates") {
  const std::vector<double> x{1, -1, 1, -1, 1, -1, 1, -1};
  const auto l2 = mc::l2_norm(x);
  CHECK(l2.value == doctest::Approx(1.0));
  CHECK(l2.se == doctest::Approx(0.0).epsilon(1e-12));
  const auto m = mc::moments({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(m.skewness.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.excess_kurtosis.value == doctest::Approx(-1.2242424).epsilon(1e-6));
}

TEST_CASE("expansion of H_k at j0 = k vanishes up to discretization") {
  auto cfg = small();
  cfg.f = "hermite:k=2";
  cfg.j0 = 2;
  cfg.h_list = {1};
  const auto rep = run_expansion(cfg);
  CHECK(rep.rows[0][3] <= 1e-8 * rep.rows[0][7]);
}

TEST_CASE("triangle inequality between consecutive truncation orders") {
  auto cfg = small();
  cfg.f = "abs";
  cfg.j0 = 2;
  const auto two = run_expansion(cfg);
  cfg.j0 = 1;
  const auto one = run_expansion(cfg);
  for (std::size_t i = 0; i < two.rows.size(); ++i) {
    CHECK(two.rows[i][3] <= one.rows[i][3] + two.rows[i][8] + 1e-12);
  }
}

TEST_CASE("reports do not depend on the worker count") {
  auto cfg = small();
  cfg.threads = 1;
  const auto a = run_expansion(cfg);
  cfg.threads = 3;
  const auto b = run_expansion(cfg);
  CHECK(a.rows == b.rows);
  std::ostringstream sa, sb;
  write_csv(a, sa);
  write_csv(b, sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("hypothesis checks raise configuration errors") {
  auto cfg = small();
  cfg.j0 = 5;
  CHECK_THROWS_AS(run_expansion(cfg), UnsupportedOrder);
  cfg = small();
  cfg.model = "fbm:r=1.4";
  cfg.f = "abs";
  CHECK_THROWS_AS(run_corollary_rank(cfg), PreconditionError);
  cfg = small();
  cfg.f = "abs";
  CHECK_THROWS_AS(run_variance_asymptotics(cfg), PreconditionError);
  cfg = small();
  cfg.f = "hermite:k=2";
  CHECK_THROWS_AS(run_clt(cfg), PreconditionError);
  cfg.model = "fbm:r=1";
  cfg.f = "identity";
  CHECK_THROWS_AS(run_clt(cfg), PreconditionError);
}

TEST_CASE("wick rate at order 0 is identically zero") {
  auto cfg = small();
  cfg.orders = {0, 1};
  const auto rep = run_wick_rate(cfg);
  CHECK(rep.verdicts[0].name == "zero_distance_j0");
  CHECK(rep.verdicts[0].pass);
}

TEST_CASE("summary JSON carries experiment, config echo, verdicts and build") {
  auto cfg = small();
  cfg.model = "fbm:r=1.8";
  const auto rep = run_kernel_limits(cfg);
  const auto js = summary_json(rep, cfg);
  CHECK(js.find("\"experiment\": \"kernel-limits\"") != std::string::npos);
  CHECK(js.find("\"verdicts\"") != std::string::npos);
  CHECK(js.find("\"build\"") != std::string::npos);
  CHECK(js.find("\"model\": \"fbm:r=1.8\"") != std::string::npos);
  std::ostringstream csv;
  write_csv(rep, csv);
  CHECK(csv.str().rfind("model,k,h,I_k,scaled,oracle,rel_gap\n", 0) == 0);
}
