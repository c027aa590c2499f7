#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "incexp/error.hpp"
#include "incexp/functionals.hpp"
#include "model_impl.hpp"
#include "text_format.hpp"

namespace incexp {

double kernel_integral(const IncrementVarianceModel& model, int k, double h, double c) {
  if (!(h > 0.0) || !(c > 0.0) || k < 1) throw InvalidParameter("kernel_integral: need h > 0, c > 0, k >= 1");
  const double s2h = model.sigma2(h);
  auto tau = [&](double s) { return model.second_difference(s, h) / (2.0 * s2h); };
  auto integrand = [&](double s) { return (c - s) * std::pow(tau(s), k); };
  // tau_h has a kink at s = h and decays like a power of s/h beyond it.
  std::vector<double> cuts{0.0};
  for (double s = h; s < c; s *= 2.0) cuts.push_back(s);
  cuts.push_back(c);
  quad::AdaptiveOptions opts;
  opts.abs_tol = 1e-8 * c * c;
  opts.rel_tol = 1e-10;
  opts.max_intervals = 20000;
  const auto r = quad::integrate(integrand, cuts, opts);
  if (!r.converged) {
    throw NumericalError("kernel_integral: quadrature did not converge (k=" + std::to_string(k) + ", h=" +
                         detail::format_number(h) + ", error " + detail::format_number(r.error) + ")");
  }
  return 2.0 * r.value;
}

double chaos_second_moment(const IncrementVarianceModel& model, int k, double c) {
  if (k < 0 || !(c > 0.0)) throw InvalidParameter("chaos_second_moment: need k >= 0 and c > 0");
  if (!model.supports_order(k)) {
    throw UnsupportedOrder("chaos_second_moment: k*zeta = " + detail::format_number(k * model.zeta()) +
                           " >= 1 for " + model.spec());
  }
  if (k == 0) return c * c;
  const double kz = static_cast<double>(k) * std::max(model.zeta(), 0.0);
  const double integral =
      quad::translation_reduced_integral([&](double s) { return std::pow(model.rho(s), k); }, c, kz);
  return std::tgamma(static_cast<double>(k) + 1.0) * integral;
}

bool KernelIntegralTable::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

KernelIntegralTable kernel_limits_check(const IncrementVarianceModel& model, const std::vector<int>& orders,
                                        std::vector<double> h_grid, double c) {
  if (orders.empty()) throw InvalidParameter("kernel_limits_check: no orders given");
  if (h_grid.size() < 2) throw InvalidParameter("kernel_limits_check: need at least two h values");
  std::sort(h_grid.begin(), h_grid.end(), std::greater<>());
  const double h_min = h_grid.back();
  if (h_grid.front() / h_min < 100.0 * (1.0 - 1e-12)) {
    throw InvalidParameter("kernel_limits_check: h grid must span at least two decades");
  }
  KernelIntegralTable t;
  t.model_spec = model.spec();
  t.c = c;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k : orders) {
    if (k < 1) throw InvalidParameter("kernel_limits_check: orders must be >= 1");
    const bool supported = model.supports_order(k);
    const double oracle = supported ? chaos_second_moment(model, k, c) / std::tgamma(k + 1.0) : nan;
    std::vector<double> gaps;
    for (double h : h_grid) {
      KernelRow r;
      r.k = k;
      r.h = h;
      r.I_k = kernel_integral(model, k, h, c);
      r.scaled = r.I_k * std::pow(model.sigma2(h) / (h * h), k);
      r.oracle = oracle;
      r.rel_gap = supported ? std::abs(r.scaled - oracle) / std::abs(oracle) : nan;
      gaps.push_back(r.rel_gap);
      t.rows.push_back(r);
    }
    if (!supported) continue;
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] <= gaps[i - 1] * (1.0 + 1e-9);
    t.verdicts.push_back({"scaled_limit_k" + std::to_string(k), gaps.back() <= 0.05 && decreasing,
                          "relative gap to 2 int (c-s) rho^k <= 0.05 at smallest h and non-increasing", gaps.back()});
  }
  // Ratios of consecutive orders over the bottom decade.
  std::vector<int> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  auto value = [&](int k, double h) {
    for (const auto& r : t.rows) {
      if (r.k == k && r.h == h) return r.I_k;
    }
    return nan;
  };
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const int k = sorted[i];
    if (sorted[i + 1] != k + 1) continue;
    bool strictly = true;
    double prev = std::numeric_limits<double>::infinity();
    double last = nan;
    for (double h : h_grid) {
      if (h > 10.0 * h_min * (1.0 + 1e-9)) continue;
      const double ratio = value(k + 1, h) / value(k, h);
      strictly = strictly && ratio < prev;
      prev = ratio;
      last = ratio;
    }
    t.verdicts.push_back({"ratio_I" + std::to_string(k + 1) + "_over_I" + std::to_string(k) + "_decreasing", strictly,
                          "I_{k+1}/I_k strictly decreasing as h decreases over the bottom decade", last});
  }
  return t;
}

void write_kernel_csv(const KernelIntegralTable& table, std::ostream& os) {
  os << "model,k,h,I_k,scaled,oracle,rel_gap\n";
  for (const auto& r : table.rows) {
    os << '"' << table.model_spec << '"' << ',' << r.k << ',' << detail::fmt17(r.h) << ',' << detail::fmt17(r.I_k) << ','
       << detail::fmt17(r.scaled) << ',' << detail::fmt17(r.oracle) << ',' << detail::fmt17(r.rel_gap) << '\n';
  }
}

}  // namespace incexp
