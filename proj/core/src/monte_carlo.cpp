#include "incexp/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "incexp/error.hpp"

namespace incexp::mc {

std::vector<std::vector<double>> run_replicates(std::size_t R, std::size_t threads,
                                                const std::function<std::vector<double>(std::size_t)>& replicate) {
  std::vector<std::vector<double>> out(R);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(R, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t r = next.fetch_add(1);
      if (r >= R) return;
      try {
        out[r] = replicate(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<double> column(const std::vector<std::vector<double>>& table, std::size_t col) {
  std::vector<double> v;
  v.reserve(table.size());
  for (const auto& row : table) v.push_back(row.at(col));
  return v;
}

namespace {

void require_samples(const std::vector<double>& x, std::size_t n) {
  if (x.size() < n) throw InvalidParameter("Monte Carlo estimate needs at least " + std::to_string(n) + " replicates");
}

double sum(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

// Jackknife over leave-one-out values of a statistic of the mean of `terms`.
template <class Stat>
double jackknife_se(const std::vector<double>& terms, Stat stat) {
  const double n = static_cast<double>(terms.size());
  const double total = sum(terms);
  std::vector<double> loo(terms.size());
  double avg = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    loo[i] = stat((total - terms[i]) / (n - 1.0));
    avg += loo[i];
  }
  avg /= n;
  double ss = 0.0;
  for (double v : loo) ss += (v - avg) * (v - avg);
  return std::sqrt((n - 1.0) / n * ss);
}

}  // namespace

Estimate mean(const std::vector<double>& x) {
  require_samples(x, 2);
  const double n = static_cast<double>(x.size());
  const double m = sum(x) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

Estimate l2_norm(const std::vector<double>& x) {
  require_samples(x, 2);
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  const double ms = sum(sq) / static_cast<double>(x.size());
  return {std::sqrt(ms), jackknife_se(sq, [](double m) { return std::sqrt(m); })};
}

Estimate variance(const std::vector<double>& x) {
  require_samples(x, 4);
  const double n = static_cast<double>(x.size());
  const double m = sum(x) / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = (v - m) * (v - m);
    m2 += d;
    m4 += d * d;
  }
  const double s2 = m2 / (n - 1.0);
  m4 /= n;
  return {s2, std::sqrt(std::max(0.0, m4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n)};
}

Estimate standard_deviation(const std::vector<double>& x) {
  require_samples(x, 3);
  const double n = static_cast<double>(x.size());
  const double s1 = sum(x);
  double s2 = 0.0;
  for (double v : x) s2 += v * v;
  auto sd = [n](double a, double b, double count) {
    const double m = a / count;
    return std::sqrt(std::max(0.0, (b - count * m * m) / (count - 1.0)));
  };
  const double value = sd(s1, s2, n);
  std::vector<double> loo(x.size());
  double avg = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    loo[i] = sd(s1 - x[i], s2 - x[i] * x[i], n - 1.0);
    avg += loo[i];
  }
  avg /= n;
  double ss = 0.0;
  for (double v : loo) ss += (v - avg) * (v - avg);
  return {value, std::sqrt((n - 1.0) / n * ss)};
}

Moments moments(const std::vector<double>& x) {
  require_samples(x, 8);
  const double n = static_cast<double>(x.size());
  Moments out;
  out.mean = mean(x);
  out.variance = variance(x);
  const double m = out.mean.value;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double se_skew = std::sqrt(6.0 * n * (n - 1.0) / ((n - 2.0) * (n + 1.0) * (n + 3.0)));
  out.skewness = {m3 / std::pow(m2, 1.5), se_skew};
  out.excess_kurtosis = {m4 / (m2 * m2) - 3.0, 2.0 * se_skew * std::sqrt((n * n - 1.0) / ((n - 3.0) * (n + 5.0)))};
  return out;
}

}  // namespace incexp::mc
