#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace incexp::mc {

/// Calls `replicate(r)` for r = 0..R-1 on `threads` workers (0 = hardware concurrency) and
/// returns the results indexed by r, so any later reduction is independent of scheduling.
/// The first exception thrown by a replicate is rethrown after all workers stop.
std::vector<std::vector<double>> run_replicates(std::size_t R, std::size_t threads,
                                                const std::function<std::vector<double>(std::size_t)>& replicate);

/// Column `col` of the replicate table.
std::vector<double> column(const std::vector<std::vector<double>>& table, std::size_t col);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

Estimate mean(const std::vector<double>& x);

/// sqrt(mean(x^2)) with a leave-one-out jackknife standard error.
Estimate l2_norm(const std::vector<double>& x);

/// Unbiased sample variance; SE from the fourth central moment, sqrt((m4 - s^4 (n-3)/(n-1)) / n).
Estimate variance(const std::vector<double>& x);

/// Sample standard deviation; jackknife SE.
Estimate standard_deviation(const std::vector<double>& x);

struct Moments {
  Estimate mean;
  Estimate variance;
  Estimate skewness;         // SE sqrt(6n(n-1)/((n-2)(n+1)(n+3)))
  Estimate excess_kurtosis;  // SE 2 SE_skew sqrt((n^2-1)/((n-3)(n+5)))
};

/// Moments of x after standardization by its own sample mean and standard deviation.
Moments moments(const std::vector<double>& x);

}  // namespace incexp::mc
