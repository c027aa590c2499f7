#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace incexp {

/// Normalized probabilists' Hermite polynomial H_k = He_k / sqrt(k!), so E[H_k(eta)^2] = 1.
double hermite(int k, double x);

/// H_0(x), ..., H_k(x) in one recurrence pass.
void hermite_all(int k, double x, double* out);

/// Wick power :x^k: of a centred Gaussian value x with variance v, v^{k/2} sqrt(k!) H_k(x/sqrt(v)).
double wick_power(double x, double v, int k);

/// Same value from the alternating sum sum_j (-1)^j C(k,2j) (2j-1)!! v^j x^{k-2j}.
double wick_power_alternating(double x, double v, int k);

/// Scalar test function f, with its kinks/jumps listed so quadrature can split there.
class TestFunction {
 public:
  TestFunction(std::string spec, std::function<double(double)> f, std::vector<double> breakpoints = {},
               bool symmetric = false);

  double operator()(double x) const { return f_(x); }
  const std::string& spec() const { return spec_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool symmetric() const { return symmetric_; }

 private:
  std::string spec_;
  std::function<double(double)> f_;
  std::vector<double> breakpoints_;
  bool symmetric_;
};

/// `identity`, `abs`, `sign`, `square`, `hermite:k=3`, `poly:1,0,2` (c0 + c1 x + ...),
/// `indicator:c=0.5` (1 for x > c). Throws InvalidParameter.
TestFunction parse_test_function(std::string_view spec);

inline constexpr double rank_tolerance = 1e-9;

struct HermiteCoeffs {
  std::vector<double> a;  // a_0..a_J
  int J = 0;
  int k0 = 0;             // 0 when no coefficient of order >= 1 exceeds rank_tolerance
  double f_norm_sq = 0.0;
  double tail_mass = 0.0;
};

/// a_k = E[H_k(eta) f(eta)] for k <= J. Smooth f use n_quad-point Gauss-Hermite; f with
/// breakpoints use composite Gauss-Legendre against the Gaussian density split at the
/// breakpoints, since Gauss-Hermite converges only like 1/n across a kink.
/// Requires n_quad >= 2J + 2.
HermiteCoeffs hermite_coeffs(const TestFunction& f, int J, std::size_t n_quad = 128);

/// Minimal k >= 1 with |a_k| > rank_tolerance; PreconditionError if none up to J.
int hermite_rank(const HermiteCoeffs& coeffs);

/// Gram matrix error max_{j,k<=K} |int H_j H_k dmu - delta_jk| under n-node Gauss-Hermite.
double hermite_orthonormality_error(int K, std::size_t n);

}  // namespace incexp
