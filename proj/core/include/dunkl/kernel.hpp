#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dunkl/measure.hpp"
#include "dunkl/report.hpp"

namespace dunkl {

/// Power series of the rank-one kernel, E_k(x, y) = g(xy) with g(z) = sum a_n z^n,
/// a_0 = 1 and a_n (n + k(1 - (-1)^n)) = a_{n-1}.
class KernelSeries {
 public:
  static constexpr int max_order = 512;

  explicit KernelSeries(double k, int order = max_order);

  double k() const { return k_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Direct summation, truncated once |a_n z^n| < 1e-16 |partial sum|.
  /// Throws RangeError when the cap is reached first.
  Complex eval(Complex z) const;
  /// Term-by-term derivative g'(z).
  Complex derivative(Complex z) const;
  /// Value and derivative in one pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

 private:
  double k_;
  std::vector<double> coeffs_;
};

/// Even and odd parts of g on the imaginary axis:
///   g(i s) = e(s) + i s o(s),  e(s) = j_{k-1/2}(s),  o(s) = j_{k+1/2}(s) / (2k + 1),
/// with the normalised Bessel function j_a(s) = Gamma(a+1) (2/s)^a J_a(s).
/// Closed forms are used for integer k, libm's integer-order Bessel functions for
/// half-integer k, and Boost.Math otherwise.
class ImaginaryKernel {
 public:
  explicit ImaginaryKernel(double k);
  double k() const { return k_; }
  std::pair<double, double> parts(double s) const;
  /// g(-i s) = E_k(-i x, y) with s = x y.
  Complex minus_i(double s) const;
  /// g'(i s) = g(i s) - 2k o(s).
  Complex derivative_at_i(double s) const;

 private:
  double k_;
  int integer_k_;       // -1 when k is not an integer
  int half_integer_k_;  // k - 1/2 when that is a nonnegative integer, else -1
  KernelSeries series_;
};

/// g(z) for the rank-one multiplicity k. Selects the direct series, the Bessel form on
/// the imaginary axis, or Kummer's form e^z M(k, 2k+1, -2z) for Re z < 0.
Complex kernel_rank1(double k, double x, Complex y);
/// d/dy E_k(x, y) = x g'(xy).
Complex kernel_rank1_dy(double k, double x, Complex y);
/// g(z) and g'(z) for a complex argument.
std::pair<Complex, Complex> kernel_g(double k, Complex z);

/// E_k(x, y) = prod_i g_{k_i}(x_i y_i).
Complex kernel_eval(const DunklParams& params, std::span<const double> x, std::span<const Complex> y);
/// Gradient of E_k(x, .) at y.
std::vector<Complex> kernel_gradient_y(const DunklParams& params, std::span<const double> x,
                                       std::span<const Complex> y);

/// Samples (x, y) uniformly in the ball of the given radius and reports
/// max |E_k(-ix, y)| (bound 1) and max_j |d/dy_j E_k(-ix, y)| / |x| (bound 1).
VerificationReport verify_kernel_bounds(const DunklParams& params, int sample_count, double radius,
                                        std::uint64_t seed);

/// T_j f(x) = d f / d x_j + k_j (f(x) - f(sigma_j x)) / x_j, derivative by the
/// 6th-order central difference with h = 1e-2 (1 + |x_j|).
/// Throws SingularPointError when x_j = 0.
Complex dunkl_apply(const DunklParams& params, const PointFunction& f, int j, std::span<const double> x);

}  // namespace dunkl
