#include "dunkl/kernel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr double kSeriesRadius = 4.0;
constexpr double kRelEps = 1e-17;

int order_estimate(double magnitude) { return static_cast<int>(std::ceil(std::exp(1.0) * magnitude)) + 40; }

// Kummer's M(a, b, w) by its power series.
Complex kummer_m(double a, double b, Complex w) {
  Complex sum = 1.0;
  Complex term = 1.0;
  const double mag = std::abs(w);
  for (int n = 0; n < KernelSeries::max_order; ++n) {
    term *= (a + n) / ((b + n) * (n + 1.0)) * w;
    sum += term;
    if (n > mag && std::abs(term) <= kRelEps * std::abs(sum)) return sum;
  }
  throw RangeError("Kummer series did not converge within the order cap", order_estimate(mag));
}

double normalised_bessel(double alpha, double s) {
  const double j = boost::math::cyl_bessel_j(alpha, s);
  return std::exp(std::lgamma(alpha + 1.0) + alpha * std::log(2.0 / s)) * j;
}

}  // namespace

KernelSeries::KernelSeries(double k, int order) : k_(k) {
  if (!(k >= 0.0)) throw InvalidParameter("KernelSeries: k must be >= 0");
  if (order < 1 || order > max_order) throw InvalidParameter("KernelSeries: order out of range");
  coeffs_.resize(order + 1);
  coeffs_[0] = 1.0;
  for (int n = 1; n <= order; ++n) coeffs_[n] = coeffs_[n - 1] / (n + ((n & 1) ? 2.0 * k : 0.0));
}

std::pair<Complex, Complex> KernelSeries::eval_with_derivative(Complex z) const {
  if (z == Complex{}) return {1.0, coeffs_.size() > 1 ? coeffs_[1] : 0.0};
  const double mag = std::abs(z);
  Complex sum = coeffs_[0];
  Complex dsum = 0.0;
  Complex power = 1.0;  // z^{n-1}
  const int n_max = order();
  for (int n = 1; n <= n_max; ++n) {
    const Complex dterm = static_cast<double>(n) * coeffs_[n] * power;
    power *= z;
    const Complex term = coeffs_[n] * power;
    sum += term;
    dsum += dterm;
    if (n > mag + 1.0 && std::abs(term) <= kRelEps * std::abs(sum) && std::abs(dterm) <= kRelEps * std::abs(dsum))
      return {sum, dsum};
  }
  throw RangeError("kernel series needs more than " + std::to_string(n_max) + " terms at |z| = " +
                       std::to_string(mag),
                   order_estimate(mag));
}

Complex KernelSeries::eval(Complex z) const { return eval_with_derivative(z).first; }
Complex KernelSeries::derivative(Complex z) const { return eval_with_derivative(z).second; }

// ---------------------------------------------------------------------------

ImaginaryKernel::ImaginaryKernel(double k) : k_(k), integer_k_(-1), half_integer_k_(-1), series_(k) {
  if (k == std::floor(k) && k <= 64.0) integer_k_ = static_cast<int>(k);
  if (k - 0.5 == std::floor(k - 0.5) && k <= 64.0) half_integer_k_ = static_cast<int>(k - 0.5);
}

std::pair<double, double> ImaginaryKernel::parts(double s) const {
  s = std::abs(s);
  const double series_limit = integer_k_ > 0 ? std::max(kSeriesRadius, 2.0 * integer_k_ + 2.0) : kSeriesRadius;
  if (integer_k_ == 0) return {std::cos(s), s == 0.0 ? 1.0 : std::sin(s) / s};
  if (s <= series_limit) {
    const auto& a = series_.coeffs();
    const double s2 = s * s;
    double e = 0.0, o = 0.0, p = 1.0;
    for (std::size_t m = 0; 2 * m + 1 < a.size(); ++m) {
      const double te = a[2 * m] * p;
      const double to = a[2 * m + 1] * p;
      e += te;
      o += to;
      if (m > s && std::abs(te) <= kRelEps * std::abs(e) && std::abs(to) <= kRelEps * std::abs(o)) break;
      p *= -s2;
    }
    return {e, o};
  }
  if (integer_k_ > 0) {
    // Spherical Bessel functions by upward recurrence (stable for s > order).
    const int n = integer_k_;
    double prev = std::sin(s) / s;
    double cur = prev / s - std::cos(s) / s;
    double sph_lo = prev;  // j_{n-1}
    double sph_hi = cur;   // j_n
    if (n > 1) {
      for (int m = 1; m < n; ++m) {
        const double next = (2.0 * m + 1.0) / s * cur - prev;
        prev = cur;
        cur = next;
      }
      sph_lo = prev;
      sph_hi = cur;
    }
    double dfact = 1.0;  // (2n-1)!!
    for (int m = 2 * n - 1; m > 1; m -= 2) dfact *= m;
    const double pw = std::pow(s, n - 1);
    return {dfact * sph_lo / pw, dfact * sph_hi / (pw * s)};
  }
  if (half_integer_k_ >= 0) {
    // Integer Bessel orders m = k - 1/2 and m + 1: libm's jn is much faster than the generic path.
    const int m = half_integer_k_;
    const double jm = m == 0 ? ::j0(s) : (m == 1 ? ::j1(s) : ::jn(m, s));
    const double jm1 = m == 0 ? ::j1(s) : ::jn(m + 1, s);
    const double log_scale = std::lgamma(m + 1.0) + m * std::log(2.0 / s);
    const double scale = std::exp(log_scale);
    return {scale * jm, scale * (m + 1.0) * (2.0 / s) * jm1 / (2.0 * k_ + 1.0)};
  }
  return {normalised_bessel(k_ - 0.5, s), normalised_bessel(k_ + 0.5, s) / (2.0 * k_ + 1.0)};
}

Complex ImaginaryKernel::minus_i(double s) const {
  const auto [e, o] = parts(s);
  return {e, -s * o};
}

Complex ImaginaryKernel::derivative_at_i(double s) const {
  const auto [e, o] = parts(s);
  return {e - 2.0 * k_ * o, s * o};
}

// ---------------------------------------------------------------------------

std::pair<Complex, Complex> kernel_g(double k, Complex z) {
  if (!(k >= 0.0)) throw InvalidParameter("kernel: k must be >= 0");
  if (z == Complex{}) return {1.0, 1.0 / (1.0 + 2.0 * k)};
  if (std::abs(z) <= kSeriesRadius) return KernelSeries(k).eval_with_derivative(z);
  if (z.real() == 0.0) {
    const ImaginaryKernel ik(k);
    const double s = z.imag();
    const auto [e, o] = ik.parts(s);
    const Complex g{e, s * o};
    return {g, g - 2.0 * k * o};
  }
  if (z.real() > 0.0) return KernelSeries(k).eval_with_derivative(z);
  // Re z < 0: Kummer's transformation keeps the terms of M(k, 2k+1, -2z) sign-coherent
  // on the real axis; o(z) = (g(z) - g(-z)) / (2z) then gives g'.
  const Complex g = std::exp(z) * kummer_m(k, 2.0 * k + 1.0, -2.0 * z);
  const Complex g_reflected = KernelSeries(k).eval(-z);
  const Complex o = (g - g_reflected) / (2.0 * z);
  return {g, g - 2.0 * k * o};
}

Complex kernel_rank1(double k, double x, Complex y) {
  if (x == 0.0) return 1.0;
  return kernel_g(k, x * y).first;
}

Complex kernel_rank1_dy(double k, double x, Complex y) {
  if (x == 0.0) return 0.0;
  return x * kernel_g(k, x * y).second;
}

Complex kernel_eval(const DunklParams& params, std::span<const double> x, std::span<const Complex> y) {
  if (static_cast<int>(x.size()) != params.d || static_cast<int>(y.size()) != params.d)
    throw ShapeError("kernel_eval: points must have d coordinates");
  Complex v = 1.0;
  for (int i = 0; i < params.d; ++i) v *= kernel_rank1(params.k[i], x[i], y[i]);
  return v;
}

std::vector<Complex> kernel_gradient_y(const DunklParams& params, std::span<const double> x,
                                       std::span<const Complex> y) {
  if (static_cast<int>(x.size()) != params.d || static_cast<int>(y.size()) != params.d)
    throw ShapeError("kernel_gradient_y: points must have d coordinates");
  std::vector<Complex> g(params.d), dg(params.d);
  for (int i = 0; i < params.d; ++i) {
    const auto [v, dv] = x[i] == 0.0 ? std::pair<Complex, Complex>{1.0, 0.0} : kernel_g(params.k[i], x[i] * y[i]);
    g[i] = v;
    dg[i] = x[i] * dv;
  }
  std::vector<Complex> grad(params.d);
  for (int j = 0; j < params.d; ++j) {
    Complex v = dg[j];
    for (int i = 0; i < params.d; ++i)
      if (i != j) v *= g[i];
    grad[j] = v;
  }
  return grad;
}

VerificationReport verify_kernel_bounds(const DunklParams& params, int sample_count, double radius,
                                        std::uint64_t seed) {
  if (sample_count < 1) throw InvalidParameter("verify_kernel_bounds: sample_count must be >= 1");
  if (!(radius > 0.0)) throw InvalidParameter("verify_kernel_bounds: radius must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int d = params.d;
  auto draw = [&](std::vector<double>& p) {
    double r2;
    do {
      r2 = 0.0;
      for (auto& c : p) {
        c = unit(rng);
        r2 += c * c;
      }
    } while (r2 > 1.0 || r2 == 0.0);
    for (auto& c : p) c *= radius;
  };

  std::vector<double> x(d), y(d);
  double max_modulus = 0.0;
  double max_ratio = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    draw(x);
    draw(y);
    double norm_x = 0.0;
    for (int i = 0; i < d; ++i) norm_x += x[i] * x[i];
    norm_x = std::sqrt(norm_x);
    Complex value = 1.0;
    std::vector<Complex> g(d), dg(d);
    for (int i = 0; i < d; ++i) {
      const auto [v, dv] = kernel_g(params.k[i], Complex(0.0, -x[i] * y[i]));
      g[i] = v;
      dg[i] = Complex(0.0, -x[i]) * dv;
      value *= v;
    }
    max_modulus = std::max(max_modulus, std::abs(value));
    for (int j = 0; j < d; ++j) {
      Complex v = dg[j];
      for (int i = 0; i < d; ++i)
        if (i != j) v *= g[i];
      max_ratio = std::max(max_ratio, std::abs(v) / norm_x);
    }
  }

  VerificationReport r;
  r.suite = "kernel";
  r.d = d;
  r.k = params.k;
  r.seeds = {seed};
  r.add_le("kernel_modulus_max", max_modulus, 1.0, 1e-10, "max |E_k(-ix,y)|");
  r.add_le("kernel_gradient_ratio_max", max_ratio, 1.0, 1e-8, "max |d/dy_j E_k(-ix,y)| / |x|");
  r.add_info("samples", sample_count);
  r.add_info("radius", radius);
  return r;
}

Complex dunkl_apply(const DunklParams& params, const PointFunction& f, int j, std::span<const double> x) {
  if (j < 0 || j >= params.d) throw InvalidParameter("dunkl_apply: axis out of range");
  if (static_cast<int>(x.size()) != params.d) throw ShapeError("dunkl_apply: point must have d coordinates");
  if (x[j] == 0.0)
    throw SingularPointError("dunkl_apply: x_j = 0, the difference term is defined only by continuity");
  std::vector<double> p(x.begin(), x.end());
  const double h = 1e-2 * (1.0 + std::abs(x[j]));
  auto at = [&](double offset) {
    p[j] = x[j] + offset;
    return f(p);
  };
  static constexpr double c[3] = {45.0, -9.0, 1.0};
  Complex deriv = 0.0;
  for (int m = 1; m <= 3; ++m) deriv += c[m - 1] * (at(m * h) - at(-m * h));
  deriv /= 60.0 * h;
  p[j] = x[j];
  const Complex fx = f(p);
  p[j] = -x[j];
  const Complex fr = f(p);
  return deriv + params.k[j] * (fx - fr) / x[j];
}

}  // namespace dunkl
