#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"

using namespace dunkl;

namespace {

// Independent oracle: g(z) = e(z) + o(z) solves g'(z) + k (g(z) - g(-z)) / z = g(z),
// i.e. e' = o and o' = e - 2k o / z. Along z = i s with E(s) = e(is), O(s) = o(is):
//   E' = i O,   O' = i E - 2k O / s.
// Started from the power series at a small s0 and integrated by classical RK4.
Complex kernel_by_ode(double k, double s_end, int steps = 40000) {
  const double s0 = 1e-3 * std::min(1.0, std::abs(s_end));
  const double a1 = 1.0 / (1.0 + 2.0 * k), a2 = a1 / 2.0, a3 = a2 / (3.0 + 2.0 * k), a4 = a3 / 4.0;
  const Complex z0(0.0, s0);
  std::array<Complex, 2> y{1.0 + a2 * z0 * z0 + a4 * std::pow(z0, 4), a1 * z0 + a3 * std::pow(z0, 3)};
  auto rhs = [k](double s, const std::array<Complex, 2>& v) {
    const Complex I(0.0, 1.0);
    return std::array<Complex, 2>{I * v[1], I * v[0] - 2.0 * k * v[1] / s};
  };
  const double h = (s_end - s0) / steps;
  double s = s0;
  for (int n = 0; n < steps; ++n) {
    const auto k1 = rhs(s, y);
    std::array<Complex, 2> t;
    for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = rhs(s + 0.5 * h, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = rhs(s + 0.5 * h, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * k3[i];
    const auto k4 = rhs(s + h, t);
    for (int i = 0; i < 2; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    s += h;
  }
  return y[0] + y[1];
}

}  // namespace

TEST_CASE("kernel on the imaginary axis matches the ODE oracle") {
  for (double k : {0.3, 0.5, 1.0, 2.3}) {
    for (double s : {0.4, 2.0, 7.5, 15.0}) {
      const Complex want = kernel_by_ode(k, s);
      const Complex got = kernel_rank1(k, s, Complex(0.0, 1.0));
      CHECK(std::abs(got - want) < 1e-9);
    }
  }
}

TEST_CASE("k = 0 reduces to the exponential") {
  for (double x : {-3.0, -0.2, 0.0, 1.0, 4.5})
    for (Complex y : {Complex(1.3, 0.0), Complex(0.0, 2.1), Complex(-0.7, 0.4)})
      CHECK(std::abs(kernel_rank1(0.0, x, y) - std::exp(x * y)) < 1e-13 * std::max(1.0, std::abs(std::exp(x * y))));
}

TEST_CASE("k = 1 closed form on the imaginary axis") {
  // e(s) = j_{1/2}(s) = sin s / s, o(s) = j_{3/2}(s) / 3 with j_{3/2}(s) = 3 (sin s - s cos s) / s^3
  for (double s : {0.5, 3.0, 12.0, 40.0}) {
    const double e = std::sin(s) / s;
    const double o = (std::sin(s) - s * std::cos(s)) / (s * s * s);
    const Complex want(e, s * o);
    CHECK(std::abs(kernel_rank1(1.0, s, Complex(0.0, 1.0)) - want) < 1e-13);
  }
}

TEST_CASE("k = 1/2 on the imaginary axis: even part is J_0") {
  // J_0 by its power series, independent of libm and Boost.
  auto j0 = [](double s) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 120; ++m) {
      term *= -(s * s) / (4.0 * m * m);
      sum += term;
    }
    return sum;
  };
  for (double s : {0.5, 3.0, 9.0}) CHECK(std::abs(kernel_rank1(0.5, s, Complex(0.0, 1.0)).real() - j0(s)) < 1e-12);
}

TEST_CASE("series, Bessel and Kummer routes agree where they overlap") {
  for (double k : {0.35, 1.0, 1.5, 2.3}) {
    const KernelSeries series(k);
    for (double s : {0.5, 3.0, 9.0}) {
      // imaginary axis: series against ImaginaryKernel
      const ImaginaryKernel ik(k);
      const Complex by_series = series.eval(Complex(0.0, -s));
      CHECK(std::abs(ik.minus_i(s) - by_series) < 1e-11);
      // negative real axis: series against the Kummer form used by kernel_g
      const auto [g, dg] = kernel_g(k, Complex(-s, 0.3));
      CHECK(std::abs(g - series.eval(Complex(-s, 0.3))) < 1e-10 * std::max(1.0, std::abs(g)));
      CHECK(std::abs(dg - series.derivative(Complex(-s, 0.3))) < 1e-9 * std::max(1.0, std::abs(dg)));
    }
  }
}

TEST_CASE("series reports its order cap") {
  const KernelSeries series(0.5, 40);
  CHECK_THROWS_AS(series.eval(Complex(0.0, 80.0)), RangeError);
  try {
    series.eval(Complex(0.0, 80.0));
  } catch (const RangeError& e) {
    CHECK(e.required_order() > 40);
  }
}

TEST_CASE("property: |E_k(-ix, y)| <= 1 and the gradient bound") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  const auto P = make_params(2, {0.5, 1.7});
  for (int i = 0; i < 500; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    const std::vector<Complex> y{Complex(0.0, -u(rng)), Complex(0.0, -u(rng))};
    // E_k(-ix, y) = E_k(x, -iy) by homogeneity of the product argument.
    CHECK(std::abs(kernel_eval(P, x, y)) <= 1.0 + 1e-12);
    const auto grad = kernel_gradient_y(P, x, y);
    const double xn = std::hypot(x[0], x[1]);
    for (const auto& gj : grad) CHECK(std::abs(gj) <= xn * (1.0 + 1e-10));
  }
}

TEST_CASE("kernel is normalised, symmetric and conjugate-symmetric") {
  const auto P = make_params(2, {0.5, 1.0});
  const std::vector<double> o{0.0, 0.0};
  const std::vector<Complex> y{Complex(0.3, 1.0), Complex(-2.0, 0.5)};
  CHECK(std::abs(kernel_eval(P, o, y) - 1.0) < 1e-15);
  for (double k : {0.5, 1.3}) {
    const Complex a = kernel_rank1(k, 2.0, Complex(0.0, 3.0));
    const Complex b = kernel_rank1(k, 3.0, Complex(0.0, 2.0));
    const Complex c = kernel_rank1(k, 2.0, Complex(0.0, -3.0));
    CHECK(std::abs(a - b) < 1e-13);
    CHECK(std::abs(a - std::conj(c)) < 1e-13);
  }
}

TEST_CASE("gradient matches a central difference") {
  const auto P = make_params(2, {0.5, 1.0});
  const std::vector<double> x{1.2, -0.7};
  const std::vector<Complex> y{Complex(0.0, 0.9), Complex(0.0, -1.4)};
  const auto grad = kernel_gradient_y(P, x, y);
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    auto yp = y, ym = y;
    yp[j] += h;
    ym[j] -= h;
    const Complex fd = (kernel_eval(P, x, yp) - kernel_eval(P, x, ym)) / (2.0 * h);
    CHECK(std::abs(grad[j] - fd) < 1e-8);
  }
}

TEST_CASE("Dunkl operator on monomials") {
  for (double k : {0.0, 0.5, 2.0}) {
    const auto P = make_params(1, {k});
    const PointFunction lin = [](std::span<const double> x) { return Complex(x[0]); };
    const PointFunction sq = [](std::span<const double> x) { return Complex(x[0] * x[0]); };
    const PointFunction cube = [](std::span<const double> x) { return Complex(x[0] * x[0] * x[0]); };
    for (double x : {-1.5, 0.3, 2.0}) {
      const std::vector<double> p{x};
      CHECK(std::abs(dunkl_apply(P, lin, 0, p) - (1.0 + 2.0 * k)) < 1e-9);
      CHECK(std::abs(dunkl_apply(P, sq, 0, p) - 2.0 * x) < 1e-9);
      CHECK(std::abs(dunkl_apply(P, cube, 0, p) - (3.0 + 2.0 * k) * x * x) < 1e-8);
    }
    const std::vector<double> zero{0.0};
    CHECK_THROWS_AS(dunkl_apply(P, lin, 0, zero), SingularPointError);
  }
}

TEST_CASE("the kernel is an eigenfunction of the Dunkl operators") {
  const auto P = make_params(2, {0.5, 2.3});
  const std::vector<Complex> y{Complex(0.8, 0.0), Complex(0.0, -1.1)};
  const PointFunction E = [&](std::span<const double> x) { return kernel_eval(P, x, y); };
  for (const auto& pt : std::vector<std::vector<double>>{{0.4, -1.2}, {-2.0, 0.7}}) {
    for (int j = 0; j < 2; ++j) {
      const Complex lhs = dunkl_apply(P, E, j, pt);
      const Complex rhs = y[j] * E(pt);
      CHECK(std::abs(lhs - rhs) <= 1e-6 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("kernel bound verifier") {
  const auto P = make_params(1, {0.5});
  const auto rep = verify_kernel_bounds(P, 2000, 10.0, 3);
  CHECK(rep.passed());
  CHECK(rep.find("kernel_modulus_max")->computed <= 1.0 + 1e-10);
}
