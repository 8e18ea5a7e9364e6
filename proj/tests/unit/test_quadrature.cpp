#include <doctest.h>

#include <cmath>
#include <random>

#include "dunkl/quadrature.hpp"

using namespace dunkl;

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n - 1") {
  for (int n : {2, 5, 16, 64}) {
    const auto& rule = gauss_legendre(n);
    CHECK(rule.size() == static_cast<std::size_t>(n));
    for (int m = 0; m <= 2 * n - 1; ++m) {
      const double exact = (m % 2 == 1) ? 0.0 : 2.0 / (m + 1);
      const double got = rule.sum([m](double x) { return std::pow(x, m); });
      CHECK(got == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("Gauss-Jacobi moments match the Beta function") {
  // int (1-x)^a (1+x)^b x^0 dx = 2^{a+b+1} B(a+1, b+1)
  for (auto [a, b] : {std::pair{0.5, 0.0}, {0.0, 1.7}, {-0.5, -0.5}, {2.3, 0.6}, {-0.4, 3.0}}) {
    const auto& rule = gauss_jacobi(24, a, b);
    const double exact = std::pow(2.0, a + b + 1.0) * std::beta(a + 1.0, b + 1.0);
    CHECK(rule.sum([](double) { return 1.0; }) == doctest::Approx(exact).epsilon(1e-12));
    // First moment: int (1-x)^a (1+x)^b (1+x) = 2^{a+b+2} B(a+1, b+2)
    const double first = std::pow(2.0, a + b + 2.0) * std::beta(a + 1.0, b + 2.0);
    CHECK(rule.sum([](double x) { return 1.0 + x; }) == doctest::Approx(first).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Jacobi nodes are sorted inside (-1, 1) with positive weights") {
  const auto& rule = gauss_jacobi(40, 1.3, -0.2);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 1.0);
    CHECK(rule.weights[i] > 0.0);
    if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("power weight rule integrates |x|^{2k} across the origin") {
  for (double k : {0.0, 0.25, 0.5, 1.0, 2.3}) {
    const double e = 2.0 * k;
    const auto rule = power_weight_rule(-2.0, 3.0, e, {}, {8, 16, 0.0});
    const double exact = (std::pow(2.0, e + 1.0) + std::pow(3.0, e + 1.0)) / (e + 1.0);
    CHECK(rule.sum([](double) { return 1.0; }) == doctest::Approx(exact).epsilon(1e-13));
    // x^2 |x|^{2k}
    const double exact2 = (std::pow(2.0, e + 3.0) + std::pow(3.0, e + 3.0)) / (e + 3.0);
    CHECK(rule.sum([](double x) { return x * x; }) == doctest::Approx(exact2).epsilon(1e-13));
  }
}

TEST_CASE("breakpoints make kinks exact") {
  const std::vector<double> cuts{0.3};
  const auto rule = power_weight_rule(-1.0, 1.0, 0.0, cuts, {4, 8, 0.0});
  // int_{-1}^{1} |x - 0.3| dx = (1.3^2 + 0.7^2) / 2
  CHECK(rule.sum([](double x) { return std::abs(x - 0.3); }) == doctest::Approx(1.09).epsilon(1e-14));
}

TEST_CASE("composite rule with a one-sided singular point") {
  // int_0^2 g(x) x^{-1/2} dx with g = cos: reference by substitution x = t^2.
  const SingularPoint s{0.0, 0.0, -0.5};
  const auto rule =
      composite_rule(0.0, 2.0, [](double x) { return std::pow(x, -0.5); }, {&s, 1}, {}, {4, 24, 0.0});
  const auto& gl = gauss_legendre(64);
  double ref = 0.0;  // 2 int_0^{sqrt 2} cos(t^2) dt
  const double b = std::sqrt(2.0);
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double t = 0.5 * b * (gl.nodes[i] + 1.0);
    ref += gl.weights[i] * 0.5 * b * 2.0 * std::cos(t * t);
  }
  CHECK(rule.sum([](double x) { return std::cos(x); }) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("graded layout with a strong endpoint singularity") {
  // int_0^4 cos(x) x^{-0.9} dx = sum_n (-1)^n 4^{2n + 0.1} / ((2n)! (2n + 0.1))
  double ref = 0.0, fact = 1.0;
  for (int n = 0; n < 40; ++n) {
    if (n > 0) fact *= (2.0 * n - 1.0) * (2.0 * n);
    ref += (n % 2 ? -1.0 : 1.0) * std::pow(4.0, 2.0 * n + 0.1) / (fact * (2.0 * n + 0.1));
  }
  const SingularPoint sp{0.0, 0.0, -0.9};
  const auto rule = composite_rule(0.0, 4.0, [](double x) { return std::pow(x, -0.9); }, {&sp, 1}, {}, {8, 32, 2.0});
  CHECK(rule.sum([](double x) { return std::cos(x); }) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("property: rules are additive over adjacent intervals") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = -u(rng), m = u(rng), b = m + u(rng);
    const double e = u(rng);
    auto f = [](double x) { return std::exp(-x * x) * (1.0 + x); };
    const double whole = power_weight_rule(a, b, e, std::vector<double>{m}, {8, 24, 0.0}).sum(f);
    const double left = power_weight_rule(a, m, e, {}, {8, 24, 0.0}).sum(f);
    const double right = power_weight_rule(m, b, e, {}, {8, 24, 0.0}).sum(f);
    CHECK(whole == doctest::Approx(left + right).epsilon(1e-12));
  }
}
