#include <doctest.h>

#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/hardy.hpp"

using namespace dunkl;

namespace {

// Hand-built atom from a closed-form function on B(c, R), d = 1.
Atom manual_atom(const DunklParams& P, double c, double R, std::function<double(double)> g) {
  Atom a;
  a.center = {c};
  a.radius = R;
  a.breakpoints = {c - R, c + R};
  a.eval = [c, R, g](std::span<const double> x) { return Complex(std::abs(x[0] - c) <= R ? g(x[0]) : 0.0); };
  a.values = sample_atom(a, atom_grid(P, a.center, R, {2, 48, 0.0}));
  return a;
}

}  // namespace

TEST_CASE("random atoms pass the validator") {
  for (const auto& k : std::vector<std::vector<double>>{{0.0}, {0.5}, {1.0}, {2.3}, {0.5, 1.0}}) {
    const auto P = make_params(static_cast<int>(k.size()), k);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      for (double R : {0.5, 2.0}) {
        RandomAtomOptions o;
        o.radius = R;
        Atom a = random_atom(P, seed, o);
        CHECK(a.validated);
        CHECK_FALSE(a.degenerate);
        CHECK(a.centered());
        CHECK(a.l2_norm * std::sqrt(ball_measure(P, std::vector<double>(k.size(), 0.0), R)) <= 1.0 + 1e-10);
        CHECK(std::abs(a.mean) < 1e-10);
      }
    }
  }
}

TEST_CASE("random atoms are reproducible from their seed") {
  const auto P = make_params(1, {0.5});
  const Atom a = random_atom(P, 42), b = random_atom(P, 42), c = random_atom(P, 43);
  for (double x : {-0.7, 0.1, 0.55}) {
    const std::vector<double> p{x};
    CHECK(a.eval(p) == b.eval(p));
    CHECK(a.eval(p) != c.eval(p));
  }
}

TEST_CASE("off-centre random atoms validate") {
  const auto P = make_params(1, {1.0});
  RandomAtomOptions o;
  o.center = {3.0};
  o.radius = 0.4;
  const Atom a = random_atom(P, 9, o);
  CHECK(a.validated);
  CHECK_FALSE(a.centered());
}

TEST_CASE("validator rejects a constant (no cancellation)") {
  const auto P = make_params(1, {0.5});
  const double R = 1.0;
  const double nu = ball_measure_closed_form(P, R);
  Atom a = manual_atom(P, 0.0, R, [nu](double) { return 1.0 / nu; });
  const auto rep = atom_validate(P, a);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.find("atom_cancellation")->pass);
  CHECK(rep.find("atom_size")->pass);
  CHECK_FALSE(a.validated);
}

TEST_CASE("validator rejects an oversized atom") {
  const auto P = make_params(1, {0.5});
  Atom good = random_atom(P, 5);
  const double R = good.radius;
  const auto base = good.eval;
  Atom big = manual_atom(P, 0.0, R, [base](double x) { return 10.0 * base(std::vector<double>{x}).real(); });
  const auto rep = atom_validate(P, big);
  CHECK_FALSE(rep.find("atom_size")->pass);
  CHECK(rep.find("atom_cancellation")->pass);
  CHECK_FALSE(big.validated);
}

TEST_CASE("validator needs a grid covering the ball") {
  const auto P = make_params(1, {0.0});
  Atom a = manual_atom(P, 0.0, 1.0, [](double x) { return x; });
  a.values = sample_atom(a, atom_grid(P, a.center, 0.5, {2, 16, 0.0}));
  CHECK_THROWS_AS(atom_validate(P, a), CoverageError);
}

TEST_CASE("odd profile atom: closed-form size check") {
  // a(x) = s x on [-1, 1], k = 0: ||a||_2 = s sqrt(2/3), nu(B) = 2. Tight at s = sqrt(3)/2.
  const auto P = make_params(1, {0.0});
  Atom a = manual_atom(P, 0.0, 1.0, [](double x) { return std::sqrt(3.0) / 2.0 * x * 0.999; });
  const auto rep = atom_validate(P, a);
  CHECK(rep.passed());
  CHECK(a.l2_norm == doctest::Approx(0.999 * std::sqrt(3.0) / 2.0 * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("dilation keeps atoms atoms and preserves the L^1 norm") {
  const auto P = make_params(1, {1.0});
  const Atom a = random_atom(P, 17);
  for (double s : {0.5, 3.0}) {
    const Atom b = dilate_atom(P, a, s, {2, 48, 0.0});
    CHECK(b.validated);
    CHECK(b.radius == doctest::Approx(s * a.radius));
    CHECK(lp_norm(b.values, 1.0) == doctest::Approx(lp_norm(a.values, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("shells and their balls") {
  for (const auto& k : std::vector<std::vector<double>>{{0.0}, {1.0}, {0.5, 1.0}}) {
    const auto P = make_params(static_cast<int>(k.size()), k);
    const double D = P.homogeneous_dimension();
    for (int j : {1, 5, 20}) {
      const auto [rin, rout] = shell_radii(P, j);
      CHECK(rin == doctest::Approx(std::pow(4.0, -(j + 1) / D)));
      CHECK(rout == doctest::Approx(std::pow(4.0, -j / D)));
      const auto [c, R] = shell_ball(P, j);
      const double cn = c[0];
      CHECK(cn - R >= rin * (1.0 - 1e-12));
      CHECK(cn + R <= rout * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("shell profile has unit weighted L^2 norm") {
  // Independent: d = 1, int x^2 e^{-x^2} |x|^{2k} dx = Gamma(k + 3/2), by composite Simpson.
  for (double k : {0.0, 0.5, 1.0}) {
    const auto P = make_params(1, {k});
    const auto h = default_shell_profile(P);
    const int n = 200000;
    const double b = 12.0, step = b / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = i * step;
      const double v = std::norm(h(std::vector<double>{x})) * std::pow(x, 2.0 * k);
      s += (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * v;
    }
    CHECK(2.0 * s * step / 3.0 == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("shell family: validated atoms, coefficient sum under the bound") {
  const auto P = make_params(1, {0.0});
  CHECK(example31_bound(P) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  int skipped = -1;
  const auto dec = example31_family(P, 12, default_shell_profile(P), &skipped);
  CHECK(skipped == 0);
  CHECK(dec.terms.size() == 12u);
  for (const auto& t : dec.terms) CHECK(t.atom.validated);
  const double sum = h1_norm_upper(dec);
  CHECK(sum <= example31_bound(P) * (1.0 + 1e-8));
  CHECK(sum + dec.truncation_error <= example31_bound(P) * (1.0 + 1e-8));
  CHECK(zero_mean_check(P, dec).passed());
}

TEST_CASE("unvalidated atoms are refused by the norm bound") {
  const auto P = make_params(1, {0.5});
  AtomicDecomposition dec;
  Atom a = random_atom(P, 3);
  a.validated = false;
  dec.terms.push_back({1.0, a});
  CHECK_THROWS_AS(h1_norm_upper(dec), ContractError);
}

TEST_CASE("zero mean detects an injected offset") {
  const auto P = make_params(1, {0.5});
  AtomicDecomposition dec;
  for (std::uint64_t s = 1; s <= 3; ++s) dec.terms.push_back({Complex(0.5 * s, -0.2), random_atom(P, s)});
  CHECK(zero_mean_check(P, dec).passed());
  // A bump with positive mass: not an atom.
  Atom off = manual_atom(P, 0.0, 1.0, [](double x) { return 0.1 * (1.0 - x * x); });
  off.validated = true;
  dec.terms.push_back({1.0, off});
  CHECK_FALSE(zero_mean_check(P, dec).passed());
}

TEST_CASE("Fourier atom bound, off-centre refusal") {
  const auto P = make_params(1, {0.5});
  const auto src = QuadratureGrid::symmetric_box(P, 12.0, {16, 48, 0.0}, {-1.0, 1.0});
  const TransformPlan plan(P, src, default_target_grid(P, *src));
  const Atom a = random_atom(P, 4);
  const auto rep = verify_fourier_atom(P, a, plan);
  CHECK(rep.passed());
  CHECK(rep.find("fourier_atom_ratio")->computed <= P.mehta * (1.0 + 1e-4));
  RandomAtomOptions o;
  o.center = {2.0};
  o.radius = 0.5;
  CHECK_THROWS_AS(verify_fourier_atom(P, random_atom(P, 4, o), plan), ScopeError);
}

TEST_CASE("split frequency bound on an atom") {
  const auto P = make_params(1, {1.0});
  const auto src = QuadratureGrid::symmetric_box(P, 12.0, {16, 48, 0.0}, {-1.0, 1.0});
  const TransformPlan plan(P, src, default_target_grid(P, *src));
  const auto rep = verify_hlp_h1(P, random_atom(P, 8), plan);
  CHECK(rep.passed());
  CHECK(rep.find("hlp_h1_I2")->computed <= 1.0 + 1e-3);
}

TEST_CASE("Hardy average of atoms: norm bound and support") {
  for (double k : {0.0, 1.0}) {
    const auto P = make_params(1, {k});
    for (std::uint64_t s : {1u, 2u}) {
      const auto rep = verify_hardy_avg_atom(P, random_atom(P, s));
      CHECK(rep.passed());
      CHECK(rep.find("hardy_avg_l1")->computed <= 2.0 * (1.0 + 1e-4));
    }
  }
}

TEST_CASE("Hardy average of an even atom is supported in the ball") {
  // a = s (x^2 - 1/3) on [-1, 1] at k = 0 has zero mean and H a nonzero inside.
  const auto P = make_params(1, {0.0});
  Atom a = manual_atom(P, 0.0, 1.0, [](double x) { return 1.0 * (x * x - 1.0 / 3.0); });
  REQUIRE(atom_validate(P, a).passed());
  const HardyNorm h = hardy_avg_l1(P, a.eval, a.support(), {1.0});
  CHECK(h.max_inside > 0.01);
  CHECK(h.max_outside < 1e-12 * h.max_inside);
  // ||H a||_1 = 2 int_0^1 |(r^2/3 - 1/3)| dr = 4/9
  CHECK(h.l1 == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("Hardy average of decompositions: bound and linearity") {
  const auto P = make_params(1, {0.5});
  AtomicDecomposition dec;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    RandomAtomOptions o;
    o.radius = 0.5 * s;
    dec.terms.push_back({Complex(std::cos(s), std::sin(s)), random_atom(P, s, o)});
  }
  const auto rep = verify_hardy_avg_decomposition(P, dec);
  CHECK(rep.passed());
  CHECK(rep.find("hardy_decomposition_linearity")->computed < 1e-10);
}

TEST_CASE("Riesz dilation structure on an atom") {
  const auto P = make_params(1, {0.0});
  const double T = 20.0;
  const auto src = QuadratureGrid::symmetric_box(P, 3.0 * T, {48, 32, 0.0}, {-T, -T / 2, -1.0, 1.0, T / 2, T});
  const TransformPlan plan(P, src, QuadratureGrid::symmetric_box(P, 40.0, {96, 32, 0.0}));
  const Atom a = random_atom(P, 2);
  const auto rep = verify_riesz_on_atom(P, a, plan, T, {{0.5, 1.0, 2.0}, 0});
  CHECK(rep.find("riesz_scale_spread")->computed < 0.02);
  CHECK(rep.find("riesz_l1_finite")->pass);
  // Grid too small for the widest window.
  const auto small = QuadratureGrid::symmetric_box(P, T, {16, 32, 0.0});
  const TransformPlan p2(P, small, default_target_grid(P, *small));
  CHECK_THROWS_AS(verify_riesz_on_atom(P, a, p2, T), CoverageError);
}
