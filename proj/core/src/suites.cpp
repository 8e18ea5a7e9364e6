#include "dunkl/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "dunkl/errors.hpp"
#include "dunkl/hardy.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/measure.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

namespace {

struct Context {
  const SuiteConfig& config;
  DunklParams params;
  VerificationReport report;
};

using SuiteFn = void (*)(Context&);

std::vector<double> origin(int d) { return std::vector<double>(d, 0.0); }

std::vector<double> mirrored(std::initializer_list<double> cuts) {
  std::vector<double> out;
  for (double c : cuts) {
    out.push_back(-c);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Atom radii used across the atom suites; the transform grid breaks at each of them.
constexpr double atom_radii[] = {0.5, 1.0, 2.0};

TransformPlan main_plan(const Context& ctx) {
  const auto& c = ctx.config;
  const auto src = QuadratureGrid::symmetric_box(ctx.params, c.half_width, {c.panels, c.nodes_per_panel, 0.0},
                                                 mirrored({0.5, 1.0, 2.0}));
  return TransformPlan(ctx.params, src, default_target_grid(ctx.params, *src));
}

// (a0 + a.x + b x_1^2) exp(-alpha |x - c|^2) with seeded coefficients.
PointFunction smooth_test_function(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double alpha = 0.6 + 0.9 * (0.5 * (unit(rng) + 1.0));
  std::vector<double> center(d);
  for (auto& v : center) v = unit(rng);
  auto cn = [&] { return Complex(normal(rng), normal(rng)); };
  const Complex a0 = cn(), b = cn();
  std::vector<Complex> a(d);
  for (auto& v : a) v = cn();
  return [=](std::span<const double> x) {
    Complex poly = a0 + b * x[0] * x[0];
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      poly += a[i] * x[i];
      r2 += (x[i] - center[i]) * (x[i] - center[i]);
    }
    return poly * std::exp(-alpha * r2);
  };
}

double relative_l2(const SampledFunction& computed, const PointFunction& exact) {
  const auto& g = *computed.grid();
  double err = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex e = exact(g.node(i));
    err += g.weights()[i] * std::norm(computed[i] - e);
    norm += g.weights()[i] * std::norm(e);
  }
  return std::sqrt(err / norm);
}

bool all_zero(const std::vector<double>& k) {
  return std::all_of(k.begin(), k.end(), [](double v) { return v == 0.0; });
}

PointFunction gaussian() {
  return [](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return Complex(std::exp(-0.5 * r2));
  };
}

// Origin-centred atoms with radii from atom_radii and complex normal coefficients.
AtomicDecomposition random_decomposition(const Context& ctx, int index) {
  const auto& c = ctx.config;
  std::mt19937_64 rng(derived_seed(c, 100000 + index));
  std::normal_distribution<double> normal(0.0, 1.0);
  AtomicDecomposition dec;
  for (int j = 0; j < c.decomposition_size; ++j) {
    RandomAtomOptions opts;
    opts.radius = atom_radii[rng() % 3];
    const Complex lambda(normal(rng), normal(rng));
    dec.terms.push_back({lambda, random_atom(ctx.params, rng(), opts)});
  }
  return dec;
}

double lambda_sum(const AtomicDecomposition& dec) {
  double s = 0.0;
  for (const auto& t : dec.terms) s += std::abs(t.coefficient);
  return s;
}

// Tracks the largest value of a quantity and the seed that produced it.
struct Worst {
  double value = 0.0;
  std::uint64_t seed = 0;
  void update(double v, std::uint64_t s) {
    if (v > value || std::isnan(v)) {
      value = v;
      seed = s;
    }
  }
};

void add_worst(VerificationReport& r, const std::string& name, const Worst& w, double bound, double tol,
               std::string note = {}) {
  r.add_le(name, w.value, bound, tol, std::move(note)).seed = w.seed;
}

// ---------------------------------------------------------------------------

void suite_measure(Context& ctx) {
  const auto& P = ctx.params;
  auto& r = ctx.report;
  const auto o = origin(P.d);
  const double D = P.homogeneous_dimension();
  for (double R : {0.1, 1.0, 10.0}) {
    const double q = ball_measure_quadrature(P, o, R);
    const double exact = P.sphere_const / D * std::pow(R, D);
    std::ostringstream label;
    label << "ball_volume_R" << R;
    r.add_le(label.str(), std::abs(q - exact) / exact, 0.0, 1e-8,
             "relative error against (d_k / D) R^D");
  }
  double closed = 2.0 / std::tgamma(P.gamma + 0.5 * P.d);
  for (double k : P.k) closed *= std::tgamma(k + 0.5);
  r.add_le("sphere_const_relation", std::abs(P.sphere_const - closed) / closed, 0.0, 1e-8,
           "d_k from c_k against 2 prod Gamma(k_i + 1/2) / Gamma(gamma + d/2)");
  if (P.d == 1) r.add_le("sphere_const_d1", std::abs(P.sphere_const - 2.0), 0.0, 1e-12);
  Worst dbl;
  for (double rad : {0.3, 1.0, 3.0}) {
    const double ratio = doubling_ratio(P, o, rad);
    dbl.update(std::abs(ratio - std::pow(2.0, D)) / std::pow(2.0, D), 0);
  }
  add_worst(r, "doubling_ratio", dbl, 0.0, 1e-8, "relative deviation from 2^D at the origin");
  const double polar = polar_integrate(P, [](double t) { return std::exp(-0.5 * t * t); }, 40.0);
  r.add_le("polar_gaussian", std::abs(polar * P.mehta - 1.0), 0.0, 1e-8, "c_k int exp(-|x|^2/2) dnu_k = 1");
}

void suite_kernel(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  const int per_seed = std::max(1, c.kernel_samples / static_cast<int>(c.seeds.size()));
  Worst modulus, gradient;
  for (auto seed : c.seeds) {
    const auto b = verify_kernel_bounds(P, per_seed, 10.0, seed);
    modulus.update(b.find("kernel_modulus_max")->computed, seed);
    gradient.update(b.find("kernel_gradient_ratio_max")->computed, seed);
  }
  add_worst(r, "kernel_modulus_max", modulus, 1.0, 1e-10, "max |E_k(-ix, y)|");
  add_worst(r, "kernel_gradient_ratio_max", gradient, 1.0, 1e-8, "max |d_y E_k(-ix, y)| / |x|");

  // T_j E_k(., y)(x) = y_j E_k(x, y) for real and imaginary y.
  std::mt19937_64 rng(derived_seed(c, 0));
  std::uniform_real_distribution<double> ux(0.05, 3.0), uy(-3.0, 3.0), sign(-1.0, 1.0);
  Worst residual;
  for (int n = 0; n < 100; ++n) {
    std::vector<double> x(P.d);
    std::vector<Complex> y(P.d);
    for (int a = 0; a < P.d; ++a) {
      x[a] = (sign(rng) < 0 ? -1.0 : 1.0) * ux(rng);
      y[a] = n % 2 == 0 ? Complex(0.0, uy(rng)) : Complex(0.5 * uy(rng), 0.0);
    }
    const PointFunction E = [&](std::span<const double> z) { return kernel_eval(P, z, y); };
    const Complex e = E(x);
    for (int j = 0; j < P.d; ++j) {
      const Complex lhs = dunkl_apply(P, E, j, x);
      residual.update(std::abs(lhs - y[j] * e) / (1.0 + std::abs(y[j] * e)), n);
    }
  }
  add_worst(r, "eigen_residual", residual, 0.0, 1e-6, "|T_j E - y_j E| / (1 + |y_j E|)");

  if (all_zero(P.k)) {
    Worst classical;
    std::uniform_real_distribution<double> u2(-2.0, 2.0);
    for (int n = 0; n < 1000; ++n) {
      std::vector<double> x(P.d);
      std::vector<Complex> y(P.d);
      Complex dot = 0.0;
      for (int a = 0; a < P.d; ++a) {
        x[a] = u2(rng);
        y[a] = Complex(u2(rng), u2(rng));
        dot += x[a] * y[a];
      }
      const Complex ex = std::exp(dot);
      classical.update(std::abs(kernel_eval(P, x, y) - ex) / std::abs(ex), n);
    }
    add_worst(r, "classical_kernel", classical, 0.0, 1e-12, "|E_0(x, y) - exp(<x, y>)| / |exp|");
  }
}

void suite_transform(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  const TransformPlan plan = main_plan(ctx);
  Worst planch, inv;
  for (int i = 0; i < c.test_function_count; ++i) {
    const auto seed = derived_seed(c, i);
    const auto f = SampledFunction::sample(plan.source_grid(), smooth_test_function(P.d, seed));
    planch.update(plancherel_check(plan, f).checks.front().computed, seed);
    inv.update(inversion_check(plan, f).checks.front().computed, seed);
    if (i == 0) {
      const auto h2 = hlp_check(plan, f, 2.0);
      r.add_info("hlp_p2_deviation", h2.find("hlp_p2_deviation")->computed);
      r.add_info("hlp_ratio_p1.5", hlp_check(plan, f, 1.5).find("hlp_ratio")->computed);
    }
  }
  add_worst(r, "plancherel_deviation", planch, 0.0, 1e-4, "relative L^2 deviation");
  add_worst(r, "inversion_error", inv, 0.0, 1e-4, "relative L^2 error of inverse(forward f)");

  const auto g = SampledFunction::sample(plan.source_grid(), gaussian());
  r.add_le("gaussian_transform", relative_l2(plan.forward(g), gaussian()), 0.0, 1e-5,
           "F_k exp(-|x|^2/2) = exp(-|xi|^2/2)");
  if (all_zero(P.k)) {
    std::vector<double> shift(P.d, 0.0);
    shift[0] = 0.7;
    const auto moved = translate(plan, g, shift);
    const PointFunction exact = [&](std::span<const double> y) {
      std::vector<double> z(y.begin(), y.end());
      for (int a = 0; a < P.d; ++a) z[a] += shift[a];
      return gaussian()(z);
    };
    r.add_le("translation_shift", relative_l2(moved, exact), 0.0, 1e-4, "tau_x f(y) = f(x + y) at k = 0");
  }
}

// Subtracts a combination of x_a^m g (g the Gaussian, m <= 3) so that int f and the
// per-axis moments int x_a^m f vanish. F_k f is then flat to third order at the origin
// along each axis, R_j f decays fast and its norms are not truncated by the box.
SampledFunction without_low_moments(const SampledFunction& f) {
  const auto& grid = f.grid();
  const int d = grid->dim();
  std::vector<std::function<double(std::span<const double>)>> monomials{[](std::span<const double>) { return 1.0; }};
  for (int a = 0; a < d; ++a)
    for (int m = 1; m <= 3; ++m) monomials.push_back([a, m](std::span<const double> x) { return std::pow(x[a], m); });
  const auto n = static_cast<Eigen::Index>(monomials.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  std::vector<double> mono(n);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto x = grid->node(i);
    const double w = grid->weights()[i] * gaussian()(x).real();
    for (Eigen::Index l = 0; l < n; ++l) mono[l] = monomials[l](x);
    for (Eigen::Index l = 0; l < n; ++l) {
      rhs(l) += grid->weights()[i] * mono[l] * f[i];
      for (Eigen::Index m = 0; m < n; ++m) gram(l, m) += w * mono[l] * mono[m];
    }
  }
  const Eigen::VectorXcd coef = gram.cast<Complex>().fullPivLu().solve(rhs);
  return f - SampledFunction::sample(grid, [&](std::span<const double> x) {
    Complex v = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) v += coef(l) * monomials[l](x);
    return v * gaussian()(x);
  });
}

void suite_riesz(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  const TransformPlan plan = main_plan(ctx);
  const int count = std::min(5, std::max(1, c.test_function_count));
  Worst iso, square;
  std::vector<SampledFunction> fs;
  for (int i = 0; i < count; ++i) {
    const auto seed = derived_seed(c, i);
    fs.push_back(without_low_moments(SampledFunction::sample(plan.source_grid(), smooth_test_function(P.d, seed))));
    const double n = lp_norm(fs.back(), 2.0);
    double sum = 0.0;
    for (int j = 0; j < P.d; ++j) sum += std::pow(lp_norm(riesz_transform(plan, fs.back(), j), 2.0), 2);
    iso.update(std::abs(std::sqrt(sum) / n - 1.0), seed);
    if (P.d == 1) {
      const auto rr = riesz_transform(plan, riesz_transform(plan, fs.back(), 0), 0);
      square.update(lp_norm(rr + fs.back(), 2.0) / n, seed);
    }
  }
  add_worst(r, "riesz_isometry", iso, 0.0, 1e-4, "| (sum_j ||R_j f||_2^2)^{1/2} / ||f||_2 - 1 |");
  if (P.d != 1) return;
  add_worst(r, "riesz_square", square, 0.0, 1e-3, "||R^2 f + f||_2 / ||f||_2");

  std::vector<Complex> ratios;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) {
    for (double x : {-1.3, -0.4, 0.25, 0.9, 1.7}) {
      const double pt[1] = {x};
      const Complex mult = riesz_at(plan, fs[i], 0, pt);
      const Complex pv = riesz_pv(plan, fs[i], 0, x).value;
      ratios.push_back(pv / mult);
      seeds.push_back(derived_seed(c, i));
    }
  }
  Complex mean = 0.0;
  for (auto q : ratios) mean += q;
  mean /= static_cast<double>(ratios.size());
  Worst spread;
  for (std::size_t i = 0; i < ratios.size(); ++i) spread.update(std::abs(ratios[i] - mean) / std::abs(mean), seeds[i]);
  add_worst(r, "riesz_pv_spread", spread, 0.0, 1e-3, "max |PV / multiplier - mean| / |mean| over functions and points");
  r.add_info("riesz_pv_constant", mean.real(), "PV / multiplier");
  r.add_info("riesz_pv_constant_times_ck", mean.real() * P.mehta);
}

std::vector<Atom> centred_atoms(const Context& ctx, double radius) {
  std::vector<Atom> atoms;
  RandomAtomOptions opts;
  opts.radius = radius;
  for (auto seed : ctx.config.seeds) atoms.push_back(random_atom(ctx.params, seed, opts));
  return atoms;
}

void suite_fourier_atom(Context& ctx) {
  const auto& P = ctx.params;
  const TransformPlan plan = main_plan(ctx);
  Worst ratio;
  for (double R : atom_radii)
    for (const auto& a : centred_atoms(ctx, R)) ratio.update(verify_fourier_atom(P, a, plan).checks.front().computed, a.seed);
  add_worst(ctx.report, "fourier_atom_ratio", ratio, P.mehta * std::sqrt(P.d), 1e-4,
            "sup |F_k a(y)| / (R |y|) <= c_k sqrt(d), R in {0.5, 1, 2}");
}

void suite_hlp_h1(Context& ctx) {
  const auto& P = ctx.params;
  const TransformPlan plan = main_plan(ctx);
  Worst i1, i2;
  for (double R : atom_radii)
    for (const auto& a : centred_atoms(ctx, R)) {
      const auto rep = verify_hlp_h1(P, a, plan);
      i1.update(rep.find("hlp_h1_I1")->computed, a.seed);
      i2.update(rep.find("hlp_h1_I2")->computed, a.seed);
    }
  const double c1 = P.mehta * std::sqrt(P.d) * P.sphere_const;
  add_worst(ctx.report, "hlp_h1_I1", i1, c1, 1e-3, "I_1 <= c_k sqrt(d) d_k");
  add_worst(ctx.report, "hlp_h1_I2", i2, 1.0, 1e-3, "I_2 <= 1");
}

void suite_hardy_avg(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  Worst l1, leak;
  for (int i = 0; i < c.atom_count; ++i) {
    const Atom a = random_atom(P, derived_seed(c, i));
    const auto rep = verify_hardy_avg_atom(P, a);
    l1.update(rep.find("hardy_avg_l1")->computed, a.seed);
    leak.update(rep.find("hardy_avg_support")->computed, a.seed);
  }
  add_worst(ctx.report, "hardy_avg_l1", l1, 2.0, 1e-4, "max ||H_k a||_{1,k} over origin-centred atoms");
  add_worst(ctx.report, "hardy_avg_support", leak, 0.0, 1e-12, "max |H_k a| outside B, relative");

  RandomAtomOptions off;
  off.center = origin(P.d);
  off.center[0] = 10.0;
  off.radius = 0.1;
  const Atom far = random_atom(P, derived_seed(c, 0), off);
  ctx.report.add_info("hardy_avg_l1_off_centre", verify_hardy_avg_atom(P, far).find("hardy_avg_l1")->computed,
                      "center 10 e_1, R = 0.1: report only");
}

void suite_hardy_decomposition(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  Worst ratio, linear;
  for (int i = 0; i < c.decomposition_count; ++i) {
    const auto dec = random_decomposition(ctx, i);
    const auto rep = verify_hardy_avg_decomposition(P, dec);
    const auto* l1 = rep.find("hardy_decomposition_l1");
    ratio.update(l1->computed / l1->bound, derived_seed(c, 100000 + i));
    linear.update(rep.find("hardy_decomposition_linearity")->computed, derived_seed(c, 100000 + i));
  }
  const auto ex = example31_family(P, 10, default_shell_profile(P));
  const auto rep = verify_hardy_avg_decomposition(P, ex);
  const auto* l1 = rep.find("hardy_decomposition_l1");
  ratio.update(l1->computed / l1->bound, 0);
  linear.update(rep.find("hardy_decomposition_linearity")->computed, 0);
  add_worst(ctx.report, "hardy_decomposition_ratio", ratio, 1.0, 1e-4, "max ||H_k f||_{1,k} / (2 sum |lambda|)");
  add_worst(ctx.report, "hardy_decomposition_linearity", linear, 0.0, 1e-10);
}

void suite_hardy_inequality(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  const double D = P.homogeneous_dimension();
  for (double p : {1.5, 2.0, 3.0}) {
    const double bound = p / (p - 1.0);
    const std::string tag = "_p" + std::string(p == 1.5 ? "1.5" : p == 2.0 ? "2" : "3");
    Worst worst;
    for (int i = 0; i < c.hardy_function_count; ++i) {
      // Sum of three nonnegative quadratic-squared bumps inside B(0, 2).
      const auto seed = derived_seed(c, i);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> uc(-1.0, 1.0), ur(0.1, 0.8), ua(0.1, 2.0);
      std::vector<std::array<double, 3>> bumps;  // center (axis 0), radius, amplitude
      HardyInequalityOptions opts;
      opts.support.radius = 2.0;
      for (int b = 0; b < 3; ++b) {
        bumps.push_back({uc(rng), ur(rng), ua(rng)});
        const auto& q = bumps.back();
        opts.support.breakpoints.insert(opts.support.breakpoints.end(), {q[0] - q[1], q[0] + q[1]});
        opts.radial_breakpoints.insert(opts.radial_breakpoints.end(), {std::abs(q[0] - q[1]), std::abs(q[0] + q[1])});
      }
      std::sort(opts.support.breakpoints.begin(), opts.support.breakpoints.end());
      const PointFunction f = [bumps](std::span<const double> x) {
        double v = 0.0;
        double rest = 0.0;
        for (std::size_t a = 1; a < x.size(); ++a) rest += x[a] * x[a];
        for (const auto& q : bumps) {
          const double u2 = ((x[0] - q[0]) * (x[0] - q[0]) + rest) / (q[1] * q[1]);
          if (u2 < 1.0) v += q[2] * (1.0 - u2) * (1.0 - u2);
        }
        return Complex(v);
      };
      worst.update(hardy_inequality_check(P, f, p, opts).find("hardy_inequality_ratio")->computed, seed);
    }
    add_worst(r, "hardy_inequality_ratio" + tag, worst, bound, 1e-4, "max ||H_k f||_p / ||f||_p <= p / (p - 1)");

    // |x|^{-D/p} on eps <= |x| <= 1 sits at the edge of the inequality as eps -> 0.
    // Only d = 1 has a rule that resolves the singularity at the origin.
    if (P.d != 1) continue;
    const double eps = 1e-12;
    HardyInequalityOptions ext;
    ext.support.radius = 1.0;
    ext.support.breakpoints = {-eps, eps};
    ext.radial_breakpoints = {eps};
    ext.outer = {16, 32, 2.0};
    ext.inner = {4, 32, 2.0};
    const PointFunction g = [eps, D, p](std::span<const double> x) {
      const double n = std::abs(x[0]);
      return Complex(n >= eps ? std::pow(n, -D / p) : 0.0);
    };
    const double ratio = hardy_inequality_check(P, g, p, ext).find("hardy_inequality_ratio")->computed;
    r.add_ge("hardy_inequality_extremal" + tag, ratio, 0.9 * bound, 0.0, "near-extremal family reaches 0.9 p/(p-1)");
    r.add_le("hardy_inequality_extremal_upper" + tag, ratio, bound, 1e-4, "and stays below p/(p-1)");
  }
}

void suite_zero_mean(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  const TransformPlan plan = main_plan(ctx);
  Worst mean, origin_value;
  const std::vector<double> o = origin(P.d);
  for (int i = 0; i < c.decomposition_count; ++i) {
    const auto dec = random_decomposition(ctx, i);
    const auto seed = derived_seed(c, 100000 + i);
    mean.update(zero_mean_check(P, dec).find("zero_mean")->computed, seed);
    const auto f = SampledFunction::sample(plan.source_grid(), dec.function());
    const Complex F0 = plan.forward_at(f, o).front();
    origin_value.update(std::abs(F0) / (P.mehta * lambda_sum(dec)), seed);
  }
  const auto ex = example31_family(P, c.example31_terms, default_shell_profile(P));
  mean.update(zero_mean_check(P, ex).find("zero_mean")->computed, 0);
  add_worst(ctx.report, "zero_mean", mean, 0.0, 1e-8, "|int f dnu_k| / sum |lambda|");
  add_worst(ctx.report, "fourier_at_origin", origin_value, 0.0, 1e-8, "|F_k f(0)| / (c_k sum |lambda|)");
}

void suite_example31(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  int skipped = 0;
  const auto dec = example31_family(P, c.example31_terms, default_shell_profile(P), &skipped);
  int failed = 0;
  for (const auto& t : dec.terms) failed += t.atom.validated ? 0 : 1;
  r.add_le("example31_validated", failed, 0.0, 0.0, "atoms failing the validator");
  const double bound = example31_bound(P);
  r.add_le("example31_sum", h1_norm_upper(dec), bound, 1e-8, "sum nu_k(B_j)^{1/2} <= sqrt(d_k / D)");
  r.add_le("example31_tail", dec.truncation_error, 1e-9, 0.0, "bound on the omitted shells");
  if (P.d == 1 && all_zero(P.k))
    r.add_le("example31_bound_classical", std::abs(bound - std::numbers::sqrt2), 0.0, 1e-15, "sqrt 2 at d = 1, k = 0");
  r.add_info("example31_skipped", skipped, "degenerate atoms");
}

void suite_riesz_atom(Context& ctx) {
  const auto& P = ctx.params;
  const auto& c = ctx.config;
  auto& r = ctx.report;
  const double T = c.riesz_truncation;
  const auto src = QuadratureGrid::symmetric_box(
      P, c.riesz_half_width, {c.riesz_panels, c.riesz_nodes_per_panel, 0.0},
      mirrored({0.5, 1.0, 2.0, T / 4.0, T / 2.0, T, 2.0 * T}));
  const auto target = QuadratureGrid::symmetric_box(P, c.riesz_omega, {c.riesz_target_panels, c.riesz_nodes_per_panel, 0.0});
  const TransformPlan plan(P, src, target);
  const Atom a = random_atom(P, derived_seed(c, 0));
  r.absorb(verify_riesz_on_atom(P, a, plan, T));

  // Finite decompositions: ||R(sum lambda a)||_1 against the largest single-atom norm.
  const auto dec = random_decomposition(ctx, 0);
  double single = 0.0;
  SampledFunction whole = SampledFunction::zeros(src);
  for (const auto& t : dec.terms) {
    const auto f = sample_atom(t.atom, src);
    single = std::max(single, riesz_l1_norm(plan, f, 0, 2.0 * T).first);
    whole += t.coefficient * f;
  }
  const double combined = riesz_l1_norm(plan, whole, 0, 2.0 * T).first;
  r.add_le("riesz_decomposition", combined, single * lambda_sum(dec), 0.1,
           "||R(sum lambda a)||_1 <= c sum |lambda| with c the largest atom norm");
}

struct Entry {
  const char* name;
  SuiteFn fn;
  int max_d;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"measure", suite_measure, 2},
      {"kernel", suite_kernel, 8},
      {"transform", suite_transform, 3},
      {"riesz", suite_riesz, 3},
      {"fourier_atom", suite_fourier_atom, 2},
      {"hlp_h1", suite_hlp_h1, 2},
      {"hardy_avg", suite_hardy_avg, 2},
      {"hardy_decomposition", suite_hardy_decomposition, 2},
      {"hardy_inequality", suite_hardy_inequality, 2},
      {"zero_mean", suite_zero_mean, 2},
      {"example31", suite_example31, 2},
      {"riesz_atom", suite_riesz_atom, 1},
  };
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  throw UsageError("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool suite_supports(const std::string& name, int d) { return d >= 1 && d <= lookup(name).max_d; }

std::uint64_t derived_seed(const SuiteConfig& config, int i) {
  if (config.seeds.empty()) throw InvalidParameter("suite config needs at least one seed");
  const auto n = config.seeds.size();
  return config.seeds[static_cast<std::size_t>(i) % n] * 1000003ull + static_cast<std::uint64_t>(i) / n;
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& config) {
  const Entry& e = lookup(name);
  if (!suite_supports(name, config.d))
    throw ScopeError("suite " + name + " is not available for d = " + std::to_string(config.d));
  std::vector<double> k = config.k;
  if (k.size() == 1 && config.d > 1) k.assign(config.d, k.front());
  Context ctx{config, make_params(config.d, k), {}};
  ctx.report.suite = name;
  ctx.report.d = config.d;
  ctx.report.k = k;
  ctx.report.seeds = config.seeds;
  e.fn(ctx);
  if (!config.tolerances.empty()) ctx.report.override_tolerances(config.tolerances);
  return std::move(ctx.report);
}

std::vector<VerificationReport> run_suites(const std::vector<std::string>& names, const SuiteConfig& config,
                                           int workers) {
  std::vector<std::string> todo;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& s : suite_names())
        if (suite_supports(s, config.d)) todo.push_back(s);
    } else {
      lookup(n);
      todo.push_back(n);
    }
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

  std::vector<VerificationReport> out(todo.size());
  std::vector<std::exception_ptr> errors(todo.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < todo.size();) {
      try {
        out[i] = run_suite(todo[i], config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dunkl
