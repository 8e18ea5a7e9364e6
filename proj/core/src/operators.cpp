#include "dunkl/operators.hpp"

#include <algorithm>
#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

MultiplierSpec riesz_multiplier(int j) {
  if (j < 0) throw InvalidParameter("riesz_multiplier: axis must be >= 0");
  MultiplierSpec m;
  m.name = "riesz_" + std::to_string(j + 1);
  m.origin_value = 0.0;
  m.symbol = [j](std::span<const double> xi) {
    double n2 = 0.0;
    for (double c : xi) n2 += c * c;
    return Complex(0.0, -xi[j] / std::sqrt(n2));
  };
  return m;
}

MultiplierSpec translation_multiplier(const DunklParams& params, std::vector<double> x) {
  if (static_cast<int>(x.size()) != params.d) throw ShapeError("translation_multiplier: x must have d entries");
  MultiplierSpec m;
  m.name = "translation";
  m.origin_value = 1.0;
  std::vector<ImaginaryKernel> kernels;
  for (double k : params.k) kernels.emplace_back(k);
  m.symbol = [kernels = std::move(kernels), x = std::move(x)](std::span<const double> xi) {
    Complex v = 1.0;
    for (std::size_t a = 0; a < x.size(); ++a) v *= std::conj(kernels[a].minus_i(x[a] * xi[a]));
    return v;
  };
  return m;
}

MultiplierSpec identity_multiplier() {
  return MultiplierSpec{[](std::span<const double>) { return Complex(1.0); }, 1.0, "identity"};
}

namespace {

std::vector<Complex> symbol_on(const QuadratureGrid& grid, const MultiplierSpec& m) {
  std::vector<Complex> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto xi = grid.node(i);
    const bool origin = std::all_of(xi.begin(), xi.end(), [](double c) { return c == 0.0; });
    s[i] = origin ? m.origin_value : m.symbol(xi);
  }
  return s;
}

}  // namespace

SampledFunction apply_multiplier(const TransformPlan& plan, const SampledFunction& f, const MultiplierSpec& m) {
  return plan.apply_symbol(f, symbol_on(*plan.target_grid(), m));
}

SampledFunction riesz_transform(const TransformPlan& plan, const SampledFunction& f, int j) {
  if (j >= plan.params().d) throw InvalidParameter("riesz_transform: axis out of range");
  return apply_multiplier(plan, f, riesz_multiplier(j));
}

SampledFunction translate(const TransformPlan& plan, const SampledFunction& f, std::span<const double> x) {
  return apply_multiplier(plan, f, translation_multiplier(plan.params(), {x.begin(), x.end()}));
}

Complex riesz_at(const TransformPlan& plan, const SampledFunction& f, int j, std::span<const double> x) {
  if (j < 0 || j >= plan.params().d) throw InvalidParameter("riesz_at: axis out of range");
  SampledFunction F = plan.forward(f);
  const auto s = symbol_on(*plan.target_grid(), riesz_multiplier(j));
  auto& v = F.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= s[i];
  return plan.inverse_at(F, x).front();
}

PrincipalValueResult riesz_pv(const TransformPlan& plan, const SampledFunction& f, int j, double x,
                              std::vector<double> eps_schedule) {
  const DunklParams& params = plan.params();
  if (params.d != 1) throw ScopeError("riesz_pv: the principal-value route is implemented for d = 1");
  if (j != 0) throw InvalidParameter("riesz_pv: axis out of range");
  const QuadratureGrid& source = *plan.source_grid();
  if (eps_schedule.empty()) {
    const double spacing = 2.0 * source.extent() / static_cast<double>(source.size());
    for (double c : {0.2, 0.1, 0.05, 0.025}) eps_schedule.push_back(c * spacing);
  }
  if (eps_schedule.size() < 4) throw InvalidParameter("riesz_pv: need at least four eps values");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0)) throw InvalidParameter("riesz_pv: eps values must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw InvalidParameter("riesz_pv: eps schedule must be strictly decreasing");
  }

  // tau_x f(-y) = sum_t S_t E_k(-i y, xi_t), S_t = c_k E_k(i x, xi_t) F(xi_t) W_t, so
  // (tau_x f(-y) - tau_x f(y)) / y = sum_t S_t (-2i xi_t) o(y xi_t).
  const ImaginaryKernel kernel(params.k[0]);
  const SampledFunction F = plan.forward(f);
  const QuadratureGrid& target = *plan.target_grid();
  std::vector<double> xi;
  std::vector<Complex> coef;
  double peak = 0.0;
  std::vector<Complex> s_all(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    const double w = target.node(t)[0];
    s_all[t] = params.mehta * std::conj(kernel.minus_i(x * w)) * F[t] * target.weights()[t];
    peak = std::max(peak, std::abs(s_all[t] * w));
  }
  for (std::size_t t = 0; t < target.size(); ++t) {
    const double w = target.node(t)[0];
    if (std::abs(s_all[t] * w) > 1e-13 * peak) {
      xi.push_back(w);
      coef.push_back(Complex(0.0, -2.0 * w) * s_all[t]);
    }
  }
  double omega = 1.0;
  for (double w : xi) omega = std::max(omega, std::abs(w));

  auto integrand = [&](double y) {
    Complex s = 0.0;
    for (std::size_t t = 0; t < xi.size(); ++t) s += coef[t] * kernel.parts(y * xi[t]).second;
    return s;
  };
  auto integrate_on = [&](double a, double b, int panels) {
    const Rule1D& ref = gauss_legendre(32);
    const double width = (b - a) / panels;
    std::vector<double> nodes;
    std::vector<double> weights;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * width;
      for (std::size_t i = 0; i < ref.size(); ++i) {
        nodes.push_back(lo + 0.5 * width * (1.0 + ref.nodes[i]));
        weights.push_back(0.5 * width * ref.weights[i]);
      }
    }
    std::vector<Complex> parts(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) parts[i] = weights[i] * integrand(nodes[i]);
    });
    Complex s = 0.0;
    for (const auto& v : parts) s += v;
    return s;
  };

  // The spectral sum for tau_x f is only resolved inside the source box.
  const double upper = source.extent();
  const double e0 = eps_schedule.front();
  const int outer_panels = std::max(1, static_cast<int>(std::ceil((upper - e0) * omega / 40.0)));
  std::vector<Complex> truncated(eps_schedule.size());
  truncated[0] = integrate_on(e0, upper, outer_panels);
  for (std::size_t i = 1; i < eps_schedule.size(); ++i) {
    const int panels = std::max(1, static_cast<int>(std::ceil((eps_schedule[i - 1] - eps_schedule[i]) * omega / 40.0)));
    truncated[i] = truncated[i - 1] + integrate_on(eps_schedule[i], eps_schedule[i - 1], panels);
  }

  // Richardson: I(eps) = I0 + a1 eps + a3 eps^3 + a5 eps^5 + ...
  auto extrapolate = [&](std::size_t first, std::size_t count) {
    Eigen::MatrixXcd a(count, count);
    Eigen::VectorXcd b(count);
    for (std::size_t r = 0; r < count; ++r) {
      const double e = eps_schedule[first + r];
      for (std::size_t c = 0; c < count; ++c) a(r, c) = c == 0 ? 1.0 : std::pow(e, 2.0 * c - 1.0);
      b(r) = truncated[first + r];
    }
    return Complex(a.colPivHouseholderQr().solve(b)(0));
  };
  const std::size_t n = eps_schedule.size();
  const Complex i4 = extrapolate(n - 4, 4);
  const Complex i3 = extrapolate(n - 3, 3);

  double scale = 0.0;
  for (const auto& v : truncated) scale = std::max(scale, std::abs(v));
  const double noise = 1e-13 * (scale + std::abs(integrate_on(e0, upper, 1)) + 1e-300);
  for (std::size_t i = 2; i < n; ++i) {
    const double prev = std::abs(truncated[i - 1] - truncated[i - 2]);
    const double cur = std::abs(truncated[i] - truncated[i - 1]);
    if (cur > noise && !(cur < prev))
      throw ConvergenceError("riesz_pv: truncated integrals do not settle (step " + std::to_string(i) +
                             ": |dI| = " + std::to_string(cur) + " after " + std::to_string(prev) + ")");
  }

  PrincipalValueResult out;
  out.value = params.riesz_const * i4;
  out.convergence_estimate = params.riesz_const * std::abs(i4 - i3);
  out.eps = eps_schedule;
  for (const auto& v : truncated) out.truncated.push_back(params.riesz_const * v);
  return out;
}

// ---------------------------------------------------------------------------
// Hardy averaging

namespace {

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

double support_reach(const DunklParams& params, const SupportHint& s) {
  if (!std::isfinite(s.radius)) return s.radius;
  if (s.center.empty()) return s.radius;
  if (static_cast<int>(s.center.size()) != params.d) throw ShapeError("SupportHint: center must have d entries");
  return norm_of(s.center) + s.radius;
}

}  // namespace

Complex ball_integral(const DunklParams& params, const PointFunction& f, double r, const HardyAvgOptions& options) {
  if (!(r > 0.0)) return 0.0;
  const auto& s = options.support;
  if (params.d == 1) {
    double lo = -r, hi = r;
    if (std::isfinite(s.radius)) {
      const double c = s.center.empty() ? 0.0 : s.center[0];
      lo = std::max(lo, c - s.radius);
      hi = std::min(hi, c + s.radius);
    }
    if (!(hi > lo)) return 0.0;
    const Rule1D rule = power_weight_rule(lo, hi, 2.0 * params.k[0], s.breakpoints, options.layout);
    Complex sum = 0.0;
    double point[1];
    for (std::size_t i = 0; i < rule.size(); ++i) {
      point[0] = rule.nodes[i];
      sum += rule.weights[i] * f(point);
    }
    return sum;
  }
  if (params.d == 2) {
    const double reach = support_reach(params, s);
    const double radius = std::min(r, reach);
    const auto g = QuadratureGrid::ball(params, {0.0, 0.0}, radius, options.layout);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) sum += g->weights()[i] * f(g->node(i));
    return sum;
  }
  throw ScopeError("ball_integral: fresh ball quadrature is available for d <= 2");
}

HardyAverage hardy_avg(const DunklParams& params, const PointFunction& f, std::span<const double> x,
                       const HardyAvgOptions& options) {
  if (static_cast<int>(x.size()) != params.d) throw ShapeError("hardy_avg: x must have d entries");
  const double r = norm_of(x);
  if (r == 0.0) {
    const std::vector<double> origin(params.d, 0.0);
    return {f(origin), true};
  }
  return {ball_integral(params, f, r, options) / ball_measure_closed_form(params, r), false};
}

HardyAverage hardy_avg(const SampledFunction& f, const DunklParams& params, std::span<const double> x) {
  const auto& grid = *f.grid();
  const double r = norm_of(x);
  if (r == 0.0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (norm_of(grid.node(i)) < norm_of(grid.node(best))) best = i;
    return {f[best], true};
  }
  Complex sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (norm_of(grid.node(i)) <= r) sum += grid.weights()[i] * f[i];
  return {sum / ball_measure_closed_form(params, r), false};
}

VerificationReport hardy_inequality_check(const DunklParams& params, const PointFunction& f, double p,
                                          const HardyInequalityOptions& options) {
  if (!(p > 1.0)) throw InvalidParameter("hardy_inequality_check: p must exceed 1");
  if (params.d > 2) throw ScopeError("hardy_inequality_check: available for d <= 2");
  const auto& s = options.support;
  if (!std::isfinite(s.radius)) throw InvalidParameter("hardy_inequality_check: support radius must be finite");
  const double reach = support_reach(params, s);
  const double D = params.homogeneous_dimension();

  const PointFunction abs_f = [&f](std::span<const double> y) { return Complex(std::abs(f(y))); };
  const HardyAvgOptions inner{s, options.inner};

  // ||f||_p^p on the support ball.
  double fp = 0.0;
  {
    const std::vector<double> center = s.center.empty() ? std::vector<double>(params.d, 0.0) : s.center;
    if (params.d == 1) {
      const Rule1D rule = power_weight_rule(center[0] - s.radius, center[0] + s.radius, 2.0 * params.k[0],
                                            s.breakpoints, options.inner);
      double point[1];
      for (std::size_t i = 0; i < rule.size(); ++i) {
        point[0] = rule.nodes[i];
        fp += rule.weights[i] * std::pow(std::abs(f(point)), p);
      }
    } else {
      const auto g = QuadratureGrid::ball(params, center, s.radius, options.inner);
      for (std::size_t i = 0; i < g->size(); ++i) fp += g->weights()[i] * std::pow(std::abs(f(g->node(i))), p);
    }
  }

  VerificationReport r;
  r.suite = "hardy_inequality";
  r.d = params.d;
  r.k = params.k;
  const double bound = p / (p - 1.0);
  if (fp == 0.0) {
    r.add_info("hardy_inequality_ratio", 0.0, "degenerate: f = 0");
    return r;
  }

  const Rule1D outer = power_weight_rule(0.0, reach, D - 1.0, options.radial_breakpoints, options.outer);
  std::vector<double> terms(outer.size());
  parallel_for(outer.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double rad = outer.nodes[i];
      const double h = ball_integral(params, abs_f, rad, inner).real() / ball_measure_closed_form(params, rad);
      terms[i] = outer.weights[i] * std::pow(h, p);
    }
  });
  double hp = 0.0;
  for (double t : terms) hp += t;
  hp *= params.sphere_const;
  const double mass = ball_integral(params, abs_f, reach, inner).real();
  const double tail = std::pow(mass * D / params.sphere_const, p) * params.sphere_const *
                      std::pow(reach, D * (1.0 - p)) / (D * (p - 1.0));
  const double ratio = std::pow(hp + tail, 1.0 / p) / std::pow(fp, 1.0 / p);
  r.add_le("hardy_inequality_ratio", ratio, bound, 1e-4, "bound p/(p-1)");
  r.add_info("hardy_inequality_tail_fraction", tail / (hp + tail));
  return r;
}

}  // namespace dunkl
