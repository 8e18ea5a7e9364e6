#include "dunkl/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dunkl/errors.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

namespace {

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

std::vector<double> or_origin(const std::vector<double>& c, int d) {
  return c.empty() ? std::vector<double>(d, 0.0) : c;
}

VerificationReport make_report(const DunklParams& params, const char* suite) {
  VerificationReport r;
  r.suite = suite;
  r.d = params.d;
  r.k = params.k;
  return r;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool Atom::centered() const {
  return std::all_of(center.begin(), center.end(), [](double c) { return c == 0.0; });
}

SupportHint Atom::support() const { return SupportHint{center, radius, breakpoints}; }

PointFunction AtomicDecomposition::function() const {
  std::vector<std::pair<Complex, PointFunction>> parts;
  for (const auto& t : terms) parts.emplace_back(t.coefficient, t.atom.eval);
  return [parts = std::move(parts)](std::span<const double> x) {
    Complex s = 0.0;
    for (const auto& [c, f] : parts) s += c * f(x);
    return s;
  };
}

SupportHint AtomicDecomposition::support() const {
  SupportHint s;
  s.radius = 0.0;
  for (const auto& t : terms) {
    s.radius = std::max(s.radius, norm_of(t.atom.center) + t.atom.radius);
    s.breakpoints.insert(s.breakpoints.end(), t.atom.breakpoints.begin(), t.atom.breakpoints.end());
  }
  sort_unique(s.breakpoints);
  return s;
}

// ---------------------------------------------------------------------------

VerificationReport atom_validate(const DunklParams& params, Atom& atom) {
  const auto& grid = atom.values.grid();
  if (!grid) throw ShapeError("atom_validate: atom has no samples");
  if (static_cast<int>(atom.center.size()) != params.d) throw ShapeError("atom_validate: center must have d entries");
  if (!(atom.radius > 0.0)) throw InvalidParameter("atom_validate: radius must be positive");
  if (!grid->covers_ball(atom.center, atom.radius))
    throw CoverageError("atom_validate: the sampling grid does not cover the atom's ball");

  const double nu = ball_measure(params, atom.center, atom.radius);
  const auto& w = grid->weights();
  double outside = 0.0, l1 = 0.0, l2sq = 0.0;
  Complex mean = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto x = grid->node(i);
    double dist2 = 0.0;
    for (int a = 0; a < params.d; ++a) dist2 += (x[a] - atom.center[a]) * (x[a] - atom.center[a]);
    const Complex v = atom.values[i];
    if (std::sqrt(dist2) > atom.radius * (1.0 + 1e-12)) outside = std::max(outside, std::abs(v));
    l1 += w[i] * std::abs(v);
    l2sq += w[i] * std::norm(v);
    mean += w[i] * v;
  }
  const double l2 = std::sqrt(l2sq);
  atom.l2_norm = l2;
  atom.mean = mean;

  VerificationReport r = make_report(params, "atom");
  r.seeds = {atom.seed};
  r.add_le("atom_support", outside, 0.0, 0.0, "max |a| outside B");
  r.add_le("atom_size", l2 * std::sqrt(nu), 1.0, 1e-10, "||a||_2 nu(B)^{1/2}");
  const double scale = l2 * std::sqrt(nu);
  r.add_le("atom_cancellation", scale > 0.0 ? std::abs(mean) / scale : 0.0, 0.0, 1e-10,
           "|int a| / (||a||_2 nu(B)^{1/2})");
  r.add_le("atom_l1", l1, 1.0, 1e-8, "||a||_1");
  r.add_le("atom_cauchy_schwarz", l1, scale, 1e-8, "||a||_1 <= nu(B)^{1/2} ||a||_2");
  for (auto& c : r.checks) c.seed = atom.seed;
  atom.validated = r.passed();
  return r;
}

SampledFunction sample_atom(const Atom& atom, GridPtr grid) {
  if (!atom.eval) throw ContractError("sample_atom: atom has no exact form");
  return SampledFunction::sample(std::move(grid), atom.eval);
}

GridPtr atom_grid(const DunklParams& params, std::span<const double> center, double radius,
                  const PanelLayout& layout) {
  if (params.d == 1) return QuadratureGrid::ball(params, {center[0]}, radius, layout);
  std::vector<double> lo(params.d), hi(params.d);
  for (int a = 0; a < params.d; ++a) {
    lo[a] = center[a] - radius;
    hi[a] = center[a] + radius;
  }
  return QuadratureGrid::box(params, lo, hi, layout);
}

Atom random_atom(const DunklParams& params, std::uint64_t seed, const RandomAtomOptions& options) {
  const int d = params.d;
  if (!(options.radius > 0.0)) throw InvalidParameter("random_atom: radius must be positive");
  if (options.bump_power < 1 || options.max_degree < 1) throw InvalidParameter("random_atom: bad bump or degree");
  const std::vector<double> center = or_origin(options.center, d);
  const double R = options.radius;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int odd_choices = (options.max_degree + 1) / 2;
  const int degree = 2 * static_cast<int>(rng() % static_cast<std::uint64_t>(odd_choices)) + 1;

  // Monomials u^alpha with |alpha| <= degree.
  std::vector<std::vector<int>> exponents;
  std::vector<int> alpha(d, 0);
  while (true) {
    int total = 0;
    for (int e : alpha) total += e;
    if (total <= degree) exponents.push_back(alpha);
    int a = d - 1;
    while (a >= 0 && ++alpha[a] > degree) alpha[a--] = 0;
    if (a < 0) break;
  }
  std::vector<double> coeffs(exponents.size());
  for (auto& c : coeffs) c = normal(rng);

  const int m = options.bump_power;
  auto bump_and_poly = [=](std::span<const double> x) {
    double u2 = 0.0;
    std::vector<double> u(d);
    for (int a = 0; a < d; ++a) {
      u[a] = (x[a] - center[a]) / R;
      u2 += u[a] * u[a];
    }
    if (u2 >= 1.0) return std::pair<double, double>{0.0, 0.0};
    double poly = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      double t = coeffs[i];
      for (int a = 0; a < d; ++a) t *= std::pow(u[a], exponents[i][a]);
      poly += t;
    }
    return std::pair<double, double>{std::pow(1.0 - u2, m), poly};
  };

  const GridPtr grid = atom_grid(params, center, R, options.layout);
  const auto& w = grid->weights();
  double phi_mass = 0.0, phi_poly = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto [phi, poly] = bump_and_poly(grid->node(i));
    phi_mass += w[i] * phi;
    phi_poly += w[i] * phi * poly;
  }
  const double mu = phi_poly / phi_mass;
  double l2sq = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto [phi, poly] = bump_and_poly(grid->node(i));
    l2sq += w[i] * std::pow(phi * (poly - mu), 2);
  }
  const double nu = ball_measure(params, center, R);
  const double scale = options.tightness / (std::sqrt(nu) * std::sqrt(l2sq));

  Atom atom;
  atom.center = center;
  atom.radius = R;
  atom.seed = seed;
  atom.eval = [=](std::span<const double> x) {
    const auto [phi, poly] = bump_and_poly(x);
    return Complex(scale * phi * (poly - mu));
  };
  if (d == 1) atom.breakpoints = {center[0] - R, center[0] + R};
  atom.values = sample_atom(atom, grid);
  atom_validate(params, atom);
  return atom;
}

Atom dilate_atom(const DunklParams& params, const Atom& atom, double s, const PanelLayout& layout) {
  if (!atom.centered()) throw ScopeError("dilate_atom: only origin-centred atoms are dilated");
  if (!(s > 0.0)) throw InvalidParameter("dilate_atom: scale must be positive");
  const double D = params.homogeneous_dimension();
  const double factor = std::pow(s, -D);
  Atom out;
  out.center = atom.center;
  out.radius = atom.radius * s;
  out.seed = atom.seed;
  out.eval = [base = atom.eval, s, factor](std::span<const double> x) {
    std::vector<double> u(x.begin(), x.end());
    for (auto& c : u) c /= s;
    return factor * base(u);
  };
  for (double b : atom.breakpoints) out.breakpoints.push_back(b * s);
  out.values = sample_atom(out, atom_grid(params, out.center, out.radius, layout));
  atom_validate(params, out);
  return out;
}

std::pair<double, double> shell_radii(const DunklParams& params, int j) {
  const double D = params.homogeneous_dimension();
  return {std::pow(4.0, -(j + 1.0) / D), std::pow(4.0, -static_cast<double>(j) / D)};
}

std::pair<std::vector<double>, double> shell_ball(const DunklParams& params, int j) {
  const auto [r_in, r_out] = shell_radii(params, j);
  std::vector<double> c(params.d, 0.0);
  c[0] = 0.5 * (r_in + r_out);
  return {c, 0.5 * (r_out - r_in)};
}

Atom atom_from_function(const DunklParams& params, const PointFunction& h, int j, std::vector<double> ball_center,
                        double ball_radius, const PanelLayout& layout) {
  if (static_cast<int>(ball_center.size()) != params.d)
    throw InvalidParameter("atom_from_function: center must have d entries");
  if (params.d > 2) throw ScopeError("atom_from_function: ball quadrature is available for d <= 2");
  const auto [r_in, r_out] = shell_radii(params, j);
  const double c = norm_of(ball_center);
  if (c - ball_radius < r_in * (1.0 - 1e-12) || c + ball_radius > r_out * (1.0 + 1e-12))
    throw InvalidParameter("atom_from_function: the ball is not inside shell " + std::to_string(j));

  const GridPtr grid = QuadratureGrid::ball(params, ball_center, ball_radius, layout);
  const auto& w = grid->weights();
  double mass = 0.0;
  Complex sum = 0.0;
  double hmax = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Complex v = h(grid->node(i));
    mass += w[i];
    sum += w[i] * v;
    hmax = std::max(hmax, std::abs(v));
  }
  const Complex avg = sum / mass;
  const double nu = ball_measure(params, ball_center, ball_radius);
  const double inv_sqrt_nu = 1.0 / std::sqrt(nu);

  Atom atom;
  atom.center = ball_center;
  atom.radius = ball_radius;
  atom.seed = static_cast<std::uint64_t>(j);
  atom.eval = [h, avg, inv_sqrt_nu, center = ball_center, ball_radius](std::span<const double> x) {
    double dist2 = 0.0;
    for (std::size_t a = 0; a < center.size(); ++a) dist2 += (x[a] - center[a]) * (x[a] - center[a]);
    if (dist2 > ball_radius * ball_radius) return Complex(0.0);
    return inv_sqrt_nu * (h(x) - avg);
  };
  if (params.d == 1) atom.breakpoints = {ball_center[0] - ball_radius, ball_center[0] + ball_radius};
  atom.values = sample_atom(atom, grid);
  atom_validate(params, atom);
  atom.degenerate = atom.l2_norm * std::sqrt(nu) <= 1e-12 * std::max(hmax, 1e-300);
  return atom;
}

PointFunction default_shell_profile(const DunklParams& params) {
  double norm2 = std::tgamma(params.k[0] + 1.5);
  for (int a = 1; a < params.d; ++a) norm2 *= std::tgamma(params.k[a] + 0.5);
  const double c = 1.0 / std::sqrt(norm2);
  return [c](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return Complex(c * x[0] * std::exp(-0.5 * r2));
  };
}

AtomicDecomposition example31_family(const DunklParams& params, int J, const PointFunction& h, int* skipped) {
  AtomicDecomposition dec;
  int skip = 0;
  for (int j = 1; j <= J; ++j) {
    auto [center, radius] = shell_ball(params, j);
    Atom a = atom_from_function(params, h, j, center, radius);
    if (a.degenerate) {
      ++skip;
      continue;
    }
    const double coef = std::sqrt(ball_measure(params, a.center, a.radius));
    dec.terms.push_back({coef, std::move(a)});
  }
  // Omitted coefficients: the next 40 summed exactly, the rest bounded through
  // nu(B_j) <= nu(C_j) = (3/4) (d_k / D) 4^{-j}.
  double tail = 0.0;
  for (int j = J + 1; j <= J + 40; ++j) {
    const auto [c, rad] = shell_ball(params, j);
    tail += std::sqrt(ball_measure(params, c, rad));
  }
  tail += std::sqrt(0.75 * params.sphere_const / params.homogeneous_dimension()) * std::ldexp(1.0, -(J + 40));
  dec.truncation_error = tail;
  if (skipped) *skipped = skip;
  return dec;
}

double example31_bound(const DunklParams& params) {
  return std::sqrt(params.sphere_const / params.homogeneous_dimension());
}

double h1_norm_upper(const AtomicDecomposition& decomposition) {
  double s = 0.0;
  for (const auto& t : decomposition.terms) {
    if (!t.atom.validated) throw ContractError("h1_norm_upper: decomposition contains an unvalidated atom");
    s += std::abs(t.coefficient);
  }
  return s;
}

VerificationReport zero_mean_check(const DunklParams& params, const AtomicDecomposition& decomposition) {
  VerificationReport r = make_report(params, "zero_mean");
  double lambda_sum = 0.0;
  for (const auto& t : decomposition.terms) lambda_sum += std::abs(t.coefficient);
  Complex integral = 0.0;
  if (decomposition.terms.empty()) {
    r.add_le("zero_mean", 0.0, 0.0, 1e-8, "empty decomposition");
    return r;
  }
  if (params.d == 1) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<double> cuts;
    for (const auto& t : decomposition.terms) {
      lo = std::min(lo, t.atom.center[0] - t.atom.radius);
      hi = std::max(hi, t.atom.center[0] + t.atom.radius);
      cuts.push_back(t.atom.center[0] - t.atom.radius);
      cuts.push_back(t.atom.center[0] + t.atom.radius);
      cuts.insert(cuts.end(), t.atom.breakpoints.begin(), t.atom.breakpoints.end());
    }
    sort_unique(cuts);
    const auto grid = QuadratureGrid::box(params, {lo}, {hi}, {8, 48, 0.0}, {cuts});
    integral = integrate(params, decomposition.function(), *grid);
  } else {
    // Circles are not aligned with a tensor grid; each atom is integrated on its own grid.
    for (const auto& t : decomposition.terms) integral += t.coefficient * integrate(t.atom.values);
  }
  const double value = lambda_sum > 0.0 ? std::abs(integral) / lambda_sum : std::abs(integral);
  r.add_le("zero_mean", value, 0.0, 1e-8, "|int f| / sum |lambda|");
  r.add_info("lambda_sum", lambda_sum);
  return r;
}

VerificationReport verify_fourier_atom(const DunklParams& params, const Atom& atom, const TransformPlan& plan) {
  if (!atom.centered())
    throw ScopeError("verify_fourier_atom: the bound is proved for origin-centred balls; use report-only mode");
  VerificationReport r = make_report(params, "fourier_atom");
  r.seeds = {atom.seed};
  const SampledFunction f = sample_atom(atom, plan.source_grid());
  const SampledFunction F = plan.forward(f);
  const auto& target = *plan.target_grid();
  double sup = 0.0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    const double n = norm_of(target.node(t));
    if (n > 0.0) sup = std::max(sup, std::abs(F[t]) / (atom.radius * n));
  }
  const std::vector<double> origin(params.d, 0.0);
  const Complex at_origin = plan.forward_at(f, origin).front();
  auto& c = r.add_le("fourier_atom_ratio", sup, params.mehta * std::sqrt(params.d), 1e-4,
                     "sup |F a(y)| / (R |y|) <= c_k sqrt(d)");
  c.seed = atom.seed;
  r.add_info("fourier_at_origin", std::abs(at_origin));
  return r;
}

VerificationReport verify_hlp_h1(const DunklParams& params, const Atom& atom, const TransformPlan& plan,
                                 const HlpSplitOptions& options) {
  if (!atom.centered()) throw ScopeError("verify_hlp_h1: the split bound is proved for origin-centred balls");
  VerificationReport r = make_report(params, "hlp_h1");
  r.seeds = {atom.seed};
  const double R = atom.radius;
  const double D = params.homogeneous_dimension();
  const SampledFunction f = sample_atom(atom, plan.source_grid());
  const double omega = plan.target_grid()->extent();
  double i1 = 0.0, i2 = 0.0;

  if (params.d == 1) {
    // |F a(y)| |y|^{-D} |y|^{2k} = |F a(y)| / |y| on both half lines.
    auto half_line = [&](double a, double b, const PanelLayout& layout) {
      const Rule1D rule = composite_rule(a, b, [](double) { return 1.0; }, {}, {}, layout);
      std::vector<double> pts;
      for (double y : rule.nodes) {
        pts.push_back(y);
        pts.push_back(-y);
      }
      const auto values = plan.forward_at(f, pts);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * (std::abs(values[2 * i]) + std::abs(values[2 * i + 1])) / rule.nodes[i];
      return s;
    };
    i1 = half_line(0.0, 1.0 / R, options.inner);
    if (omega > 1.0 / R) {
      PanelLayout outer = options.outer;
      if (outer.panels <= 0) outer.panels = std::max(8, static_cast<int>(std::ceil((omega - 1.0 / R) * R / 8.0)));
      i2 = half_line(1.0 / R, omega, outer);
    }
  } else {
    const SampledFunction F = plan.forward(f);
    const auto& target = *plan.target_grid();
    for (std::size_t t = 0; t < target.size(); ++t) {
      const double n = norm_of(target.node(t));
      if (n == 0.0) continue;
      const double term = target.weights()[t] * std::abs(F[t]) * std::pow(n, -D);
      (n <= 1.0 / R ? i1 : i2) += term;
    }
  }
  const double c1 = params.mehta * std::sqrt(params.d) * params.sphere_const;
  r.add_le("hlp_h1_I1", i1, c1, 1e-3, "int_{|y| <= 1/R} <= c_k sqrt(d) d_k");
  r.add_le("hlp_h1_I2", i2, 1.0, 1e-3, "int_{|y| > 1/R} <= 1");
  r.add_le("hlp_h1_total", i1 + i2, c1 + 1.0, 1e-3);
  for (auto& c : r.checks) c.seed = atom.seed;
  return r;
}

HardyNorm hardy_avg_l1(const DunklParams& params, const PointFunction& f, const SupportHint& support,
                       const std::vector<double>& radial_breakpoints, const HardyNormOptions& options) {
  double reach = support.radius;
  if (!support.center.empty()) reach += norm_of(support.center);
  if (!std::isfinite(reach) || !(reach > 0.0)) throw InvalidParameter("hardy_avg_l1: support must be bounded");
  const double D = params.homogeneous_dimension();
  const HardyAvgOptions inner{support, options.inner};
  std::vector<double> cuts;
  for (double b : radial_breakpoints)
    if (b > 0.0 && b < reach) cuts.push_back(b);
  sort_unique(cuts);
  const Rule1D outer = power_weight_rule(0.0, reach, D - 1.0, cuts, options.outer);

  HardyNorm out;
  out.radii = outer.nodes;
  out.values.resize(outer.size());
  parallel_for(outer.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double r = outer.nodes[i];
      out.values[i] = ball_integral(params, f, r, inner) / ball_measure_closed_form(params, r);
    }
  });
  double s = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    s += outer.weights[i] * std::abs(out.values[i]);
    out.max_inside = std::max(out.max_inside, std::abs(out.values[i]));
  }
  out.l1 = params.sphere_const * s;

  const Complex mass = ball_integral(params, f, reach, inner);
  for (int i = 0; i < options.support_probes; ++i) {
    const double r = reach * (1.0 + std::pow(10.0, i - 3.0));
    out.max_outside = std::max(out.max_outside, std::abs(mass) / ball_measure_closed_form(params, r));
  }
  return out;
}

VerificationReport verify_hardy_avg_atom(const DunklParams& params, const Atom& atom,
                                         const HardyNormOptions& options) {
  VerificationReport r = make_report(params, "hardy_avg");
  r.seeds = {atom.seed};
  std::vector<double> radial;
  const double c = norm_of(atom.center);
  if (c > atom.radius) radial.push_back(c - atom.radius);
  for (double b : atom.breakpoints) radial.push_back(std::abs(b));
  const HardyNorm h = hardy_avg_l1(params, atom.eval, atom.support(), radial, options);
  // Odd atoms have H_k a = 0 identically, so the leak is measured against the larger of
  // max |H_k a| and the a priori scale ||a||_1 / nu(B) <= 1 / nu(B).
  const double scale = std::max(h.max_inside, 1.0 / ball_measure(params, atom.center, atom.radius));
  const double leak = h.max_outside / scale;
  if (atom.centered()) {
    r.add_le("hardy_avg_l1", h.l1, 2.0, 1e-4, "||H_k a||_1 <= 2");
    r.add_le("hardy_avg_support", leak, 0.0, 1e-12, "max |H_k a| outside B / max(max inside, 1/nu(B))");
  } else {
    r.add_info("hardy_avg_l1", h.l1, "off-centre atom: report only");
    r.add_info("hardy_avg_support", leak, "off-centre atom: report only");
  }
  for (auto& ch : r.checks) ch.seed = atom.seed;
  return r;
}

VerificationReport verify_hardy_avg_decomposition(const DunklParams& params,
                                                  const AtomicDecomposition& decomposition,
                                                  const HardyNormOptions& options) {
  VerificationReport r = make_report(params, "hardy_decomposition");
  double lambda_sum = 0.0;
  for (const auto& t : decomposition.terms) {
    lambda_sum += std::abs(t.coefficient);
    r.seeds.push_back(t.atom.seed);
  }
  if (decomposition.terms.empty()) {
    r.add_le("hardy_decomposition_l1", 0.0, 0.0, 1e-12, "empty decomposition");
    return r;
  }
  std::vector<double> radial;
  for (const auto& t : decomposition.terms) {
    const double c = norm_of(t.atom.center);
    if (c > t.atom.radius) radial.push_back(c - t.atom.radius);
    radial.push_back(c + t.atom.radius);
    for (double b : t.atom.breakpoints) radial.push_back(std::abs(b));
  }
  const SupportHint support = decomposition.support();
  const HardyNorm whole = hardy_avg_l1(params, decomposition.function(), support, radial, options);
  r.add_le("hardy_decomposition_l1", whole.l1, 2.0 * lambda_sum, 1e-4, "||H_k f||_1 <= 2 sum |lambda|");

  // Linearity at the outer radii: H_k(sum lambda a) against sum lambda H_k a, with
  // every term integrated by the rule used for the sum.
  std::vector<Complex> sum(whole.radii.size(), 0.0);
  std::vector<double> scale(whole.radii.size(), 0.0);
  const HardyAvgOptions own{support, options.inner};
  for (const auto& t : decomposition.terms) {
    parallel_for(whole.radii.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double rad = whole.radii[i];
        const Complex v = t.coefficient * ball_integral(params, t.atom.eval, rad, own) /
                          ball_measure_closed_form(params, rad);
        sum[i] += v;
        scale[i] += std::abs(v);
      }
    });
  }
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    worst = std::max(worst, std::abs(whole.values[i] - sum[i]));
    peak = std::max(peak, scale[i]);
  }
  r.add_le("hardy_decomposition_linearity", peak > 0.0 ? worst / peak : worst, 0.0, 1e-10,
           "max |H(sum) - sum H| / max sum |lambda H a|");
  r.add_info("lambda_sum", lambda_sum);
  return r;
}

std::pair<double, double> riesz_l1_norm(const TransformPlan& plan, const SampledFunction& f, int axis, double T) {
  const SampledFunction Rf = riesz_transform(plan, f, axis);
  const auto& grid = *plan.source_grid();
  double total = 0.0, shell = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double m = 0.0;
    for (double c : grid.node(i)) m = std::max(m, std::abs(c));
    if (m > T * (1.0 + 1e-12)) continue;
    const double v = grid.weights()[i] * std::abs(Rf[i]);
    total += v;
    if (m >= 0.5 * T * (1.0 - 1e-12)) shell += v;
  }
  return {total, shell};
}

VerificationReport verify_riesz_on_atom(const DunklParams& params, const Atom& atom, const TransformPlan& plan,
                                        double truncation, const RieszAtomOptions& options) {
  if (!atom.centered()) throw ScopeError("verify_riesz_on_atom: dilations are taken about the origin");
  if (params.d > 2) throw ScopeError("verify_riesz_on_atom: available for d <= 2");
  if (!(truncation >= 10.0)) throw InvalidParameter("verify_riesz_on_atom: truncation must be >= 10 radii");
  if (options.scales.empty()) throw InvalidParameter("verify_riesz_on_atom: no scales");
  VerificationReport r = make_report(params, "riesz_atom");
  r.seeds = {atom.seed};
  // The spectral inverse degrades near the box edge, where |x|^{2k} amplifies it.
  const double widest = truncation * *std::max_element(options.scales.begin(), options.scales.end()) * atom.radius;
  if (plan.source_grid()->extent() < 1.5 * widest * (1.0 - 1e-12))
    throw CoverageError("verify_riesz_on_atom: plan grid must extend to 1.5 times the widest window");
  std::vector<double> norms;
  for (double s : options.scales) {
    const double T = truncation * s * atom.radius;
    const double D = params.homogeneous_dimension();
    const double factor = std::pow(s, -D);
    const PointFunction dilated = [&](std::span<const double> x) {
      std::vector<double> u(x.begin(), x.end());
      for (auto& c : u) c /= s;
      return factor * atom.eval(u);
    };
    const SampledFunction f = SampledFunction::sample(plan.source_grid(), dilated);
    const auto [norm, tail] = riesz_l1_norm(plan, f, options.axis, T);
    if (tail > 0.01 * norm)
      throw TruncationError("verify_riesz_on_atom: tail estimate " + std::to_string(tail) + " exceeds 1% of " +
                            std::to_string(norm) + " at scale " + std::to_string(s));
    norms.push_back(norm);
    std::ostringstream label;
    label << "riesz_l1_scale_" << s;
    r.add_info(label.str(), norm, "tail estimate " + std::to_string(tail));
  }
  const double lo = *std::min_element(norms.begin(), norms.end());
  const double hi = *std::max_element(norms.begin(), norms.end());
  const bool finite = std::all_of(norms.begin(), norms.end(), [](double v) { return std::isfinite(v); });
  r.add_le("riesz_l1_finite", finite ? 0.0 : 1.0, 0.0, 0.0);
  r.add_le("riesz_scale_spread", lo > 0.0 ? hi / lo - 1.0 : 0.0, 0.0, 0.02, "max / min - 1 across scales");
  r.add_info("riesz_empirical_constant", hi);
  for (auto& c : r.checks) c.seed = atom.seed;
  return r;
}

}  // namespace dunkl
