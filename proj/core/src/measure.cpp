#include "dunkl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

// int_{-L}^{L} e^{-x^2/2} |x|^{2k} dx; the tail beyond L is below double precision.
double weighted_gaussian_mass(double k) {
  const double half_width = 12.0 + 4.0 * std::sqrt(k);
  const Rule1D rule = power_weight_rule(-half_width, half_width, 2.0 * k, {}, {8, 64, 0.0});
  return rule.sum([](double x) { return std::exp(-0.5 * x * x); });
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

double signed_power_primitive(double t, double e) {
  const double v = std::pow(std::abs(t), e + 1.0) / (e + 1.0);
  return t < 0.0 ? -v : v;
}

}  // namespace

DunklParams make_params(int d, std::vector<double> k) {
  if (d < 1) throw InvalidParameter("make_params: d must be positive");
  if (static_cast<int>(k.size()) != d) throw InvalidParameter("make_params: k must have d entries");
  for (double ki : k)
    if (!(ki >= 0.0) || !std::isfinite(ki)) throw InvalidParameter("make_params: multiplicities must be >= 0");

  DunklParams p;
  p.d = d;
  p.k = std::move(k);
  p.gamma = 0.0;
  for (double ki : p.k) p.gamma += ki;

  double inverse_mehta = 1.0;
  for (double ki : p.k) inverse_mehta *= weighted_gaussian_mass(ki);
  p.mehta = 1.0 / inverse_mehta;

  const double half = p.gamma + 0.5 * d;
  p.sphere_const = inverse_mehta / (std::pow(2.0, half - 1.0) * std::tgamma(half));

  double sphere_closed = 2.0 / std::tgamma(half);
  for (double ki : p.k) sphere_closed *= std::tgamma(ki + 0.5);
  if (std::abs(p.sphere_const - sphere_closed) > 1e-8 * sphere_closed)
    throw Error("make_params: Gaussian quadrature disagrees with the sphere integral");

  p.riesz_const = std::pow(2.0, half) * std::tgamma(p.gamma + 0.5 * (d + 1)) / std::sqrt(std::numbers::pi);
  p.group_order = std::uint64_t{1} << std::min(d, 63);
  return p;
}

double weight_eval(const DunklParams& params, std::span<const double> x) {
  double w = 1.0;
  for (int i = 0; i < params.d; ++i)
    if (params.k[i] != 0.0) w *= std::pow(std::abs(x[i]), 2.0 * params.k[i]);
  return w;
}

// ---------------------------------------------------------------------------
// QuadratureGrid

std::shared_ptr<const QuadratureGrid> QuadratureGrid::build(const DunklParams& params, const GridSpec& spec) {
  if (spec.d != params.d || spec.k != params.k)
    throw InvalidParameter("QuadratureGrid: grid spec does not match the parameters");
  const PanelLayout layout{spec.panels, spec.nodes_per_panel, spec.grading};
  if (const auto* box_domain = std::get_if<BoxDomain>(&spec.domain))
    return box(params, box_domain->lower, box_domain->upper, layout, spec.breakpoints);
  const auto& b = std::get<BallDomain>(spec.domain);
  return ball(params, b.center, b.radius, layout);
}

std::shared_ptr<const QuadratureGrid> QuadratureGrid::box(const DunklParams& params, std::vector<double> lower,
                                                          std::vector<double> upper, const PanelLayout& layout,
                                                          std::vector<std::vector<double>> breakpoints) {
  const int d = params.d;
  if (static_cast<int>(lower.size()) != d || static_cast<int>(upper.size()) != d)
    throw InvalidParameter("QuadratureGrid::box: bounds must have d entries");
  if (!breakpoints.empty() && static_cast<int>(breakpoints.size()) != d)
    throw InvalidParameter("QuadratureGrid::box: breakpoints must be given per axis");

  std::shared_ptr<QuadratureGrid> g(new QuadratureGrid);
  g->spec_.d = d;
  g->spec_.k = params.k;
  g->spec_.domain = BoxDomain{lower, upper};
  g->spec_.panels = layout.panels;
  g->spec_.nodes_per_panel = layout.nodes_per_panel;
  g->spec_.grading = layout.grading;
  g->spec_.breakpoints = breakpoints;

  for (int a = 0; a < d; ++a) {
    const std::vector<double> cuts = breakpoints.empty() ? std::vector<double>{} : breakpoints[a];
    g->axes_.push_back(power_weight_rule(lower[a], upper[a], 2.0 * params.k[a], cuts, layout));
  }

  std::size_t total = 1;
  for (const auto& r : g->axes_) total *= r.size();
  g->nodes_.resize(total * d);
  g->weights_.resize(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      g->nodes_[n * d + a] = g->axes_[a].nodes[idx[a]];
      w *= g->axes_[a].weights[idx[a]];
    }
    g->weights_[n] = w;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g->axes_[a].size()) break;
      idx[a] = 0;
    }
  }
  g->finish();
  return g;
}

std::shared_ptr<const QuadratureGrid> QuadratureGrid::symmetric_box(const DunklParams& params, double half_width,
                                                                    const PanelLayout& layout,
                                                                    std::vector<double> breakpoints) {
  if (!(half_width > 0.0)) throw InvalidParameter("symmetric_box: half width must be positive");
  std::vector<std::vector<double>> cuts;
  if (!breakpoints.empty()) cuts.assign(params.d, breakpoints);
  return box(params, std::vector<double>(params.d, -half_width), std::vector<double>(params.d, half_width), layout,
             std::move(cuts));
}

std::shared_ptr<const QuadratureGrid> QuadratureGrid::ball(const DunklParams& params, std::vector<double> center,
                                                           double radius, const PanelLayout& layout) {
  const int d = params.d;
  if (!(radius > 0.0)) throw InvalidParameter("QuadratureGrid::ball: radius must be positive");
  if (static_cast<int>(center.size()) != d) throw InvalidParameter("QuadratureGrid::ball: center must have d entries");
  if (d > 2) throw ScopeError("QuadratureGrid::ball: ball grids are available for d <= 2 only");

  std::shared_ptr<QuadratureGrid> g(new QuadratureGrid);
  g->spec_.d = d;
  g->spec_.k = params.k;
  g->spec_.domain = BallDomain{center, radius};
  g->spec_.panels = layout.panels;
  g->spec_.nodes_per_panel = layout.nodes_per_panel;
  g->spec_.grading = layout.grading;

  if (d == 1) {
    const Rule1D r = power_weight_rule(center[0] - radius, center[0] + radius, 2.0 * params.k[0], {}, layout);
    g->nodes_ = r.nodes;
    g->weights_ = r.weights;
    g->axes_.push_back(r);
    g->finish();
    return g;
  }

  // x1 = c1 + R sin(phi), |x2 - c2| <= R cos(phi). The outer weight carries
  // |x1|^{e1}, the Jacobian R cos(phi) and the exact inner mass.
  const double c1 = center[0];
  const double c2 = center[1];
  const double e1 = 2.0 * params.k[0];
  const double e2 = 2.0 * params.k[1];
  const double half_pi = 0.5 * std::numbers::pi;
  auto inner_mass = [&](double h) {
    return signed_power_primitive(c2 + h, e2) - signed_power_primitive(c2 - h, e2);
  };
  auto outer_weight = [&](double phi) {
    const double x1 = c1 + radius * std::sin(phi);
    const double h = radius * std::cos(phi);
    const double w1 = e1 == 0.0 ? 1.0 : std::pow(std::abs(x1), e1);
    return w1 * h * inner_mass(std::max(h, 0.0));
  };

  const double end_exponent = c2 == 0.0 ? e2 + 2.0 : 0.0;
  double lo_exp = end_exponent;
  double hi_exp = end_exponent;
  std::vector<SingularPoint> singular;
  std::vector<double> cuts;
  if (std::abs(c1) < radius) {
    singular.push_back({std::asin(-c1 / radius), e1, e1});
  } else if (c1 == radius) {
    lo_exp += e1;
  } else if (c1 == -radius) {
    hi_exp += e1;
  }
  singular.push_back({-half_pi, 0.0, lo_exp});
  singular.push_back({half_pi, hi_exp, 0.0});
  if (c2 != 0.0 && std::abs(c2) < radius) {
    const double t = std::acos(std::abs(c2) / radius);
    cuts.push_back(-t);
    cuts.push_back(t);
  }
  const Rule1D outer = composite_rule(-half_pi, half_pi, outer_weight, singular, cuts, layout);

  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double phi = outer.nodes[i];
    const double x1 = c1 + radius * std::sin(phi);
    const double h = radius * std::cos(phi);
    if (!(h > 0.0) || outer.weights[i] == 0.0) continue;
    const Rule1D inner = power_weight_rule(c2 - h, c2 + h, e2, {}, layout);
    double inner_sum = 0.0;
    for (double w : inner.weights) inner_sum += w;
    for (std::size_t j = 0; j < inner.size(); ++j) {
      g->nodes_.push_back(x1);
      g->nodes_.push_back(inner.nodes[j]);
      g->weights_.push_back(outer.weights[i] * inner.weights[j] / inner_sum);
    }
  }
  g->finish();
  return g;
}

void QuadratureGrid::finish() {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::int64_t d = spec_.d;
  h = fnv1a(&d, sizeof d, h);
  h = fnv1a(nodes_.data(), nodes_.size() * sizeof(double), h);
  h = fnv1a(weights_.data(), weights_.size() * sizeof(double), h);
  fingerprint_ = h;
}

bool QuadratureGrid::covers_ball(std::span<const double> center, double radius) const {
  const double slack = 1e-12 * (1.0 + radius);
  if (const auto* b = std::get_if<BoxDomain>(&spec_.domain)) {
    for (int a = 0; a < spec_.d; ++a)
      if (center[a] - radius < b->lower[a] - slack || center[a] + radius > b->upper[a] + slack) return false;
    return true;
  }
  const auto& ball = std::get<BallDomain>(spec_.domain);
  double dist2 = 0.0;
  for (int a = 0; a < spec_.d; ++a) dist2 += (center[a] - ball.center[a]) * (center[a] - ball.center[a]);
  return std::sqrt(dist2) + radius <= ball.radius + slack;
}

double QuadratureGrid::extent() const {
  double m = 0.0;
  if (const auto* b = std::get_if<BoxDomain>(&spec_.domain)) {
    for (int a = 0; a < spec_.d; ++a) m = std::max({m, std::abs(b->lower[a]), std::abs(b->upper[a])});
    return m;
  }
  const auto& ball = std::get<BallDomain>(spec_.domain);
  for (int a = 0; a < spec_.d; ++a) m = std::max(m, std::abs(ball.center[a]) + ball.radius);
  return m;
}

// ---------------------------------------------------------------------------
// SampledFunction

SampledFunction::SampledFunction(GridPtr grid, std::vector<Complex> values, std::vector<Parity> parity)
    : grid_(std::move(grid)), values_(std::move(values)), parity_(std::move(parity)) {
  if (!grid_) throw ShapeError("SampledFunction: null grid");
  if (values_.size() != grid_->size()) throw ShapeError("SampledFunction: value count differs from node count");
  if (!parity_.empty() && static_cast<int>(parity_.size()) != grid_->dim())
    throw ShapeError("SampledFunction: parity hint must have one entry per axis");
}

SampledFunction SampledFunction::sample(GridPtr grid, const PointFunction& f) {
  std::vector<Complex> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
  return SampledFunction(std::move(grid), std::move(v));
}

SampledFunction SampledFunction::zeros(GridPtr grid) {
  const std::size_t n = grid->size();
  return SampledFunction(std::move(grid), std::vector<Complex>(n));
}

void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* where) {
  if (a.grid() != b.grid() && (!a.grid() || !b.grid() || a.grid()->fingerprint() != b.grid()->fingerprint()))
    throw ShapeError(std::string(where) + ": functions live on different grids");
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
  require_same_grid(*this, other, "operator+");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  parity_.clear();
  return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& other) {
  require_same_grid(*this, other, "operator-");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  parity_.clear();
  return *this;
}

SampledFunction& SampledFunction::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
SampledFunction operator*(Complex s, SampledFunction a) { return a *= s; }

// ---------------------------------------------------------------------------
// Integration

Complex integrate(const SampledFunction& f) {
  if (!f.grid()) throw ShapeError("integrate: function has no grid");
  const auto& w = f.grid()->weights();
  Complex s{};
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
  return s;
}

Complex integrate(const DunklParams& params, const SampledFunction& f, const QuadratureGrid& grid) {
  if (grid.spec().k != params.k) throw ShapeError("integrate: grid was built for other multiplicities");
  if (!f.grid() || f.grid()->fingerprint() != grid.fingerprint())
    throw ShapeError("integrate: function is not sampled on this grid");
  return integrate(f);
}

Complex integrate(const DunklParams& params, const PointFunction& f, const QuadratureGrid& grid) {
  if (grid.spec().k != params.k) throw ShapeError("integrate: grid was built for other multiplicities");
  Complex s{};
  for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weights()[i] * f(grid.node(i));
  return s;
}

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidParameter("lp_norm: p must be >= 1");
  const auto& w = f.grid()->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::pow(std::abs(f[i]), p);
  return std::pow(s, 1.0 / p);
}

double ball_measure_closed_form(const DunklParams& params, double radius) {
  if (!(radius > 0.0)) throw InvalidParameter("ball_measure: radius must be positive");
  const double D = params.homogeneous_dimension();
  return params.sphere_const / D * std::pow(radius, D);
}

double ball_measure_quadrature(const DunklParams& params, std::span<const double> center, double radius,
                               const PanelLayout& layout) {
  if (!(radius > 0.0)) throw InvalidParameter("ball_measure: radius must be positive");
  const bool at_origin = std::all_of(center.begin(), center.end(), [](double c) { return c == 0.0; });
  if (params.d > 2) {
    if (at_origin) return ball_measure_closed_form(params, radius);
    throw ScopeError("ball_measure: off-center balls need d <= 2");
  }
  if (params.d == 1) {
    const Rule1D r = power_weight_rule(center[0] - radius, center[0] + radius, 2.0 * params.k[0], {}, layout);
    double s = 0.0;
    for (double w : r.weights) s += w;
    return s;
  }
  const auto g = QuadratureGrid::ball(params, {center.begin(), center.end()}, radius, layout);
  double s = 0.0;
  for (double w : g->weights()) s += w;
  return s;
}

double ball_measure(const DunklParams& params, std::span<const double> center, double radius) {
  if (static_cast<int>(center.size()) != params.d) throw InvalidParameter("ball_measure: center must have d entries");
  const bool at_origin = std::all_of(center.begin(), center.end(), [](double c) { return c == 0.0; });
  if (at_origin) return ball_measure_closed_form(params, radius);
  return ball_measure_quadrature(params, center, radius);
}

double polar_integrate(const DunklParams& params, const std::function<double(double)>& profile, double r_max,
                       const PolarOptions& options) {
  if (!(r_max > 0.0)) throw InvalidParameter("polar_integrate: R_max must be positive");
  const double D = params.homogeneous_dimension();
  const Rule1D r = power_weight_rule(0.0, r_max, D - 1.0, options.breakpoints, options.layout);
  return params.sphere_const * r.sum(profile);
}

double doubling_ratio(const DunklParams& params, std::span<const double> x, double r) {
  if (!(r > 0.0)) throw InvalidParameter("doubling_ratio: r must be positive");
  return ball_measure_quadrature(params, x, 2.0 * r) / ball_measure_quadrature(params, x, r);
}

}  // namespace dunkl
