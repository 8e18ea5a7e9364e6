#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "dunkl/errors.hpp"

namespace dunkl {

double Rule1D::sum(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g(nodes[i]);
  return s;
}

void Rule1D::append(const Rule1D& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

namespace {

// P_n^{(a,b)}(x) and its derivative by the three-term recurrence.
std::pair<double, double> jacobi_with_derivative(int n, double a, double b, double x) {
  auto eval = [](int m, double al, double be, double t) {
    if (m == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (al - be) + 0.5 * (al + be + 2.0) * t;
    for (int j = 2; j <= m; ++j) {
      const double s = 2.0 * j + al + be;
      const double c1 = 2.0 * j * (j + al + be) * (s - 2.0);
      const double c2 = (s - 1.0) * (s * (s - 2.0) * t + al * al - be * be);
      const double c3 = 2.0 * (j + al - 1.0) * (j + be - 1.0) * s;
      const double p2 = (c2 * p1 - c3 * p0) / c1;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  const double p = eval(n, a, b, x);
  const double dp = n == 0 ? 0.0 : 0.5 * (n + a + b + 1.0) * eval(n - 1, a + 1.0, b + 1.0, x);
  return {p, dp};
}

Rule1D compute_gauss_jacobi(int n, double a, double b) {
  // Golub-Welsch for starting values, then Newton polish and the closed-form weights.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int j = 0; j < n; ++j) {
    const double s = 2.0 * j + a + b;
    if (j == 0) {
      diag(j) = (b - a) / (a + b + 2.0);
    } else {
      diag(j) = (b * b - a * a) / (s * (s + 2.0));
    }
    if (j + 1 < n) {
      const double m = j + 1.0;
      const double t = 2.0 * m + a + b;
      // At m = 1 the factor m + a + b equals t - 1; cancel it so a + b = -1 works.
      sub(j) = j == 0 ? std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / (t * t * (t + 1.0)))
                      : std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("gauss_jacobi: eigen solver failed");

  const double log_const = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                           std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0) +
                           (a + b + 1.0) * std::log(2.0);
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const auto [p, dp] = jacobi_with_derivative(n, a, b, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    const double dp = jacobi_with_derivative(n, a, b, x).second;
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_const) / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const Rule1D& gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw InvalidParameter("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw InvalidParameter("gauss_jacobi: exponents must exceed -1");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, Rule1D> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(n, alpha, beta);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_gauss_jacobi(n, alpha, beta)).first;
  return it->second;
}

namespace {

struct Piece {
  double lo;
  double hi;
};

// Splits [lo, hi] (0 not strictly inside) geometrically so each part has hi/lo <= ratio.
void graded_split(double lo, double hi, double ratio, std::vector<double>& out) {
  const double a = std::min(std::abs(lo), std::abs(hi));
  const double b = std::max(std::abs(lo), std::abs(hi));
  if (a <= 0.0 || b / a <= ratio) return;
  const int parts = static_cast<int>(std::ceil(std::log(b / a) / std::log(ratio)));
  const double sign = lo < 0.0 ? -1.0 : 1.0;
  for (int i = 1; i < parts; ++i) out.push_back(sign * a * std::pow(b / a, static_cast<double>(i) / parts));
}

}  // namespace

Rule1D composite_rule(double a, double b, const std::function<double(double)>& weight,
                      std::span<const SingularPoint> singular, std::span<const double> breakpoints,
                      const PanelLayout& layout) {
  if (!(b > a)) throw InvalidParameter("composite_rule: need a < b");
  if (layout.panels < 1 || layout.nodes_per_panel < 1)
    throw InvalidParameter("composite_rule: panels and nodes_per_panel must be positive");

  std::vector<double> cuts{a, b};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  for (const auto& s : singular)
    if (s.position > a && s.position < b) cuts.push_back(s.position);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  if (layout.grading > 1.0) {
    std::vector<double> extra;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i] < 0.0 && cuts[i + 1] > 0.0) continue;
      graded_split(cuts[i], cuts[i + 1], layout.grading, extra);
    }
    cuts.insert(cuts.end(), extra.begin(), extra.end());
    std::sort(cuts.begin(), cuts.end());
  }

  auto exponent_at = [&](double x, bool right_side) {
    for (const auto& s : singular)
      if (s.position == x) return right_side ? s.right_exponent : s.left_exponent;
    return 0.0;
  };

  const double width = (b - a) / layout.panels;
  const int n = layout.nodes_per_panel;
  Rule1D out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / width - 1e-9)));
    const double step = (hi - lo) / count;
    for (int c = 0; c < count; ++c) {
      const double p = lo + c * step;
      const double q = (c + 1 == count) ? hi : lo + (c + 1) * step;
      const double beta = (c == 0) ? exponent_at(lo, true) : 0.0;
      const double alpha = (c + 1 == count) ? exponent_at(hi, false) : 0.0;
      const Rule1D& ref = gauss_jacobi(n, alpha, beta);
      const double half = 0.5 * (q - p);
      for (int j = 0; j < n; ++j) {
        const double u = ref.nodes[j];
        const double x = p + half * (1.0 + u);
        double factor = weight(x);
        if (alpha != 0.0) factor /= std::pow(1.0 - u, alpha);
        if (beta != 0.0) factor /= std::pow(1.0 + u, beta);
        out.nodes.push_back(x);
        out.weights.push_back(half * ref.weights[j] * factor);
      }
    }
  }
  return out;
}

Rule1D power_weight_rule(double a, double b, double exponent, std::span<const double> breakpoints,
                         const PanelLayout& layout) {
  if (exponent < 0.0) throw InvalidParameter("power_weight_rule: exponent must be nonnegative");
  const SingularPoint zero{0.0, exponent, exponent};
  auto w = [exponent](double x) { return exponent == 0.0 ? 1.0 : std::pow(std::abs(x), exponent); };
  return composite_rule(a, b, w, std::span<const SingularPoint>(&zero, 1), breakpoints, layout);
}

}  // namespace dunkl
