#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dunkl {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double sum(const std::function<double(double)>& g) const;
  void append(const Rule1D& other);
};

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1. Rules are memoised; the call is thread-safe.
const Rule1D& gauss_jacobi(int n, double alpha, double beta);

inline const Rule1D& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// A point where the integrand weight behaves like |x - position|^exponent.
/// The exponents may differ on the two sides.
struct SingularPoint {
  double position = 0.0;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

struct PanelLayout {
  int panels = 8;             // target panel count over the whole interval
  int nodes_per_panel = 64;
  double grading = 0.0;       // > 1 enables geometric splitting of pieces away from 0
};

/// Composite rule for  int_a^b g(x) w(x) dx.  The returned weights already
/// contain w, so integrating g is  sum_i weights[i] * g(nodes[i]).
///
/// Breakpoints and singular points split [a, b] into pieces; each piece is
/// divided into equal panels of width about (b - a) / layout.panels. A panel
/// that ends on a singular point uses a Gauss-Jacobi rule carrying that
/// exponent, every other panel is Gauss-Legendre.
Rule1D composite_rule(double a, double b, const std::function<double(double)>& weight,
                      std::span<const SingularPoint> singular, std::span<const double> breakpoints,
                      const PanelLayout& layout);

/// Composite rule for  int_a^b g(x) |x|^exponent dx  (singular point at 0).
Rule1D power_weight_rule(double a, double b, double exponent, std::span<const double> breakpoints,
                         const PanelLayout& layout);

}  // namespace dunkl
