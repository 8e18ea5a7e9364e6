#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dunkl/quadrature.hpp"

namespace dunkl {

using Complex = std::complex<double>;

/// Dimension, multiplicities k_i on the roots e_i of Z_2^d, and the derived
/// constants of the weighted measure  dnu_k = prod_i |x_i|^{2 k_i} dx.
struct DunklParams {
  int d = 1;
  std::vector<double> k;
  double gamma = 0.0;         // sum of k_i
  double mehta = 0.0;         // c_k = (int e^{-|x|^2/2} w_k dx)^{-1}
  double sphere_const = 0.0;  // d_k = int_{S^{d-1}} w_k dsigma (unnormalised sigma)
  double riesz_const = 0.0;   // lambda_k
  std::uint64_t group_order = 2;

  /// 2 gamma + d, the homogeneity degree of nu_k.
  double homogeneous_dimension() const { return 2.0 * gamma + d; }
};

/// Builds the parameter set. c_k is obtained by quadrature of the weighted
/// Gaussian and cross-checked (1e-8 relative) through d_k against the closed
/// form of the sphere integral. Throws InvalidParameter on bad input.
DunklParams make_params(int d, std::vector<double> k);

/// w_k(x) = prod_i |x_i|^{2 k_i}.
double weight_eval(const DunklParams& params, std::span<const double> x);

using PointFunction = std::function<Complex(std::span<const double>)>;

struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct BallDomain {
  std::vector<double> center;
  double radius = 1.0;
};

using Domain = std::variant<BoxDomain, BallDomain>;

/// Serializable grid descriptor.
struct GridSpec {
  int d = 1;
  std::vector<double> k;
  Domain domain;
  int panels = 8;
  int nodes_per_panel = 64;
  double grading = 0.0;
  std::vector<std::vector<double>> breakpoints;  // extra per-axis cuts (box grids)
};

/// Nodes and nu_k-weights: sum_i weights[i] f(x_i) approximates int f dnu_k.
/// Box grids are tensor products of per-axis composite Gauss-Jacobi rules
/// (nodes are row-major, last axis fastest). Ball grids exist for d <= 2.
class QuadratureGrid {
 public:
  static std::shared_ptr<const QuadratureGrid> build(const DunklParams& params, const GridSpec& spec);

  static std::shared_ptr<const QuadratureGrid> box(const DunklParams& params, std::vector<double> lower,
                                                   std::vector<double> upper, const PanelLayout& layout,
                                                   std::vector<std::vector<double>> breakpoints = {});
  static std::shared_ptr<const QuadratureGrid> symmetric_box(const DunklParams& params, double half_width,
                                                             const PanelLayout& layout,
                                                             std::vector<double> breakpoints = {});
  static std::shared_ptr<const QuadratureGrid> ball(const DunklParams& params, std::vector<double> center,
                                                    double radius, const PanelLayout& layout);

  int dim() const { return spec_.d; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * static_cast<std::size_t>(spec_.d), static_cast<std::size_t>(spec_.d)};
  }
  const std::vector<double>& weights() const { return weights_; }
  const GridSpec& spec() const { return spec_; }

  bool is_tensor() const { return !axes_.empty(); }
  /// Per-axis rules of a tensor grid (weights include |x_a|^{2 k_a}).
  const std::vector<Rule1D>& axes() const { return axes_; }

  std::uint64_t fingerprint() const { return fingerprint_; }
  bool covers_ball(std::span<const double> center, double radius) const;
  /// Largest |x_a| reached by the grid along any axis.
  double extent() const;

 private:
  QuadratureGrid() = default;
  void finish();

  GridSpec spec_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<Rule1D> axes_;
  std::uint64_t fingerprint_ = 0;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

enum class Parity { none, even, odd };

/// Complex samples of a function, one per grid node.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridPtr grid, std::vector<Complex> values, std::vector<Parity> parity = {});

  static SampledFunction sample(GridPtr grid, const PointFunction& f);
  static SampledFunction zeros(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::vector<Complex>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Parity>& parity_hint() const { return parity_; }

  SampledFunction& operator+=(const SampledFunction& other);
  SampledFunction& operator-=(const SampledFunction& other);
  SampledFunction& operator*=(Complex s);

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
  std::vector<Parity> parity_;
};

SampledFunction operator+(SampledFunction a, const SampledFunction& b);
SampledFunction operator-(SampledFunction a, const SampledFunction& b);
SampledFunction operator*(Complex s, SampledFunction a);

/// Throws ShapeError unless both functions live on the same grid.
void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* where);

/// Weighted quadrature sum approximating int f dnu_k over the grid domain.
Complex integrate(const SampledFunction& f);
Complex integrate(const DunklParams& params, const SampledFunction& f, const QuadratureGrid& grid);
Complex integrate(const DunklParams& params, const PointFunction& f, const QuadratureGrid& grid);

/// (int |f|^p dnu_k)^{1/p} on the grid of f.
double lp_norm(const SampledFunction& f, double p);

/// nu_k(B(center, R)): closed form for center 0, quadrature otherwise.
double ball_measure(const DunklParams& params, std::span<const double> center, double radius);
/// Closed form (d_k / (2 gamma + d)) R^{2 gamma + d}.
double ball_measure_closed_form(const DunklParams& params, double radius);
/// nu_k(B(center, R)) by quadrature for any center (d <= 2).
double ball_measure_quadrature(const DunklParams& params, std::span<const double> center, double radius,
                               const PanelLayout& layout = {4, 64, 0.0});

struct PolarOptions {
  std::vector<double> breakpoints;
  PanelLayout layout{8, 64, 0.0};
};

/// d_k int_0^{R_max} F(r) r^{2 gamma + d - 1} dr by composite Gauss-Jacobi.
double polar_integrate(const DunklParams& params, const std::function<double(double)>& profile, double r_max,
                       const PolarOptions& options = {});

/// nu_k(B(x, 2r)) / nu_k(B(x, r)), both by quadrature.
double doubling_ratio(const DunklParams& params, std::span<const double> x, double r);

/// JSON round trip for grid descriptors: {d, k[], domain, panels, nodes_per_panel, ...}.
std::string grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const std::string& text);

/// CSV with header row x_1..x_d,re,im; comment lines start with '#'.
void write_csv(std::ostream& out, const SampledFunction& f, const std::vector<std::string>& comments = {});

struct CsvTable {
  int d = 0;
  std::vector<double> nodes;  // row-major, d per row
  std::vector<Complex> values;
  std::vector<std::string> comments;  // without the leading '#'
};

/// Parses the CSV schema above. Throws ParseError with the offending line.
CsvTable read_csv(std::istream& in);

/// Binds parsed samples to a grid, checking node coordinates (ParseError on mismatch).
SampledFunction bind_to_grid(const CsvTable& table, GridPtr grid);

}  // namespace dunkl
