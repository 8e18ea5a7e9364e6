#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dunkl/measure.hpp"
#include "dunkl/report.hpp"

namespace dunkl {

/// Discretised Dunkl transform between two tensor-product grids.
///
///   forward:  F(xi_t) = c_k sum_s E_k(-i xi_t, y_s) W_s f(y_s)
///   inverse:  f(x_s)  = c_k sum_t E_k( i x_s, xi_t) W_t F(xi_t)
///
/// The kernel factorises over coordinates, so the plan keeps one dense matrix
/// K_a(t, s) = E_{k_a}(-i xi_{t,a} y_{s,a}) per axis and applies the full
/// |target| x |source| matrix as a sequence of mode products.
class TransformPlan {
 public:
  TransformPlan(DunklParams params, GridPtr source, GridPtr target);

  const DunklParams& params() const { return params_; }
  const GridPtr& source_grid() const { return source_; }
  const GridPtr& target_grid() const { return target_; }
  const std::vector<Eigen::MatrixXcd>& axis_matrices() const { return axes_; }

  SampledFunction forward(const SampledFunction& f) const;
  SampledFunction inverse(const SampledFunction& F) const;
  /// Forward transform at arbitrary frequencies (row-major, d per point).
  std::vector<Complex> forward_at(const SampledFunction& f, std::span<const double> points) const;
  /// Inverse transform of target-grid data at arbitrary points.
  std::vector<Complex> inverse_at(const SampledFunction& F, std::span<const double> points) const;
  /// Multiplies the forward transform by m, then inverts: the common core of
  /// multiplier operators.
  SampledFunction apply_symbol(const SampledFunction& f, const std::vector<Complex>& symbol_on_target) const;

  /// Explicit |target| x |source| matrix including c_k and the source weights.
  /// Intended for small grids and tests.
  Eigen::MatrixXcd dense_matrix() const;

  std::uint64_t cache_key() const;
  void save(const std::string& path) const;
  /// Restores a plan saved for the same parameters and grids; throws ParseError
  /// on a bad header, version or key.
  static TransformPlan load(const std::string& path, DunklParams params, GridPtr source, GridPtr target);

 private:
  struct NoBuild {};
  TransformPlan(DunklParams params, GridPtr source, GridPtr target, NoBuild);
  void check_grids() const;
  void build();

  DunklParams params_;
  GridPtr source_;
  GridPtr target_;
  std::vector<Eigen::MatrixXcd> axes_;
};

inline constexpr std::uint32_t plan_cache_version = 1;

/// Symmetric box [-Omega, Omega]^d with Omega = 0.7 N / L, N the source node count
/// per axis and L the source half width, in the source panel layout. At that band a
/// panel of n Gauss nodes sees a kernel phase of at most 0.7 n across the box, which
/// keeps both quadratures resolved.
GridPtr default_target_grid(const DunklParams& params, const QuadratureGrid& source);

/// | ||F f||_{2,k} - ||f||_{2,k} | / ||f||_{2,k}  (absolute when f = 0).
VerificationReport plancherel_check(const TransformPlan& plan, const SampledFunction& f);
/// Relative L^2 error of inverse(forward(f)) against f.
VerificationReport inversion_check(const TransformPlan& plan, const SampledFunction& f);
/// (int |xi|^{(2 gamma + d)(p - 2)} |F f|^p dnu_k)^{1/p} / ||f||_{p,k}, 1 < p <= 2.
VerificationReport hlp_check(const TransformPlan& plan, const SampledFunction& f, double p);

}  // namespace dunkl
