#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dunkl/measure.hpp"
#include "dunkl/report.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

/// Fourier-side multiplier m(xi); origin_value is used at xi = 0.
struct MultiplierSpec {
  std::function<Complex(std::span<const double>)> symbol;
  Complex origin_value = 0.0;
  std::string name;
};

/// -i xi_j / |xi|, zero at the origin.
MultiplierSpec riesz_multiplier(int j);
/// E_k(i x, xi): the spectral form of the translation tau_x.
MultiplierSpec translation_multiplier(const DunklParams& params, std::vector<double> x);
MultiplierSpec identity_multiplier();

/// inverse(m * forward(f)).
SampledFunction apply_multiplier(const TransformPlan& plan, const SampledFunction& f, const MultiplierSpec& m);
SampledFunction riesz_transform(const TransformPlan& plan, const SampledFunction& f, int j);
SampledFunction translate(const TransformPlan& plan, const SampledFunction& f, std::span<const double> x);

/// Riesz transform at a single point through the multiplier route.
Complex riesz_at(const TransformPlan& plan, const SampledFunction& f, int j, std::span<const double> x);

struct PrincipalValueResult {
  Complex value;                   // lambda_k times the extrapolated eps -> 0 limit
  double convergence_estimate = 0; // |three-point - four-point extrapolation|
  std::vector<double> eps;
  std::vector<Complex> truncated;  // lambda_k times the truncated integrals
};

/// Principal-value Riesz transform (d = 1)
///   lambda_k lim_{eps->0} int_{|y|>eps} tau_x f(-y) y / |y|^{2 gamma + d + 1} dnu_k(y).
/// tau_x f comes from the plan. The truncated integrals are Richardson-extrapolated
/// in eps, eps^3, eps^5 (the integrand difference is even in y). An empty schedule
/// means {0.2, 0.1, 0.05, 0.025} times the mean source spacing.
/// Throws ConvergenceError when successive differences fail to decrease.
PrincipalValueResult riesz_pv(const TransformPlan& plan, const SampledFunction& f, int j, double x,
                              std::vector<double> eps_schedule = {});

/// Where a function may be nonzero and where it is not smooth.
struct SupportHint {
  std::vector<double> center;                                // empty means the origin
  double radius = std::numeric_limits<double>::infinity();  // f = 0 outside B(center, radius)
  std::vector<double> breakpoints;                           // axis cuts (d = 1)
};

struct HardyAvgOptions {
  SupportHint support;
  PanelLayout layout{4, 48, 0.0};
};

struct HardyAverage {
  Complex value;
  bool convention = false;  // x = 0: f(0) returned by continuity
};

/// int_{B(0, r)} f dnu_k by fresh quadrature (d <= 2).
Complex ball_integral(const DunklParams& params, const PointFunction& f, double r, const HardyAvgOptions& options);

/// H_k f(x) = nu_k(B(0,|x|))^{-1} int_{B(0,|x|)} f dnu_k.
HardyAverage hardy_avg(const DunklParams& params, const PointFunction& f, std::span<const double> x,
                       const HardyAvgOptions& options = {});
/// Grid version: nodes with |y| <= |x| weighted by the grid quadrature, divided by
/// the closed-form ball measure. Exact only when |x| is a grid breakpoint.
HardyAverage hardy_avg(const SampledFunction& f, const DunklParams& params, std::span<const double> x);

struct HardyInequalityOptions {
  SupportHint support;                  // radius must be finite
  std::vector<double> radial_breakpoints;
  PanelLayout outer{16, 32, 0.0};
  PanelLayout inner{4, 32, 0.0};
};

/// ||H_k |f| ||_{p,k} / ||f||_{p,k} against p / (p - 1). The outer norm is radial
/// quadrature on [0, X] plus the exact tail beyond the support radius X.
VerificationReport hardy_inequality_check(const DunklParams& params, const PointFunction& f, double p,
                                          const HardyInequalityOptions& options);

}  // namespace dunkl
