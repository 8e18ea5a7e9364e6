#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dunkl/measure.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/report.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

/// Candidate L^2_k-atom. `eval` is the exact function (zero outside the ball);
/// `values` are its samples on a grid covering the ball.
struct Atom {
  std::vector<double> center;
  double radius = 1.0;
  SampledFunction values;
  PointFunction eval;
  std::vector<double> breakpoints;  // d = 1 cuts where eval is not smooth (ball ends included)

  double l2_norm = 0.0;
  Complex mean = 0.0;
  bool validated = false;
  bool degenerate = false;
  std::uint64_t seed = 0;

  bool centered() const;
  SupportHint support() const;
};

struct AtomicTerm {
  Complex coefficient;
  Atom atom;
};

struct AtomicDecomposition {
  std::vector<AtomicTerm> terms;
  double truncation_error = 0.0;

  PointFunction function() const;
  /// Union of the atoms' support radius (from the origin) and breakpoints.
  SupportHint support() const;
};

/// Support, size, cancellation and the L^1 bound ||a||_{1,k} <= 1, all by
/// quadrature on the atom's grid. Updates the cached l2_norm, mean and
/// validated flag. Throws CoverageError if the grid does not cover the ball.
VerificationReport atom_validate(const DunklParams& params, Atom& atom);

/// Samples an atom's exact form on another grid.
SampledFunction sample_atom(const Atom& atom, GridPtr grid);

/// Default grid for an atom: the ball itself for d = 1, the bounding box for d = 2.
GridPtr atom_grid(const DunklParams& params, std::span<const double> center, double radius,
                  const PanelLayout& layout);

struct RandomAtomOptions {
  double radius = 1.0;
  std::vector<double> center;  // empty means the origin
  int bump_power = 8;
  int max_degree = 5;
  double tightness = 0.99;     // ||a||_2 = tightness * nu_k(B)^{-1/2}
  PanelLayout layout{2, 48, 0.0};
};

/// (1 - |u|^2)^m P(u) with u = (x - c)/R and P a random polynomial of odd degree;
/// the bump-weighted mean of P is removed, which keeps the atom smooth, and the
/// result is scaled so the size condition is tight.
Atom random_atom(const DunklParams& params, std::uint64_t seed, const RandomAtomOptions& options = {});

/// L^1-normalised dilation a_s(x) = s^{-(2 gamma + d)} a(x / s) of an origin-centred atom.
Atom dilate_atom(const DunklParams& params, const Atom& atom, double s, const PanelLayout& layout);

/// Shell C_j = { 4^{-(j+1)/(2 gamma + d)} <= |x| <= 4^{-j/(2 gamma + d)} }.
std::pair<double, double> shell_radii(const DunklParams& params, int j);
/// The largest ball inside C_j centred on the positive x_1 axis.
std::pair<std::vector<double>, double> shell_ball(const DunklParams& params, int j);

/// a_j = nu_k(B_j)^{-1/2} (h - Avg_{B_j} h) chi_{B_j}, with B_j given by shell_ball.
/// Throws InvalidParameter if the ball leaves the shell.
Atom atom_from_function(const DunklParams& params, const PointFunction& h, int j, std::vector<double> ball_center,
                        double ball_radius, const PanelLayout& layout = {2, 64, 0.0});

/// x_1 e^{-|x|^2/2}, scaled to unit L^2_k norm.
PointFunction default_shell_profile(const DunklParams& params);

/// Atoms a_1..a_J from the shells with coefficients nu_k(B_j)^{1/2}. Degenerate
/// atoms are skipped and counted in `skipped`.
AtomicDecomposition example31_family(const DunklParams& params, int J, const PointFunction& h, int* skipped = nullptr);

/// sqrt(d_k / (2 gamma + d)).
double example31_bound(const DunklParams& params);

/// Sum |lambda_j|. Throws ContractError if some atom is not validated.
double h1_norm_upper(const AtomicDecomposition& decomposition);

/// |int sum lambda_j a_j dnu_k| / sum |lambda_j| on a grid covering every ball.
VerificationReport zero_mean_check(const DunklParams& params, const AtomicDecomposition& decomposition);

/// sup_{y != 0} |F_k a(y)| / (R |y|) over the target grid against c_k sqrt(d).
VerificationReport verify_fourier_atom(const DunklParams& params, const Atom& atom, const TransformPlan& plan);

struct HlpSplitOptions {
  PanelLayout inner{8, 32, 0.0};
  PanelLayout outer{0, 32, 1.5};  // panels = 0: chosen from the atom radius
};

/// I_1 = int_{|y| <= 1/R} |y|^{-(2 gamma + d)} |F_k a| dnu_k and I_2 over 1 / R < |y| <= Omega.
/// d = 1 evaluates F_k a at dedicated nodes; d >= 2 masks the target grid.
VerificationReport verify_hlp_h1(const DunklParams& params, const Atom& atom, const TransformPlan& plan,
                                 const HlpSplitOptions& options = {});

struct HardyNormOptions {
  PanelLayout outer{8, 32, 0.0};
  PanelLayout inner{2, 32, 0.0};
  int support_probes = 6;
};

struct HardyNorm {
  double l1 = 0.0;             // ||H_k f||_{1,k}
  double max_inside = 0.0;     // max |H_k f| over the radial nodes inside the reach
  double max_outside = 0.0;    // max |H_k f| beyond the reach
  std::vector<double> radii;   // outer nodes
  std::vector<Complex> values; // H_k f at those radii
};

/// ||H_k f||_{1,k} by nested quadrature: radial outer rule on [0, X] (X the support
/// reach) and a fresh inner ball rule per radius. Beyond X the average is M / nu(B_r)
/// with M the total mass, which is only probed (max_outside), never integrated.
HardyNorm hardy_avg_l1(const DunklParams& params, const PointFunction& f, const SupportHint& support,
                       const std::vector<double>& radial_breakpoints, const HardyNormOptions& options = {});

/// ||H_k a||_{1,k} <= 2 and supp H_k a inside B for origin-centred atoms; report only otherwise.
VerificationReport verify_hardy_avg_atom(const DunklParams& params, const Atom& atom,
                                         const HardyNormOptions& options = {});

/// ||H_k (sum lambda a)||_{1,k} <= 2 sum |lambda| and linearity against sum lambda H_k a.
VerificationReport verify_hardy_avg_decomposition(const DunklParams& params,
                                                  const AtomicDecomposition& decomposition,
                                                  const HardyNormOptions& options = {});

struct RieszAtomOptions {
  std::vector<double> scales{0.5, 1.0, 2.0};
  int axis = 0;
};

/// ||R_j a_s||_{1,k} over [-T s, T s]^d for the dilations a_s of an origin-centred
/// atom, T = truncation. Asserts finiteness and agreement across scales within 2%.
/// Throws TruncationError when the tail estimate exceeds 1% of the value and
/// CoverageError unless the plan grid reaches 1.5 times the largest window.
VerificationReport verify_riesz_on_atom(const DunklParams& params, const Atom& atom, const TransformPlan& plan,
                                        double truncation, const RieszAtomOptions& options = {});

/// ||R_j a||_{1,k} on [-T, T]^d and the tail estimate int_{T/2 <= |x|_inf <= T} |R_j a|.
std::pair<double, double> riesz_l1_norm(const TransformPlan& plan, const SampledFunction& f, int axis, double T);

}  // namespace dunkl
