#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dunkl/report.hpp"

namespace dunkl {

/// Everything a verification suite needs. Defaults reproduce the standard profile
/// (d = 1, 2048-node transform grid, 100 random atoms, seeds 1..5).
struct SuiteConfig {
  int d = 1;
  std::vector<double> k{0.0};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  // Transform grid: symmetric box [-half_width, half_width]^d.
  double half_width = 12.0;
  int panels = 32;
  int nodes_per_panel = 64;

  int atom_count = 100;
  int decomposition_count = 20;
  int decomposition_size = 10;
  int hardy_function_count = 50;
  int test_function_count = 20;
  int kernel_samples = 10000;
  int example31_terms = 30;

  // Grids for the Riesz dilation suite. The source box must reach 1.5 times the
  // widest window (2 * truncation); the frequency box must hold the spectrum of the
  // narrowest dilate while resolving the widest window.
  double riesz_truncation = 50.0;
  double riesz_half_width = 150.0;
  int riesz_panels = 96;
  double riesz_omega = 64.0;
  int riesz_target_panels = 192;
  int riesz_nodes_per_panel = 32;

  std::map<std::string, double> tolerances;  // check name (or "*") -> tolerance
};

/// Registered suite names in execution order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Whether the suite runs in dimension d (the rest throw ScopeError).
bool suite_supports(const std::string& name, int d);

/// Seed of the i-th generated object of a run.
std::uint64_t derived_seed(const SuiteConfig& config, int i);

VerificationReport run_suite(const std::string& name, const SuiteConfig& config);

/// Expands "all" (to the suites supporting config.d), runs up to `workers`
/// suites at once and returns reports sorted by suite name.
std::vector<VerificationReport> run_suites(const std::vector<std::string>& names, const SuiteConfig& config,
                                           int workers);

}  // namespace dunkl
