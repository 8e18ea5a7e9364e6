#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

enum class Relation { le, ge, info };

/// One named quantity compared against a bound.
///   le:   computed <= bound * (1 + tolerance)   (bound > 0)
///         computed <= tolerance                (bound == 0, absolute)
///   ge:   computed >= bound * (1 - tolerance)
///   info: recorded only, always passes
struct Check {
  std::string name;
  double computed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::le;
  bool pass = true;
  std::optional<std::uint64_t> seed;
  std::string note;

  void evaluate();
};

struct VerificationReport {
  std::string suite;
  int d = 0;
  std::vector<double> k;
  std::vector<std::uint64_t> seeds;
  std::vector<Check> checks;

  Check& add_le(std::string name, double computed, double bound, double tolerance, std::string note = {});
  Check& add_ge(std::string name, double computed, double bound, double tolerance, std::string note = {});
  Check& add_info(std::string name, double computed, std::string note = {});

  bool passed() const;
  const Check* find(const std::string& name) const;
  /// Appends the checks of another report, prefixing names when requested.
  void absorb(const VerificationReport& other, const std::string& prefix = {});
  /// Replaces tolerances for matching check names and re-evaluates them.
  void override_tolerances(const std::map<std::string, double>& tolerances);
};

inline constexpr int report_schema_version = 1;

/// Deterministic JSON rendering; generated_at is omitted when empty.
std::string report_to_json(const VerificationReport& report, const std::string& generated_at = {});
/// Merges several report documents into one {"schema_version", "reports": [...]} document,
/// sorted by suite name then first seed. Throws ParseError on malformed input.
std::string merge_report_documents(const std::vector<std::string>& documents);

std::string utc_timestamp();

}  // namespace dunkl
