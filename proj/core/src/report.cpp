#include "dunkl/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

#include "dunkl/errors.hpp"

namespace dunkl {

using nlohmann::ordered_json;

void Check::evaluate() {
  if (!std::isfinite(computed)) {
    pass = relation == Relation::info;
    return;
  }
  switch (relation) {
    case Relation::le:
      pass = bound > 0.0 ? computed <= bound * (1.0 + tolerance) : computed <= bound + tolerance;
      break;
    case Relation::ge:
      pass = bound > 0.0 ? computed >= bound * (1.0 - tolerance) : computed >= bound - tolerance;
      break;
    case Relation::info:
      pass = true;
      break;
  }
}

Check& VerificationReport::add_le(std::string name, double computed, double bound, double tolerance,
                                  std::string note) {
  Check c{std::move(name), computed, bound, tolerance, Relation::le, true, std::nullopt, std::move(note)};
  c.evaluate();
  checks.push_back(std::move(c));
  return checks.back();
}

Check& VerificationReport::add_ge(std::string name, double computed, double bound, double tolerance,
                                  std::string note) {
  Check c{std::move(name), computed, bound, tolerance, Relation::ge, true, std::nullopt, std::move(note)};
  c.evaluate();
  checks.push_back(std::move(c));
  return checks.back();
}

Check& VerificationReport::add_info(std::string name, double computed, std::string note) {
  checks.push_back(Check{std::move(name), computed, 0.0, 0.0, Relation::info, true, std::nullopt, std::move(note)});
  return checks.back();
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void VerificationReport::absorb(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    if (!prefix.empty()) c.name = prefix + "." + c.name;
    checks.push_back(std::move(c));
  }
  for (auto s : other.seeds)
    if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
}

void VerificationReport::override_tolerances(const std::map<std::string, double>& tolerances) {
  for (auto& c : checks) {
    auto it = tolerances.find(c.name);
    if (it == tolerances.end()) it = tolerances.find("*");
    if (it == tolerances.end()) continue;
    c.tolerance = it->second;
    c.evaluate();
  }
}

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::info: return "info";
  }
  return "info";
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

std::string report_to_json(const VerificationReport& report, const std::string& generated_at) {
  ordered_json params{{"d", report.d}, {"k", report.k}};
  ordered_json j;
  j["schema_version"] = report_schema_version;
  j["suite"] = report.suite;
  j["params"] = params;
  j["seeds"] = report.seeds;
  if (!generated_at.empty()) j["generated_at"] = generated_at;
  j["pass"] = report.passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["suite"] = report.suite;
    e["params"] = params;
    e["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
    e["computed"] = number_or_null(c.computed);
    e["bound"] = number_or_null(c.bound);
    e["tolerance"] = c.tolerance;
    e["relation"] = relation_name(c.relation);
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string merge_report_documents(const std::vector<std::string>& documents) {
  std::vector<ordered_json> reports;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    ordered_json j;
    try {
      j = ordered_json::parse(documents[i]);
    } catch (const std::exception& e) {
      throw ParseError("report " + std::to_string(i + 1) + ": " + e.what(), 0);
    }
    if (j.contains("reports")) {
      for (auto& r : j["reports"]) reports.push_back(r);
    } else if (j.contains("suite") && j.contains("checks")) {
      reports.push_back(std::move(j));
    } else {
      throw ParseError("report " + std::to_string(i + 1) + ": not a verification report", 0);
    }
  }
  auto first_seed = [](const ordered_json& r) -> std::uint64_t {
    if (r.contains("seeds") && !r["seeds"].empty()) return r["seeds"][0].get<std::uint64_t>();
    return 0;
  };
  std::stable_sort(reports.begin(), reports.end(), [&](const ordered_json& a, const ordered_json& b) {
    const auto sa = a["suite"].get<std::string>();
    const auto sb = b["suite"].get<std::string>();
    if (sa != sb) return sa < sb;
    return first_seed(a) < first_seed(b);
  });
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.value("pass", false);
  ordered_json out;
  out["schema_version"] = report_schema_version;
  out["pass"] = pass;
  out["reports"] = reports;
  return out.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace dunkl
