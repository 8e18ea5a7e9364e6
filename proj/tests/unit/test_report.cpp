#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>

#include "dunkl/errors.hpp"
#include "dunkl/report.hpp"

using namespace dunkl;

TEST_CASE("relations and tolerances") {
  VerificationReport r;
  CHECK(r.add_le("rel_ok", 2.0001, 2.0, 1e-4).pass);
  CHECK_FALSE(r.add_le("rel_bad", 2.001, 2.0, 1e-4).pass);
  CHECK(r.add_le("abs_ok", 1e-9, 0.0, 1e-8).pass);
  CHECK_FALSE(r.add_le("abs_bad", 1e-7, 0.0, 1e-8).pass);
  CHECK(r.add_ge("ge_ok", 0.95, 1.0, 0.1).pass);
  CHECK_FALSE(r.add_ge("ge_bad", 0.85, 1.0, 0.1).pass);
  CHECK(r.add_info("info", -5.0).pass);
  CHECK_FALSE(r.add_le("nan", std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0).pass);
  CHECK_FALSE(r.passed());
  CHECK(r.find("ge_ok") != nullptr);
  CHECK(r.find("missing") == nullptr);
}

TEST_CASE("a tiny tolerance turns a pass into a controlled failure") {
  VerificationReport r;
  r.suite = "demo";
  r.add_le("ratio", 1.5, 2.0, 1e-4);
  r.add_le("error", 1e-12, 0.0, 1e-8);
  CHECK(r.passed());
  r.override_tolerances({{"error", 1e-20}});
  CHECK_FALSE(r.passed());
  CHECK(r.find("ratio")->pass);
  r.override_tolerances({{"*", 1e-6}});
  CHECK(r.passed());
}

TEST_CASE("JSON rendering is deterministic and versioned") {
  VerificationReport r;
  r.suite = "demo";
  r.d = 1;
  r.k = {0.5};
  r.seeds = {1, 2};
  r.add_le("a", 1.0, 2.0, 1e-4).seed = 7;
  r.add_info("b", std::numeric_limits<double>::infinity(), "unbounded");
  const std::string one = report_to_json(r), two = report_to_json(r);
  CHECK(one == two);
  const auto j = nlohmann::json::parse(one);
  CHECK(j["schema_version"] == report_schema_version);
  CHECK(j["suite"] == "demo");
  CHECK_FALSE(j.contains("generated_at"));
  CHECK(j["checks"][0]["seed"] == 7);
  CHECK(j["checks"][1]["computed"].is_null());
  CHECK(j["pass"] == true);
  const auto stamped = nlohmann::json::parse(report_to_json(r, "2026-01-01T00:00:00Z"));
  CHECK(stamped["generated_at"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("merge sorts by suite and first seed and ANDs the verdicts") {
  auto make = [](const std::string& suite, std::uint64_t seed, bool ok) {
    VerificationReport r;
    r.suite = suite;
    r.d = 1;
    r.k = {0.0};
    r.seeds = {seed};
    r.add_le("x", ok ? 0.0 : 1.0, 0.0, 1e-8);
    return report_to_json(r);
  };
  const auto merged = nlohmann::json::parse(
      merge_report_documents({make("zeta", 1, true), make("alpha", 9, true), make("alpha", 3, true)}));
  REQUIRE(merged["reports"].size() == 3);
  CHECK(merged["reports"][0]["suite"] == "alpha");
  CHECK(merged["reports"][0]["seeds"][0] == 3);
  CHECK(merged["reports"][2]["suite"] == "zeta");
  CHECK(merged["pass"] == true);

  const auto failed = nlohmann::json::parse(merge_report_documents({make("a", 1, true), make("b", 1, false)}));
  CHECK(failed["pass"] == false);

  // Merging a merged document flattens it.
  const auto again = nlohmann::json::parse(merge_report_documents({failed.dump(), make("c", 1, true)}));
  CHECK(again["reports"].size() == 3);

  CHECK_THROWS_AS(merge_report_documents({"{not json"}), ParseError);
  CHECK_THROWS_AS(merge_report_documents({"{\"foo\": 1}"}), ParseError);
}

TEST_CASE("absorb prefixes check names") {
  VerificationReport a, b;
  b.add_le("inner", 1.0, 2.0, 0.0);
  a.absorb(b, "sub");
  CHECK(a.find("sub.inner") != nullptr);
}

TEST_CASE("timestamps are ISO-8601 UTC") {
  const auto t = utc_timestamp();
  CHECK(t.size() == 20u);
  CHECK(t.back() == 'Z');
  CHECK(t[10] == 'T');
}
