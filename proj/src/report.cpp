#include "schemalab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

namespace schemalab {

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIPPED";
  }
  return "?";
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

bool Report::overall_pass() const {
  for (const auto& e : entries)
    if (e.status != CheckStatus::pass) return false;
  return !entries.empty();
}

void Report::check_le(const std::string& name, double measured, double threshold,
                      const std::string& witness) {
  entries.push_back({name, measured <= threshold ? CheckStatus::pass : CheckStatus::fail, measured,
                     threshold, witness});
}

void Report::check_between(const std::string& name, double measured, double lo, double hi,
                           const std::string& witness) {
  const bool ok = measured >= lo && measured <= hi;
  entries.push_back({name, ok ? CheckStatus::pass : CheckStatus::fail, measured, hi,
                     witness.empty() ? ("expected range [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]")
                                     : witness});
}

void Report::check_true(const std::string& name, bool condition, const std::string& witness) {
  entries.push_back(
      {name, condition ? CheckStatus::pass : CheckStatus::fail, condition ? 1.0 : 0.0, 1.0,
       witness});
}

void Report::check_eq(const std::string& name, std::int64_t measured, std::int64_t expected,
                      const std::string& witness) {
  entries.push_back({name, measured == expected ? CheckStatus::pass : CheckStatus::fail,
                     static_cast<double>(measured), static_cast<double>(expected), witness});
}

void Report::skip(const std::string& name, const std::string& reason) {
  entries.push_back({name, CheckStatus::skipped, 0.0, 0.0, reason});
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json doc;
  doc["report_version"] = 1;
  doc["command"] = report.command;
  doc["generated_at"] = iso_timestamp();
  doc["config"] = {{"tolerance", report.config.tolerance},
                   {"seed", report.config.seed},
                   {"steps", report.config.steps},
                   {"grid_points", report.config.grid_points},
                   {"size", report.config.size}};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json entry = {{"name", e.name},
                            {"status", status_name(e.status)},
                            {"measured", e.measured},
                            {"threshold", e.threshold}};
    if (!e.witness.empty()) entry["witness"] = e.witness;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  if (!report.details.is_null()) doc["details"] = report.details;
  doc["overall"] = report.overall_pass() ? "PASS" : "FAIL";
  return doc;
}

void print_human(const Report& report, std::ostream& out) {
  out << "== " << report.command << " ==\n";
  for (const auto& e : report.entries) {
    char line[256];
    std::snprintf(line, sizeof(line), "[%-7s] %-58s measured=%.3e threshold=%.3e",
                  status_name(e.status), e.name.c_str(), e.measured, e.threshold);
    out << line;
    if (!e.witness.empty()) out << "  (" << e.witness << ")";
    out << '\n';
  }
  out << "overall: " << (report.overall_pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace schemalab
