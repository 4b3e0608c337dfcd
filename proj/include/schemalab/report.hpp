#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace schemalab {

struct RunConfig {
  double tolerance = 1e-10;
  std::uint64_t seed = 1234;
  int steps = 10000;       // integrator step budget
  int grid_points = 100;   // unitary schedule intervals
  int size = 4;            // desk-scale size knob (cards, theorem state counts)
};

enum class CheckStatus { pass, fail, skipped };

struct CheckEntry {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  double measured = 0.0;
  double threshold = 0.0;
  std::string witness;  // failure detail or extra context
};

/// One verification run: configuration echo plus one entry per check.
/// Overall PASS requires every entry to be PASS.
struct Report {
  std::string command;
  RunConfig config;
  std::vector<CheckEntry> entries;
  nlohmann::json details;  // module-specific payload (states, spectra, endpoints)

  bool overall_pass() const;

  // measured <= threshold
  void check_le(const std::string& name, double measured, double threshold,
                const std::string& witness = "");
  // measured inside [lo, hi]
  void check_between(const std::string& name, double measured, double lo, double hi,
                     const std::string& witness = "");
  void check_true(const std::string& name, bool condition, const std::string& witness = "");
  void check_eq(const std::string& name, std::int64_t measured, std::int64_t expected,
                const std::string& witness = "");
  void skip(const std::string& name, const std::string& reason);
};

nlohmann::json report_to_json(const Report& report);
void print_human(const Report& report, std::ostream& out);

}  // namespace schemalab
