// Command-line front door: run the named demo or verification suite, print a
// human summary to stderr and the JSON report to stdout (or --json <path>).
// Exit codes: 0 all checks passed, 1 some check failed, 2 usage/input error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "schemalab/report.hpp"
#include "schemalab/schema_io.hpp"
#include "schemalab/suites.hpp"

namespace {

int emit(const schemalab::Report& report, const std::string& json_path) {
  schemalab::print_human(report, std::cerr);
  const auto doc = schemalab::report_to_json(report);
  if (json_path.empty()) {
    std::cout << schemalab::io::canonical_dump(doc) << std::endl;
  } else {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write report to '" << json_path << "'\n";
      return 2;
    }
    out << schemalab::io::canonical_dump(doc) << '\n';
  }
  return report.overall_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theory-schema verification laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // common flags may follow the subcommand

  schemalab::RunConfig cfg;
  std::string json_path;
  app.add_option("--tolerance", cfg.tolerance, "numeric tolerance for metric checks");
  app.add_option("--seed", cfg.seed, "seed for every sampled routine");
  app.add_option("--steps", cfg.steps, "integrator step budget");
  app.add_option("--grid-points", cfg.grid_points, "unitary schedule intervals");
  app.add_option("--size", cfg.size, "desk-scale size knob (cards, state counts)");
  app.add_option("--json", json_path, "write the JSON report to this path instead of stdout");

  auto* demo = app.add_subcommand("demo", "run a named demonstration");
  std::string demo_name;
  demo->add_option("name", demo_name, "decks|shift|quantum-pictures|measurement|hamiltonian|gruebleen")
      ->required();

  auto* verify = app.add_subcommand("verify", "run a verification battery");
  std::string verify_name;
  verify->add_option("name", verify_name, "theorem|all")->required();

  auto* maximal = app.add_subcommand("maximal-group", "similarity-group search for a schema file");
  std::string schema_path;
  std::string candidates_path;
  int random_candidates = 0;
  maximal->add_option("--schema", schema_path, "schema JSON file")->required();
  maximal->add_option("--candidates", candidates_path,
                      "JSON file with extra candidate maps ({\"maps\": [{name, perm}...]})");
  maximal->add_option("--random-candidates", random_candidates,
                      "number of seeded random bijections to add to the candidate list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (demo->parsed()) {
      if (demo_name == "decks") return emit(schemalab::suites::demo_decks(cfg), json_path);
      if (demo_name == "shift") return emit(schemalab::suites::demo_shift(cfg), json_path);
      if (demo_name == "quantum-pictures")
        return emit(schemalab::suites::demo_quantum_pictures(cfg), json_path);
      if (demo_name == "measurement")
        return emit(schemalab::suites::demo_measurement(cfg), json_path);
      if (demo_name == "hamiltonian")
        return emit(schemalab::suites::demo_hamiltonian(cfg), json_path);
      if (demo_name == "gruebleen")
        return emit(schemalab::suites::demo_gruebleen(cfg), json_path);
      std::cerr << "error: unknown demo '" << demo_name << "'\n";
      return 2;
    }
    if (verify->parsed()) {
      if (verify_name == "theorem") {
        schemalab::RunConfig theorem_cfg = cfg;
        if (app.count("--size") == 0) theorem_cfg.size = 5;  // default covers sizes 2..5
        return emit(schemalab::suites::verify_theorem(theorem_cfg), json_path);
      }
      if (verify_name == "all") return emit(schemalab::suites::verify_all(cfg), json_path);
      std::cerr << "error: unknown verification battery '" << verify_name << "'\n";
      return 2;
    }
    if (maximal->parsed()) {
      const auto schema = schemalab::io::load_schema_file(schema_path);
      std::vector<schemalab::StateMap> supplied;
      if (!candidates_path.empty()) {
        std::ifstream in(candidates_path);
        if (!in) {
          std::cerr << "error: cannot open candidates file '" << candidates_path << "'\n";
          return 2;
        }
        supplied = schemalab::io::maps_from_json(schemalab::io::json::parse(in),
                                                 schema.state_count());
      }
      return emit(schemalab::suites::maximal_group_suite(schema, supplied, random_candidates, cfg),
                  json_path);
    }
  } catch (const schemalab::io::json::parse_error& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
