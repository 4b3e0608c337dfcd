#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "schemalab/decks.hpp"
#include "schemalab/report.hpp"
#include "schemalab/schema_io.hpp"
#include "schemalab/shift.hpp"
#include "schemalab/suites.hpp"

using namespace schemalab;
namespace io = schemalab::io;

TEST_SUITE_BEGIN("io");

TEST_CASE("schema documents round-trip byte-identically") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  const auto doc = io::schema_to_json(half);
  const auto reloaded = io::schema_from_json(doc);
  CHECK(io::canonical_dump(io::schema_to_json(reloaded)) == io::canonical_dump(doc));
  CHECK(reloaded.state_count() == half.state_count());
  CHECK(reloaded.kinematic_size() == half.kinematic_size());
  CHECK(reloaded.reversible() == half.reversible());
  for (int i = 0; i < half.kinematic_size(); ++i)
    CHECK(reloaded.kinematic()[static_cast<std::size_t>(i)].same_table(
        half.kinematic()[static_cast<std::size_t>(i)]));
}

TEST_CASE("file round trip") {
  const std::string path = "schema_roundtrip_test.json";
  const auto cyclic = FiniteSchema(
      {"a", "b", "c"},
      {StateMap::identity(3), StateMap("c", {1, 2, 0}), StateMap("cc", {2, 0, 1})}, true, 2);
  io::save_schema_file(cyclic, path);
  const auto reloaded = io::load_schema_file(path);
  CHECK(reloaded.kinematic_size() == 3);
  CHECK(reloaded.n_steps() == 2);
  // re-serialization is byte-equal
  std::ifstream in(path);
  std::string first((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  io::save_schema_file(reloaded, path);
  std::ifstream in2(path);
  std::string second((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
  CHECK(first == second);
  std::remove(path.c_str());
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(io::schema_from_json(io::json::array()), std::invalid_argument);
  CHECK_THROWS_AS(io::schema_from_json(io::json{{"states", {"a", "b"}}}), std::invalid_argument);
  // out-of-range permutation entry
  io::json doc = {{"states", {"a", "b"}},
                  {"maps", io::json::array({io::json{{"name", "bad"}, {"perm", {0, 5}}}})},
                  {"reversible", false},
                  {"n_steps", 1}};
  CHECK_THROWS_AS(io::schema_from_json(doc), std::invalid_argument);
  // reversibility flag inconsistent with the maps
  io::json open = {{"states", {"a", "b", "c"}},
                   {"maps", io::json::array({io::json{{"name", "c"}, {"perm", {1, 2, 0}}}})},
                   {"reversible", true},
                   {"n_steps", 1}};
  CHECK_THROWS_AS(io::schema_from_json(open), std::invalid_argument);
  CHECK_THROWS_AS(io::load_schema_file("does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
  RunConfig cfg;
  cfg.seed = 99;
  auto a = suites::demo_measurement(cfg);
  auto b = suites::demo_measurement(cfg);
  auto ja = report_to_json(a);
  auto jb = report_to_json(b);
  ja.erase("generated_at");
  jb.erase("generated_at");
  CHECK(io::canonical_dump(ja) == io::canonical_dump(jb));
  CHECK(ja.at("report_version").get<int>() == 1);
  CHECK(ja.at("overall").get<std::string>() == "PASS");
}

TEST_CASE("overall fails when any entry fails and skips are visible") {
  Report r;
  r.command = "synthetic";
  r.check_le("fine", 0.5, 1.0);
  CHECK(r.overall_pass());
  r.skip("not run here", "requires nothing");
  CHECK_FALSE(r.overall_pass());
  Report f;
  f.command = "synthetic";
  f.check_le("too big", 2.0, 1.0);
  CHECK_FALSE(f.overall_pass());
  const auto doc = report_to_json(f);
  CHECK(doc.at("overall").get<std::string>() == "FAIL");
}

TEST_CASE("builtin proposition factory") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  const auto prop = io::builtin_proposition(half, "MARKED_SAME_HALF",
                                            io::json{{"cards", 4}, {"marks", {0, 1}}});
  CHECK(prop.on_state(decks::state_of_arrangement({0, 1, 2, 3})));

  const auto fixed = io::builtin_proposition(half, "FIXED_POINT", io::json::object());
  CHECK(fixed.arity == Arity::instance);

  const auto eq = io::builtin_proposition(half, "STATE_EQUALS", io::json{{"state", "01|23"}});
  CHECK(eq.on_state(0));
  CHECK_FALSE(eq.on_state(1));

  CHECK_THROWS_AS(io::builtin_proposition(half, "NO_SUCH_KIND", io::json::object()),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::builtin_proposition(half, "STATE_EQUALS", io::json{{"state", "zz"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      io::builtin_proposition(half, "IS_CONSTANT", io::json{{"period", 3}}),
      std::invalid_argument);

  const auto word_schema = schemalab::shift::build_shift_schema(3);
  const auto constant = io::builtin_proposition(word_schema, "IS_CONSTANT", io::json{{"period", 3}});
  CHECK(constant.on_state(schemalab::shift::state_of_word("000")));
  CHECK_FALSE(constant.on_state(schemalab::shift::state_of_word("010")));
}

TEST_CASE("similarity-group suite: exhaustive and candidate-restricted modes") {
  RunConfig cfg;
  SUBCASE("exhaustive search on a small abstract schema") {
    const auto schema = suites::full_permutation_schema(3);
    const auto report = suites::maximal_group_suite(schema, {}, 0, cfg);
    CHECK(report.overall_pass());
  }
  SUBCASE("candidate-restricted run on the divided deck finds the order-8 group") {
    const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
    const auto report =
        suites::maximal_group_suite(half, {decks::half_swap_map(4)}, 5, cfg);
    CHECK(report.overall_pass());
    bool saw_order8 = false;
    for (const auto& entry : report.entries)
      saw_order8 = saw_order8 || entry.name.find("order 8") != std::string::npos;
    CHECK(saw_order8);
  }
}

TEST_CASE("invariance and theorem reports serialize") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  TheoremOptions opts;
  opts.subset_guard = 24;
  opts.extra_similarities = {decks::half_swap_map(4)};
  const auto doc = io::theorem_report_to_json(verify_triviality_theorem(half, opts));
  CHECK(doc.at("preconditions_met").get<bool>() == false);
  CHECK(doc.contains("nontrivial_invariant_subset"));

  InvarianceReport inv;
  inv.proposition = "demo";
  inv.classification = Invariance::not_invariant;
  inv.witness = InvarianceWitness{1, 2, true, false};
  const auto idoc = io::invariance_report_to_json(inv);
  CHECK(idoc.at("classification").get<std::string>() == "NOT_INVARIANT");
  CHECK(idoc.at("witness").at("instance_index").get<int>() == 1);

  const auto swap = decks::half_swap_map(4);
  const auto vdoc = io::verdict_to_json(
      check_extended_similarity(half, {StateMap::identity(half.state_count()), swap}));
  CHECK(vdoc.at("ok").get<bool>() == false);
  CHECK(vdoc.contains("witness"));
  CHECK(vdoc.at("failed_interval").get<int>() == 0);
}

TEST_SUITE_END();
