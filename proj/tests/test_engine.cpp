#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "schemalab/decks.hpp"
#include "schemalab/engine.hpp"
#include "schemalab/suites.hpp"

using namespace schemalab;

namespace {

FiniteSchema cyclic3(int n_steps = 2) {
  std::vector<StateMap> maps = {StateMap::identity(3), StateMap("c", {1, 2, 0}),
                                StateMap("cc", {2, 0, 1})};
  return FiniteSchema({"s0", "s1", "s2"}, std::move(maps), true, n_steps);
}

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("identity spectacles leave an instance unchanged") {
  const auto schema = cyclic3(2);
  const auto c = schema.kinematic()[1];
  Instance<FiniteSchema> inst{1, {c, c}};
  const auto image = transform_instance(schema, constant_spectacles(schema, schema.identity_map()), inst);
  CHECK(image.start == inst.start);
  for (std::size_t k = 0; k < inst.steps.size(); ++k)
    CHECK(image.steps[k].same_table(inst.steps[k]));
}

TEST_CASE("time-independent spectacles conjugate every step") {
  const auto schema = cyclic3(2);
  const auto c = schema.kinematic()[1];
  Instance<FiniteSchema> inst{0, {c, c}};
  const auto v = schema.kinematic()[2];
  const auto image = transform_instance(schema, constant_spectacles(schema, v), inst);
  const auto expected = v.after(c).after(v.inverse());
  for (const auto& step : image.steps) CHECK(step.same_table(expected));
  CHECK(image.start == v(0));
}

TEST_CASE("transforming twice equals transforming by the pointwise composition") {
  const auto schema = cyclic3(2);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(schema, rng);
    ExtendedSimilarity<FiniteSchema> first, second, combined;
    for (int k = 0; k <= schema.n_steps(); ++k) {
      const auto& a = schema.kinematic()[static_cast<std::size_t>(rng.below(3))];
      const auto& b = schema.kinematic()[static_cast<std::size_t>(rng.below(3))];
      first.maps.push_back(a);
      second.maps.push_back(b);
      combined.maps.push_back(b.after(a));
    }
    const auto in_stages = transform_instance(schema, second, transform_instance(schema, first, inst));
    const auto at_once = transform_instance(schema, combined, inst);
    CHECK(in_stages.start == at_once.start);
    for (std::size_t k = 0; k < in_stages.steps.size(); ++k)
      CHECK(in_stages.steps[k].same_table(at_once.steps[k]));
  }
}

TEST_CASE("spectacles violating the extended property are rejected in transform") {
  // divided deck: (1, X) conjugates kinematic maps out of the kinematic set
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  const auto swap = decks::half_swap_map(4);
  ExtendedSimilarity<FiniteSchema> specs{{StateMap::identity(24), swap}};
  Instance<FiniteSchema> inst{0, {half.kinematic()[1]}};
  CHECK_THROWS_AS(transform_instance(half, specs, inst), std::runtime_error);
}

TEST_CASE("instance transport: self-transport starts from the identity") {
  const auto schema = cyclic3(2);
  const auto c = schema.kinematic()[1];
  Instance<FiniteSchema> inst{1, {c, c}};
  const auto specs = construct_gruebleen(schema, inst, inst);
  CHECK(specs.maps.front().is_identity());
  CHECK(commutation_deviation(schema, specs, inst, inst) == 0.0);
  CHECK(check_extended_similarity(schema, specs.maps).ok);
}

TEST_CASE("instance transport on the full deck commutes exactly") {
  const auto deck = decks::build_deck_schema(4, decks::DeckKind::full, 6, 3);
  Rng rng(42);
  for (int pair = 0; pair < 25; ++pair) {
    const auto a = random_instance(deck, rng);
    const auto b = random_instance(deck, rng);
    const auto specs = construct_gruebleen(deck, a, b);
    CHECK(commutation_deviation(deck, specs, a, b) == 0.0);
    CHECK(check_extended_similarity(deck, specs.maps).ok);
    const auto image = transform_instance(deck, specs, a);
    CHECK(image.start == b.start);
    for (std::size_t k = 0; k < image.steps.size(); ++k)
      CHECK(image.steps[k].same_table(b.steps[k]));
  }
}

TEST_CASE("instance transport needs transitivity") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  // pick start states in different kinematic orbits
  const auto orbits = orbit_partition(half.state_count(), half.kinematic());
  REQUIRE(orbits.size() > 1);
  Instance<FiniteSchema> a{orbits[0][0], {half.kinematic()[0]}};
  Instance<FiniteSchema> b{orbits[1][0], {half.kinematic()[0]}};
  CHECK_THROWS_AS(construct_gruebleen(half, a, b), std::runtime_error);
}

TEST_CASE("passing spectacle sequences compose pointwise into passing sequences") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  const auto candidates = decks::half_deck_candidate_similarities(4);
  Rng rng(19);
  int composed_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<StateMap> first, second;
    for (int k = 0; k <= half.n_steps(); ++k) {
      first.push_back(candidates[static_cast<std::size_t>(rng.below(candidates.size()))]);
      second.push_back(candidates[static_cast<std::size_t>(rng.below(candidates.size()))]);
    }
    if (!check_extended_similarity(half, first).ok || !check_extended_similarity(half, second).ok)
      continue;  // e.g. (1, X) rightly fails; closure is only claimed for passers
    std::vector<StateMap> product;
    for (std::size_t k = 0; k < first.size(); ++k) product.push_back(second[k].after(first[k]));
    CHECK(check_extended_similarity(half, product).ok);
    ++composed_checked;
  }
  CHECK(composed_checked > 0);
}

TEST_CASE("invariance classification") {
  const auto schema = cyclic3(1);
  std::vector<int> states(3);
  std::iota(states.begin(), states.end(), 0);
  const std::vector<StateMap> sims = schema.kinematic();

  SUBCASE("state-equality proposition flips under rotation") {
    const auto prop = state_equals_proposition(schema, 0);
    const auto report = check_invariance(schema, prop, sims, states);
    CHECK(report.classification == Invariance::not_invariant);
    REQUIRE(report.witness.has_value());
    // the witness is checkable: the proposition really flips there
    const auto& w = *report.witness;
    const int x = states[static_cast<std::size_t>(w.instance_index)];
    CHECK(prop.on_state(x) == w.value_before);
    CHECK(prop.on_state(sims[static_cast<std::size_t>(w.similarity_index)](x)) == w.value_after);
  }

  SUBCASE("always-true proposition is trivially true") {
    Proposition<FiniteSchema> prop;
    prop.name = "always";
    prop.arity = Arity::state;
    prop.on_state = [](const int&) { return true; };
    CHECK(check_invariance(schema, prop, sims, states).classification ==
          Invariance::invariant_trivial_true);
  }

  SUBCASE("never-true proposition is trivially not true") {
    Proposition<FiniteSchema> prop;
    prop.name = "never";
    prop.arity = Arity::state;
    prop.on_state = [](const int&) { return false; };
    CHECK(check_invariance(schema, prop, sims, states).classification ==
          Invariance::invariant_trivial_not_true);
  }

  SUBCASE("identity-only spectacles classify every proposition as invariant") {
    Rng rng(11);
    const std::vector<StateMap> trivial_group = {schema.identity_map()};
    for (int trial = 0; trial < 20; ++trial) {
      // arbitrary truth table over the three states
      const bool t0 = rng.below(2) == 0;
      const bool t1 = rng.below(2) == 0;
      const bool t2 = rng.below(2) == 0;
      Proposition<FiniteSchema> prop;
      prop.name = "arbitrary";
      prop.arity = Arity::state;
      prop.on_state = [=](const int& x) { return x == 0 ? t0 : (x == 1 ? t1 : t2); };
      const auto report = check_invariance(schema, prop, trivial_group, states);
      CHECK(report.classification != Invariance::not_invariant);
    }
  }
}

TEST_CASE("fixed-point proposition is invariant under time-independent spectacles") {
  const auto schema = cyclic3(1);
  const auto prop = fixed_point_proposition(schema);
  std::vector<ExtendedSimilarity<FiniteSchema>> group;
  for (const auto& v : schema.kinematic()) group.push_back(constant_spectacles(schema, v));
  std::vector<Instance<FiniteSchema>> instances;
  for (int x = 0; x < 3; ++x)
    for (const auto& d : schema.kinematic()) instances.push_back({x, {d}});
  const auto report = check_invariance(schema, prop, group, instances);
  CHECK(report.classification == Invariance::invariant_nontrivial);

  // identity dynamics fix every start state
  Instance<FiniteSchema> still{2, {schema.identity_map()}};
  CHECK(prop.on_instance(still));
  Instance<FiniteSchema> moving{2, {schema.kinematic()[1]}};
  CHECK_FALSE(prop.on_instance(moving));
}

TEST_CASE("triviality check on full permutation schemata") {
  for (int n = 2; n <= 5; ++n) {
    const auto schema = suites::full_permutation_schema(n);
    TheoremOptions opts;
    opts.instance_pairs = 10;
    const auto rep = verify_triviality_theorem(schema, opts);
    CHECK(rep.preconditions_met);
    CHECK(rep.similarity_set_is_maximal);
    CHECK(rep.only_trivial_invariants);
    CHECK(rep.instance_pairs_transformable);
    CHECK(rep.confirmed);
    // oracle: invariant subsets are unions of orbits, and a transitive group
    // has a single orbit, so exactly the empty and the full subset survive
    const auto group = maximal_similarity_group(schema);
    const auto orbits = orbit_partition(schema.state_count(), group);
    CHECK(rep.invariant_subset_count == (1LL << orbits.size()));
    CHECK(rep.invariant_subset_count == 2);
  }
}

TEST_CASE("triviality check on a single-state schema is vacuous") {
  const FiniteSchema single({"only"}, {StateMap::identity(1)}, true, 1);
  const auto rep = verify_triviality_theorem(single);
  CHECK(rep.preconditions_met);
  CHECK(rep.invariant_subset_count == 2);
  CHECK(rep.confirmed);
}

TEST_CASE("triviality check gates on the preconditions for the divided deck") {
  const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
  TheoremOptions opts;
  opts.subset_guard = 24;
  opts.extra_similarities = {decks::half_swap_map(4)};
  const auto rep = verify_triviality_theorem(half, opts);
  CHECK_FALSE(rep.preconditions_met);
  CHECK(rep.reversible);
  CHECK_FALSE(rep.transitive);
  REQUIRE(rep.nontrivial_invariant_subset.has_value());
  const auto& subset = *rep.nontrivial_invariant_subset;
  CHECK(!subset.empty());
  CHECK(subset.size() < static_cast<std::size_t>(half.state_count()));
  // the exhibited subset really is invariant under the candidate group
  const auto group = group_closure(decks::half_deck_candidate_similarities(4));
  for (const auto& v : group) {
    for (int x : subset) {
      const int y = v(x);
      CHECK(std::find(subset.begin(), subset.end(), y) != subset.end());
    }
  }
  // oracle: the candidate group has three orbits on the 24 arrangements
  const auto orbits = orbit_partition(half.state_count(), group);
  CHECK(orbits.size() == 3);
  CHECK(rep.invariant_subset_count == (1LL << orbits.size()));
}

TEST_CASE("theorem options guard the state count") {
  const auto deck = decks::build_deck_schema(4, decks::DeckKind::full, 6);
  TheoremOptions opts;  // default subset guard is 12
  CHECK_THROWS_AS(verify_triviality_theorem(deck, opts), std::invalid_argument);
}

TEST_SUITE_END();
