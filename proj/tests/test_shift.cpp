#include <doctest.h>

#include <numeric>
#include <string>

#include "schemalab/engine.hpp"
#include "schemalab/shift.hpp"

using namespace schemalab;
using namespace schemalab::shift;

namespace {

// oracle: act on the unrolled periodic sequence by index relabeling and read
// one period back, independent of the table construction in the module
std::string unrolled_apply(const std::string& word, int (*source_index)(int, int)) {
  const int p = static_cast<int>(word.size());
  std::string out(word.size(), '?');
  for (int i = 0; i < p; ++i) {
    int j = source_index(i, p);
    j = ((j % p) + p) % p;  // periodic extension
    out[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("shift");

TEST_CASE("word encoding round-trips") {
  for (int s = 0; s < 16; ++s) CHECK(state_of_word(word_of_state(4, s)) == s);
  CHECK(word_of_state(4, 0b0011) == "0011");
  CHECK_THROWS_AS(state_of_word("012"), std::invalid_argument);
}

TEST_CASE("schema construction counts") {
  const auto p1 = build_shift_schema(1);
  CHECK(p1.state_count() == 2);
  CHECK(p1.kinematic_size() == 1);
  CHECK(p1.kinematic()[0].is_identity());

  const auto p4 = build_shift_schema(4);
  CHECK(p4.state_count() == 16);
  CHECK(p4.kinematic_size() == 4);
  CHECK_THROWS_AS(build_shift_schema(0), std::invalid_argument);
  CHECK_THROWS_AS(build_shift_schema(17), std::invalid_argument);
}

TEST_CASE("elementary shift reads the next character") {
  const auto sigma = rotation_map(4, 1);
  CHECK(word_of_state(4, sigma(state_of_word("0011"))) == "0110");
  // oracle comparison on every period-4 word
  for (int s = 0; s < 16; ++s) {
    const auto expected = unrolled_apply(word_of_state(4, s), [](int i, int) { return i + 1; });
    CHECK(word_of_state(4, sigma(s)) == expected);
  }
  // p rotations close into the identity
  auto acc = sigma;
  for (int k = 1; k < 4; ++k) acc = sigma.after(acc);
  CHECK(acc.is_identity());
}

TEST_CASE("complement and reflection act as defined") {
  CHECK(word_of_state(4, complement_map(4)(state_of_word("0000"))) == "1111");
  CHECK(word_of_state(4, complement_map(4)(state_of_word("0110"))) == "1001");

  const auto rho = reflection_map(4);
  // oracle: (reflected)_i = x_{-i} on the unrolled sequence, then one period
  for (int s = 0; s < 16; ++s) {
    const auto expected = unrolled_apply(word_of_state(4, s), [](int i, int) { return -i; });
    CHECK(word_of_state(4, rho(s)) == expected);
  }
  CHECK(word_of_state(4, rho(state_of_word("0011"))) == "0110");
  CHECK(rho.after(rho).is_identity());
}

TEST_CASE("structural maps pass the similarity check for periods up to 8") {
  for (int p = 2; p <= 8; ++p) {
    const auto schema = build_shift_schema(p);
    CHECK(check_similarity(schema, rotation_map(p, 1)).ok);
    CHECK(check_similarity(schema, complement_map(p)).ok);
    CHECK(check_similarity(schema, reflection_map(p)).ok);
  }
}

TEST_CASE("commutation identities as table equalities") {
  for (int p : {2, 3, 4, 5}) {
    const auto sigma = rotation_map(p, 1);
    const auto beta = complement_map(p);
    const auto rho = reflection_map(p);
    CHECK(sigma.after(beta).same_table(beta.after(sigma)));
    CHECK(sigma.after(rho).same_table(rho.after(rotation_map(p, -1))));
  }
}

TEST_CASE("rotations are not transitive for periods above one") {
  for (int p : {2, 3, 4}) CHECK_FALSE(is_transitive(build_shift_schema(p)));
  // constant words sit in singleton orbits
  const auto orbits = orbit_partition(16, build_shift_schema(4).kinematic());
  int singletons = 0;
  for (const auto& orbit : orbits) singletons += orbit.size() == 1 ? 1 : 0;
  CHECK(singletons == 2);
}

TEST_CASE("constant-word proposition is invariant and nontrivial") {
  const int p = 4;
  const auto schema = build_shift_schema(p);
  std::vector<int> states(16);
  std::iota(states.begin(), states.end(), 0);
  const auto report =
      check_invariance(schema, constant_word_proposition(p), structural_group(p), states);
  CHECK(report.classification == Invariance::invariant_nontrivial);
}

TEST_CASE("exclusion screen") {
  const int p = 4;
  SUBCASE("a transposition touching a constant word is excluded with a witness") {
    std::vector<int> table(16);
    std::iota(table.begin(), table.end(), 0);
    std::swap(table[state_of_word("0000")], table[state_of_word("0001")]);
    const StateMap candidate("swap", table);
    const auto witness = certify_exclusion(candidate, p);
    REQUIRE(witness.has_value());
    CHECK(witness->constant_word == "0000");
    CHECK(witness->image_word == "0001");
    CHECK(witness->shift_amount == 1);
    // the witness is checkable: rotating the image really moves it
    const auto sigma = rotation_map(p, witness->shift_amount);
    CHECK(word_of_state(4, sigma(state_of_word(witness->image_word))) != witness->image_word);
  }
  SUBCASE("complement and reflection pass the screen") {
    CHECK_FALSE(certify_exclusion(complement_map(p), p).has_value());
    CHECK_FALSE(certify_exclusion(reflection_map(p), p).has_value());
  }
}

TEST_CASE("exclusion and the similarity check never disagree") {
  Rng rng(2024);
  int excluded = 0;
  for (int p = 2; p <= 4; ++p) {
    const auto schema = build_shift_schema(p);
    std::vector<int> table(static_cast<std::size_t>(1 << p));
    std::iota(table.begin(), table.end(), 0);
    for (int trial = 0; trial < 60; ++trial) {
      rng.shuffle(table);
      const StateMap candidate("sample", table);
      if (certify_exclusion(candidate, p)) {
        ++excluded;
        CHECK_FALSE(check_similarity(schema, candidate).ok);
      }
    }
  }
  CHECK(excluded > 0);
}

TEST_CASE("structural group closure is dihedral-with-complement") {
  // rotations (p) x reflection (2) x complement (2)
  for (int p : {3, 4}) CHECK(structural_group(p).size() == 4 * p);
}

TEST_SUITE_END();
