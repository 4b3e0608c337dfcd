#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schemalab/engine.hpp"
#include "schemalab/schema.hpp"

namespace schemalab::shift {

// Fixed-period stand-in for the bi-infinite binary shift: states are all 2^p
// words of period p, read as one period of the repeating sequence.  Words are
// stored raw (no rotation canonicalization) so the elementary shift acts
// nontrivially; equality is word equality.

/// States: every binary word of length p.  Kinematic set: the p rotations
/// (the elementary shift has order p on period-p words).  Reversible.
FiniteSchema build_shift_schema(int period, int n_steps = 1);

std::string word_of_state(int period, int state);
int state_of_word(const std::string& word);

/// Left rotation by `amount` places: position i reads position i+amount.
StateMap rotation_map(int period, int amount);

/// Bitwise complement of the word.
StateMap complement_map(int period);

/// Index reversal anchored at stored position 0: position i reads position
/// (-i) mod p of the unrolled sequence.
StateMap reflection_map(int period);

/// State proposition: all characters of the word agree.
Proposition<FiniteSchema> constant_word_proposition(int period);

struct ExclusionWitness {
  std::string constant_word;  // the constant input the candidate breaks
  std::string image_word;     // its non-constant image
  int shift_amount = 0;       // rotation that moves the image off itself
};

/// Shift-criterion screen: a candidate that sends a constant word to a
/// non-constant one cannot commute with the rotations up to relabeling, so it
/// is excluded from the similarity group.  Returns the witness, or nullopt
/// when the criterion does not apply (which is not a membership proof).
std::optional<ExclusionWitness> certify_exclusion(const StateMap& candidate, int period);

/// Group generated by the rotations, the complement and the reflection.
std::vector<StateMap> structural_group(int period);

}  // namespace schemalab::shift
