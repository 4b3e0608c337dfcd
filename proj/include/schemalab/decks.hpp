#pragma once

#include <string>
#include <vector>

#include "schemalab/engine.hpp"
#include "schemalab/schema.hpp"

namespace schemalab::decks {

enum class DeckKind { full, half };

/// All n! card arrangements as states.  FULL: every position shuffle is
/// kinematic.  HALF: only shuffles that keep each half of the positions to
/// itself, so a card dealt into one half stays there.  Both are reversible.
/// Exhaustive construction is guarded (n! states and up to n! maps).
FiniteSchema build_deck_schema(int cards, DeckKind kind, int max_cards = 5, int n_steps = 1);

/// The arrangement stored at a state index (cards listed by position),
/// and its inverse.  Arrangements are enumerated in lexicographic order.
std::vector<int> arrangement_of_state(int cards, int state);
int state_of_arrangement(const std::vector<int>& arrangement);
std::string arrangement_label(const std::vector<int>& arrangement, bool show_split);

/// The half-exchange X on the n!-state space: arrangement (a|b) becomes
/// (b|a).  Not a half-deck kinematic map, but conjugation by it preserves
/// the half-deck kinematic set.
StateMap half_swap_map(int cards);

/// State proposition: every marked card sits in a single half.
Proposition<FiniteSchema> marked_same_half(int cards, std::vector<int> marks);

/// The half-deck kinematic maps joined with their X-composed partners --
/// the candidate-restricted similarity set used when the full bijection
/// search over (n!)! candidates is out of reach.
std::vector<StateMap> half_deck_candidate_similarities(int cards);

}  // namespace schemalab::decks
