#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schemalab/report.hpp"
#include "schemalab/schema.hpp"

namespace schemalab::suites {

Report demo_decks(const RunConfig& cfg);
Report demo_shift(const RunConfig& cfg);
Report demo_quantum_pictures(const RunConfig& cfg);
Report demo_measurement(const RunConfig& cfg);
Report demo_hamiltonian(const RunConfig& cfg);
Report demo_gruebleen(const RunConfig& cfg);

/// Full-permutation schemata of sizes 2..cfg.size plus the divided-deck
/// counterpoint whose failed preconditions leave a nontrivial invariant
/// statement standing.
Report verify_theorem(const RunConfig& cfg);

/// Everything above in one run.
Report verify_all(const RunConfig& cfg);

/// Similarity-group search for a schema loaded from disk.  Exhaustive over
/// all |S|! bijections when |S| is small enough; otherwise tests and closes a
/// candidate list (kinematic maps, supplied candidates, seeded random
/// bijections) and labels the result candidate-restricted.
Report maximal_group_suite(const FiniteSchema& schema,
                           const std::vector<StateMap>& supplied_candidates, int random_candidates,
                           const RunConfig& cfg);

/// Abstract schema with n states whose kinematic set is every permutation.
FiniteSchema full_permutation_schema(int states, int n_steps = 1);

}  // namespace schemalab::suites
