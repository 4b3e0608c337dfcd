#pragma once

#include <string>

#include <json.hpp>

#include "schemalab/engine.hpp"
#include "schemalab/flows.hpp"
#include "schemalab/quantum.hpp"
#include "schemalab/schema.hpp"

namespace schemalab::io {

using json = nlohmann::json;

/// Document form of a finite schema:
///   {"states": [...], "maps": [{"name": str, "perm": [int, ...]}, ...],
///    "reversible": bool, "n_steps": int}
/// with perm[i] the image of state i.
json schema_to_json(const FiniteSchema& schema);
FiniteSchema schema_from_json(const json& doc);

FiniteSchema load_schema_file(const std::string& path);
void save_schema_file(const FiniteSchema& schema, const std::string& path);

/// Fixed serialization used everywhere a report or schema is written, so a
/// reload-and-rewrite round trip is byte-identical.
std::string canonical_dump(const json& doc);

/// Named permutation list {"maps": [{"name", "perm"}...]} used for candidate
/// files.
std::vector<StateMap> maps_from_json(const json& doc, int state_count);

json verdict_to_json(const SimilarityVerdict& verdict);
json invariance_report_to_json(const InvarianceReport& report);
json theorem_report_to_json(const TheoremReport& report);

/// Complex vectors and matrices serialize as [re, im] pairs.
json complex_vector_to_json(const quantum::Vector& v);
json complex_matrix_to_json(const quantum::Matrix& m);
json phase_point_to_json(const flows::PhasePoint& z);

/// Named proposition factory for finite schemata.  Kinds: FIXED_POINT,
/// STATE_EQUALS {"state": label}, MARKED_SAME_HALF {"cards": n, "marks": [..]},
/// IS_CONSTANT {"period": p}.  Unknown kinds and parameters inconsistent with
/// the schema are rejected.  (The entangled-cut proposition lives with the
/// unitary schema; it has no finite counterpart.)
Proposition<FiniteSchema> builtin_proposition(const FiniteSchema& schema, const std::string& kind,
                                              const json& params);

}  // namespace schemalab::io
