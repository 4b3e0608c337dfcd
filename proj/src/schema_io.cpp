#include "schemalab/schema_io.hpp"

#include <algorithm>
#include <fstream>

#include "schemalab/decks.hpp"
#include "schemalab/shift.hpp"

namespace schemalab::io {

json schema_to_json(const FiniteSchema& schema) {
  json doc;
  doc["states"] = schema.state_labels();
  json maps = json::array();
  for (const auto& m : schema.kinematic()) {
    maps.push_back(json{{"name", m.name()}, {"perm", m.table()}});
  }
  doc["maps"] = std::move(maps);
  doc["reversible"] = schema.reversible();
  doc["n_steps"] = schema.n_steps();
  return doc;
}

FiniteSchema schema_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("schema document must be a JSON object");
  for (const char* field : {"states", "maps", "reversible", "n_steps"})
    if (!doc.contains(field))
      throw std::invalid_argument(std::string("schema document lacks the '") + field + "' field");
  std::vector<std::string> states = doc.at("states").get<std::vector<std::string>>();
  std::vector<StateMap> maps;
  for (const auto& entry : doc.at("maps")) {
    maps.emplace_back(entry.at("name").get<std::string>(),
                      entry.at("perm").get<std::vector<int>>());
    if (maps.back().size() != static_cast<int>(states.size()))
      throw std::invalid_argument("map '" + maps.back().name() +
                                  "' is not total on the state set");
  }
  return FiniteSchema(std::move(states), std::move(maps), doc.at("reversible").get<bool>(),
                      doc.at("n_steps").get<int>());
}

FiniteSchema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open schema file '" + path + "'");
  json doc = json::parse(in);  // throws json::parse_error on malformed input
  return schema_from_json(doc);
}

void save_schema_file(const FiniteSchema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write schema file '" + path + "'");
  out << canonical_dump(schema_to_json(schema)) << '\n';
}

std::string canonical_dump(const json& doc) { return doc.dump(2); }

std::vector<StateMap> maps_from_json(const json& doc, int state_count) {
  std::vector<StateMap> maps;
  if (!doc.contains("maps")) throw std::invalid_argument("document lacks the 'maps' field");
  for (const auto& entry : doc.at("maps")) {
    maps.emplace_back(entry.at("name").get<std::string>(),
                      entry.at("perm").get<std::vector<int>>());
    if (maps.back().size() != state_count)
      throw std::invalid_argument("map '" + maps.back().name() +
                                  "' is not total on the state set");
  }
  return maps;
}

json verdict_to_json(const SimilarityVerdict& verdict) {
  json doc;
  doc["ok"] = verdict.ok;
  doc["sampled"] = verdict.sampled;
  if (!verdict.witness.empty()) doc["witness"] = verdict.witness;
  if (verdict.failed_interval) doc["failed_interval"] = *verdict.failed_interval;
  return doc;
}

json invariance_report_to_json(const InvarianceReport& report) {
  json doc;
  doc["proposition"] = report.proposition;
  doc["classification"] = to_string(report.classification);
  doc["sampled"] = report.sampled;
  if (report.seed) doc["seed"] = *report.seed;
  if (report.witness) {
    doc["witness"] = json{{"instance_index", report.witness->instance_index},
                          {"similarity_index", report.witness->similarity_index},
                          {"value_before", report.witness->value_before},
                          {"value_after", report.witness->value_after}};
  }
  return doc;
}

json complex_vector_to_json(const quantum::Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

json complex_matrix_to_json(const quantum::Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

json phase_point_to_json(const flows::PhasePoint& z) {
  json out;
  out["q"] = std::vector<double>(z.q.data(), z.q.data() + z.q.size());
  out["p"] = std::vector<double>(z.p.data(), z.p.data() + z.p.size());
  return out;
}

Proposition<FiniteSchema> builtin_proposition(const FiniteSchema& schema, const std::string& kind,
                                              const json& params) {
  if (kind == "FIXED_POINT") return fixed_point_proposition(schema);
  if (kind == "STATE_EQUALS") {
    const std::string label = params.at("state").get<std::string>();
    const auto& labels = schema.state_labels();
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
      throw std::invalid_argument("no state labeled '" + label + "' in the schema");
    return state_equals_proposition(schema, static_cast<int>(it - labels.begin()),
                                    "state-equals-" + label);
  }
  if (kind == "MARKED_SAME_HALF") {
    const int cards = params.at("cards").get<int>();
    const auto marks = params.at("marks").get<std::vector<int>>();
    long long arrangements = 1;
    for (int i = 2; i <= cards; ++i) arrangements *= i;
    if (arrangements != schema.state_count())
      throw std::invalid_argument("card count inconsistent with the schema's state count");
    return decks::marked_same_half(cards, marks);
  }
  if (kind == "IS_CONSTANT") {
    const int period = params.at("period").get<int>();
    if ((1 << period) != schema.state_count())
      throw std::invalid_argument("period inconsistent with the schema's state count");
    return shift::constant_word_proposition(period);
  }
  throw std::invalid_argument("unknown proposition kind '" + kind + "'");
}

json theorem_report_to_json(const TheoremReport& report) {
  json doc;
  doc["reversible"] = report.reversible;
  doc["transitive"] = report.transitive;
  doc["preconditions_met"] = report.preconditions_met;
  doc["similarity_basis"] = report.similarity_basis;
  doc["similarity_set_is_maximal"] = report.similarity_set_is_maximal;
  doc["similarity_count"] = report.similarity_count;
  doc["invariant_subset_count"] = report.invariant_subset_count;
  doc["only_trivial_invariants"] = report.only_trivial_invariants;
  if (report.nontrivial_invariant_subset)
    doc["nontrivial_invariant_subset"] = *report.nontrivial_invariant_subset;
  doc["instance_pairs_checked"] = report.instance_pairs_checked;
  doc["instance_pairs_transformable"] = report.instance_pairs_transformable;
  doc["seed"] = report.seed;
  doc["confirmed"] = report.confirmed;
  return doc;
}

}  // namespace schemalab::io
