#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace schemalab {

/// Total map on {0..n-1} given by an assignment table.  Bijective tables are
/// permutations; non-bijective tables are allowed so that defective candidate
/// "spectacles" can be checked and rejected with a witness.  The name is a
/// label only and never enters equality.
class StateMap {
 public:
  StateMap() = default;
  StateMap(std::string name, std::vector<int> table);

  static StateMap identity(int n, std::string name = "1");

  int size() const { return static_cast<int>(table_.size()); }
  int operator()(int state) const { return table_[static_cast<std::size_t>(state)]; }
  const std::vector<int>& table() const { return table_; }
  const std::string& name() const { return name_; }

  bool is_bijection() const;
  // Human-readable reason the table is not a bijection, empty when it is one.
  std::optional<std::string> bijection_failure() const;

  StateMap inverse() const;  // requires is_bijection()

  // Composition (*this) after g: result(i) = (*this)(g(i)).
  StateMap after(const StateMap& g) const;

  bool same_table(const StateMap& other) const { return table_ == other.table_; }
  bool is_identity() const;

  std::string table_string() const;  // compact digits form, e.g. "0132"

 private:
  std::string name_;
  std::vector<int> table_;
};

/// Finite flavor of a theory schema: an explicit ordered state list, an
/// explicit list of kinematic maps over those states, exact equality
/// everywhere.  When the schema is flagged reversible, construction enforces
/// that the kinematic set is a group (closed under composition, contains the
/// identity and all inverses).
class FiniteSchema {
 public:
  FiniteSchema(std::vector<std::string> state_labels, std::vector<StateMap> kinematic,
               bool reversible, int n_steps);

  int state_count() const { return static_cast<int>(state_labels_.size()); }
  const std::vector<std::string>& state_labels() const { return state_labels_; }
  const std::vector<StateMap>& kinematic() const { return kinematic_; }
  int kinematic_size() const { return static_cast<int>(kinematic_.size()); }

  bool in_kinematic(const StateMap& m) const { return kinematic_index(m).has_value(); }
  std::optional<int> kinematic_index(const StateMap& m) const;

  // --- model surface used by the generic engine ---
  using State = int;
  using Map = StateMap;

  State apply(const Map& d, State x) const;
  Map compose(const Map& a, const Map& b) const { return a.after(b); }  // a ∘ b
  Map inverse(const Map& d) const { return d.inverse(); }
  Map identity_map() const { return StateMap::identity(state_count()); }
  bool state_equal(State a, State b) const { return a == b; }
  double state_distance(State a, State b) const { return a == b ? 0.0 : 1.0; }
  bool map_equal(const Map& a, const Map& b) const { return a.same_table(b); }
  std::optional<std::string> bijection_failure(const Map& v) const;
  const std::vector<Map>& probe_maps() const { return kinematic_; }
  bool sampled() const { return false; }  // checks over explicit 𝒦 are exhaustive
  bool reversible() const { return reversible_; }
  int n_steps() const { return n_steps_; }

  // First kinematic map carrying x to y, scanning the identity and then the
  // kinematic list in declaration order (deterministic tie-breaking).  Empty
  // when no single map reaches y; for group-structured kinematic sets this is
  // the whole orbit question.
  std::optional<Map> transport(State x, State y) const;

 private:
  std::vector<std::string> state_labels_;
  std::vector<StateMap> kinematic_;
  bool reversible_ = false;
  int n_steps_ = 1;
  std::unordered_map<std::string, int> index_;  // table-key -> kinematic position
};

/// A schema model: the surface the engine templates need from either the
/// finite flavor (exact, exhaustive) or a metric flavor (tolerance equality,
/// probe-set sampling).
template <class M>
concept SchemaModel = requires(const M& m, const typename M::State& x, const typename M::Map& d) {
  { m.apply(d, x) } -> std::convertible_to<typename M::State>;
  { m.compose(d, d) } -> std::convertible_to<typename M::Map>;
  { m.inverse(d) } -> std::convertible_to<typename M::Map>;
  { m.identity_map() } -> std::convertible_to<typename M::Map>;
  { m.in_kinematic(d) } -> std::convertible_to<bool>;
  { m.state_equal(x, x) } -> std::convertible_to<bool>;
  { m.state_distance(x, x) } -> std::convertible_to<double>;
  { m.map_equal(d, d) } -> std::convertible_to<bool>;
  { m.bijection_failure(d) } -> std::convertible_to<std::optional<std::string>>;
  { m.probe_maps() } -> std::convertible_to<const std::vector<typename M::Map>&>;
  { m.transport(x, x) } -> std::convertible_to<std::optional<typename M::Map>>;
  { m.sampled() } -> std::convertible_to<bool>;
  { m.reversible() } -> std::convertible_to<bool>;
  { m.n_steps() } -> std::convertible_to<int>;
};

/// An instance of a theory: a start state plus one evolution map per time
/// interval.
template <SchemaModel M>
struct Instance {
  typename M::State start;
  std::vector<typename M::Map> steps;  // maps for intervals t_0→t_1, ..., t_{N-1}→t_N
};

template <SchemaModel M>
using Trajectory = std::vector<typename M::State>;

template <SchemaModel M>
void validate_instance(const M& m, const Instance<M>& inst) {
  if (static_cast<int>(inst.steps.size()) != m.n_steps())
    throw std::invalid_argument("instance has " + std::to_string(inst.steps.size()) +
                                " steps, schema expects " + std::to_string(m.n_steps()));
  for (std::size_t k = 0; k < inst.steps.size(); ++k) {
    if (!m.in_kinematic(inst.steps[k]))
      throw std::invalid_argument("instance step " + std::to_string(k) +
                                  " is not in the kinematic set");
  }
}

template <SchemaModel M>
Trajectory<M> run_instance(const M& m, const Instance<M>& inst) {
  validate_instance(m, inst);
  Trajectory<M> traj;
  traj.reserve(inst.steps.size() + 1);
  traj.push_back(inst.start);
  for (const auto& step : inst.steps) traj.push_back(m.apply(step, traj.back()));
  return traj;
}

/// Map carrying the state at grid time j to the state at grid time k, derived
/// from the instance's interval maps.  k < j needs a reversible schema.
template <SchemaModel M>
typename M::Map derived_map(const M& m, const Instance<M>& inst, int k, int j) {
  const int n = static_cast<int>(inst.steps.size());
  if (k < 0 || k > n || j < 0 || j > n) throw std::out_of_range("grid index out of range");
  if (k == j) return m.identity_map();
  if (k > j) {
    auto acc = inst.steps[static_cast<std::size_t>(j)];
    for (int i = j + 1; i < k; ++i) acc = m.compose(inst.steps[static_cast<std::size_t>(i)], acc);
    return acc;
  }
  if (!m.reversible()) throw std::invalid_argument("backward map needs a reversible schema");
  return m.inverse(derived_map(m, inst, j, k));
}

/// Outcome of a similarity check.  `sampled` marks verdicts that rest on a
/// probe set rather than an exhaustive kinematic list; such a PASS is
/// evidence, not proof.
struct SimilarityVerdict {
  bool ok = false;
  bool sampled = false;
  std::string witness;                 // failure description, empty on success
  std::optional<int> failed_interval;  // for sequence checks: the k of V_{k+1} D V_k^{-1}
  explicit operator bool() const { return ok; }
};

/// Does conjugation by v carry the kinematic set onto itself?  Checks both
/// v D v^{-1} and v^{-1} D v for every probe map D, so for an explicit finite
/// kinematic set a PASS is exact set equality.
template <SchemaModel M>
SimilarityVerdict check_similarity(const M& m, const typename M::Map& v) {
  SimilarityVerdict out;
  out.sampled = m.sampled();
  if (auto fail = m.bijection_failure(v)) {
    out.witness = *fail;
    return out;
  }
  const auto vinv = m.inverse(v);
  for (const auto& d : m.probe_maps()) {
    if (!m.in_kinematic(m.compose(m.compose(v, d), vinv))) {
      out.witness = "conjugate V D V^-1 leaves the kinematic set";
      return out;
    }
    if (!m.in_kinematic(m.compose(m.compose(vinv, d), v))) {
      out.witness = "conjugate V^-1 D V leaves the kinematic set";
      return out;
    }
  }
  out.ok = true;
  return out;
}

/// Time-dependent spectacles check: every member must pass check_similarity
/// and every bridged conjugate V_{k+1} D V_k^{-1} must stay kinematic.  The
/// sequence length must be n_steps + 1.
template <SchemaModel M>
SimilarityVerdict check_extended_similarity(const M& m, const std::vector<typename M::Map>& seq) {
  if (static_cast<int>(seq.size()) != m.n_steps() + 1)
    throw std::invalid_argument("spectacle sequence must have n_steps + 1 entries");
  SimilarityVerdict out;
  out.sampled = m.sampled();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    auto single = check_similarity(m, seq[k]);
    if (!single.ok) {
      out.witness = "member " + std::to_string(k) + ": " + single.witness;
      out.failed_interval = static_cast<int>(k);
      return out;
    }
  }
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const auto prev_inv = m.inverse(seq[k]);
    const auto next_inv = m.inverse(seq[k + 1]);
    const auto& probes = m.probe_maps();
    for (std::size_t di = 0; di < probes.size(); ++di) {
      if (!m.in_kinematic(m.compose(m.compose(seq[k + 1], probes[di]), prev_inv))) {
        out.witness = "interval " + std::to_string(k) + ": V_{k+1} D V_k^-1 leaves the kinematic set (probe " +
                      std::to_string(di) + ")";
        out.failed_interval = static_cast<int>(k);
        return out;
      }
      if (!m.in_kinematic(m.compose(m.compose(next_inv, probes[di]), seq[k]))) {
        out.witness = "interval " + std::to_string(k) + ": V_{k+1}^-1 D V_k leaves the kinematic set (probe " +
                      std::to_string(di) + ")";
        out.failed_interval = static_cast<int>(k);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

// --- finite-only operations (implemented in schema.cpp) ---

/// Every bijection of the state set whose conjugation preserves the kinematic
/// set, in lexicographic table order.  Plain enumeration of all |S|!
/// candidates with early rejection; guarded by max_states.  The result is
/// verified to be a group before it is returned.
std::vector<StateMap> maximal_similarity_group(const FiniteSchema& schema, int max_states = 8);

/// True when the kinematic set reaches every state from every state
/// (breadth-first orbit closure from state 0; for bijective maps one orbit
/// from any state settles all of them).
bool is_transitive(const FiniteSchema& schema);

/// Orbit partition of the state set under a collection of maps (all maps must
/// be bijections).  Orbits are listed by their smallest member, members sorted.
std::vector<std::vector<int>> orbit_partition(int state_count, const std::vector<StateMap>& maps);

/// Group closure of the given bijections under composition and inverse,
/// capped at max_size elements (throws when the cap is hit).
std::vector<StateMap> group_closure(const std::vector<StateMap>& generators, std::size_t max_size = 100000);

}  // namespace schemalab
