#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schemalab/rng.hpp"
#include "schemalab/schema.hpp"

namespace schemalab {

/// Time-dependent spectacles: one bijection per grid time t_0..t_N.
template <SchemaModel M>
struct ExtendedSimilarity {
  std::vector<typename M::Map> maps;
};

template <SchemaModel M>
ExtendedSimilarity<M> constant_spectacles(const M& m, const typename M::Map& v) {
  ExtendedSimilarity<M> out;
  out.maps.assign(static_cast<std::size_t>(m.n_steps()) + 1, v);
  return out;
}

/// View an instance through spectacles: start state becomes V_0 x_0, interval
/// maps become V_{k+1} D V_k^{-1}.  Throws when a transformed map leaves the
/// kinematic set, which is the runtime signal that the spectacles are not an
/// extended similarity for this schema.
template <SchemaModel M>
Instance<M> transform_instance(const M& m, const ExtendedSimilarity<M>& specs,
                               const Instance<M>& inst) {
  if (specs.maps.size() != inst.steps.size() + 1)
    throw std::invalid_argument("need one spectacle map per grid time (N+1)");
  Instance<M> out;
  out.start = m.apply(specs.maps.front(), inst.start);
  out.steps.reserve(inst.steps.size());
  for (std::size_t k = 0; k < inst.steps.size(); ++k) {
    auto mapped = m.compose(m.compose(specs.maps[k + 1], inst.steps[k]), m.inverse(specs.maps[k]));
    if (!m.in_kinematic(mapped))
      throw std::runtime_error("transformed interval map " + std::to_string(k) +
                               " leaves the kinematic set");
    out.steps.push_back(std::move(mapped));
  }
  return out;
}

/// Build the time-dependent spectacles that carry instance a onto instance b:
/// V_0 moves the start state (first kinematic map found), and
/// V_k = E_{k,k-1} V_{k-1} D_{k,k-1}^{-1} makes the ladder diagram commute.
/// Requires a reversible schema whose kinematic set can reach b's start from
/// a's start.
template <SchemaModel M>
ExtendedSimilarity<M> construct_gruebleen(const M& m, const Instance<M>& a, const Instance<M>& b) {
  if (!m.reversible())
    throw std::invalid_argument("instance transport needs a reversible schema");
  if (a.steps.size() != b.steps.size())
    throw std::invalid_argument("instances must share the time grid");
  auto v0 = m.transport(a.start, b.start);
  if (!v0)
    throw std::runtime_error(
        "no kinematic map reaches the target start state (kinematic set not transitive)");
  ExtendedSimilarity<M> out;
  out.maps.reserve(a.steps.size() + 1);
  out.maps.push_back(*v0);
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    out.maps.push_back(
        m.compose(m.compose(b.steps[k], out.maps.back()), m.inverse(a.steps[k])));
  }
  return out;
}

/// Largest pointwise gap between V_k x_k and y_k over the grid: how far the
/// spectacles are from commuting the two trajectories.  Exact schemata report
/// 0 or 1, metric schemata a norm distance.
template <SchemaModel M>
double commutation_deviation(const M& m, const ExtendedSimilarity<M>& specs, const Instance<M>& a,
                             const Instance<M>& b) {
  const auto xs = run_instance(m, a);
  const auto ys = run_instance(m, b);
  if (specs.maps.size() != xs.size())
    throw std::invalid_argument("need one spectacle map per grid time (N+1)");
  double worst = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double d = m.state_distance(m.apply(specs.maps[k], xs[k]), ys[k]);
    if (d > worst) worst = d;
  }
  return worst;
}

enum class Arity { state, instance };

/// A named two-valued statement about states or whole instances.  Predicates
/// must be total: any exception escaping an evaluation is a hard error.
template <SchemaModel M>
struct Proposition {
  std::string name;
  Arity arity = Arity::state;
  std::function<bool(const typename M::State&)> on_state;
  std::function<bool(const Instance<M>&)> on_instance;
};

enum class Invariance {
  invariant_trivial_true,
  invariant_trivial_not_true,
  invariant_nontrivial,
  not_invariant,
};

std::string to_string(Invariance c);

struct InvarianceWitness {
  int instance_index = -1;
  int similarity_index = -1;
  bool value_before = false;
  bool value_after = false;
};

struct InvarianceReport {
  std::string proposition;
  Invariance classification = Invariance::not_invariant;
  bool sampled = false;  // evaluated over a sample, not the whole schema
  std::optional<std::uint64_t> seed;
  std::optional<InvarianceWitness> witness;  // always present for not_invariant
};

/// Evaluate a proposition on every instance and on its image under every
/// group element.  A truth-value flip anywhere means not invariant (with a
/// checkable witness); otherwise the proposition is trivial when one truth
/// value covers everything seen, nontrivial when both occur.
template <SchemaModel M>
InvarianceReport check_invariance(const M& m, const Proposition<M>& p,
                                  const std::vector<ExtendedSimilarity<M>>& group,
                                  const std::vector<Instance<M>>& instances) {
  if (instances.empty()) throw std::invalid_argument("instance set must be nonempty");
  if (group.empty()) throw std::invalid_argument("similarity group must be nonempty");
  auto eval = [&](const Instance<M>& inst) -> bool {
    if (p.arity == Arity::state) return p.on_state(inst.start);
    return p.on_instance(inst);
  };
  InvarianceReport report;
  report.proposition = p.name;
  report.sampled = m.sampled();
  bool seen_true = false;
  bool seen_not_true = false;
  std::vector<bool> base;
  base.reserve(instances.size());
  for (const auto& inst : instances) {
    const bool v = eval(inst);
    (v ? seen_true : seen_not_true) = true;
    base.push_back(v);
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t s = 0; s < group.size(); ++s) {
      const auto image = transform_instance(m, group[s], instances[i]);
      const bool v = eval(image);
      (v ? seen_true : seen_not_true) = true;
      if (v != base[i]) {
        report.classification = Invariance::not_invariant;
        report.witness = InvarianceWitness{static_cast<int>(i), static_cast<int>(s), base[i], v};
        return report;
      }
    }
  }
  if (seen_true && seen_not_true)
    report.classification = Invariance::invariant_nontrivial;
  else if (seen_true)
    report.classification = Invariance::invariant_trivial_true;
  else
    report.classification = Invariance::invariant_trivial_not_true;
  return report;
}

/// State-proposition form: plain similarities acting on a set of states.
template <SchemaModel M>
InvarianceReport check_invariance(const M& m, const Proposition<M>& p,
                                  const std::vector<typename M::Map>& similarities,
                                  const std::vector<typename M::State>& states) {
  if (p.arity != Arity::state)
    throw std::invalid_argument("state-set form needs a state proposition");
  if (states.empty()) throw std::invalid_argument("state set must be nonempty");
  if (similarities.empty()) throw std::invalid_argument("similarity set must be nonempty");
  InvarianceReport report;
  report.proposition = p.name;
  report.sampled = m.sampled();
  bool seen_true = false;
  bool seen_not_true = false;
  std::vector<bool> base;
  base.reserve(states.size());
  for (const auto& x : states) {
    const bool v = p.on_state(x);
    (v ? seen_true : seen_not_true) = true;
    base.push_back(v);
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t s = 0; s < similarities.size(); ++s) {
      const bool v = p.on_state(m.apply(similarities[s], states[i]));
      (v ? seen_true : seen_not_true) = true;
      if (v != base[i]) {
        report.classification = Invariance::not_invariant;
        report.witness = InvarianceWitness{static_cast<int>(i), static_cast<int>(s), base[i], v};
        return report;
      }
    }
  }
  if (seen_true && seen_not_true)
    report.classification = Invariance::invariant_nontrivial;
  else if (seen_true)
    report.classification = Invariance::invariant_trivial_true;
  else
    report.classification = Invariance::invariant_trivial_not_true;
  return report;
}

/// "The trajectory never moves": every interval map fixes the state it is
/// applied to.  Invariant under any time-independent spectacles.
/// The proposition holds a reference to the schema; keep the schema alive.
template <SchemaModel M>
Proposition<M> fixed_point_proposition(const M& m) {
  Proposition<M> p;
  p.name = "trajectory-is-fixed-point";
  p.arity = Arity::instance;
  p.on_instance = [&m](const Instance<M>& inst) {
    auto x = inst.start;
    for (const auto& d : inst.steps) {
      const auto y = m.apply(d, x);
      if (!m.state_equal(x, y)) return false;
      x = y;
    }
    return true;
  };
  return p;
}

/// The proposition holds a reference to the schema; keep the schema alive.
template <SchemaModel M>
Proposition<M> state_equals_proposition(const M& m, typename M::State target,
                                        std::string label = "state-equals-target") {
  Proposition<M> p;
  p.name = std::move(label);
  p.arity = Arity::state;
  p.on_state = [&m, target](const typename M::State& x) { return m.state_equal(x, target); };
  return p;
}

/// Seeded instance draw: uniform start state, uniform kinematic map per
/// interval.
inline Instance<FiniteSchema> random_instance(const FiniteSchema& schema, Rng& rng) {
  Instance<FiniteSchema> inst;
  inst.start = static_cast<int>(rng.below(schema.state_count()));
  inst.steps.reserve(static_cast<std::size_t>(schema.n_steps()));
  for (int k = 0; k < schema.n_steps(); ++k)
    inst.steps.push_back(
        schema.kinematic()[static_cast<std::size_t>(rng.below(schema.kinematic_size()))]);
  return inst;
}

// --- triviality check for finite schemata (engine.cpp) ---

struct TheoremOptions {
  int subset_guard = 12;        // 2^|S| subsets are enumerated; hard cap 24
  int group_search_guard = 8;   // |S|! bijections are enumerated up to here
  int instance_pairs = 50;      // sampled pairs for the instance-level part
  std::uint64_t seed = 20110;
  std::vector<StateMap> extra_similarities;  // candidates joined to 𝒦 when the
                                             // full bijection search is out of reach
};

struct TheoremReport {
  bool reversible = false;
  bool transitive = false;
  bool preconditions_met = false;
  // similarity set the subset scan used
  bool similarity_set_is_maximal = false;
  std::string similarity_basis;
  int similarity_count = 0;
  // exhaustive subset scan
  std::int64_t invariant_subset_count = -1;
  bool only_trivial_invariants = false;
  // exhibit for schemata that fail the preconditions
  std::optional<std::vector<int>> nontrivial_invariant_subset;
  // instance-level spot check via spectacles transport
  int instance_pairs_checked = 0;
  bool instance_pairs_transformable = false;
  std::uint64_t seed = 0;
  // overall: preconditions hold and every invariant statement is constant
  bool confirmed = false;
};

/// Exhaustively classify all 2^|S| state propositions of a finite schema
/// under a similarity set, and spot-check the instance level through sampled
/// spectacles transport.  When |S| permits, the similarity set is the full
/// maximal group; otherwise the kinematic set joined with the caller's
/// candidates (a subgroup of the maximal group, so "only trivial invariants
/// survive" remains a sound conclusion).  On schemata that miss the
/// preconditions, a nontrivial invariant subset is exhibited instead.
TheoremReport verify_triviality_theorem(const FiniteSchema& schema, const TheoremOptions& opts = {});

}  // namespace schemalab
