#include "schemalab/engine.hpp"

#include <bit>

namespace schemalab {

std::string to_string(Invariance c) {
  switch (c) {
    case Invariance::invariant_trivial_true: return "INVARIANT_TRIVIAL_TRUE";
    case Invariance::invariant_trivial_not_true: return "INVARIANT_TRIVIAL_NOT_TRUE";
    case Invariance::invariant_nontrivial: return "INVARIANT_NONTRIVIAL";
    case Invariance::not_invariant: return "NOT_INVARIANT";
  }
  return "?";
}

namespace {

bool instances_equal(const FiniteSchema& s, const Instance<FiniteSchema>& a,
                     const Instance<FiniteSchema>& b) {
  if (!s.state_equal(a.start, b.start)) return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t k = 0; k < a.steps.size(); ++k)
    if (!s.map_equal(a.steps[k], b.steps[k])) return false;
  return true;
}

}  // namespace

TheoremReport verify_triviality_theorem(const FiniteSchema& schema, const TheoremOptions& opts) {
  const int n = schema.state_count();
  if (opts.subset_guard > 24)
    throw std::invalid_argument("subset guard is capped at 24 states (2^24 masks)");
  if (n > opts.subset_guard)
    throw std::invalid_argument("state space too large for exhaustive subset enumeration (" +
                                std::to_string(n) + " > " + std::to_string(opts.subset_guard) + ")");

  TheoremReport rep;
  rep.seed = opts.seed;
  rep.reversible = schema.reversible();
  rep.transitive = is_transitive(schema);
  rep.preconditions_met = rep.reversible && rep.transitive;

  std::vector<StateMap> sims;
  if (n <= opts.group_search_guard && opts.extra_similarities.empty()) {
    sims = maximal_similarity_group(schema, opts.group_search_guard);
    rep.similarity_set_is_maximal = true;
    rep.similarity_basis = "maximal-group";
  } else {
    // Fall back to the subgroup generated by the kinematic maps and any
    // supplied candidates.  Every maximal-group invariant is invariant under
    // this subgroup too, so a triviality verdict from the scan below still
    // covers the maximal group.
    std::vector<StateMap> gens = schema.kinematic();
    for (const auto& extra : opts.extra_similarities) {
      if (!check_similarity(schema, extra).ok)
        throw std::invalid_argument("candidate similarity '" + extra.name() +
                                    "' fails the conjugation check");
      gens.push_back(extra);
    }
    sims = group_closure(gens);
    rep.similarity_basis =
        opts.extra_similarities.empty() ? "kinematic-closure" : "kinematic+candidates-closure";
  }
  rep.similarity_count = static_cast<int>(sims.size());

  // Exhaustive scan over all 2^n state subsets.  A subset is invariant under
  // a bijection V exactly when its image bitmask reproduces it.
  std::vector<std::vector<std::uint32_t>> image_bit(sims.size());
  for (std::size_t s = 0; s < sims.size(); ++s) {
    image_bit[s].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      image_bit[s][static_cast<std::size_t>(i)] = 1u << sims[s](i);
  }
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::int64_t invariant_count = 0;
  bool only_trivial = true;
  std::optional<std::uint32_t> nontrivial_mask;
  for (std::uint32_t mask = 0;; ++mask) {
    bool invariant = true;
    for (std::size_t s = 0; s < sims.size() && invariant; ++s) {
      std::uint32_t img = 0;
      for (std::uint32_t rest = mask; rest; rest &= rest - 1)
        img |= image_bit[s][static_cast<std::size_t>(std::countr_zero(rest))];
      invariant = (img == mask);
    }
    if (invariant) {
      ++invariant_count;
      if (mask != 0 && mask != full) {
        only_trivial = false;
        if (!nontrivial_mask) nontrivial_mask = mask;
      }
    }
    if (mask == full) break;
  }
  rep.invariant_subset_count = invariant_count;
  rep.only_trivial_invariants = only_trivial;
  if (nontrivial_mask) {
    std::vector<int> subset;
    for (std::uint32_t rest = *nontrivial_mask; rest; rest &= rest - 1)
      subset.push_back(std::countr_zero(rest));
    rep.nontrivial_invariant_subset = std::move(subset);
  }

  // Instance-level spot check: sampled instance pairs must be mutually
  // transformable through time-dependent spectacles, so any invariant
  // instance proposition is constant across the sample.
  if (rep.preconditions_met) {
    Rng rng(opts.seed);
    int good = 0;
    for (int t = 0; t < opts.instance_pairs; ++t) {
      const auto a = random_instance(schema, rng);
      const auto b = random_instance(schema, rng);
      const auto specs = construct_gruebleen(schema, a, b);
      const bool commutes = commutation_deviation(schema, specs, a, b) == 0.0;
      const bool lands_on_b = instances_equal(schema, transform_instance(schema, specs, a), b);
      if (commutes && lands_on_b) ++good;
    }
    rep.instance_pairs_checked = opts.instance_pairs;
    rep.instance_pairs_transformable = (good == opts.instance_pairs);
  }

  rep.confirmed = rep.preconditions_met && rep.only_trivial_invariants &&
                  (rep.instance_pairs_checked == 0 || rep.instance_pairs_transformable);
  return rep;
}

}  // namespace schemalab
