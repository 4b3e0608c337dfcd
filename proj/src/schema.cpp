#include "schemalab/schema.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace schemalab {

namespace {

std::string table_key(const std::vector<int>& table) {
  std::string key;
  key.reserve(table.size() * 3);
  for (int v : table) {
    key += std::to_string(v);
    key += ',';
  }
  return key;
}

}  // namespace

StateMap::StateMap(std::string name, std::vector<int> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw std::invalid_argument("empty assignment table");
  for (int v : table_) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("assignment table entry " + std::to_string(v) +
                                  " out of range for " + std::to_string(n) + " states");
  }
}

StateMap StateMap::identity(int n, std::string name) {
  std::vector<int> t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 0);
  return StateMap(std::move(name), std::move(t));
}

bool StateMap::is_bijection() const { return !bijection_failure().has_value(); }

std::optional<std::string> StateMap::bijection_failure() const {
  std::vector<int> seen_at(table_.size(), -1);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    const int img = table_[i];
    if (seen_at[static_cast<std::size_t>(img)] >= 0) {
      return "not injective: states " + std::to_string(seen_at[static_cast<std::size_t>(img)]) +
             " and " + std::to_string(i) + " share image " + std::to_string(img);
    }
    seen_at[static_cast<std::size_t>(img)] = static_cast<int>(i);
  }
  return std::nullopt;
}

StateMap StateMap::inverse() const {
  if (auto fail = bijection_failure())
    throw std::invalid_argument("cannot invert: " + *fail);
  std::vector<int> inv(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i)
    inv[static_cast<std::size_t>(table_[i])] = static_cast<int>(i);
  return StateMap(name_.empty() ? "" : name_ + "^-1", std::move(inv));
}

StateMap StateMap::after(const StateMap& g) const {
  if (size() != g.size()) throw std::invalid_argument("composing maps of different sizes");
  std::vector<int> t(table_.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = table_[static_cast<std::size_t>(g.table_[i])];
  std::string nm;
  if (!name_.empty() && !g.name_.empty()) nm = name_ + "*" + g.name_;
  return StateMap(std::move(nm), std::move(t));
}

bool StateMap::is_identity() const {
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string StateMap::table_string() const {
  std::string s;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(table_[i]);
  }
  return s;
}

FiniteSchema::FiniteSchema(std::vector<std::string> state_labels, std::vector<StateMap> kinematic,
                           bool reversible, int n_steps)
    : state_labels_(std::move(state_labels)),
      kinematic_(std::move(kinematic)),
      reversible_(reversible),
      n_steps_(n_steps) {
  const int n = state_count();
  if (n < 1) throw std::invalid_argument("schema needs at least one state");
  if (n_steps_ < 1) throw std::invalid_argument("schema needs at least one time interval");
  {
    std::unordered_set<std::string> distinct(state_labels_.begin(), state_labels_.end());
    if (static_cast<int>(distinct.size()) != n)
      throw std::invalid_argument("state labels must be distinct");
  }
  if (kinematic_.empty()) throw std::invalid_argument("kinematic set must be nonempty");
  for (std::size_t i = 0; i < kinematic_.size(); ++i) {
    if (kinematic_[i].size() != n)
      throw std::invalid_argument("kinematic map " + std::to_string(i) +
                                  " is not total on the state set");
    index_.emplace(table_key(kinematic_[i].table()), static_cast<int>(i));
  }
  if (index_.size() != kinematic_.size())
    throw std::invalid_argument("kinematic set contains duplicate maps");

  if (reversible_) {
    // group axioms, checked by enumeration
    if (!in_kinematic(StateMap::identity(n)))
      throw std::invalid_argument("reversible schema must contain the identity map");
    for (const auto& d : kinematic_) {
      if (auto fail = d.bijection_failure())
        throw std::invalid_argument("reversible schema map '" + d.name() + "': " + *fail);
      if (!in_kinematic(d.inverse()))
        throw std::invalid_argument("reversible schema lacks the inverse of '" + d.name() + "'");
    }
    for (const auto& a : kinematic_)
      for (const auto& b : kinematic_)
        if (!in_kinematic(a.after(b)))
          throw std::invalid_argument("reversible schema not closed under composition ('" +
                                      a.name() + "' after '" + b.name() + "')");
  }
}

std::optional<int> FiniteSchema::kinematic_index(const StateMap& m) const {
  if (m.size() != state_count()) return std::nullopt;
  auto it = index_.find(table_key(m.table()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteSchema::State FiniteSchema::apply(const Map& d, State x) const {
  if (x < 0 || x >= state_count()) throw std::out_of_range("state index out of range");
  if (d.size() != state_count()) throw std::invalid_argument("map not total on the state set");
  return d(x);
}

std::optional<std::string> FiniteSchema::bijection_failure(const Map& v) const {
  // totality is a precondition, not a verdict
  if (v.size() != state_count())
    throw std::invalid_argument("candidate map is defined on " + std::to_string(v.size()) +
                                " states, schema has " + std::to_string(state_count()));
  return v.bijection_failure();
}

std::optional<FiniteSchema::Map> FiniteSchema::transport(State x, State y) const {
  if (x == y) {
    const auto id = StateMap::identity(state_count());
    if (in_kinematic(id)) return id;
  }
  for (const auto& d : kinematic_)
    if (d(x) == y) return d;
  return std::nullopt;
}

std::vector<StateMap> maximal_similarity_group(const FiniteSchema& schema, int max_states) {
  const int n = schema.state_count();
  if (n > max_states)
    throw std::invalid_argument("state space too large for exhaustive bijection search (" +
                                std::to_string(n) + " > " + std::to_string(max_states) + ")");
  std::vector<int> table(static_cast<std::size_t>(n));
  std::iota(table.begin(), table.end(), 0);
  std::vector<StateMap> group;
  do {
    StateMap candidate("", table);
    if (check_similarity(schema, candidate).ok) {
      candidate = StateMap("V[" + candidate.table_string() + "]", table);
      group.push_back(std::move(candidate));
    }
  } while (std::next_permutation(table.begin(), table.end()));

  // The collected set must be a group; verify rather than assume.
  std::unordered_set<std::string> keys;
  for (const auto& g : group) keys.insert(table_key(g.table()));
  if (!keys.count(table_key(StateMap::identity(n).table())))
    throw std::logic_error("similarity set lacks the identity");
  for (const auto& g : group)
    if (!keys.count(table_key(g.inverse().table())))
      throw std::logic_error("similarity set not closed under inverse");
  if (group.size() <= 2000) {
    for (const auto& a : group)
      for (const auto& b : group)
        if (!keys.count(table_key(a.after(b).table())))
          throw std::logic_error("similarity set not closed under composition");
  }
  return group;
}

bool is_transitive(const FiniteSchema& schema) {
  const int n = schema.state_count();
  // forward closure from state 0
  std::vector<char> fwd(static_cast<std::size_t>(n), 0);
  std::deque<int> queue{0};
  fwd[0] = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& d : schema.kinematic()) {
      const int y = d(x);
      if (!fwd[static_cast<std::size_t>(y)]) {
        fwd[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  if (std::find(fwd.begin(), fwd.end(), 0) != fwd.end()) return false;
  // backward closure from state 0 (preimages); together with the forward pass
  // this is strong connectivity, i.e. every orbit closure is the whole set
  std::vector<std::vector<int>> pre(static_cast<std::size_t>(n));
  for (const auto& d : schema.kinematic())
    for (int x = 0; x < n; ++x) pre[static_cast<std::size_t>(d(x))].push_back(x);
  std::vector<char> bwd(static_cast<std::size_t>(n), 0);
  queue = {0};
  bwd[0] = 1;
  while (!queue.empty()) {
    const int y = queue.front();
    queue.pop_front();
    for (int x : pre[static_cast<std::size_t>(y)]) {
      if (!bwd[static_cast<std::size_t>(x)]) {
        bwd[static_cast<std::size_t>(x)] = 1;
        queue.push_back(x);
      }
    }
  }
  return std::find(bwd.begin(), bwd.end(), 0) == bwd.end();
}

std::vector<std::vector<int>> orbit_partition(int state_count, const std::vector<StateMap>& maps) {
  std::vector<StateMap> directed;
  for (const auto& m : maps) {
    if (m.size() != state_count) throw std::invalid_argument("map not total on the state set");
    if (!m.is_bijection()) throw std::invalid_argument("orbit partition needs bijections");
    directed.push_back(m);
    directed.push_back(m.inverse());
  }
  std::vector<char> visited(static_cast<std::size_t>(state_count), 0);
  std::vector<std::vector<int>> orbits;
  for (int s = 0; s < state_count; ++s) {
    if (visited[static_cast<std::size_t>(s)]) continue;
    std::vector<int> orbit;
    std::deque<int> queue{s};
    visited[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      orbit.push_back(x);
      for (const auto& m : directed) {
        const int y = m(x);
        if (!visited[static_cast<std::size_t>(y)]) {
          visited[static_cast<std::size_t>(y)] = 1;
          queue.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::vector<StateMap> group_closure(const std::vector<StateMap>& generators, std::size_t max_size) {
  if (generators.empty()) throw std::invalid_argument("group closure needs at least one generator");
  const int n = generators.front().size();
  std::unordered_set<std::string> keys;
  std::vector<StateMap> elements;
  auto add = [&](StateMap m) -> bool {
    auto [it, fresh] = keys.insert(table_key(m.table()));
    (void)it;
    if (fresh) {
      elements.push_back(std::move(m));
      if (elements.size() > max_size)
        throw std::runtime_error("group closure exceeded " + std::to_string(max_size) + " elements");
    }
    return fresh;
  };
  std::vector<StateMap> gens;
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("generators act on different state counts");
    if (!g.is_bijection()) throw std::invalid_argument("group closure needs bijections");
    gens.push_back(g);
    gens.push_back(g.inverse());
  }
  // breadth-first over left multiplication by the generators; with inverses
  // among the generators this reaches every word, hence the whole group
  add(StateMap::identity(n));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const StateMap current = elements[i];
    for (const auto& g : gens) add(g.after(current));
  }
  return elements;
}

}  // namespace schemalab
