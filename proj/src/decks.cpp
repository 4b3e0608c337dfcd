#include "schemalab/decks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace schemalab::decks {

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Position shuffle sigma acting on arrangements: position i receives the card
// previously at position sigma(i).  As a state-space table: state r maps to
// the rank of (arrangement(r) composed with sigma).
StateMap arrangement_action(const std::vector<int>& sigma, const std::string& name) {
  const int n = static_cast<int>(sigma.size());
  const long long states = factorial(n);
  std::vector<int> table(static_cast<std::size_t>(states));
  for (long long r = 0; r < states; ++r) {
    const auto a = arrangement_of_state(n, static_cast<int>(r));
    std::vector<int> moved(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) moved[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
    table[static_cast<std::size_t>(r)] = state_of_arrangement(moved);
  }
  return StateMap(name, std::move(table));
}

std::string perm_name(const std::vector<int>& sigma) {
  std::string s;
  for (int v : sigma) s += static_cast<char>('0' + v);
  return s;
}

}  // namespace

std::vector<int> arrangement_of_state(int cards, int state) {
  // lexicographic unranking via the factorial number system
  std::vector<int> pool(static_cast<std::size_t>(cards));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cards));
  long long rest = state;
  for (int i = cards - 1; i >= 0; --i) {
    const long long f = factorial(i);
    const long long digit = rest / f;
    rest %= f;
    out.push_back(pool[static_cast<std::size_t>(digit)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

int state_of_arrangement(const std::vector<int>& arrangement) {
  const int n = static_cast<int>(arrangement.size());
  long long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (arrangement[static_cast<std::size_t>(j)] < arrangement[static_cast<std::size_t>(i)]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return static_cast<int>(rank);
}

std::string arrangement_label(const std::vector<int>& arrangement, bool show_split) {
  std::string s;
  const std::size_t half = arrangement.size() / 2;
  for (std::size_t i = 0; i < arrangement.size(); ++i) {
    if (show_split && i == half) s += '|';
    s += static_cast<char>('0' + arrangement[i]);
  }
  return s;
}

FiniteSchema build_deck_schema(int cards, DeckKind kind, int max_cards, int n_steps) {
  if (cards < 2) throw std::invalid_argument("deck needs at least two cards");
  if (cards > max_cards)
    throw std::invalid_argument("deck size " + std::to_string(cards) +
                                " exceeds the exhaustive-build guard " + std::to_string(max_cards));
  if (kind == DeckKind::half && cards % 2 != 0)
    throw std::invalid_argument("half-deck split needs an even card count");

  const long long states = factorial(cards);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(states));
  const bool split = (cards % 2 == 0);
  for (long long r = 0; r < states; ++r)
    labels.push_back(arrangement_label(arrangement_of_state(cards, static_cast<int>(r)), split));

  std::vector<StateMap> maps;
  std::vector<int> sigma(static_cast<std::size_t>(cards));
  std::iota(sigma.begin(), sigma.end(), 0);
  const int half = cards / 2;
  do {
    if (kind == DeckKind::half) {
      bool within = true;
      for (int i = 0; i < cards && within; ++i)
        within = (i < half) == (sigma[static_cast<std::size_t>(i)] < half);
      if (!within) continue;
    }
    maps.push_back(arrangement_action(sigma, "s" + perm_name(sigma)));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  return FiniteSchema(std::move(labels), std::move(maps), /*reversible=*/true, n_steps);
}

StateMap half_swap_map(int cards) {
  if (cards % 2 != 0) throw std::invalid_argument("half exchange needs an even card count");
  const int half = cards / 2;
  std::vector<int> sigma(static_cast<std::size_t>(cards));
  for (int i = 0; i < cards; ++i) sigma[static_cast<std::size_t>(i)] = (i + half) % cards;
  return arrangement_action(sigma, "X");
}

Proposition<FiniteSchema> marked_same_half(int cards, std::vector<int> marks) {
  if (marks.empty()) throw std::invalid_argument("marked set must be nonempty");
  for (int card : marks)
    if (card < 0 || card >= cards)
      throw std::invalid_argument("unknown card label " + std::to_string(card));
  Proposition<FiniteSchema> p;
  p.name = "marked-cards-share-a-half";
  p.arity = Arity::state;
  const int half = cards / 2;
  p.on_state = [cards, half, marks = std::move(marks)](const int& state) {
    const auto a = arrangement_of_state(cards, state);
    bool any_low = false;
    bool any_high = false;
    for (int i = 0; i < cards; ++i) {
      if (std::find(marks.begin(), marks.end(), a[static_cast<std::size_t>(i)]) == marks.end())
        continue;
      (i < half ? any_low : any_high) = true;
    }
    return !(any_low && any_high);
  };
  return p;
}

std::vector<StateMap> half_deck_candidate_similarities(int cards) {
  const auto schema = build_deck_schema(cards, DeckKind::half);
  const auto swap = half_swap_map(cards);
  std::vector<StateMap> out = schema.kinematic();
  for (const auto& d : schema.kinematic()) out.push_back(swap.after(d));
  return out;
}

}  // namespace schemalab::decks
