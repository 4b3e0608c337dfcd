#include "schemalab/shift.hpp"

#include <stdexcept>

namespace schemalab::shift {

namespace {

void check_period(int period) {
  if (period < 1 || period > 16)
    throw std::invalid_argument("period must lie in [1, 16], got " + std::to_string(period));
}

int character(int state, int period, int i) { return (state >> (period - 1 - i)) & 1; }

// Build the state table of the word map w -> w' with w'[i] = w[source(i)].
StateMap reindex_map(int period, const std::string& name, const std::vector<int>& source) {
  const int states = 1 << period;
  std::vector<int> table(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) {
    int img = 0;
    for (int i = 0; i < period; ++i)
      img |= character(s, period, source[static_cast<std::size_t>(i)]) << (period - 1 - i);
    table[static_cast<std::size_t>(s)] = img;
  }
  return StateMap(name, std::move(table));
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

std::string word_of_state(int period, int state) {
  std::string w(static_cast<std::size_t>(period), '0');
  for (int i = 0; i < period; ++i)
    w[static_cast<std::size_t>(i)] = static_cast<char>('0' + character(state, period, i));
  return w;
}

int state_of_word(const std::string& word) {
  int s = 0;
  for (char c : word) {
    if (c != '0' && c != '1') throw std::invalid_argument("word characters must be 0 or 1");
    s = (s << 1) | (c - '0');
  }
  return s;
}

StateMap rotation_map(int period, int amount) {
  check_period(period);
  std::vector<int> source(static_cast<std::size_t>(period));
  for (int i = 0; i < period; ++i) source[static_cast<std::size_t>(i)] = mod(i + amount, period);
  return reindex_map(period, "shift^" + std::to_string(mod(amount, period)), source);
}

StateMap complement_map(int period) {
  check_period(period);
  const int states = 1 << period;
  std::vector<int> table(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) table[static_cast<std::size_t>(s)] = ~s & (states - 1);
  return StateMap("complement", std::move(table));
}

StateMap reflection_map(int period) {
  check_period(period);
  std::vector<int> source(static_cast<std::size_t>(period));
  for (int i = 0; i < period; ++i) source[static_cast<std::size_t>(i)] = mod(-i, period);
  return reindex_map(period, "reflect", source);
}

FiniteSchema build_shift_schema(int period, int n_steps) {
  check_period(period);
  const int states = 1 << period;
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) labels.push_back(word_of_state(period, s));
  std::vector<StateMap> maps;
  for (int m = 0; m < period; ++m) maps.push_back(rotation_map(period, m));
  return FiniteSchema(std::move(labels), std::move(maps), /*reversible=*/true, n_steps);
}

Proposition<FiniteSchema> constant_word_proposition(int period) {
  check_period(period);
  Proposition<FiniteSchema> p;
  p.name = "word-is-constant";
  p.arity = Arity::state;
  const int states = 1 << period;
  p.on_state = [states](const int& s) { return s == 0 || s == states - 1; };
  return p;
}

std::optional<ExclusionWitness> certify_exclusion(const StateMap& candidate, int period) {
  check_period(period);
  const int states = 1 << period;
  if (candidate.size() != states)
    throw std::invalid_argument("candidate is not total on the period-" + std::to_string(period) +
                                " words");
  for (int constant : {0, states - 1}) {
    const int image = candidate(constant);
    if (image == 0 || image == states - 1) continue;
    // the image is non-constant, so some rotation moves it off itself while
    // every rotation fixes the constant input
    for (int n = 1; n < period; ++n) {
      const auto rotated = rotation_map(period, n);
      if (rotated(image) != image) {
        return ExclusionWitness{word_of_state(period, constant), word_of_state(period, image), n};
      }
    }
  }
  return std::nullopt;
}

std::vector<StateMap> structural_group(int period) {
  check_period(period);
  return group_closure({rotation_map(period, 1), complement_map(period), reflection_map(period)});
}

}  // namespace schemalab::shift
