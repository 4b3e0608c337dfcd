#include "schemalab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "schemalab/decks.hpp"
#include "schemalab/engine.hpp"
#include "schemalab/flows.hpp"
#include "schemalab/quantum.hpp"
#include "schemalab/rng.hpp"
#include "schemalab/schema_io.hpp"
#include "schemalab/shift.hpp"

namespace schemalab::suites {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

FiniteSchema full_permutation_schema(int states, int n_steps) {
  std::vector<std::string> labels;
  for (int i = 0; i < states; ++i) labels.push_back("s" + std::to_string(i));
  std::vector<int> table(static_cast<std::size_t>(states));
  std::iota(table.begin(), table.end(), 0);
  std::vector<StateMap> maps;
  do {
    StateMap m("", table);
    maps.push_back(StateMap("p" + m.table_string(), table));
  } while (std::next_permutation(table.begin(), table.end()));
  return FiniteSchema(std::move(labels), std::move(maps), /*reversible=*/true, n_steps);
}

Report demo_decks(const RunConfig& cfg) {
  Report r;
  r.command = "demo decks";
  r.config = cfg;
  const auto started = std::chrono::steady_clock::now();

  const int n = (cfg.size >= 2 && cfg.size <= 6 && cfg.size % 2 == 0) ? cfg.size : 4;
  const auto full = decks::build_deck_schema(n, decks::DeckKind::full, 6);
  const auto half = decks::build_deck_schema(n, decks::DeckKind::half, 6);
  const int half_count = n / 2;

  r.check_eq("full deck: state count = n!", full.state_count(), factorial(n));
  r.check_eq("full deck: kinematic count = n!", full.kinematic_size(), factorial(n));
  r.check_eq("half deck: kinematic count = (n/2)!^2", half.kinematic_size(),
             factorial(half_count) * factorial(half_count));

  // a card dealt into the first half never leaves it
  bool stays = true;
  for (int s = 0; s < half.state_count() && stays; ++s) {
    const auto before = decks::arrangement_of_state(n, s);
    for (const auto& d : half.kinematic()) {
      const auto after = decks::arrangement_of_state(n, d(s));
      for (int card = 0; card < n && stays; ++card) {
        int pos_before = -1, pos_after = -1;
        for (int i = 0; i < n; ++i) {
          if (before[static_cast<std::size_t>(i)] == card) pos_before = i;
          if (after[static_cast<std::size_t>(i)] == card) pos_after = i;
        }
        stays = (pos_before < half_count) == (pos_after < half_count);
      }
    }
  }
  r.check_true("half deck: cards never change half under kinematic maps", stays);

  const auto swap = decks::half_swap_map(n);
  r.check_true("half exchange X is not kinematic", !half.in_kinematic(swap));
  r.check_true("X composed with itself is the identity", swap.after(swap).is_identity());
  r.check_true("X passes the similarity check", check_similarity(half, swap).ok);

  const auto id = StateMap::identity(half.state_count());
  std::vector<StateMap> one_x = {id, swap};
  for (int k = 2; k <= half.n_steps(); ++k) one_x.push_back(swap);
  const auto ext = check_extended_similarity(half, one_x);
  r.check_true("(1, X) fails the extended check with a witness",
               !ext.ok && !ext.witness.empty(), ext.witness);
  r.details = io::json{{"one_x_verdict", io::verdict_to_json(ext)}};
  r.check_true("(X, X) passes the extended check",
               check_extended_similarity(half, constant_spectacles(half, swap).maps).ok);

  r.check_true("full deck kinematic set is transitive", is_transitive(full));
  r.check_true("half deck kinematic set is not transitive", !is_transitive(half));

  // candidate-restricted similarity set for the half deck: kinematic maps and
  // their X-composed partners
  const auto candidates = decks::half_deck_candidate_similarities(n);
  bool all_candidates_similar = true;
  for (const auto& v : candidates)
    all_candidates_similar = all_candidates_similar && check_similarity(half, v).ok;
  r.check_true("candidate-restricted similarity set passes the conjugation check",
               all_candidates_similar);

  std::vector<int> marks = {0, 1};
  const auto prop = decks::marked_same_half(n, marks);
  std::vector<int> states(static_cast<std::size_t>(half.state_count()));
  std::iota(states.begin(), states.end(), 0);
  const auto inv = check_invariance(half, prop, candidates, states);
  r.check_true("marked cards proposition is invariant and nontrivial",
               inv.classification == Invariance::invariant_nontrivial, to_string(inv.classification));

  r.check_le("runtime seconds", seconds_since(started), 10.0);
  return r;
}

Report demo_shift(const RunConfig& cfg) {
  Report r;
  r.command = "demo shift";
  r.config = cfg;

  for (int p : {2, 3, 4}) {
    const auto schema = shift::build_shift_schema(p);
    const bool ok = check_similarity(schema, shift::rotation_map(p, 1)).ok &&
                    check_similarity(schema, shift::complement_map(p)).ok &&
                    check_similarity(schema, shift::reflection_map(p)).ok;
    r.check_true("rotation/complement/reflection pass the similarity check (p=" +
                     std::to_string(p) + ")",
                 ok);
  }

  {
    const int p = 4;
    const auto sigma = shift::rotation_map(p, 1);
    const auto beta = shift::complement_map(p);
    const auto rho = shift::reflection_map(p);
    r.check_true("complement commutes with the rotation (table identity)",
                 sigma.after(beta).same_table(beta.after(sigma)));
    r.check_true("reflection conjugates the rotation to its inverse (table identity)",
                 sigma.after(rho).same_table(rho.after(shift::rotation_map(p, -1))));

    const auto schema = shift::build_shift_schema(p);
    r.check_true("rotations are not transitive on period-4 words", !is_transitive(schema));

    const auto group = shift::structural_group(p);
    std::vector<int> states(static_cast<std::size_t>(schema.state_count()));
    std::iota(states.begin(), states.end(), 0);
    const auto inv = check_invariance(schema, shift::constant_word_proposition(p), group, states);
    r.check_true("constant-word proposition is invariant and nontrivial",
                 inv.classification == Invariance::invariant_nontrivial,
                 to_string(inv.classification));

    // transposition of 0000 and 0001 breaks a constant word
    std::vector<int> table(static_cast<std::size_t>(schema.state_count()));
    std::iota(table.begin(), table.end(), 0);
    std::swap(table[shift::state_of_word("0000")], table[shift::state_of_word("0001")]);
    const StateMap transposition("swap-0000-0001", table);
    const auto witness = shift::certify_exclusion(transposition, p);
    r.check_true("constant-breaking transposition is excluded with a witness",
                 witness.has_value() && witness->constant_word == "0000" &&
                     witness->shift_amount == 1,
                 witness ? (witness->constant_word + " -> " + witness->image_word + ", shift " +
                            std::to_string(witness->shift_amount))
                         : "no witness");
    r.check_true("complement passes the exclusion screen",
                 !shift::certify_exclusion(beta, p).has_value());
    r.check_true("reflection passes the exclusion screen",
                 !shift::certify_exclusion(rho, p).has_value());
  }

  // exclusion and the conjugation check never disagree: an excluded bijection
  // always fails the similarity check too
  {
    Rng rng(cfg.seed);
    bool consistent = true;
    int excluded = 0;
    for (int p = 2; p <= 4; ++p) {
      const auto schema = shift::build_shift_schema(p);
      std::vector<int> table(static_cast<std::size_t>(schema.state_count()));
      std::iota(table.begin(), table.end(), 0);
      for (int trial = 0; trial < 40; ++trial) {
        rng.shuffle(table);
        const StateMap candidate("sample", table);
        if (shift::certify_exclusion(candidate, p)) {
          ++excluded;
          consistent = consistent && !check_similarity(schema, candidate).ok;
        }
      }
    }
    r.check_true("every excluded sample also fails the similarity check", consistent,
                 std::to_string(excluded) + " samples excluded");
    r.check_true("the sampled set exercised the exclusion screen", excluded > 0);
  }
  return r;
}

Report demo_quantum_pictures(const RunConfig& cfg) {
  using namespace quantum;
  Report r;
  r.command = "demo quantum-pictures";
  r.config = cfg;
  Rng rng(cfg.seed);

  {
    const auto started = std::chrono::steady_clock::now();
    const double total_time = 5.0;
    const auto actual = UnitarySchedule::from_hamiltonian(qubit_chain_hamiltonian(), total_time,
                                                          cfg.grid_points);
    const auto alternate = UnitarySchedule::from_hamiltonian(oscillator_chain_hamiltonian(),
                                                             total_time, cfg.grid_points);
    const Vector psi0 = random_state(8, rng);
    const double deviation =
        verify_picture_equivalence(psi0, actual, alternate, picture_demo_observables());
    r.check_le("spin chain vs oscillator pictures: expectation gap", deviation, cfg.tolerance);
    r.check_le("spin chain vs oscillator pictures: runtime seconds", seconds_since(started), 5.0);

    // conjugation preserves the spectrum
    const auto observables = picture_demo_observables();
    double spectrum_gap = 0.0;
    double hermiticity = 0.0;
    const int mid = cfg.grid_points / 2;
    for (const auto& b : observables) {
      const Matrix dressed = picture_observable(b, actual, alternate, mid);
      hermiticity = std::max(hermiticity, hermiticity_defect(dressed));
      Eigen::SelfAdjointEigenSolver<Matrix> eb(b), ed(dressed);
      spectrum_gap = std::max(
          spectrum_gap, (eb.eigenvalues() - ed.eigenvalues()).cwiseAbs().maxCoeff());
    }
    r.check_le("dressed observables stay Hermitian", hermiticity, cfg.tolerance);
    r.check_le("dressed observables keep their eigenvalues", spectrum_gap, cfg.tolerance);
  }

  {
    // arbitrary dim-4 schedules
    std::vector<Matrix> us, vs;
    for (int k = 0; k < 20; ++k) {
      us.push_back(random_unitary(4, rng));
      vs.push_back(random_unitary(4, rng));
    }
    const auto u = UnitarySchedule::from_steps(us);
    const auto v = UnitarySchedule::from_steps(vs);
    std::vector<Matrix> obs;
    for (int k = 0; k < 3; ++k) obs.push_back(random_hermitian(4, rng));
    const double deviation = verify_picture_equivalence(random_state(4, rng), u, v, obs);
    r.check_le("random dim-4 schedules: expectation gap", deviation, cfg.tolerance);
  }

  {
    // fixed-state and moving-state expectation routes agree
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = 2 + static_cast<int>(rng.below(7));
      std::vector<Matrix> steps;
      for (int k = 0; k < 10; ++k) steps.push_back(random_unitary(dim, rng));
      const auto schedule = UnitarySchedule::from_steps(steps);
      const Matrix a = random_hermitian(dim, rng);
      const Vector psi0 = random_state(dim, rng);
      const auto traj = evolve(psi0, schedule);
      for (int k = 0; k <= schedule.intervals(); ++k) {
        const Cplx moving = traj[static_cast<std::size_t>(k)].dot(a * traj[static_cast<std::size_t>(k)]);
        const Cplx fixed = psi0.dot(heisenberg_observable(a, schedule, k) * psi0);
        worst = std::max(worst, std::abs(moving - fixed));
      }
    }
    r.check_le("moving-state and fixed-state expectations agree (50 trials)", worst, 1e-12);
  }

  {
    const auto bell = bell_alternate_decomposition();
    double second_alt = 0.0;
    double original_gap = 0.0;
    const double target = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < bell.bell_states.size(); ++i) {
      second_alt = std::max(second_alt, bell.alternate_values[i](1));
      original_gap = std::max(original_gap, std::abs(bell.original_values[i](0) - target));
      original_gap = std::max(original_gap, std::abs(bell.original_values[i](1) - target));
    }
    r.check_le("bell states are products in the alternate pair (second value)", second_alt, 1e-12);
    r.check_le("bell states stay maximally entangled for the original pair", original_gap, 1e-12);

    Vector zero_zero = Vector::Zero(4);
    zero_zero(0) = 1.0;
    const auto plain = schmidt_values(zero_zero, computational_decomposition({2, 2}), 1);
    r.check_le("|00> is a product state for the original pair", plain(1), 1e-12);

    io::json states = io::json::array();
    for (std::size_t i = 0; i < bell.bell_states.size(); ++i) {
      states.push_back(io::json{
          {"label", bell.labels[i]},
          {"state", io::complex_vector_to_json(bell.bell_states[i])},
          {"singular_values_original",
           std::vector<double>{bell.original_values[i](0), bell.original_values[i](1)}},
          {"singular_values_alternate",
           std::vector<double>{bell.alternate_values[i](0), bell.alternate_values[i](1)}}});
    }
    r.details = io::json{
        {"similarity_candidates", "unitary operators only; anti-unitary maps are not modeled"},
        {"bell", io::json{{"alternate_basis_map",
                           io::complex_matrix_to_json(bell.alternate.basis_map)},
                          {"states", std::move(states)}}}};
  }
  return r;
}

Report demo_measurement(const RunConfig& cfg) {
  using namespace quantum;
  Report r;
  r.command = "demo measurement";
  r.config = cfg;
  Rng rng(cfg.seed);

  double worst_initial = 0.0;
  double worst_middle = 0.0;
  double worst_final = 0.0;
  double worst_state = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Cplx alpha = rng.complex_normal();
    Cplx beta = rng.complex_normal();
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    const auto chain = measurement_chain(alpha, beta);
    worst_initial = std::max(worst_initial, std::abs(chain.stages[0].correlation));
    worst_middle = std::max(worst_middle, std::abs(chain.stages[1].correlation));
    worst_final = std::max(worst_final, std::abs(chain.stages[2].correlation - 1.0));
    worst_state = std::max(worst_state, chain.final_deviation);
  }
  r.check_le("correlation starts at zero (20 trials)", worst_initial, 1e-12);
  r.check_le("correlation still zero after the apparatus interaction", worst_middle, 1e-12);
  r.check_le("correlation reaches one after the observer interaction", worst_final, 1e-12);
  r.check_le("final state matches the two-branch target up to a phase", worst_state, 1e-12);

  const auto single = measurement_chain(1.0, 0.0);
  r.check_le("single-branch case ends fully correlated",
             std::abs(single.stages[2].correlation - 1.0), 1e-12);

  const auto balanced = measurement_chain(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  const auto& final_state = balanced.stages[2].state;
  double amp_gap = 0.0;
  int support = 0;
  for (Eigen::Index i = 0; i < final_state.size(); ++i) {
    const double mag = std::abs(final_state(i));
    if (mag > 1e-12) {
      ++support;
      amp_gap = std::max(amp_gap, std::abs(mag - 1.0 / std::sqrt(2.0)));
    }
  }
  r.check_eq("balanced case has exactly two branches", support, 2);
  r.check_le("balanced branch amplitudes are 1/sqrt(2)", amp_gap, 1e-12);

  io::json stages = io::json::array();
  for (const auto& stage : balanced.stages) {
    stages.push_back(io::json{{"label", stage.label},
                              {"correlation", stage.correlation},
                              {"state", io::complex_vector_to_json(stage.state)}});
  }
  r.details = io::json{{"balanced_chain",
                        io::json{{"stages", std::move(stages)},
                                 {"expected_final",
                                  io::complex_vector_to_json(balanced.expected_final)}}}};
  return r;
}

Report demo_hamiltonian(const RunConfig& cfg) {
  using namespace flows;
  Report r;
  r.command = "demo hamiltonian";
  r.config = cfg;
  const int steps = cfg.steps;
  Rng rng(cfg.seed);

  auto point = [](std::initializer_list<double> qs, std::initializer_list<double> ps) {
    PhasePoint z;
    z.q = Eigen::VectorXd(static_cast<Eigen::Index>(qs.size()));
    z.p = Eigen::VectorXd(static_cast<Eigen::Index>(ps.size()));
    Eigen::Index i = 0;
    for (double v : qs) z.q(i++) = v;
    i = 0;
    for (double v : ps) z.p(i++) = v;
    return z;
  };
  auto distance = [](const PhasePoint& a, const PhasePoint& b) {
    return std::sqrt((a.q - b.q).squaredNorm() + (a.p - b.p).squaredNorm());
  };

  {
    const double period = 2.0 * M_PI;
    const auto harmonic = catalog_hamiltonian("HARMONIC", 1, period);
    const auto z0 = point({1.0}, {0.0});
    r.check_le("harmonic oscillator returns after one period",
               distance(integrate(harmonic, z0, period, steps), z0), 1e-8);

    const double coarse = distance(integrate(harmonic, z0, period, 500), z0);
    const double fine = distance(integrate(harmonic, z0, period, 1000), z0);
    r.check_between("halving the step cuts the error by ~2^4", coarse / fine, 8.0, 32.0);
  }

  {
    const double tau = 1.0;
    const auto translate = catalog_hamiltonian("FREE", 1, tau);
    const auto kick = catalog_hamiltonian("KICK", 1, tau);
    const auto z0 = point({0.25}, {-0.5});
    const auto sequential = integrate(kick, integrate(translate, z0, tau, steps), tau, steps);
    const auto composed =
        integrate(compose_hamiltonians(translate, kick, tau), z0, tau, steps);
    r.check_le("translate-then-kick composition matches the sequential flows",
               distance(sequential, composed), 1e-6);

    const auto harmonic = catalog_hamiltonian("HARMONIC", 1, tau);
    const auto seq2 = integrate(harmonic, integrate(harmonic, z0, tau, steps), tau, steps);
    const auto comp2 =
        integrate(compose_hamiltonians(harmonic, harmonic, tau), z0, tau, steps);
    r.check_le("harmonic self-composition matches the sequential flows", distance(seq2, comp2),
               1e-6);
  }

  {
    const double tau = 1.0;
    const auto harmonic = catalog_hamiltonian("HARMONIC", 1, tau);
    const auto z0 = point({0.7}, {0.2});
    const auto out = integrate(harmonic, z0, tau, steps);
    const auto back = integrate(reverse_hamiltonian(harmonic, tau), out, tau, steps);
    r.check_le("harmonic flow reversed returns to the start", distance(back, z0), 1e-6);

    const DrivingHamiltonian drift(
        "t-drift", tau,
        [](const Eigen::VectorXd&, const Eigen::VectorXd& p, double t) { return t * p.sum(); });
    const auto out2 = integrate(drift, z0, tau, steps);
    const auto back2 = integrate(reverse_hamiltonian(drift, tau), out2, tau, steps);
    r.check_le("time-dependent drift reversed returns to the start", distance(back2, z0), 1e-6);
  }

  {
    const double tau = 1.0;
    const auto z0 = point({0.0}, {0.0});
    const auto z1 = point({1.0}, {1.0});
    const auto steer = steering_hamiltonian(z0, z1, tau);
    r.check_le("steering reaches the target", distance(integrate(steer, z0, tau, steps), z1),
               1e-6);

    PhasePoint a, b;
    a.q = Eigen::VectorXd(3);
    a.p = Eigen::VectorXd(3);
    b.q = Eigen::VectorXd(3);
    b.p = Eigen::VectorXd(3);
    for (int i = 0; i < 3; ++i) {
      a.q(i) = rng.uniform(-1, 1);
      a.p(i) = rng.uniform(-1, 1);
      b.q(i) = rng.uniform(-1, 1);
      b.p(i) = rng.uniform(-1, 1);
    }
    const auto steer3 = steering_hamiltonian(a, b, tau);
    r.check_le("steering reaches a random 3-dof target",
               distance(integrate(steer3, a, tau, steps), b), 1e-6);

    // the steering flow is a rigid translation: offsets are preserved
    PhasePoint other = a;
    other.q.array() += 0.37;
    other.p.array() -= 0.21;
    const auto end_a = integrate(steer3, a, tau, steps);
    const auto end_other = integrate(steer3, other, tau, steps);
    const double drift = std::sqrt((end_other.q - end_a.q - (other.q - a.q)).squaredNorm() +
                                   (end_other.p - end_a.p - (other.p - a.p)).squaredNorm());
    r.check_le("steering flow translates every start point rigidly", drift, 1e-8);
  }

  {
    // flow Jacobian of an autonomous quadratic generator has unit determinant
    const double tau = 1.0;
    const auto harmonic = catalog_hamiltonian("HARMONIC", 1, tau);
    const auto z0 = point({0.3}, {-0.4});
    const double h = 1e-5;
    Eigen::Matrix2d jac;
    for (int col = 0; col < 2; ++col) {
      PhasePoint plus = z0, minus = z0;
      (col == 0 ? plus.q(0) : plus.p(0)) += h;
      (col == 0 ? minus.q(0) : minus.p(0)) -= h;
      const auto zp = integrate(harmonic, plus, tau, 2000);
      const auto zm = integrate(harmonic, minus, tau, 2000);
      jac(0, col) = (zp.q(0) - zm.q(0)) / (2 * h);
      jac(1, col) = (zp.p(0) - zm.p(0)) / (2 * h);
    }
    r.check_le("flow Jacobian determinant is one", std::abs(jac.determinant() - 1.0), 1e-4);
  }

  {
    const auto zero = catalog_hamiltonian("ZERO", 2, 1.0);
    const auto z0 = point({0.1, -0.2}, {0.3, 0.4});
    r.check_le("zero generator holds the state still",
               distance(integrate(zero, z0, 1.0, 100), z0), 1e-15);
  }

  {
    const auto z0 = point({0.0}, {0.0});
    const auto z1 = point({1.0}, {1.0});
    const auto reached = integrate(steering_hamiltonian(z0, z1, 1.0), z0, 1.0, steps);
    r.details = io::json{
        {"steering", io::json{{"from", io::phase_point_to_json(z0)},
                              {"to", io::phase_point_to_json(z1)},
                              {"reached", io::phase_point_to_json(reached)}}},
        {"conclusion",
         "reversibility, composition and transitivity verified numerically; under maximal "
         "similarity groups a schema with these properties admits no nontrivial invariant "
         "statements (established exhaustively on the finite models by `verify theorem`)"}};
  }
  return r;
}

Report demo_gruebleen(const RunConfig& cfg) {
  Report r;
  r.command = "demo gruebleen";
  r.config = cfg;
  Rng rng(cfg.seed);

  {
    const auto deck = decks::build_deck_schema(4, decks::DeckKind::full, 6, /*n_steps=*/3);
    double worst = 0.0;
    bool all_extended = true;
    bool all_land = true;
    for (int pair = 0; pair < 50; ++pair) {
      const auto a = random_instance(deck, rng);
      const auto b = random_instance(deck, rng);
      const auto specs = construct_gruebleen(deck, a, b);
      worst = std::max(worst, commutation_deviation(deck, specs, a, b));
      all_extended = all_extended && check_extended_similarity(deck, specs.maps).ok;
      const auto image = transform_instance(deck, specs, a);
      all_land = all_land && deck.state_equal(image.start, b.start);
      for (std::size_t k = 0; k < image.steps.size(); ++k)
        all_land = all_land && deck.map_equal(image.steps[k], b.steps[k]);
    }
    r.check_le("full deck: 50 constructed spectacles commute exactly", worst, 0.0);
    r.check_true("full deck: every constructed sequence is an extended similarity", all_extended);
    r.check_true("full deck: every transformed instance lands on its target", all_land);
  }

  {
    const quantum::UnitarySchema schema(4, 4, cfg.tolerance);
    double worst = 0.0;
    bool all_extended = true;
    for (int pair = 0; pair < 50; ++pair) {
      const auto a = quantum::random_unitary_instance(schema, rng);
      const auto b = quantum::random_unitary_instance(schema, rng);
      const auto specs = construct_gruebleen(schema, a, b);
      worst = std::max(worst, commutation_deviation(schema, specs, a, b));
      all_extended = all_extended && check_extended_similarity(schema, specs.maps).ok;
    }
    r.check_le("dim-4 unitary: 50 constructed spectacles commute", worst, cfg.tolerance);
    r.check_true("dim-4 unitary: every constructed sequence passes the sampled extended check",
                 all_extended);
  }
  return r;
}

Report verify_theorem(const RunConfig& cfg) {
  Report r;
  r.command = "verify theorem";
  r.config = cfg;

  const int top = std::clamp(cfg.size, 2, 5);
  for (int n = 2; n <= top; ++n) {
    TheoremOptions opts;
    opts.seed = cfg.seed;
    const auto schema = full_permutation_schema(n);
    const auto rep = verify_triviality_theorem(schema, opts);
    r.check_true("full permutations on " + std::to_string(n) +
                     " states: preconditions hold",
                 rep.preconditions_met);
    r.check_eq("full permutations on " + std::to_string(n) +
                   " states: invariant statement count",
               rep.invariant_subset_count, 2);
    r.check_true("full permutations on " + std::to_string(n) +
                     " states: sampled instances mutually transformable",
                 rep.instance_pairs_transformable);
    r.check_true("full permutations on " + std::to_string(n) + " states: maximal group used",
                 rep.similarity_set_is_maximal);
  }

  {
    // the divided deck misses transitivity, and a nontrivial invariant
    // statement survives
    const auto half = decks::build_deck_schema(4, decks::DeckKind::half);
    TheoremOptions opts;
    opts.seed = cfg.seed;
    opts.subset_guard = 24;
    opts.extra_similarities = {decks::half_swap_map(4)};
    const auto rep = verify_triviality_theorem(half, opts);
    r.check_true("half deck: preconditions fail (not transitive)", !rep.preconditions_met);
    r.check_true("half deck: a nontrivial invariant statement is exhibited",
                 rep.nontrivial_invariant_subset.has_value());
    // unions of the three candidate-group orbits: 2^3 invariant subsets
    r.check_eq("half deck: invariant statement count over the candidate set",
               rep.invariant_subset_count, 8);
  }
  return r;
}

Report verify_all(const RunConfig& cfg) {
  Report r;
  r.command = "verify all";
  r.config = cfg;
  RunConfig theorem_cfg = cfg;
  theorem_cfg.size = 5;
  for (const auto& sub :
       {demo_decks(cfg), demo_shift(cfg), demo_quantum_pictures(cfg), demo_measurement(cfg),
        demo_hamiltonian(cfg), demo_gruebleen(cfg), verify_theorem(theorem_cfg)}) {
    for (const auto& entry : sub.entries) {
      CheckEntry copy = entry;
      copy.name = sub.command.substr(sub.command.find(' ') + 1) + ": " + entry.name;
      r.entries.push_back(std::move(copy));
    }
  }
  return r;
}

Report maximal_group_suite(const FiniteSchema& schema,
                           const std::vector<StateMap>& supplied_candidates, int random_candidates,
                           const RunConfig& cfg) {
  Report r;
  r.command = "maximal-group";
  r.config = cfg;

  const int search_guard = std::max(8, cfg.size);
  const bool exhaustive = schema.state_count() <= search_guard && supplied_candidates.empty() &&
                          random_candidates == 0;
  if (exhaustive) {
    const auto group = maximal_similarity_group(schema, search_guard);
    std::string names;
    for (std::size_t i = 0; i < group.size() && i < 16; ++i) {
      if (i) names += ' ';
      names += group[i].name();
    }
    r.check_true("exhaustive search found a similarity group of order " +
                     std::to_string(group.size()),
                 true, names);
    if (schema.reversible()) {
      bool includes = true;
      for (const auto& d : schema.kinematic()) {
        bool found = false;
        for (const auto& v : group) found = found || v.same_table(d);
        includes = includes && found;
      }
      r.check_true("kinematic maps all belong to the similarity group", includes);
    }
    return r;
  }

  // candidate-restricted mode: verdicts cover only the tested candidates and
  // the group they generate
  std::vector<StateMap> candidates = schema.kinematic();
  for (const auto& c : supplied_candidates) candidates.push_back(c);
  Rng rng(cfg.seed);
  for (int k = 0; k < random_candidates; ++k) {
    std::vector<int> table(static_cast<std::size_t>(schema.state_count()));
    std::iota(table.begin(), table.end(), 0);
    rng.shuffle(table);
    candidates.emplace_back("random-" + std::to_string(k), table);
  }

  std::vector<StateMap> passers;
  for (const auto& c : candidates)
    if (check_similarity(schema, c).ok) passers.push_back(c);
  r.check_true("candidate-restricted mode (not an exhaustive search)", true,
               std::to_string(candidates.size()) + " candidates tested, " +
                   std::to_string(passers.size()) + " passed");
  if (passers.empty()) {
    r.check_true("no candidate passed the similarity check", false);
    return r;
  }
  const auto closed = group_closure(passers);
  bool closure_similar = true;
  for (const auto& v : closed) closure_similar = closure_similar && check_similarity(schema, v).ok;
  r.check_true("the generated group passes the similarity check throughout", closure_similar);
  std::string names;
  for (std::size_t i = 0; i < closed.size() && i < 16; ++i) {
    if (i) names += ' ';
    names += closed[i].name().empty() ? ("[" + closed[i].table_string() + "]") : closed[i].name();
  }
  r.check_true("candidate-restricted group order " + std::to_string(closed.size()), true, names);
  return r;
}

}  // namespace schemalab::suites
