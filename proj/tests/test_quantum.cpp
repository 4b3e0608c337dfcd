#include <doctest.h>

#include <cmath>

#include "schemalab/engine.hpp"
#include "schemalab/quantum.hpp"

using namespace schemalab;
using namespace schemalab::quantum;

TEST_SUITE_BEGIN("quantum");

TEST_CASE("matrix exponential against the spectral oracle") {
  Rng rng(31);
  for (int dim : {2, 4, 8}) {
    const Matrix h = random_hermitian(dim, rng);
    const Matrix via_series = expm(Cplx(0, -1) * h);
    // oracle: diagonalize the Hermitian generator and exponentiate eigenvalues
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Matrix phases = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      phases(i, i) = std::exp(Cplx(0, -es.eigenvalues()(i)));
    const Matrix via_spectrum = es.eigenvectors() * phases * es.eigenvectors().adjoint();
    CHECK((via_series - via_spectrum).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(unitarity_defect(via_series) < 1e-13);
  }
  // large-norm input exercises the squaring path
  const Matrix big = 40.0 * random_hermitian(4, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> es(big);
  Matrix lifted = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) lifted(i, i) = std::exp(Cplx(0, -es.eigenvalues()(i)));
  const Matrix oracle = es.eigenvectors() * lifted * es.eigenvectors().adjoint();
  CHECK((expm(Cplx(0, -1) * big) - oracle).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("single-qubit rotation by pi flips the basis state up to phase") {
  Matrix generator(2, 2);
  generator << 0, 1, 1, 0;
  const auto schedule = UnitarySchedule::from_hamiltonian(generator, M_PI / 2.0, 1);
  Vector zero(2);
  zero << 1, 0;
  const auto traj = evolve(zero, schedule);
  Vector one(2);
  one << 0, 1;
  CHECK(phase_aligned_distance(traj.back(), one) < 1e-12);
}

TEST_CASE("identity schedule holds the state still") {
  Rng rng(3);
  const auto schedule =
      UnitarySchedule::from_steps(std::vector<Matrix>(5, Matrix::Identity(4, 4)));
  const Vector psi0 = random_state(4, rng);
  for (const auto& x : evolve(psi0, schedule)) CHECK((x - psi0).norm() == 0.0);
}

TEST_CASE("schedules preserve norms and reject bad inputs") {
  Rng rng(5);
  std::vector<Matrix> steps;
  for (int k = 0; k < 12; ++k) steps.push_back(random_unitary(8, rng));
  const auto schedule = UnitarySchedule::from_steps(steps);
  const auto traj = evolve(random_state(8, rng), schedule);
  for (const auto& x : traj) CHECK(std::abs(x.norm() - 1.0) < 1e-12);
  for (int k = 0; k <= schedule.intervals(); ++k)
    CHECK(unitarity_defect(schedule.cumulative(k)) < 1e-10);

  CHECK_THROWS_AS(evolve(random_state(4, rng), schedule), std::invalid_argument);
  Matrix not_unitary = Matrix::Identity(8, 8) * 2.0;
  steps.push_back(not_unitary);
  CHECK_THROWS_AS(UnitarySchedule::from_steps(steps), std::invalid_argument);
}

TEST_CASE("fixed-state observable transport") {
  Rng rng(17);
  std::vector<Matrix> steps;
  for (int k = 0; k < 6; ++k) steps.push_back(random_unitary(4, rng));
  const auto schedule = UnitarySchedule::from_steps(steps);
  const Matrix a = random_hermitian(4, rng);

  SUBCASE("at the grid origin the observable is untouched") {
    CHECK((heisenberg_observable(a, schedule, 0) - a).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("operators commuting with every step are untouched") {
    const Matrix commuting = Matrix::Identity(4, 4) * 2.5;
    CHECK((heisenberg_observable(commuting, schedule, 4) - commuting).cwiseAbs().maxCoeff() <
          1e-12);
  }
  SUBCASE("both expectation routes agree") {
    const Vector psi0 = random_state(4, rng);
    const auto traj = evolve(psi0, schedule);
    for (int k = 0; k <= schedule.intervals(); ++k) {
      const Cplx moving = traj[static_cast<std::size_t>(k)].dot(a * traj[static_cast<std::size_t>(k)]);
      const Cplx fixed = psi0.dot(heisenberg_observable(a, schedule, k) * psi0);
      CHECK(std::abs(moving - fixed) < 1e-12);
    }
  }
}

TEST_CASE("picture observable degenerates correctly") {
  Rng rng(23);
  std::vector<Matrix> us, vs;
  for (int k = 0; k < 5; ++k) {
    us.push_back(random_unitary(4, rng));
    vs.push_back(random_unitary(4, rng));
  }
  const auto u = UnitarySchedule::from_steps(us);
  const auto v = UnitarySchedule::from_steps(vs);
  const Matrix b = random_hermitian(4, rng);

  CHECK((picture_observable(b, u, u, 3) - b).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((picture_observable(b, u, v, 0) - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(hermiticity_defect(picture_observable(b, u, v, 4)) < 1e-12);

  const double deviation = verify_picture_equivalence(random_state(4, rng), u, v, {b});
  CHECK(deviation < 1e-12);
}

TEST_CASE("measurement chain stages") {
  SUBCASE("single branch ends as a product state with full correlation") {
    const auto chain = measurement_chain(1.0, 0.0);
    CHECK(chain.stages[0].correlation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chain.stages[2].correlation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chain.final_deviation < 1e-12);
  }
  SUBCASE("general amplitudes carry through linearly") {
    const Cplx alpha(0.6, 0.0);
    const Cplx beta(0.0, 0.8);
    const auto chain = measurement_chain(alpha, beta);
    CHECK(std::abs(chain.stages[0].correlation) < 1e-12);
    CHECK(std::abs(chain.stages[1].correlation) < 1e-12);
    CHECK(std::abs(chain.stages[2].correlation - 1.0) < 1e-12);
    CHECK(chain.final_deviation < 1e-12);
  }
  SUBCASE("non-normalized amplitudes are rejected") {
    CHECK_THROWS_AS(measurement_chain(1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("state transporter") {
  Rng rng(29);
  SUBCASE("identical endpoints give the identity") {
    const Vector psi = random_state(6, rng);
    CHECK((state_transporter(psi, psi) - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("basis flip in dimension two") {
    Vector zero(2), one(2);
    zero << 1, 0;
    one << 0, 1;
    const Matrix w = state_transporter(zero, one);
    CHECK((w * zero - one).norm() < 1e-12);
    CHECK(unitarity_defect(w) < 1e-12);
  }
  SUBCASE("a hundred random dim-8 pairs") {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector from = random_state(8, rng);
      const Vector to = random_state(8, rng);
      const Matrix w = state_transporter(from, to);
      CHECK((w * from - to).norm() < 1e-10);
      CHECK(unitarity_defect(w) < 1e-10);
    }
  }
  SUBCASE("phase-multiple endpoints stay in the span") {
    const Vector psi = random_state(4, rng);
    const Vector rotated = psi * std::exp(Cplx(0, 0.7));
    const Matrix w = state_transporter(psi, rotated);
    CHECK((w * psi - rotated).norm() < 1e-12);
    CHECK(unitarity_defect(w) < 1e-12);
  }
}

TEST_CASE("product similarities and the entanglement cut") {
  Rng rng(37);
  const auto pair_decomp = computational_decomposition({2, 2});

  SUBCASE("identity factors give the identity") {
    const Matrix v =
        product_similarity({Matrix::Identity(2, 2), Matrix::Identity(2, 2)}, pair_decomp);
    CHECK((v - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("local rotations preserve the Schmidt spectrum of a Bell state") {
    Vector bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    const Matrix v = product_similarity({random_unitary(2, rng), random_unitary(2, rng)},
                                        pair_decomp);
    const auto before = schmidt_values(bell, pair_decomp, 1);
    const auto after = schmidt_values((v * bell).eval(), pair_decomp, 1);
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(after(1) > 0.5);  // still entangled
  }
  SUBCASE("product states stay product states under local unitaries") {
    Vector product = Vector::Zero(4);
    product(0) = 1.0;
    const Matrix v = product_similarity({random_unitary(2, rng), random_unitary(2, rng)},
                                        pair_decomp);
    CHECK(schmidt_values((v * product).eval(), pair_decomp, 1)(1) < 1e-12);
  }
  SUBCASE("entangled-cut proposition is invariant under product spectacles") {
    const UnitarySchema schema(4, 1);
    const auto prop = entangled_cut_proposition(pair_decomp, 1);
    std::vector<Matrix> sims;
    for (int k = 0; k < 6; ++k)
      sims.push_back(product_similarity({random_unitary(2, rng), random_unitary(2, rng)},
                                        pair_decomp));
    std::vector<Vector> states;
    Vector bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    states.push_back(bell);
    Vector product = Vector::Zero(4);
    product(0) = 1.0;
    states.push_back(product);
    for (int k = 0; k < 6; ++k) states.push_back(random_state(4, rng));
    const auto report = check_invariance(schema, prop, sims, states);
    CHECK(report.classification == Invariance::invariant_nontrivial);
    CHECK(report.sampled);
  }
}

TEST_CASE("bell states and the alternate pair") {
  const auto report = bell_alternate_decomposition();
  REQUIRE(report.bell_states.size() == 4);
  const double target = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(report.original_values[i](0) == doctest::Approx(target).epsilon(1e-12));
    CHECK(report.original_values[i](1) == doctest::Approx(target).epsilon(1e-12));
    CHECK(report.alternate_values[i](1) < 1e-12);
  }
  CHECK(unitarity_defect(report.alternate.basis_map) < 1e-12);
}

TEST_CASE("unitary schema models the engine surface") {
  Rng rng(41);
  const UnitarySchema schema(4, 4);

  SUBCASE("transformed instances track the spectacled trajectory") {
    const auto inst = random_unitary_instance(schema, rng);
    ExtendedSimilarity<UnitarySchema> specs;
    for (int k = 0; k <= schema.n_steps(); ++k) specs.maps.push_back(random_unitary(4, rng));
    const auto image = transform_instance(schema, specs, inst);
    const auto original = run_instance(schema, inst);
    const auto transformed = run_instance(schema, image);
    for (std::size_t k = 0; k < original.size(); ++k) {
      CHECK((transformed[k] - specs.maps[k] * original[k]).norm() < 1e-10);
    }
  }

  SUBCASE("instance transport commutes within tolerance") {
    for (int pair = 0; pair < 10; ++pair) {
      const auto a = random_unitary_instance(schema, rng);
      const auto b = random_unitary_instance(schema, rng);
      const auto specs = construct_gruebleen(schema, a, b);
      CHECK(commutation_deviation(schema, specs, a, b) < 1e-10);
      const auto verdict = check_extended_similarity(schema, specs.maps);
      CHECK(verdict.ok);
      CHECK(verdict.sampled);
    }
  }

  SUBCASE("non-unitary candidates fail with a witness") {
    const Matrix bad = Matrix::Identity(4, 4) * 1.5;
    const auto verdict = check_similarity(schema, bad);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.witness.find("not unitary") != std::string::npos);
    CHECK_THROWS_AS(check_similarity(schema, Matrix::Identity(3, 3)), std::invalid_argument);
  }
}

TEST_CASE("dressing an observable preserves its spectrum") {
  Rng rng(47);
  std::vector<Matrix> us, vs;
  for (int k = 0; k < 8; ++k) {
    us.push_back(random_unitary(8, rng));
    vs.push_back(random_unitary(8, rng));
  }
  const auto u = UnitarySchedule::from_steps(us);
  const auto v = UnitarySchedule::from_steps(vs);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix b = random_hermitian(8, rng);
    const Matrix dressed = picture_observable(b, u, v, 8);
    Eigen::SelfAdjointEigenSolver<Matrix> eb(b), ed(dressed);
    CHECK((eb.eigenvalues() - ed.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_SUITE_END();
