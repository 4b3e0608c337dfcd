#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schemalab/engine.hpp"
#include "schemalab/rng.hpp"
#include "schemalab/schema.hpp"

namespace schemalab::quantum {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

double unitarity_defect(const Matrix& u);    // max |(U^dag U - 1)_ij|
double hermiticity_defect(const Matrix& a);  // max |(A - A^dag)_ij|
bool is_unitary(const Matrix& u, double tol = 1e-10);
bool is_hermitian(const Matrix& a, double tol = 1e-10);

/// Dense matrix exponential: scale by a power of two, sum the series until the
/// terms vanish at working precision, square back up.
Matrix expm(const Matrix& a);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(const std::vector<Matrix>& factors);

/// Rotate a global phase so the largest-magnitude component is positive real
/// (first maximum wins on ties).
Vector align_phase(const Vector& v);
double phase_aligned_distance(const Vector& a, const Vector& b);

Vector random_state(int dim, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);
Matrix random_hermitian(int dim, Rng& rng);

/// Per-interval unitaries over a time grid t_0..t_N together with the
/// cumulative operators; cumulative(0) is the identity.
class UnitarySchedule {
 public:
  static UnitarySchedule from_steps(std::vector<Matrix> steps, double step_tol = 1e-10);
  /// Equal-interval evolution under a fixed generator: every step is
  /// exp(-i H dt) with dt = total_time / intervals.
  static UnitarySchedule from_hamiltonian(const Matrix& hamiltonian, double total_time,
                                          int intervals);

  int dimension() const { return static_cast<int>(cumulative_.front().rows()); }
  int intervals() const { return static_cast<int>(steps_.size()); }
  const Matrix& step(int k) const { return steps_.at(static_cast<std::size_t>(k)); }
  const Matrix& cumulative(int k) const { return cumulative_.at(static_cast<std::size_t>(k)); }
  const std::vector<Matrix>& steps() const { return steps_; }

 private:
  UnitarySchedule() = default;
  std::vector<Matrix> steps_;
  std::vector<Matrix> cumulative_;
};

/// States along the grid: x_k = U(t_k) psi0.
std::vector<Vector> evolve(const Vector& psi0, const UnitarySchedule& schedule);

/// Observable carried to grid time k with the state held fixed:
/// U(t_k)^dag A U(t_k).
Matrix heisenberg_observable(const Matrix& observable, const UnitarySchedule& schedule, int k);

/// The time-dependent stand-in that makes evolution under `actual` reproduce
/// what `observable` would do under `alternate`:
/// (U V^dag) B (V U^dag) at grid time k.
Matrix picture_observable(const Matrix& observable, const UnitarySchedule& actual,
                          const UnitarySchedule& alternate, int k);

/// Max over grid times and observables of the gap between the two expectation
/// routes: the dressed observable under the actual evolution vs the plain
/// observable under the alternate evolution.
double verify_picture_equivalence(const Vector& psi0, const UnitarySchedule& actual,
                                  const UnitarySchedule& alternate,
                                  const std::vector<Matrix>& observables);

struct MeasurementStage {
  std::string label;
  Vector state;
  double correlation;  // <C> at this stage
};

struct MeasurementChainReport {
  std::vector<MeasurementStage> stages;  // initial, after each interaction
  Vector expected_final;                 // two-branch target state
  double final_deviation;                // phase-aligned distance to the target
};

/// Spin (dim 2) x apparatus (dim 3) x observer (dim 3) measurement chain:
/// two permutation-style controlled interactions correlate first the
/// apparatus, then the observer memory, with the spin.  C projects onto
/// spin/memory agreement.
MeasurementChainReport measurement_chain(Cplx alpha, Cplx beta);

/// A unitary carrying one unit vector to another: plane rotation in
/// span{from, to}, identity on the orthogonal complement; the identity when
/// the vectors already coincide.
Matrix state_transporter(const Vector& from, const Vector& to);

/// A tensor-factor structure on a dim-d space: factor dimensions plus the
/// unitary whose columns are the product basis expressed in the original
/// coordinates.
struct Decomposition {
  std::vector<int> dims;
  Matrix basis_map;
  int dimension() const { return static_cast<int>(basis_map.rows()); }
};

Decomposition computational_decomposition(std::vector<int> dims);

/// Factor-local spectacles V_1 x ... x V_m expressed in original coordinates.
Matrix product_similarity(const std::vector<Matrix>& factors, const Decomposition& decomp);

/// Singular values of the state's coefficient matrix across the cut between
/// factor `cut-1` and factor `cut` (descending).
Eigen::VectorXd schmidt_values(const Vector& psi, const Decomposition& decomp, int cut);

struct BellReport {
  std::vector<std::string> labels;        // phi+, phi-, psi+, psi-
  std::vector<Vector> bell_states;
  Decomposition alternate;                // the A|B qubit pair
  std::vector<Eigen::VectorXd> original_values;   // Schmidt values across 1|2
  std::vector<Eigen::VectorXd> alternate_values;  // Schmidt values across A|B
};

/// The qubit-pair relabeling in which all four Bell states become product
/// states while staying maximally entangled for the original pair.
BellReport bell_alternate_decomposition();

// fixed dim-8 model pair for the two-pictures demonstration
Matrix qubit_chain_hamiltonian();       // three spins, transverse fields + zz couplings
Matrix oscillator_chain_hamiltonian();  // three two-level-truncated oscillators + hopping
std::vector<Matrix> picture_demo_observables();

/// Metric schema: states are unit vectors of a fixed dimension, kinematic
/// maps are all unitaries (membership by unitarity within tolerance), checks
/// run over a seeded probe set and are labeled sampled.
class UnitarySchema {
 public:
  UnitarySchema(int dim, int n_steps, double tolerance = 1e-10, int probe_count = 6,
                std::uint64_t probe_seed = 7);

  using State = Vector;
  using Map = Matrix;

  State apply(const Map& d, const State& x) const;
  Map compose(const Map& a, const Map& b) const { return a * b; }
  Map inverse(const Map& d) const { return d.adjoint(); }
  Map identity_map() const { return Matrix::Identity(dim_, dim_); }
  bool in_kinematic(const Map& d) const;
  bool state_equal(const State& a, const State& b) const {
    return state_distance(a, b) <= tolerance_;
  }
  double state_distance(const State& a, const State& b) const { return (a - b).norm(); }
  bool map_equal(const Map& a, const Map& b) const;
  std::optional<std::string> bijection_failure(const Map& v) const;
  const std::vector<Map>& probe_maps() const { return probes_; }
  bool sampled() const { return true; }
  bool reversible() const { return true; }
  int n_steps() const { return n_steps_; }
  int dimension() const { return dim_; }
  double tolerance() const { return tolerance_; }

  std::optional<Map> transport(const State& x, const State& y) const {
    return state_transporter(x, y);
  }

 private:
  int dim_;
  int n_steps_;
  double tolerance_;
  std::vector<Matrix> probes_;
};

Instance<UnitarySchema> random_unitary_instance(const UnitarySchema& schema, Rng& rng);

/// State proposition: the state has Schmidt rank above one across the given
/// cut (second singular value above rank_tol).
Proposition<UnitarySchema> entangled_cut_proposition(const Decomposition& decomp, int cut,
                                                     double rank_tol = 1e-8);

}  // namespace schemalab::quantum
