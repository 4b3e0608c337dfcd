#include "schemalab/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace schemalab::quantum {

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " must be square");
}

void require_unit(const Vector& v, double tol = 1e-12) {
  if (std::abs(v.norm() - 1.0) > tol)
    throw std::invalid_argument("state vector is not unit norm (|norm-1| = " +
                                std::to_string(std::abs(v.norm() - 1.0)) + ")");
}

}  // namespace

double unitarity_defect(const Matrix& u) {
  require_square(u, "operator");
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

double hermiticity_defect(const Matrix& a) {
  require_square(a, "observable");
  return max_abs(a - a.adjoint());
}

bool is_unitary(const Matrix& u, double tol) { return unitarity_defect(u) <= tol; }
bool is_hermitian(const Matrix& a, double tol) { return hermiticity_defect(a) <= tol; }

Matrix expm(const Matrix& a) {
  require_square(a, "exponent");
  const int n = static_cast<int>(a.rows());
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::pow(2.0, squarings);

  Matrix term = Matrix::Identity(n, n);
  Matrix sum = Matrix::Identity(n, n);
  for (int k = 1; k <= 64; ++k) {
    term = (scaled * term) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) <= 1e-18 * std::max(1.0, max_abs(sum))) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty factor list");
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

Vector align_phase(const Vector& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag + 1e-15) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return v;
  return v * (std::conj(v(best)) / best_mag);
}

double phase_aligned_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  return (align_phase(a) - align_phase(b)).norm();
}

Vector random_state(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_hermitian(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return 0.5 * (g + g.adjoint());
}

UnitarySchedule UnitarySchedule::from_steps(std::vector<Matrix> steps, double step_tol) {
  if (steps.empty()) throw std::invalid_argument("schedule needs at least one interval");
  const Eigen::Index d = steps.front().rows();
  UnitarySchedule out;
  out.cumulative_.push_back(Matrix::Identity(d, d));
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& u = steps[k];
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("schedule step " + std::to_string(k) + " has mismatched shape");
    if (unitarity_defect(u) > step_tol)
      throw std::invalid_argument("schedule step " + std::to_string(k) + " is not unitary");
    out.cumulative_.push_back(u * out.cumulative_.back());
  }
  out.steps_ = std::move(steps);
  return out;
}

UnitarySchedule UnitarySchedule::from_hamiltonian(const Matrix& hamiltonian, double total_time,
                                                  int intervals) {
  require_square(hamiltonian, "generator");
  if (!is_hermitian(hamiltonian, 1e-12))
    throw std::invalid_argument("generator must be Hermitian");
  if (intervals < 1) throw std::invalid_argument("need at least one interval");
  const double dt = total_time / intervals;
  const Matrix step = expm(Cplx(0.0, -1.0) * dt * hamiltonian);
  return from_steps(std::vector<Matrix>(static_cast<std::size_t>(intervals), step));
}

std::vector<Vector> evolve(const Vector& psi0, const UnitarySchedule& schedule) {
  if (psi0.size() != schedule.dimension()) throw std::invalid_argument("dimension mismatch");
  require_unit(psi0);
  std::vector<Vector> traj;
  traj.reserve(static_cast<std::size_t>(schedule.intervals()) + 1);
  traj.push_back(psi0);
  for (int k = 1; k <= schedule.intervals(); ++k) traj.push_back(schedule.step(k - 1) * traj.back());
  return traj;
}

Matrix heisenberg_observable(const Matrix& observable, const UnitarySchedule& schedule, int k) {
  if (observable.rows() != schedule.dimension() || observable.cols() != schedule.dimension())
    throw std::invalid_argument("dimension mismatch");
  const Matrix& u = schedule.cumulative(k);
  return u.adjoint() * observable * u;
}

Matrix picture_observable(const Matrix& observable, const UnitarySchedule& actual,
                          const UnitarySchedule& alternate, int k) {
  if (actual.intervals() != alternate.intervals())
    throw std::invalid_argument("schedules must share the time grid");
  if (actual.dimension() != alternate.dimension() ||
      observable.rows() != actual.dimension() || observable.cols() != actual.dimension())
    throw std::invalid_argument("dimension mismatch");
  const Matrix& u = actual.cumulative(k);
  const Matrix& v = alternate.cumulative(k);
  return (u * v.adjoint()) * observable * (v * u.adjoint());
}

double verify_picture_equivalence(const Vector& psi0, const UnitarySchedule& actual,
                                  const UnitarySchedule& alternate,
                                  const std::vector<Matrix>& observables) {
  if (observables.empty()) throw std::invalid_argument("need at least one observable");
  if (psi0.size() != actual.dimension()) throw std::invalid_argument("dimension mismatch");
  require_unit(psi0);
  double worst = 0.0;
  for (int k = 0; k <= actual.intervals(); ++k) {
    const Matrix& u = actual.cumulative(k);
    const Matrix& v = alternate.cumulative(k);
    const Vector via_actual = u * psi0;      // |Psi(t_k)> under the actual evolution
    const Vector via_alternate = v * psi0;   // hypothetical alternate evolution
    for (const auto& b : observables) {
      const Matrix dressed = picture_observable(b, actual, alternate, k);
      const Cplx lhs = via_actual.dot(dressed * via_actual);
      const Cplx rhs = via_alternate.dot(b * via_alternate);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

namespace {

constexpr int kSpinDim = 2;
constexpr int kDeviceDim = 3;  // apparatus: blank/plus/minus; observer: ready/up/down
constexpr int kChainDim = kSpinDim * kDeviceDim * kDeviceDim;

int chain_index(int spin, int apparatus, int observer) {
  return (spin * kDeviceDim + apparatus) * kDeviceDim + observer;
}

// permutation unitary built from a basis-index relabeling
Matrix permutation_unitary(const std::vector<int>& image) {
  Matrix u = Matrix::Zero(static_cast<int>(image.size()), static_cast<int>(image.size()));
  for (std::size_t i = 0; i < image.size(); ++i) u(image[i], static_cast<Eigen::Index>(i)) = 1.0;
  return u;
}

}  // namespace

MeasurementChainReport measurement_chain(Cplx alpha, Cplx beta) {
  const double weight = std::norm(alpha) + std::norm(beta);
  if (std::abs(weight - 1.0) > 1e-12)
    throw std::invalid_argument("branch amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");

  // First interaction: the spin sets the apparatus pointer (blank<->plus for
  // spin up, blank<->minus for spin down).  Second interaction: the pointer
  // sets the observer memory the same way.  Both are permutations of the
  // basis, so they are exactly unitary; unreachable basis states are carried
  // along by the same swap rule.
  std::vector<int> first(kChainDim), second(kChainDim);
  for (int s = 0; s < kSpinDim; ++s) {
    for (int a = 0; a < kDeviceDim; ++a) {
      for (int o = 0; o < kDeviceDim; ++o) {
        const int pointer_swap = (s == 0) ? (a == 0 ? 1 : (a == 1 ? 0 : 2))
                                          : (a == 0 ? 2 : (a == 2 ? 0 : 1));
        first[static_cast<std::size_t>(chain_index(s, a, o))] = chain_index(s, pointer_swap, o);
        const int memory_swap = (a == 1) ? (o == 0 ? 1 : (o == 1 ? 0 : 2))
                               : (a == 2) ? (o == 0 ? 2 : (o == 2 ? 0 : 1))
                                          : o;
        second[static_cast<std::size_t>(chain_index(s, a, o))] = chain_index(s, a, memory_swap);
      }
    }
  }
  const Matrix correlate_apparatus = permutation_unitary(first);
  const Matrix correlate_observer = permutation_unitary(second);

  // C: projection onto spin/memory agreement, any apparatus reading.
  Matrix c = Matrix::Zero(kChainDim, kChainDim);
  for (int a = 0; a < kDeviceDim; ++a) {
    c(chain_index(0, a, 1), chain_index(0, a, 1)) = 1.0;
    c(chain_index(1, a, 2), chain_index(1, a, 2)) = 1.0;
  }

  Vector psi = Vector::Zero(kChainDim);
  psi(chain_index(0, 0, 0)) = alpha;
  psi(chain_index(1, 0, 0)) = beta;

  auto correlation = [&c](const Vector& v) { return v.dot(c * v).real(); };

  MeasurementChainReport report;
  report.stages.push_back({"initial", psi, correlation(psi)});
  psi = correlate_apparatus * psi;
  report.stages.push_back({"after-apparatus-interaction", psi, correlation(psi)});
  psi = correlate_observer * psi;
  report.stages.push_back({"after-observer-interaction", psi, correlation(psi)});

  Vector expected = Vector::Zero(kChainDim);
  expected(chain_index(0, 1, 1)) = alpha;
  expected(chain_index(1, 2, 2)) = beta;
  report.expected_final = expected;
  report.final_deviation = phase_aligned_distance(psi, expected);
  return report;
}

Matrix state_transporter(const Vector& from, const Vector& to) {
  if (from.size() != to.size()) throw std::invalid_argument("dimension mismatch");
  require_unit(from);
  require_unit(to);
  const int n = static_cast<int>(from.size());
  const Cplx overlap = from.dot(to);
  const Vector resid = to - overlap * from;
  const double r = resid.norm();
  if (r < 1e-14) {
    // target is a phase multiple of the source: rotate the phase inside
    // span{from}, identity elsewhere
    return Matrix::Identity(n, n) + (overlap - 1.0) * (from * from.adjoint());
  }
  const Vector e1 = from;
  const Vector e2 = resid / r;
  // 2x2 unitary [[a, -r], [r, conj(a)]] on span{e1, e2} with a = overlap
  Matrix w = Matrix::Identity(n, n);
  w -= e1 * e1.adjoint();
  w -= e2 * e2.adjoint();
  w += (overlap * e1 + r * e2) * e1.adjoint();
  w += (-r * e1 + std::conj(overlap) * e2) * e2.adjoint();
  return w;
}

Decomposition computational_decomposition(std::vector<int> dims) {
  if (dims.empty()) throw std::invalid_argument("decomposition needs at least one factor");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("factor dimensions must be positive");
    total *= d;
  }
  Decomposition out;
  out.dims = std::move(dims);
  out.basis_map = Matrix::Identity(static_cast<int>(total), static_cast<int>(total));
  return out;
}

Matrix product_similarity(const std::vector<Matrix>& factors, const Decomposition& decomp) {
  if (factors.size() != decomp.dims.size())
    throw std::invalid_argument("one factor operator per subsystem required");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].rows() != decomp.dims[i] || factors[i].cols() != decomp.dims[i])
      throw std::invalid_argument("factor " + std::to_string(i) + " has the wrong dimension");
  }
  return decomp.basis_map * kron(factors) * decomp.basis_map.adjoint();
}

Eigen::VectorXd schmidt_values(const Vector& psi, const Decomposition& decomp, int cut) {
  if (psi.size() != decomp.dimension()) throw std::invalid_argument("dimension mismatch");
  if (cut < 1 || cut >= static_cast<int>(decomp.dims.size()))
    throw std::invalid_argument("cut must split the factor list");
  long long left = 1, right = 1;
  for (int i = 0; i < cut; ++i) left *= decomp.dims[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(cut); i < decomp.dims.size(); ++i)
    right *= decomp.dims[i];
  const Vector coeff = decomp.basis_map.adjoint() * psi;
  Matrix folded(static_cast<int>(left), static_cast<int>(right));
  for (long long i = 0; i < left; ++i)
    for (long long j = 0; j < right; ++j)
      folded(static_cast<int>(i), static_cast<int>(j)) = coeff(static_cast<int>(i * right + j));
  Eigen::JacobiSVD<Matrix> svd(folded);
  return svd.singularValues();
}

BellReport bell_alternate_decomposition() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector phi_plus(4), phi_minus(4), psi_plus(4), psi_minus(4);
  phi_plus << s, 0, 0, s;
  phi_minus << s, 0, 0, -s;
  psi_plus << 0, s, s, 0;
  psi_minus << 0, s, -s, 0;

  BellReport report;
  report.labels = {"phi+", "phi-", "psi+", "psi-"};
  report.bell_states = {phi_plus, phi_minus, psi_plus, psi_minus};

  // Alternate qubit pair A|B: qubit A distinguishes the phi-family from the
  // psi-family, qubit B the relative sign.  The product basis |a>|b> of the
  // new pair is, in the original coordinates, exactly the four Bell states.
  Matrix basis(4, 4);
  basis.col(0) = phi_plus;   // |0_A 0_B>
  basis.col(1) = phi_minus;  // |0_A 1_B>
  basis.col(2) = psi_plus;   // |1_A 0_B>
  basis.col(3) = psi_minus;  // |1_A 1_B>
  report.alternate = Decomposition{{2, 2}, basis};

  const auto original = computational_decomposition({2, 2});
  for (const auto& state : report.bell_states) {
    report.original_values.push_back(schmidt_values(state, original, 1));
    report.alternate_values.push_back(schmidt_values(state, report.alternate, 1));
  }
  return report;
}

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix lowering() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix site_operator(const Matrix& op, int site, int sites) {
  std::vector<Matrix> factors(static_cast<std::size_t>(sites), Matrix::Identity(2, 2));
  factors[static_cast<std::size_t>(site)] = op;
  return kron(factors);
}

}  // namespace

Matrix qubit_chain_hamiltonian() {
  const double field[3] = {1.0, 0.9, 1.1};
  const double coupling[2] = {0.75, 0.6};
  Matrix h = Matrix::Zero(8, 8);
  for (int i = 0; i < 3; ++i) h += field[i] * site_operator(pauli_x(), i, 3);
  for (int i = 0; i < 2; ++i)
    h += coupling[i] * (site_operator(pauli_z(), i, 3) * site_operator(pauli_z(), i + 1, 3));
  return h;
}

Matrix oscillator_chain_hamiltonian() {
  const double omega[3] = {1.0, 1.35, 0.8};
  const double hop = 0.5;
  const Matrix a = lowering();
  const Matrix number = a.adjoint() * a;
  Matrix h = Matrix::Zero(8, 8);
  for (int i = 0; i < 3; ++i) h += omega[i] * site_operator(number, i, 3);
  for (int i = 0; i < 2; ++i) {
    const Matrix hopping = site_operator(a.adjoint(), i, 3) * site_operator(a, i + 1, 3);
    h += hop * (hopping + hopping.adjoint());
  }
  return h;
}

std::vector<Matrix> picture_demo_observables() {
  const Matrix a = lowering();
  const Matrix number = a.adjoint() * a;
  std::vector<Matrix> obs;
  obs.push_back(site_operator(number, 0, 3));
  obs.push_back(site_operator(a + a.adjoint(), 1, 3));  // position quadrature
  const Matrix hopping = site_operator(a.adjoint(), 1, 3) * site_operator(a, 2, 3);
  obs.push_back(hopping + hopping.adjoint());
  Rng rng(90125);
  obs.push_back(random_hermitian(8, rng));
  return obs;
}

UnitarySchema::UnitarySchema(int dim, int n_steps, double tolerance, int probe_count,
                             std::uint64_t probe_seed)
    : dim_(dim), n_steps_(n_steps), tolerance_(tolerance) {
  if (dim_ < 1) throw std::invalid_argument("dimension must be positive");
  if (dim_ > 32) throw std::invalid_argument("schema dimension is capped at 32");
  if (n_steps_ < 1) throw std::invalid_argument("schema needs at least one time interval");
  if (tolerance_ <= 0) throw std::invalid_argument("tolerance must be positive");
  if (probe_count < 1) throw std::invalid_argument("probe set must be nonempty");
  Rng rng(probe_seed);
  probes_.push_back(Matrix::Identity(dim_, dim_));
  for (int i = 1; i < probe_count; ++i) probes_.push_back(random_unitary(dim_, rng));
}

UnitarySchema::State UnitarySchema::apply(const Map& d, const State& x) const {
  if (d.rows() != dim_ || d.cols() != dim_ || x.size() != dim_)
    throw std::invalid_argument("dimension mismatch");
  return d * x;
}

bool UnitarySchema::in_kinematic(const Map& d) const {
  if (d.rows() != dim_ || d.cols() != dim_) return false;
  return unitarity_defect(d) <= tolerance_;
}

bool UnitarySchema::map_equal(const Map& a, const Map& b) const {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tolerance_;
}

std::optional<std::string> UnitarySchema::bijection_failure(const Map& v) const {
  // totality is a precondition, not a verdict
  if (v.rows() != dim_ || v.cols() != dim_)
    throw std::invalid_argument("candidate acts on dimension " + std::to_string(v.rows()) +
                                ", schema has " + std::to_string(dim_));
  const double defect = unitarity_defect(v);
  if (defect > tolerance_)
    return "candidate is not unitary within tolerance (defect " + std::to_string(defect) + ")";
  return std::nullopt;
}

Instance<UnitarySchema> random_unitary_instance(const UnitarySchema& schema, Rng& rng) {
  Instance<UnitarySchema> inst;
  inst.start = random_state(schema.dimension(), rng);
  inst.steps.reserve(static_cast<std::size_t>(schema.n_steps()));
  for (int k = 0; k < schema.n_steps(); ++k)
    inst.steps.push_back(random_unitary(schema.dimension(), rng));
  return inst;
}

Proposition<UnitarySchema> entangled_cut_proposition(const Decomposition& decomp, int cut,
                                                     double rank_tol) {
  Proposition<UnitarySchema> p;
  p.name = "entangled-across-cut-" + std::to_string(cut);
  p.arity = Arity::state;
  p.on_state = [decomp, cut, rank_tol](const Vector& x) {
    const auto values = schmidt_values(x, decomp, cut);
    return values.size() > 1 && values(1) > rank_tol;
  };
  return p;
}

}  // namespace schemalab::quantum
