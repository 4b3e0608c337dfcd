#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace schemalab::flows {

struct PhasePoint {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  int dof() const { return static_cast<int>(q.size()); }
};

struct PhaseGradient {
  Eigen::VectorXd dq;  // dH/dq
  Eigen::VectorXd dp;  // dH/dp
};

using EnergyFn = std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t)>;
using GradientFn =
    std::function<PhaseGradient(const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t)>;

/// A (possibly time-dependent) generator of phase-space flow, stored as a
/// sequence of smooth pieces over [0, duration].  Composition and reversal
/// manipulate whole pieces, so integrators never step across a switch time
/// and always evaluate the one-sided limit that belongs to the piece.
class DrivingHamiltonian {
 public:
  struct Piece {
    double t_begin;
    double t_end;
    EnergyFn energy;
    GradientFn gradient;  // central finite differences when absent
  };

  /// Single smooth piece over [0, duration]; gradient optional.
  DrivingHamiltonian(std::string name, double duration, EnergyFn energy,
                     GradientFn gradient = nullptr);
  DrivingHamiltonian(std::string name, double duration, std::vector<Piece> pieces);

  const std::string& name() const { return name_; }
  double duration() const { return duration_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double energy(const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t) const;
  PhaseGradient gradient(const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t) const;

  static constexpr double kFiniteDifferenceStep = 1e-6;

 private:
  const Piece& piece_at(double t) const;
  std::string name_;
  double duration_;
  std::vector<Piece> pieces_;
};

/// Fixed-step fourth-order Runge-Kutta for dq/dt = dH/dp, dp/dt = -dH/dq,
/// from t = 0 to t = duration.  Steps are distributed over the generator's
/// pieces so no step straddles a switch time.  Throws on non-finite state.
PhasePoint integrate(const DrivingHamiltonian& h, const PhasePoint& start, double duration,
                     int steps);

/// Run `first` at double speed over the first half interval, then `second`
/// over the rest: the flow of the result is the composition
/// flow(second) of flow(first) over [0, duration].
DrivingHamiltonian compose_hamiltonians(const DrivingHamiltonian& first,
                                        const DrivingHamiltonian& second, double duration);

/// -H(q, p, duration - t): undoes the flow of h over the same interval.
DrivingHamiltonian reverse_hamiltonian(const DrivingHamiltonian& h, double duration);

/// Generator whose flow translates every phase point by the offset that
/// carries `from` to `to` in the given time: H = p.v(t) - q.f(t) with v, f
/// the slopes of the straight-line interpolants.  A constructive transitivity
/// witness for the Hamiltonian maps.
DrivingHamiltonian steering_hamiltonian(const PhasePoint& from, const PhasePoint& to,
                                        double duration);

/// Built-in catalog: ZERO, FREE (H = sum p), HARMONIC (H = (|p|^2+|q|^2)/2),
/// KICK (H = -sum q).  Analytic gradients.
DrivingHamiltonian catalog_hamiltonian(const std::string& key, int dof, double duration);

}  // namespace schemalab::flows
