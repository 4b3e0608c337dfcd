#include "schemalab/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace schemalab::flows {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

PhaseGradient finite_difference_gradient(const EnergyFn& energy, const Eigen::VectorXd& q,
                                         const Eigen::VectorXd& p, double t) {
  const double h = DrivingHamiltonian::kFiniteDifferenceStep;
  PhaseGradient g;
  g.dq.resize(q.size());
  g.dp.resize(p.size());
  Eigen::VectorXd qq = q;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    qq(i) = q(i) + h;
    const double above = energy(qq, p, t);
    qq(i) = q(i) - h;
    const double below = energy(qq, p, t);
    qq(i) = q(i);
    g.dq(i) = (above - below) / (2.0 * h);
  }
  Eigen::VectorXd pp = p;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    pp(i) = p(i) + h;
    const double above = energy(q, pp, t);
    pp(i) = p(i) - h;
    const double below = energy(q, pp, t);
    pp(i) = p(i);
    g.dp(i) = (above - below) / (2.0 * h);
  }
  return g;
}

}  // namespace

DrivingHamiltonian::DrivingHamiltonian(std::string name, double duration, EnergyFn energy,
                                       GradientFn gradient)
    : name_(std::move(name)), duration_(duration) {
  if (duration_ <= 0) throw std::invalid_argument("duration must be positive");
  if (!energy) throw std::invalid_argument("energy function required");
  pieces_.push_back(Piece{0.0, duration_, std::move(energy), std::move(gradient)});
}

DrivingHamiltonian::DrivingHamiltonian(std::string name, double duration, std::vector<Piece> pieces)
    : name_(std::move(name)), duration_(duration), pieces_(std::move(pieces)) {
  if (duration_ <= 0) throw std::invalid_argument("duration must be positive");
  if (pieces_.empty()) throw std::invalid_argument("need at least one piece");
  double t = 0.0;
  for (const auto& piece : pieces_) {
    if (std::abs(piece.t_begin - t) > 1e-12 || piece.t_end <= piece.t_begin)
      throw std::invalid_argument("pieces must tile [0, duration] in order");
    t = piece.t_end;
  }
  if (std::abs(t - duration_) > 1e-12)
    throw std::invalid_argument("pieces must cover the full duration");
}

const DrivingHamiltonian::Piece& DrivingHamiltonian::piece_at(double t) const {
  // boundary times belong to the earlier piece
  for (const auto& piece : pieces_)
    if (t <= piece.t_end || &piece == &pieces_.back()) return piece;
  return pieces_.back();
}

double DrivingHamiltonian::energy(const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                                  double t) const {
  return piece_at(t).energy(q, p, t);
}

PhaseGradient DrivingHamiltonian::gradient(const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                                           double t) const {
  const Piece& piece = piece_at(t);
  if (piece.gradient) return piece.gradient(q, p, t);
  return finite_difference_gradient(piece.energy, q, p, t);
}

namespace {

// RK4 across one smooth piece, endpoints evaluated with that piece's own
// functions (one-sided limits at switch times).
void rk4_piece(const DrivingHamiltonian::Piece& piece, PhasePoint& z, double t0, double t1,
               int steps) {
  const double h = (t1 - t0) / steps;
  auto deriv = [&piece](const PhasePoint& at, double t, PhaseGradient& out) {
    if (piece.gradient) {
      out = piece.gradient(at.q, at.p, t);
    } else {
      out = finite_difference_gradient(piece.energy, at.q, at.p, t);
    }
  };
  PhaseGradient k1, k2, k3, k4;
  PhasePoint probe;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    deriv(z, t, k1);
    probe.q = z.q + 0.5 * h * k1.dp;
    probe.p = z.p - 0.5 * h * k1.dq;
    deriv(probe, t + 0.5 * h, k2);
    probe.q = z.q + 0.5 * h * k2.dp;
    probe.p = z.p - 0.5 * h * k2.dq;
    deriv(probe, t + 0.5 * h, k3);
    probe.q = z.q + h * k3.dp;
    probe.p = z.p - h * k3.dq;
    deriv(probe, t + h, k4);
    z.q += (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    z.p -= (h / 6.0) * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    if (!finite(z.q) || !finite(z.p))
      throw std::runtime_error("phase-space state blew up during integration");
  }
}

}  // namespace

PhasePoint integrate(const DrivingHamiltonian& h, const PhasePoint& start, double duration,
                     int steps) {
  if (steps < 1) throw std::invalid_argument("need at least one step");
  if (duration <= 0) throw std::invalid_argument("duration must be positive");
  if (duration > h.duration() + 1e-12)
    throw std::invalid_argument("generator is not defined past its declared duration");
  if (start.q.size() != start.p.size())
    throw std::invalid_argument("phase point needs matching q and p lengths");
  PhasePoint z = start;
  for (const auto& piece : h.pieces()) {
    const double begin = piece.t_begin;
    const double end = std::min(piece.t_end, duration);
    if (end <= begin) break;
    const double fraction = (end - begin) / duration;
    const int piece_steps = std::max(1, static_cast<int>(std::llround(steps * fraction)));
    rk4_piece(piece, z, begin, end, piece_steps);
    if (end >= duration) break;
  }
  return z;
}

DrivingHamiltonian compose_hamiltonians(const DrivingHamiltonian& first,
                                        const DrivingHamiltonian& second, double duration) {
  if (duration <= 0) throw std::invalid_argument("duration must be positive");
  std::vector<DrivingHamiltonian::Piece> pieces;
  auto add_scaled = [&pieces](const DrivingHamiltonian::Piece& src, double offset) {
    // source piece [a, b] runs at double rate inside [offset + a/2, offset + b/2]
    DrivingHamiltonian::Piece out;
    out.t_begin = offset + 0.5 * src.t_begin;
    out.t_end = offset + 0.5 * src.t_end;
    const double shift = 2.0 * offset;
    const EnergyFn energy = src.energy;
    out.energy = [energy, shift](const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t) {
      return 2.0 * energy(q, p, 2.0 * t - shift);
    };
    if (src.gradient) {
      const GradientFn gradient = src.gradient;
      out.gradient = [gradient, shift](const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                                       double t) {
        PhaseGradient g = gradient(q, p, 2.0 * t - shift);
        g.dq *= 2.0;
        g.dp *= 2.0;
        return g;
      };
    }
    pieces.push_back(std::move(out));
  };
  for (const auto& piece : first.pieces()) add_scaled(piece, 0.0);
  for (const auto& piece : second.pieces()) add_scaled(piece, 0.5 * duration);
  return DrivingHamiltonian(second.name() + "*" + first.name(), duration, std::move(pieces));
}

DrivingHamiltonian reverse_hamiltonian(const DrivingHamiltonian& h, double duration) {
  if (duration <= 0) throw std::invalid_argument("duration must be positive");
  std::vector<DrivingHamiltonian::Piece> pieces;
  const auto& src = h.pieces();
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    DrivingHamiltonian::Piece out;
    out.t_begin = duration - it->t_end;
    out.t_end = duration - it->t_begin;
    const EnergyFn energy = it->energy;
    out.energy = [energy, duration](const Eigen::VectorXd& q, const Eigen::VectorXd& p, double t) {
      return -energy(q, p, duration - t);
    };
    if (it->gradient) {
      const GradientFn gradient = it->gradient;
      out.gradient = [gradient, duration](const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                                          double t) {
        PhaseGradient g = gradient(q, p, duration - t);
        g.dq = -g.dq;
        g.dp = -g.dp;
        return g;
      };
    }
    pieces.push_back(std::move(out));
  }
  return DrivingHamiltonian("reverse(" + h.name() + ")", duration, std::move(pieces));
}

DrivingHamiltonian steering_hamiltonian(const PhasePoint& from, const PhasePoint& to,
                                        double duration) {
  if (duration <= 0) throw std::invalid_argument("duration must be positive");
  if (from.q.size() != to.q.size() || from.p.size() != to.p.size())
    throw std::invalid_argument("endpoints need matching dimensions");
  const Eigen::VectorXd velocity = (to.q - from.q) / duration;  // dq*/dt
  const Eigen::VectorXd force = (to.p - from.p) / duration;     // dp*/dt
  EnergyFn energy = [velocity, force](const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                                      double) { return p.dot(velocity) - q.dot(force); };
  GradientFn gradient = [velocity, force](const Eigen::VectorXd&, const Eigen::VectorXd&, double) {
    PhaseGradient g;
    g.dq = -force;
    g.dp = velocity;
    return g;
  };
  return DrivingHamiltonian("steer", duration, std::move(energy), std::move(gradient));
}

DrivingHamiltonian catalog_hamiltonian(const std::string& key, int dof, double duration) {
  if (dof < 1) throw std::invalid_argument("need at least one degree of freedom");
  if (key == "ZERO") {
    return DrivingHamiltonian(
        "zero", duration,
        [](const Eigen::VectorXd&, const Eigen::VectorXd&, double) { return 0.0; },
        [dof](const Eigen::VectorXd&, const Eigen::VectorXd&, double) {
          PhaseGradient g;
          g.dq = Eigen::VectorXd::Zero(dof);
          g.dp = Eigen::VectorXd::Zero(dof);
          return g;
        });
  }
  if (key == "FREE") {
    return DrivingHamiltonian(
        "free", duration,
        [](const Eigen::VectorXd&, const Eigen::VectorXd& p, double) { return p.sum(); },
        [dof](const Eigen::VectorXd&, const Eigen::VectorXd&, double) {
          PhaseGradient g;
          g.dq = Eigen::VectorXd::Zero(dof);
          g.dp = Eigen::VectorXd::Ones(dof);
          return g;
        });
  }
  if (key == "HARMONIC") {
    return DrivingHamiltonian(
        "harmonic", duration,
        [](const Eigen::VectorXd& q, const Eigen::VectorXd& p, double) {
          return 0.5 * (p.squaredNorm() + q.squaredNorm());
        },
        [](const Eigen::VectorXd& q, const Eigen::VectorXd& p, double) {
          PhaseGradient g;
          g.dq = q;
          g.dp = p;
          return g;
        });
  }
  if (key == "KICK") {
    return DrivingHamiltonian(
        "kick", duration,
        [](const Eigen::VectorXd& q, const Eigen::VectorXd&, double) { return -q.sum(); },
        [dof](const Eigen::VectorXd&, const Eigen::VectorXd&, double) {
          PhaseGradient g;
          g.dq = -Eigen::VectorXd::Ones(dof);
          g.dp = Eigen::VectorXd::Zero(dof);
          return g;
        });
  }
  throw std::invalid_argument("unknown catalog key '" + key + "'");
}

}  // namespace schemalab::flows
