#include "csdirac/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace csdirac {

Eigen::VectorXd probability_density(const GridField& field) {
  return field.values.colwise().squaredNorm().transpose();
}

CurrentDensity current_density(const GridField& field, const Gammas& g, const Constants& pc) {
  const FieldValues az_psi = alpha(g, 3) * field.values;
  CurrentDensity j;
  j.j_z = pc.c * field.values.conjugate().cwiseProduct(az_psi).colwise().sum().real().transpose();
  j.j_0 = pc.c * probability_density(field);
  return j;
}

double continuity_residual(const Trajectory& traj, const Gammas& g, const Constants& pc) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) throw std::invalid_argument("continuity_residual: need at least 3 snapshots");
  const double h = snaps[1].time - snaps[0].time;
  for (std::size_t s = 1; s < snaps.size(); ++s) {
    if (std::abs(snaps[s].time - snaps[s - 1].time - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("continuity_residual: snapshots are not uniformly spaced");
  }
  const Spectral spectral(snaps.front().grid);
  double worst = 0;
  for (std::size_t s = 1; s + 1 < snaps.size(); ++s) {
    const Eigen::VectorXd drho = (probability_density(snaps[s + 1]) - probability_density(snaps[s - 1])) / (2 * h);
    const Eigen::VectorXd djz = spectral.derivative(current_density(snaps[s], g, pc).j_z);
    worst = std::max(worst, (drho + djz).cwiseAbs().maxCoeff());
  }
  return worst;
}

FieldValues time_derivative(const GridField& field, const DiracHamiltonian& h) {
  return cdouble(0, -1.0 / h.constants().hbar) * h.apply(field.values);
}

EnergyMomentum total_energy_momentum(const GridField& field, const DiracHamiltonian& h) {
  const double dz = field.grid.spacing();
  const Spectral spectral(field.grid);
  const FieldValues d = spectral.derivative(field.values);
  EnergyMomentum out;
  out.momentum = (cdouble(0, -h.constants().hbar) * dz * field.values.conjugate().cwiseProduct(d).sum()).real();
  out.energy = (dz * field.values.conjugate().cwiseProduct(h.apply(field.values)).sum()).real();
  return out;
}

namespace {

// d_mu psi for mu = 3 (spectral) and mu = 4 (-(i/c) d_t psi); zero for x, y.
FieldValues coordinate_derivative(const GridField& field, const FieldValues& dt_psi, int mu, const Constants& pc) {
  switch (mu) {
    case 1:
    case 2:
      return FieldValues::Zero(4, field.size());
    case 3:
      return Spectral(field.grid).derivative(field.values);
    case 4:
      return cdouble(0, -1.0 / pc.c) * dt_psi;
    default:
      throw std::invalid_argument("tensor index must be in 1..4");
  }
}

// The coordinate derivative of psibar is taken without conjugating the
// -(i/c) factor of d_4, since x4 = ict is a formal coordinate.
FieldValues coordinate_derivative_bar(const GridField& field, const FieldValues& dt_psi, int mu,
                                      const Constants& pc) {
  switch (mu) {
    case 1:
    case 2:
      return FieldValues::Zero(4, field.size());
    case 3:
      return Spectral(field.grid).derivative(field.values).conjugate();
    case 4:
      return cdouble(0, -1.0 / pc.c) * dt_psi.conjugate();
    default:
      throw std::invalid_argument("tensor index must be in 1..4");
  }
}

// pointwise (conj(a))^T gamma4 m b, i.e. abar m b when a = conj of a column
Eigen::VectorXcd bilinear(const FieldValues& a_conj, const Mat4& gamma4_m, const FieldValues& b) {
  return a_conj.cwiseProduct(gamma4_m * b).colwise().sum().transpose();
}

}  // namespace

Eigen::VectorXd lagrangian_density(const GridField& field, const FieldValues& dt_psi, const PotentialSpec& potential,
                                   const Constants& pc, const Gammas& g) {
  potential.validate(field.grid);
  if (dt_psi.cols() != field.values.cols()) throw std::invalid_argument("lagrangian_density: size mismatch");
  const double q = field.charge_sign * pc.e;
  const Eigen::VectorXd a0 = potential.a0_at(field.time);
  const Eigen::VectorXd az = potential.a_z_at(field.time);
  const FieldValues psi_conj = field.values.conjugate();
  Eigen::VectorXcd lag = Eigen::VectorXcd::Zero(field.size());
  for (int mu = 3; mu <= 4; ++mu) {
    const Mat4 g4g = g(4) * g(mu);
    const FieldValues d = coordinate_derivative(field, dt_psi, mu, pc);
    const FieldValues dbar = coordinate_derivative_bar(field, dt_psi, mu, pc);
    lag += -0.5 * pc.c * pc.hbar * (bilinear(psi_conj, g4g, d) - bilinear(dbar, g4g, field.values));
    const Eigen::VectorXcd current = bilinear(psi_conj, g4g, field.values);
    if (mu == 3)
      lag += cdouble(0, q) * az.cast<cdouble>().cwiseProduct(current);
    else
      lag += cdouble(0, q) * cdouble(0, 1) * a0.cast<cdouble>().cwiseProduct(current);
  }
  lag -= pc.rest_energy() * bilinear(psi_conj, g(4), field.values);
  return lag.real();
}

Eigen::VectorXcd stress_tensor_density(const GridField& field, const FieldValues& dt_psi, int mu, int nu,
                                       const Constants& pc, const Gammas& g) {
  if (mu < 1 || mu > 4 || nu < 1 || nu > 4) throw std::invalid_argument("stress_tensor_density: index must be in 1..4");
  const Mat4 g4g = g(4) * g(nu);
  const FieldValues d = coordinate_derivative(field, dt_psi, mu, pc);
  const FieldValues dbar = coordinate_derivative_bar(field, dt_psi, mu, pc);
  const double half = 0.5 * pc.c * pc.hbar;
  return -half * bilinear(field.values.conjugate(), g4g, d) + half * bilinear(dbar, g4g, field.values);
}

EnergyMomentum tensor_energy_momentum(const GridField& field, const FieldValues& dt_psi, const Constants& pc,
                                      const Gammas& g) {
  const double dz = field.grid.spacing();
  EnergyMomentum out;
  out.energy = (dz * stress_tensor_density(field, dt_psi, 4, 4, pc, g).sum()).real();
  out.momentum = (cdouble(0, 1.0 / pc.c) * dz * stress_tensor_density(field, dt_psi, 3, 4, pc, g).sum()).real();
  return out;
}

double position_expectation(const GridField& field) {
  const Eigen::VectorXd rho = probability_density(field);
  const double norm = field.grid.spacing() * rho.sum();
  if (norm < 1e-12) throw std::domain_error("position_expectation: field norm below 1e-12");
  return field.grid.spacing() * rho.dot(field.grid.positions()) / norm;
}

ObservableReport observe(const GridField& field, const DiracHamiltonian& h) {
  ObservableReport r;
  r.time = field.time;
  r.norm = norm_squared(field);
  const EnergyMomentum em = total_energy_momentum(field, h);
  r.energy = em.energy;
  r.momentum = em.momentum;
  r.mean_x = r.norm >= 1e-12 ? position_expectation(field) : 0.0;
  return r;
}

}  // namespace csdirac
