#pragma once

// Born-interpretation quantities of a probability amplitude: density,
// current, continuity, Lagrangian density, energy-momentum tensor and the
// total energy and momentum.

#include "csdirac/evolution.hpp"
#include "csdirac/hamiltonian.hpp"

#include <Eigen/Dense>

namespace csdirac {

/// rho(z) = psi^+ psi.
Eigen::VectorXd probability_density(const GridField& field);

struct CurrentDensity {
  Eigen::VectorXd j_z;  // c psi^+ alpha_z psi
  Eigen::VectorXd j_0;  // c rho
};

/// j_mu = i c psibar gamma_mu psi restricted to the z and time components.
CurrentDensity current_density(const GridField& field, const Gammas& g, const Constants& pc);

/// max over interior snapshots of |d rho/dt + d j_z/dz|, with a central
/// difference in time and a spectral derivative in z. Needs >= 3 snapshots
/// with uniform spacing.
double continuity_residual(const Trajectory& traj, const Gammas& g, const Constants& pc);

struct EnergyMomentum {
  double energy = 0;    // W
  double momentum = 0;  // P_z
};

/// P = -i hbar sum psi^+ d_z psi dz and W = sum psi^+ H psi dz (i hbar d_t psi
/// realized as H psi).
EnergyMomentum total_energy_momentum(const GridField& field, const DiracHamiltonian& h);

/// Lagrangian density of one species,
///   -(c hbar / 2)(psibar gamma_mu d_mu psi - d_mu psibar gamma_mu psi)
///   + i q A_mu psibar gamma_mu psi - m c^2 psibar psi,
/// with d_4 = -(i/c) d_t, A_4 = i A0 and q = charge_sign * e. The time
/// derivative is supplied; it vanishes on shell.
Eigen::VectorXd lagrangian_density(const GridField& field, const FieldValues& time_derivative,
                                   const PotentialSpec& potential, const Constants& pc, const Gammas& g);

/// Energy-momentum tensor density
///   T_mu_nu = -(c hbar / 2) psibar gamma_nu d_mu psi + (c hbar / 2) d_mu psibar gamma_nu psi
/// for mu, nu in 1..4. x and y derivatives vanish in 1+1-D, so mu = 1, 2 give
/// zeros. Throws for indices outside 1..4.
Eigen::VectorXcd stress_tensor_density(const GridField& field, const FieldValues& time_derivative, int mu, int nu,
                                       const Constants& pc, const Gammas& g);

/// d_t psi = -(i / hbar) H psi.
FieldValues time_derivative(const GridField& field, const DiracHamiltonian& h);

/// Energy and momentum from the tensor: W = sum T_44 dz, P_z = (i/c) sum T_34 dz.
EnergyMomentum tensor_energy_momentum(const GridField& field, const FieldValues& time_derivative,
                                      const Constants& pc, const Gammas& g);

/// sum z rho dz / sum rho dz with the origin at the box center.
/// Throws std::domain_error when the norm is below 1e-12.
double position_expectation(const GridField& field);

struct ObservableReport {
  double time = 0;
  double norm = 0;
  double energy = 0;
  double momentum = 0;
  double mean_x = 0;
};

ObservableReport observe(const GridField& field, const DiracHamiltonian& h);

}  // namespace csdirac
