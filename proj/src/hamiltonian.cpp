#include "csdirac/hamiltonian.hpp"

#include <stdexcept>

namespace csdirac {

DiracHamiltonian::DiracHamiltonian(const Grid1D& grid, const PotentialSpec& potential, int charge_sign,
                                   const Constants& pc, const Gammas& g, std::optional<double> time)
    : spectral_(grid), charge_sign_(charge_sign), pc_(pc), alpha_z_(alpha(g, 3)), beta_(beta(g)) {
  pc.validate();
  potential.validate(grid);
  if (charge_sign != 1 && charge_sign != -1) throw std::invalid_argument("charge_sign must be +1 or -1");
  if (time) {
    a0_ = potential.a0_at(*time);
    a_z_ = potential.a_z_at(*time);
  } else {
    a0_ = potential.a0;
    a_z_ = potential.a_z;
  }
}

Mat4 DiracHamiltonian::free_block(double k) const {
  return (pc_.hbar * pc_.c * k) * alpha_z_ + pc_.rest_energy() * beta_;
}

FieldValues DiracHamiltonian::apply(const FieldValues& psi) const {
  const double q = charge_sign_ * pc_.e;
  const FieldValues dpsi = spectral_.derivative(psi);
  FieldValues out = cdouble(0, -pc_.hbar * pc_.c) * (alpha_z_ * dpsi) + pc_.rest_energy() * (beta_ * psi);
  const FieldValues apsi = alpha_z_ * psi;
  for (int j = 0; j < psi.cols(); ++j) out.col(j) += q * a0_(j) * psi.col(j) - q * a_z_(j) * apsi.col(j);
  return out;
}

GridField DiracHamiltonian::apply(const GridField& psi) const {
  GridField out = psi;
  out.values = apply(psi.values);
  return out;
}

Eigen::MatrixXcd DiracHamiltonian::dense() const {
  const int n = grid().size();
  const double q = charge_sign_ * pc_.e;
  // circulant derivative kernel: column 0 of the spectral derivative matrix
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
  delta(0) = 1;
  const Eigen::VectorXd kernel = spectral_.derivative(delta);
  const Mat4 kinetic = cdouble(0, -pc_.hbar * pc_.c) * alpha_z_;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = kernel((i - j + n) % n);
      if (d != 0) h.block<4, 4>(4 * i, 4 * j) = d * kinetic;
    }
    h.block<4, 4>(4 * i, 4 * i) +=
        pc_.rest_energy() * beta_ + q * a0_(i) * Mat4::Identity() - q * a_z_(i) * alpha_z_;
  }
  return h;
}

DiracHamiltonian build_hamiltonian(const Grid1D& grid, const PotentialSpec& potential, int charge_sign,
                                   const Constants& pc, const Gammas& g) {
  if (!potential.is_stationary()) throw std::invalid_argument("build_hamiltonian: potential is not stationary");
  return DiracHamiltonian(grid, potential, charge_sign, pc, g);
}

double hermiticity_residual(const Eigen::MatrixXcd& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }

double dirac_residual(const GridField& psi, const FieldValues& time_derivative, const DiracHamiltonian& h) {
  const FieldValues r = cdouble(0, h.constants().hbar) * time_derivative - h.apply(psi.values);
  return r.cwiseAbs().maxCoeff();
}

}  // namespace csdirac
