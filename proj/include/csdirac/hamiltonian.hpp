#pragma once

#include "csdirac/grid.hpp"

#include <Eigen/Dense>

#include <optional>

namespace csdirac {

/// Discretized Dirac Hamiltonian on the periodic grid,
///   H = c alpha_z (p - (q/c) A_z) + q A0 + beta m c^2,   q = charge_sign * e,
/// with alpha_z = i gamma4 gamma3, beta = gamma4 and p = -i hbar d/dz
/// realized spectrally. Applied matrix-free or assembled densely
/// (row/column index 4*j + a for point j, component a).
class DiracHamiltonian {
 public:
  /// Uses the potential at `time` (stationary part only when time is empty).
  DiracHamiltonian(const Grid1D& grid, const PotentialSpec& potential, int charge_sign, const Constants& pc,
                   const Gammas& g, std::optional<double> time = std::nullopt);

  const Grid1D& grid() const { return spectral_.grid(); }
  int charge_sign() const { return charge_sign_; }
  const Constants& constants() const { return pc_; }

  FieldValues apply(const FieldValues& psi) const;
  GridField apply(const GridField& psi) const;

  /// 4N x 4N dense matrix.
  Eigen::MatrixXcd dense() const;

  /// Per-k free block hbar c k alpha_z + beta m c^2.
  Mat4 free_block(double k) const;

 private:
  Spectral spectral_;
  Eigen::VectorXd a0_;
  Eigen::VectorXd a_z_;
  int charge_sign_;
  Constants pc_;
  Mat4 alpha_z_;
  Mat4 beta_;
};

/// Stationary Hamiltonian; throws std::invalid_argument for a potential with
/// a nonstationary part.
DiracHamiltonian build_hamiltonian(const Grid1D& grid, const PotentialSpec& potential, int charge_sign,
                                   const Constants& pc, const Gammas& g);

double hermiticity_residual(const Eigen::MatrixXcd& h);

/// max_j |i hbar d_t psi - H psi| for a field and its time derivative.
double dirac_residual(const GridField& psi, const FieldValues& time_derivative, const DiracHamiltonian& h);

}  // namespace csdirac
