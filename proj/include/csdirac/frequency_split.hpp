#pragma once

// Positive/negative frequency decomposition against a stationary
// Hamiltonian and the charge-conjugation maps between the branches.

#include "csdirac/hamiltonian.hpp"

#include <utility>
#include <vector>

namespace csdirac {

/// Largest grid accepted by the dense eigendecomposition (4N <= 4096).
inline constexpr int kMaxDenseGridPoints = 1024;
/// Eigenvalues with |E| below this are treated as zero modes and rejected.
inline constexpr double kZeroModeThreshold = 1e-12;

/// Full eigendecomposition of a stationary discretized Hamiltonian.
/// Eigenvectors are columns normalized under the grid inner product
/// (sum psi^+ psi dz = 1); eigenvalues are ascending.
struct SpectralDecomposition {
  Grid1D grid;
  int charge_sign = 1;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  std::vector<int> positive_set;
  std::vector<int> negative_set;

  /// Eigenvector n as a grid field.
  GridField mode(int n) const;
  /// Columns of the positive (or negative) branch.
  Eigen::MatrixXcd branch(bool positive) const;
};

SpectralDecomposition stationary_spectrum(const Grid1D& grid, const PotentialSpec& potential, int charge_sign,
                                          const Constants& pc, const Gammas& g);

struct FrequencyParts {
  GridField positive;
  GridField negative;
};

/// Orthogonal projection of a field onto the two spectral branches.
FrequencyParts split_frequencies(const GridField& field, const SpectralDecomposition& spec);

/// Same split for the free Hamiltonian, done per wavenumber with the
/// projectors (1 +- H(k)/E(k))/2. Works for any grid size.
FrequencyParts split_frequencies_free(const GridField& field, const Constants& pc, const Gammas& g);

/// Positive part only; cheaper than a full split.
GridField project_positive(const GridField& field, const SpectralDecomposition& spec);
GridField project_positive_free(const GridField& field, const Constants& pc, const Gammas& g);

/// Particle and antiparticle probability amplitudes psi_+ and eta_+.
struct AmplitudePair {
  GridField psi_plus;
  GridField eta_plus;
};

/// Pointwise C* transpose(etabar_+): the negative-frequency particle field
/// carried by an antiparticle amplitude.
GridField negative_from_positive(const GridField& positive, const Gammas& g);

/// General solution psi_+ + C* transpose(etabar_+). Not a probability
/// amplitude.
GridField reconstruct_general(const AmplitudePair& pair, const Gammas& g);

/// max over positive-branch pairs of |sum_z psi^+(w') gamma4 C* eta*(w) dz|.
double cross_orthogonality_check(const SpectralDecomposition& spec_particle,
                                 const SpectralDecomposition& spec_antiparticle, const Gammas& g);

}  // namespace csdirac
