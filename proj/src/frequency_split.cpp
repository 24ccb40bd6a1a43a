#include "csdirac/frequency_split.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csdirac {

namespace {

GridField tagged_like(const GridField& source, FieldValues values, FrequencyTag tag) {
  GridField out = source;
  out.values = std::move(values);
  out.frequency = tag;
  return out;
}

void require_spectrum_grid(const GridField& field, const SpectralDecomposition& spec) {
  if (!(field.grid == spec.grid)) throw std::invalid_argument("split_frequencies: field and spectrum grids differ");
}

Eigen::Map<const Eigen::VectorXcd> flat(const FieldValues& v) { return {v.data(), v.size()}; }

}  // namespace

GridField SpectralDecomposition::mode(int n) const {
  GridField f(grid);
  f.charge_sign = charge_sign;
  f.species = charge_sign == 1 ? Species::particle : Species::antiparticle;
  f.frequency = eigenvalues(n) > 0 ? FrequencyTag::positive : FrequencyTag::negative;
  f.values = Eigen::Map<const FieldValues>(eigenvectors.col(n).data(), 4, grid.size());
  return f;
}

Eigen::MatrixXcd SpectralDecomposition::branch(bool positive) const {
  const auto& idx = positive ? positive_set : negative_set;
  Eigen::MatrixXcd out(eigenvectors.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = eigenvectors.col(idx[c]);
  return out;
}

SpectralDecomposition stationary_spectrum(const Grid1D& grid, const PotentialSpec& potential, int charge_sign,
                                          const Constants& pc, const Gammas& g) {
  if (grid.size() > kMaxDenseGridPoints)
    throw std::length_error("stationary_spectrum: grid of " + std::to_string(grid.size()) +
                            " points exceeds the dense limit of " + std::to_string(kMaxDenseGridPoints));
  const DiracHamiltonian h = build_hamiltonian(grid, potential, charge_sign, pc, g);
  const Eigen::MatrixXcd dense = h.dense();
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  if (hermiticity_residual(dense) > 1e-12 * scale)
    throw std::runtime_error("stationary_spectrum: discretized Hamiltonian is not hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("stationary_spectrum: eigensolver failed");

  SpectralDecomposition spec;
  spec.grid = grid;
  spec.charge_sign = charge_sign;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors() / std::sqrt(grid.spacing());
  for (int n = 0; n < spec.eigenvalues.size(); ++n) {
    const double e = spec.eigenvalues(n);
    if (std::abs(e) < kZeroModeThreshold)
      throw std::domain_error("stationary_spectrum: zero mode at index " + std::to_string(n));
    (e > 0 ? spec.positive_set : spec.negative_set).push_back(n);
  }
  return spec;
}

GridField project_positive(const GridField& field, const SpectralDecomposition& spec) {
  require_spectrum_grid(field, spec);
  const double dz = spec.grid.spacing();
  const Eigen::MatrixXcd basis = spec.branch(true);
  const Eigen::VectorXcd coeffs = dz * (basis.adjoint() * flat(field.values));
  const Eigen::VectorXcd pos = basis * coeffs;
  return tagged_like(field, Eigen::Map<const FieldValues>(pos.data(), 4, field.size()), FrequencyTag::positive);
}

FrequencyParts split_frequencies(const GridField& field, const SpectralDecomposition& spec) {
  GridField pos = project_positive(field, spec);
  GridField neg = tagged_like(field, field.values - pos.values, FrequencyTag::negative);
  return {std::move(pos), std::move(neg)};
}

namespace {

// Apply the per-k projector (1 + sign H(k)/E(k))/2 in Fourier space.
FieldValues free_branch(const FieldValues& values, const Grid1D& grid, double sign, const Constants& pc,
                        const Gammas& g) {
  const Spectral spectral(grid);
  FieldValues spec = spectral.forward(values);
  const Mat4 az = alpha(g, 3);
  const Mat4& b = beta(g);
  for (int n = 0; n < grid.size(); ++n) {
    const double k = grid.wavenumber(n);
    const double e = dispersion(k, pc);
    if (e == 0) throw std::domain_error("free split: zero mode (massless at k = 0)");
    const Mat4 h = (pc.hbar * pc.c * k) * az + pc.rest_energy() * b;
    const Mat4 proj = 0.5 * (Mat4::Identity() + (sign / e) * h);
    spec.col(n) = proj * spec.col(n);
  }
  return spectral.inverse(spec);
}

}  // namespace

GridField project_positive_free(const GridField& field, const Constants& pc, const Gammas& g) {
  return tagged_like(field, free_branch(field.values, field.grid, +1, pc, g), FrequencyTag::positive);
}

FrequencyParts split_frequencies_free(const GridField& field, const Constants& pc, const Gammas& g) {
  GridField pos = project_positive_free(field, pc, g);
  GridField neg = tagged_like(field, field.values - pos.values, FrequencyTag::negative);
  return {std::move(pos), std::move(neg)};
}

GridField negative_from_positive(const GridField& positive, const Gammas& g) {
  if (positive.species != Species::antiparticle)
    throw std::invalid_argument("negative_from_positive: expected an antiparticle amplitude");
  if (positive.frequency == FrequencyTag::negative)
    throw std::invalid_argument("negative_from_positive: input is already a negative-frequency field");
  GridField out = positive;
  out.values = conjugation_matrix(g) * positive.values.conjugate();
  out.species = Species::particle;
  out.charge_sign = -positive.charge_sign;
  out.frequency = FrequencyTag::negative;
  out.probability_amplitude = false;
  return out;
}

GridField reconstruct_general(const AmplitudePair& pair, const Gammas& g) {
  require_same_grid(pair.psi_plus, pair.eta_plus, "reconstruct_general");
  if (pair.psi_plus.species != Species::particle || pair.eta_plus.species != Species::antiparticle)
    throw std::invalid_argument("reconstruct_general: expected (particle, antiparticle) amplitudes");
  GridField out = pair.psi_plus;
  out.values += conjugation_matrix(g) * pair.eta_plus.values.conjugate();
  out.frequency = FrequencyTag::mixed;
  out.probability_amplitude = false;
  return out;
}

double cross_orthogonality_check(const SpectralDecomposition& spec_particle,
                                 const SpectralDecomposition& spec_antiparticle, const Gammas& g) {
  if (!(spec_particle.grid == spec_antiparticle.grid))
    throw std::invalid_argument("cross_orthogonality_check: spectra on different grids");
  const int n = spec_particle.grid.size();
  const Mat4 m = g(4) * g.c_matrix.conjugate();
  const Eigen::MatrixXcd eta = spec_antiparticle.branch(true);
  // apply gamma4 C* pointwise to conj(eta) for every positive antiparticle mode
  Eigen::MatrixXcd mapped(eta.rows(), eta.cols());
  for (Eigen::Index c = 0; c < eta.cols(); ++c) {
    Eigen::Map<const FieldValues> cols(eta.col(c).data(), 4, n);
    Eigen::Map<FieldValues>(mapped.col(c).data(), 4, n) = m * cols.conjugate();
  }
  const Eigen::MatrixXcd overlaps = spec_particle.grid.spacing() * (spec_particle.branch(true).adjoint() * mapped);
  return overlaps.size() == 0 ? 0.0 : overlaps.cwiseAbs().maxCoeff();
}

}  // namespace csdirac
