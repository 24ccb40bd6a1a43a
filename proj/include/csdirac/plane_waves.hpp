#pragma once

// Free positive-energy plane-wave bispinors and the relations they satisfy.

#include "csdirac/spinor_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace csdirac {

template <typename Real = double>
struct PhysicalConstants {
  Real hbar = 1;
  Real c = 1;
  Real m = 1;
  /// Signed charge of the particle field; the antiparticle couples with -e.
  Real e = 1;

  Real rest_energy() const { return m * c * c; }

  void validate() const {
    using std::isfinite;
    if (!(hbar > 0) || !(c > 0) || !(m >= 0) || !isfinite(hbar) || !isfinite(c) || !isfinite(m) ||
        !isfinite(e)) {
      throw std::invalid_argument("PhysicalConstants: hbar, c must be positive and m non-negative");
    }
  }
};

enum class Species { particle, antiparticle };

/// Positive branch E = sqrt((hbar c k)^2 + (m c^2)^2). The negative root is
/// never produced.
template <typename Real>
Real dispersion(const Vector3<Real>& k, const PhysicalConstants<Real>& pc) {
  using std::hypot;
  return hypot(pc.hbar * pc.c * k.norm(), pc.rest_energy());
}

template <typename Real>
Real dispersion(Real kz, const PhysicalConstants<Real>& pc) {
  using std::hypot;
  return hypot(pc.hbar * pc.c * kz, pc.rest_energy());
}

inline void check_spin_label(int r) {
  if (r != 1 && r != -1) throw std::invalid_argument("spin label r must be +1 or -1");
}

/// Unit-norm positive-energy spinor psi(k, r): upper part
/// sqrt((1 + mc^2/E)/2) chi_r with chi_r the sigma_z eigenvector, lower part
/// hbar c (sigma.k)/(E + mc^2) times the upper part. In the free case the
/// antiparticle spinor eta(k, r) has the same numerical value.
template <typename Real>
Bispinor<Real> mode_bispinor(const Vector3<Real>& k, int r, Species /*species*/,
                             const PhysicalConstants<Real>& pc) {
  using std::sqrt;
  check_spin_label(r);
  const Real energy = dispersion(k, pc);
  if (!(energy > 0)) throw std::domain_error("mode_bispinor: zero energy (massless at k = 0)");
  const Real mc2 = pc.rest_energy();
  Eigen::Matrix<Complex<Real>, 2, 1> chi = Eigen::Matrix<Complex<Real>, 2, 1>::Zero();
  chi(r == 1 ? 0 : 1) = 1;
  const Eigen::Matrix<Complex<Real>, 2, 1> upper = sqrt((1 + mc2 / energy) / 2) * chi;
  Bispinor<Real> out;
  out.template head<2>() = upper;
  out.template tail<2>() = (pc.hbar * pc.c / (energy + mc2)) * (sigma_dot<Real>(k) * upper);
  return out;
}

template <typename Real>
Bispinor<Real> mode_bispinor(Real kz, int r, Species s, const PhysicalConstants<Real>& pc) {
  return mode_bispinor<Real>(Vector3<Real>(0, 0, kz), r, s, pc);
}

/// Momentum-space operator i hbar c k.gamma - E gamma4 + mc^2 applied to psi.
template <typename Real>
Real momentum_space_residual(const Vector3<Real>& k, const Bispinor<Real>& psi,
                             const PhysicalConstants<Real>& pc, const GammaSet<Real>& g) {
  const Complex<Real> i(0, 1);
  Matrix4<Real> op = -dispersion(k, pc) * g(4) + pc.rest_energy() * Matrix4<Real>::Identity();
  for (int j = 1; j <= 3; ++j) op += i * pc.hbar * pc.c * k(j - 1) * g(j);
  return max_abs(op * psi);
}

/// Negative-energy partner at spatial momentum k: the charge conjugate of
/// the antiparticle spinor eta(-k, r).
template <typename Real>
Bispinor<Real> negative_partner(const Vector3<Real>& k, int r, const PhysicalConstants<Real>& pc,
                                const GammaSet<Real>& g) {
  return charge_conjugate<Real>(mode_bispinor<Real>(Vector3<Real>(-k), r, Species::antiparticle, pc), g);
}

/// max over r, r' of |psi^+(k,r) psi(k,r') - delta_rr'| and the same for eta.
template <typename Real>
Real check_orthonormality(const Vector3<Real>& k, const PhysicalConstants<Real>& pc) {
  using std::abs;
  Real worst = 0;
  for (Species s : {Species::particle, Species::antiparticle}) {
    for (int r : {1, -1}) {
      for (int rp : {1, -1}) {
        const Complex<Real> overlap = mode_bispinor<Real>(k, r, s, pc).dot(mode_bispinor<Real>(k, rp, s, pc));
        worst = std::max(worst, abs(overlap - Complex<Real>(r == rp ? 1 : 0)));
      }
    }
  }
  return worst;
}

template <typename Real>
struct CompletenessResidual {
  Real particle_form = 0;      // positive particle modes + conjugated antiparticle modes
  Real antiparticle_form = 0;  // positive antiparticle modes + conjugated particle modes
  Real positive_only = 0;      // particle form without the conjugated term

  Real max() const { return std::max(particle_form, antiparticle_form); }
};

/// Completeness of the positive-energy modes of both species:
///   Sum_r [ psi(k,r) psibar(k,r) + C* (etabar(-k,r))~ (eta(-k,r))~ C ] gamma4 = 1
/// and the same with psi and eta exchanged. The right factor gamma4 turns the
/// Dirac-adjoint outer products into projectors for unit-norm spinors.
template <typename Real>
CompletenessResidual<Real> check_completeness(const Vector3<Real>& k, const PhysicalConstants<Real>& pc,
                                              const GammaSet<Real>& g) {
  const Matrix4<Real> id = Matrix4<Real>::Identity();
  const Matrix4<Real> cstar = g.c_matrix.conjugate();
  auto form = [&](Species direct, Species conjugated, bool with_conjugate) {
    Matrix4<Real> sum = Matrix4<Real>::Zero();
    for (int r : {1, -1}) {
      const Bispinor<Real> u = mode_bispinor<Real>(k, r, direct, pc);
      sum += u * dirac_adjoint(u, g);
      if (with_conjugate) {
        const Bispinor<Real> v = mode_bispinor<Real>(Vector3<Real>(-k), r, conjugated, pc);
        sum += (cstar * dirac_adjoint(v, g).transpose()) * (v.transpose() * g.c_matrix);
      }
    }
    return max_abs(sum * g(4) - id);
  };
  CompletenessResidual<Real> res;
  res.particle_form = form(Species::particle, Species::antiparticle, true);
  res.antiparticle_form = form(Species::antiparticle, Species::particle, true);
  res.positive_only = form(Species::particle, Species::antiparticle, false);
  return res;
}

/// max over r, r' of |psi^+(k,r) . negative_partner(k,r')|.
template <typename Real>
Real check_cross_orthogonality(const Vector3<Real>& k, const PhysicalConstants<Real>& pc,
                               const GammaSet<Real>& g) {
  using std::abs;
  Real worst = 0;
  for (int r : {1, -1})
    for (int rp : {1, -1})
      worst = std::max(worst, abs(mode_bispinor<Real>(k, r, Species::particle, pc).dot(negative_partner<Real>(k, rp, pc, g))));
  return worst;
}

/// A labelled plane-wave mode. amplitude houses c_r(k) for particles and
/// b_r(k) for antiparticles; lepton is carried as metadata only.
template <typename Real = double>
struct MomentumMode {
  Vector3<Real> k = Vector3<Real>::Zero();
  int r = 1;
  Species species = Species::particle;
  Complex<Real> amplitude{1, 0};
  int lepton = 1;
};

template <typename Real = double>
struct ModeSet {
  std::vector<MomentumMode<Real>> modes;
  Real volume = 1;

  Real total_weight() const {
    Real w = 0;
    for (const auto& m : modes) w += std::norm(m.amplitude);
    return w;
  }
  bool is_normalized(Real tol = Real(1e-12)) const {
    using std::abs;
    return abs(total_weight() - 1) <= tol;
  }
};

template <typename Real = double>
struct ModeEnergyMomentum {
  Real energy = 0;
  Vector3<Real> momentum = Vector3<Real>::Zero();
  /// False when the amplitudes did not satisfy the normalization condition.
  bool normalized = true;
};

/// W = Sum E(k) (|c|^2 + |b|^2), P = Sum hbar k (|c|^2 + |b|^2). Both species
/// contribute with positive energy.
template <typename Real>
ModeEnergyMomentum<Real> superposition_energy_momentum(const ModeSet<Real>& ms, const PhysicalConstants<Real>& pc) {
  ModeEnergyMomentum<Real> out;
  for (const auto& m : ms.modes) {
    check_spin_label(m.r);
    const Real w = std::norm(m.amplitude);
    out.energy += dispersion(m.k, pc) * w;
    out.momentum += pc.hbar * w * m.k;
  }
  out.normalized = ms.is_normalized();
  return out;
}

/// Two-term free solution
///   psi(x,t) = V^{-1/2} [ a psi(k,r) e^{i(kx - wt)} + C* transpose(etabar_+) ]
/// with eta_+ = b eta(k, r_bar) e^{i(kx - wt)}. Solves the free Dirac equation
/// but mixes both frequency signs, so it is not a probability amplitude.
template <typename Real = double>
class FreeSolution {
 public:
  FreeSolution(const Vector3<Real>& k, Complex<Real> particle_amp, Complex<Real> antiparticle_amp,
               const PhysicalConstants<Real>& pc, const GammaSet<Real>& g, int r = 1, int antiparticle_r = 1,
               Real volume = 1)
      : k_(k), omega_(dispersion(k, pc) / pc.hbar), scale_(1 / std::sqrt(volume)) {
    positive_ = particle_amp * mode_bispinor<Real>(k, r, Species::particle, pc);
    const Bispinor<Real> eta = mode_bispinor<Real>(k, antiparticle_r, Species::antiparticle, pc);
    conjugated_ = std::conj(antiparticle_amp) * charge_conjugate<Real>(eta, g);
  }

  Bispinor<Real> operator()(const Vector3<Real>& x, Real t) const {
    const Complex<Real> phase = std::exp(Complex<Real>(0, k_.dot(x) - omega_ * t));
    return scale_ * (positive_ * phase + conjugated_ * std::conj(phase));
  }
  Bispinor<Real> operator()(Real z, Real t) const { return (*this)(Vector3<Real>(0, 0, z), t); }

  Real omega() const { return omega_; }
  bool is_probability_amplitude() const { return conjugated_.isZero(0); }

 private:
  Vector3<Real> k_;
  Real omega_;
  Real scale_;
  Bispinor<Real> positive_;
  Bispinor<Real> conjugated_;
};

template <typename Real>
FreeSolution<Real> general_free_solution(const Vector3<Real>& k, Complex<Real> particle_amp,
                                         Complex<Real> antiparticle_amp, const PhysicalConstants<Real>& pc,
                                         const GammaSet<Real>& g) {
  return FreeSolution<Real>(k, particle_amp, antiparticle_amp, pc, g);
}

}  // namespace csdirac
