#pragma once

// Dirac matrices in the Dirac-Pauli representation (Euclidean metric,
// x4 = ict, all gamma_mu hermitian), the charge-conjugation matrix and the
// maps built from them. Everything is templated on the real scalar type so
// the same code can be run in extended precision as a cross-check.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace csdirac {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using Matrix2 = Eigen::Matrix<Complex<Real>, 2, 2>;

template <typename Real>
using Matrix4 = Eigen::Matrix<Complex<Real>, 4, 4>;

/// 4-component column amplitude (psi, eta).
template <typename Real>
using Bispinor = Eigen::Matrix<Complex<Real>, 4, 1>;

/// 4-component row amplitude (psibar = psi^+ gamma4).
template <typename Real>
using AdjointBispinor = Eigen::Matrix<Complex<Real>, 1, 4>;

template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;

/// The four hermitian Dirac matrices and the charge-conjugation matrix C.
/// Indices follow physics convention: gamma(1..3) spatial, gamma(4) temporal.
template <typename Real>
struct GammaSet {
  std::array<Matrix4<Real>, 4> gamma;
  Matrix4<Real> c_matrix;

  const Matrix4<Real>& operator()(int mu) const { return gamma[static_cast<std::size_t>(mu - 1)]; }
  Matrix4<Real>& operator()(int mu) { return gamma[static_cast<std::size_t>(mu - 1)]; }
};

/// Pauli matrix sigma_j, j = 1, 2, 3.
template <typename Real>
Matrix2<Real> pauli(int j) {
  const Complex<Real> i(0, 1);
  Matrix2<Real> s = Matrix2<Real>::Zero();
  switch (j) {
    case 1:
      s(0, 1) = 1;
      s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = -i;
      s(1, 0) = i;
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

/// sigma . k for a 3-vector k.
template <typename Real>
Matrix2<Real> sigma_dot(const Vector3<Real>& k) {
  return k(0) * pauli<Real>(1) + k(1) * pauli<Real>(2) + k(2) * pauli<Real>(3);
}

template <typename Real = double>
GammaSet<Real> make_gammas() {
  const Complex<Real> i(0, 1);
  GammaSet<Real> g;
  for (int j = 1; j <= 3; ++j) {
    Matrix4<Real> m = Matrix4<Real>::Zero();
    m.template block<2, 2>(0, 2) = -i * pauli<Real>(j);
    m.template block<2, 2>(2, 0) = i * pauli<Real>(j);
    g(j) = m;
  }
  g(4) = Matrix4<Real>::Zero();
  g(4).diagonal() << 1, 1, -1, -1;
  g.c_matrix = g(2) * g(4);
  return g;
}

/// alpha_j = i gamma4 gamma_j, the velocity matrices of the Hamiltonian form.
template <typename Real>
Matrix4<Real> alpha(const GammaSet<Real>& g, int j) {
  return Complex<Real>(0, 1) * g(4) * g(j);
}

template <typename Real>
const Matrix4<Real>& beta(const GammaSet<Real>& g) {
  return g(4);
}

template <typename Real>
AdjointBispinor<Real> dirac_adjoint(const Bispinor<Real>& psi, const GammaSet<Real>& g) {
  return psi.adjoint() * g(4);
}

/// Matrix M with charge_conjugate(psi) = M * conj(psi), i.e. M = C* gamma4^T.
template <typename Real>
Matrix4<Real> conjugation_matrix(const GammaSet<Real>& g) {
  return g.c_matrix.conjugate() * g(4).transpose();
}

/// eta = C* transpose(psibar). Antilinear involution exchanging the
/// solutions of the charge e and charge -e equations.
template <typename Real>
Bispinor<Real> charge_conjugate(const Bispinor<Real>& psi, const GammaSet<Real>& g) {
  return conjugation_matrix(g) * psi.conjugate();
}

/// Residuals of the charge-conjugation and Clifford identities. Each entry
/// is a max-abs entrywise residual.
template <typename Real>
struct IdentityResiduals {
  Real unitarity = 0;       // C^+C - 1 and CC^+ - 1
  Real antisymmetry = 0;    // C + C~
  Real conjugation = 0;     // C gamma_mu C^+ + gamma_mu~
  Real clifford = 0;        // {gamma_mu, gamma_nu} - 2 delta_mu_nu
  Real hermiticity = 0;     // gamma_mu - gamma_mu^+

  Real max() const { return std::max({unitarity, antisymmetry, conjugation, clifford, hermiticity}); }
  /// Only the three charge-conjugation relations plus the gamma_mu ones.
  Real c_relations() const { return std::max({unitarity, antisymmetry, conjugation}); }
};

template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Real>
IdentityResiduals<Real> identity_residuals(const GammaSet<Real>& g) {
  const Matrix4<Real> id = Matrix4<Real>::Identity();
  const Matrix4<Real>& c = g.c_matrix;
  IdentityResiduals<Real> r;
  r.unitarity = std::max(max_abs(c.adjoint() * c - id), max_abs(c * c.adjoint() - id));
  r.antisymmetry = max_abs(c + c.transpose());
  for (int mu = 1; mu <= 4; ++mu) {
    r.conjugation = std::max(r.conjugation, max_abs(c * g(mu) * c.adjoint() + g(mu).transpose()));
    r.hermiticity = std::max(r.hermiticity, max_abs(g(mu) - g(mu).adjoint()));
    for (int nu = 1; nu <= 4; ++nu) {
      const Real delta = mu == nu ? Real(2) : Real(0);
      r.clifford = std::max(r.clifford, max_abs(g(mu) * g(nu) + g(nu) * g(mu) - delta * id));
    }
  }
  return r;
}

/// Maximum residual over the charge-conjugation identities and the Clifford
/// relations. Zero for make_gammas().
template <typename Real>
Real verify_c_identities(const GammaSet<Real>& g) {
  return identity_residuals(g).max();
}

}  // namespace csdirac
