#pragma once

// Periodic 1-D lattice (the z axis) carrying bispinor fields, plus the
// spectral machinery shared by the grid modules.

#include "csdirac/plane_waves.hpp"
#include "csdirac/spinor_algebra.hpp"

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <memory>
#include <vector>

namespace csdirac {

using cdouble = std::complex<double>;
using Constants = PhysicalConstants<double>;
using Gammas = GammaSet<double>;
using Spinor = Bispinor<double>;
using Mat4 = Matrix4<double>;

/// One bispinor per column, one column per grid point.
using FieldValues = Eigen::Matrix<cdouble, 4, Eigen::Dynamic>;

class Grid1D {
 public:
  Grid1D() = default;
  /// n_points must be a power of two, at least 8; length > 0.
  Grid1D(int n_points, double length);

  int size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  /// Box is [-L/2, L/2) with the origin at the center.
  double x(int j) const { return -0.5 * length_ + j * spacing(); }
  Eigen::VectorXd positions() const;
  /// Wavenumber of FFT bin n (0..N-1), 2 pi n / L folded to [-N/2, N/2).
  /// The Nyquist bin is assigned 0 so the discrete derivative is real.
  double wavenumber(int n) const;
  Eigen::VectorXd wavenumbers() const;

  bool operator==(const Grid1D& o) const { return n_ == o.n_ && length_ == o.length_; }

 private:
  int n_ = 0;
  double length_ = 0;
};

enum class FrequencyTag { positive, negative, mixed };

struct GridField {
  Grid1D grid;
  FieldValues values;
  double time = 0;
  /// Coupling sign in units of PhysicalConstants::e.
  int charge_sign = 1;
  Species species = Species::particle;
  FrequencyTag frequency = FrequencyTag::mixed;
  /// False for general (two-branch) solutions, which carry no Born meaning.
  bool probability_amplitude = true;

  GridField() = default;
  GridField(const Grid1D& g, Species s = Species::particle);

  int size() const { return grid.size(); }
  Spinor at(int j) const { return values.col(j); }
};

/// Default coupling sign of a species: particles +1, antiparticles -1.
inline int default_charge_sign(Species s) { return s == Species::particle ? 1 : -1; }

/// Sum over points of psi^+ phi dx.
cdouble inner_product(const GridField& a, const GridField& b);
double norm_squared(const GridField& f);
GridField normalized(GridField f);
void require_same_grid(const GridField& a, const GridField& b, const char* what);

/// Unnormalized discrete Fourier transform sum_j f_j e^{-2 pi i n j / N} of
/// any length.
Eigen::VectorXcd dft(const Eigen::VectorXcd& f);

/// FFTW transforms acting component-wise on FieldValues. Plans are built
/// with FFTW_ESTIMATE so repeated runs execute identical arithmetic.
class Spectral {
 public:
  explicit Spectral(const Grid1D& grid);

  const Grid1D& grid() const { return grid_; }
  /// Unnormalized forward transform (sum_j f_j e^{-i k x_j}, phase referenced
  /// to the first grid point).
  FieldValues forward(const FieldValues& f) const;
  FieldValues inverse(const FieldValues& f) const;
  Eigen::VectorXcd forward(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd inverse(const Eigen::VectorXcd& f) const;

  /// d/dz via multiplication by i k.
  FieldValues derivative(const FieldValues& f) const;
  Eigen::VectorXd derivative(const Eigen::VectorXd& f) const;

 private:
  struct Plans;

  Grid1D grid_;
  Eigen::VectorXd k_;
  std::shared_ptr<const Plans> plans_;
};

/// Time dependence g(t) = amplitude * sin(omega t) for t < switch_off, else 0.
struct TimeProfile {
  double amplitude = 0;
  double omega = 0;
  double switch_off = std::numeric_limits<double>::infinity();

  double operator()(double t) const;
  bool is_zero() const { return amplitude == 0; }
};

/// Stationary A0(z), A_z(z) plus a separable nonstationary part
/// g(t) * (drive_a0(z), drive_a_z(z)). Samples must match the grid.
struct PotentialSpec {
  Eigen::VectorXd a0;
  Eigen::VectorXd a_z;
  Eigen::VectorXd drive_a0;
  Eigen::VectorXd drive_a_z;
  TimeProfile time_profile;

  /// Zero potential on n points.
  static PotentialSpec none(int n);
  static PotentialSpec constant(int n, double value);

  int size() const { return static_cast<int>(a0.size()); }
  bool is_stationary() const;
  bool is_free() const;
  void validate(const Grid1D& grid) const;
  /// Stationary part only.
  PotentialSpec stationary_part() const;
  /// Total A0 and A_z at time t.
  Eigen::VectorXd a0_at(double t) const;
  Eigen::VectorXd a_z_at(double t) const;
};

/// Potential samples for the named shapes.
Eigen::VectorXd gaussian_well(const Grid1D& grid, double depth, double width, double center = 0);
/// Smoothed step v0 * (1 + tanh(z / smoothing)) / 2 for the box interior.
/// The periodic box wraps, so the step also has a falling edge at z = +-L/2.
Eigen::VectorXd smooth_step(const Grid1D& grid, double v0, double smoothing);

/// Free positive-energy field built from plane-wave modes on the grid:
/// psi(z) = L^{-1/2} Sum c_r(k) psi(k, r) e^{i k z}. Only modes of the given
/// species are used; each mode's k_z is snapped to the nearest grid
/// wavenumber and must coincide with it to 1e-9.
GridField mode_field(const Grid1D& grid, const ModeSet<double>& modes, Species species, const Constants& pc);

}  // namespace csdirac
