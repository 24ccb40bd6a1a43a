#include "csdirac/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csdirac {

Grid1D::Grid1D(int n_points, double length) : n_(n_points), length_(length) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("Grid1D: n_points must be a power of two >= 8, got " + std::to_string(n_points));
  if (!(length > 0) || !std::isfinite(length)) throw std::invalid_argument("Grid1D: length must be positive");
}

Eigen::VectorXd Grid1D::positions() const {
  Eigen::VectorXd x(n_);
  for (int j = 0; j < n_; ++j) x(j) = this->x(j);
  return x;
}

double Grid1D::wavenumber(int n) const {
  const int half = n_ / 2;
  if (n == half) return 0.0;
  const int folded = n < half ? n : n - n_;
  return 2.0 * std::numbers::pi * folded / length_;
}

Eigen::VectorXd Grid1D::wavenumbers() const {
  Eigen::VectorXd k(n_);
  for (int n = 0; n < n_; ++n) k(n) = wavenumber(n);
  return k;
}

GridField::GridField(const Grid1D& g, Species s)
    : grid(g), values(FieldValues::Zero(4, g.size())), charge_sign(default_charge_sign(s)), species(s) {}

void require_same_grid(const GridField& a, const GridField& b, const char* what) {
  if (!(a.grid == b.grid) || a.values.cols() != b.values.cols())
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

cdouble inner_product(const GridField& a, const GridField& b) {
  require_same_grid(a, b, "inner_product");
  return a.grid.spacing() * a.values.conjugate().cwiseProduct(b.values).sum();
}

double norm_squared(const GridField& f) { return f.grid.spacing() * f.values.squaredNorm(); }

GridField normalized(GridField f) {
  const double n2 = norm_squared(f);
  if (!(n2 > 0)) throw std::domain_error("normalized: zero field");
  f.values /= std::sqrt(n2);
  return f;
}

namespace {

fftw_complex* as_fftw(cdouble* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cdouble* p) { return reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(p)); }

// Planning with FFTW_ESTIMATE never touches the arrays; FFTW_UNALIGNED lets
// the plans run on any Eigen buffer through the new-array interface.
constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

fftw_plan plan_many(int n, int howmany, int sign) {
  std::vector<cdouble> in(static_cast<std::size_t>(n * howmany)), out(in.size());
  return fftw_plan_many_dft(1, &n, howmany, as_fftw(in.data()), nullptr, howmany, 1, as_fftw(out.data()), nullptr,
                            howmany, 1, sign, kPlanFlags);
}

}  // namespace

struct Spectral::Plans {
  int n = 0;
  fftw_plan forward4 = nullptr;
  fftw_plan inverse4 = nullptr;
  fftw_plan forward1 = nullptr;
  fftw_plan inverse1 = nullptr;

  explicit Plans(int size)
      : n(size),
        forward4(plan_many(size, 4, FFTW_FORWARD)),
        inverse4(plan_many(size, 4, FFTW_BACKWARD)),
        forward1(plan_many(size, 1, FFTW_FORWARD)),
        inverse1(plan_many(size, 1, FFTW_BACKWARD)) {}
  ~Plans() {
    for (fftw_plan p : {forward4, inverse4, forward1, inverse1}) fftw_destroy_plan(p);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Eigen::VectorXcd dft(const Eigen::VectorXcd& f) {
  Eigen::VectorXcd out(f.size());
  if (f.size() == 0) return out;
  const fftw_plan p = plan_many(static_cast<int>(f.size()), 1, FFTW_FORWARD);
  fftw_execute_dft(p, as_fftw(f.data()), as_fftw(out.data()));
  fftw_destroy_plan(p);
  return out;
}

Spectral::Spectral(const Grid1D& grid)
    : grid_(grid), k_(grid.wavenumbers()), plans_(std::make_shared<const Plans>(grid.size())) {}

Eigen::VectorXcd Spectral::forward(const Eigen::VectorXcd& f) const {
  if (f.size() != plans_->n) throw std::invalid_argument("Spectral: size mismatch");
  Eigen::VectorXcd out(f.size());
  fftw_execute_dft(plans_->forward1, as_fftw(f.data()), as_fftw(out.data()));
  return out;
}

Eigen::VectorXcd Spectral::inverse(const Eigen::VectorXcd& f) const {
  if (f.size() != plans_->n) throw std::invalid_argument("Spectral: size mismatch");
  Eigen::VectorXcd out(f.size());
  fftw_execute_dft(plans_->inverse1, as_fftw(f.data()), as_fftw(out.data()));
  return out / static_cast<double>(plans_->n);
}

FieldValues Spectral::forward(const FieldValues& f) const {
  if (f.cols() != plans_->n) throw std::invalid_argument("Spectral: size mismatch");
  FieldValues out(4, f.cols());
  fftw_execute_dft(plans_->forward4, as_fftw(f.data()), as_fftw(out.data()));
  return out;
}

FieldValues Spectral::inverse(const FieldValues& f) const {
  if (f.cols() != plans_->n) throw std::invalid_argument("Spectral: size mismatch");
  FieldValues out(4, f.cols());
  fftw_execute_dft(plans_->inverse4, as_fftw(f.data()), as_fftw(out.data()));
  return out / static_cast<double>(plans_->n);
}

FieldValues Spectral::derivative(const FieldValues& f) const {
  FieldValues spec = forward(f);
  for (int n = 0; n < spec.cols(); ++n) spec.col(n) *= cdouble(0, k_(n));
  return inverse(spec);
}

Eigen::VectorXd Spectral::derivative(const Eigen::VectorXd& f) const {
  Eigen::VectorXcd spec = forward(Eigen::VectorXcd(f.cast<cdouble>()));
  for (int n = 0; n < spec.size(); ++n) spec(n) *= cdouble(0, k_(n));
  return inverse(spec).real();
}

double TimeProfile::operator()(double t) const {
  if (amplitude == 0 || t >= switch_off) return 0.0;
  return amplitude * std::sin(omega * t);
}

PotentialSpec PotentialSpec::none(int n) {
  PotentialSpec p;
  p.a0 = Eigen::VectorXd::Zero(n);
  p.a_z = Eigen::VectorXd::Zero(n);
  p.drive_a0 = Eigen::VectorXd::Zero(n);
  p.drive_a_z = Eigen::VectorXd::Zero(n);
  return p;
}

PotentialSpec PotentialSpec::constant(int n, double value) {
  PotentialSpec p = none(n);
  p.a0.setConstant(value);
  return p;
}

bool PotentialSpec::is_stationary() const {
  return time_profile.is_zero() || (drive_a0.isZero(0) && drive_a_z.isZero(0));
}

bool PotentialSpec::is_free() const { return is_stationary() && a0.isZero(0) && a_z.isZero(0); }

void PotentialSpec::validate(const Grid1D& grid) const {
  const auto n = grid.size();
  if (a0.size() != n || a_z.size() != n || drive_a0.size() != n || drive_a_z.size() != n)
    throw std::invalid_argument("PotentialSpec: sample count does not match grid");
  if (!a0.allFinite() || !a_z.allFinite() || !drive_a0.allFinite() || !drive_a_z.allFinite())
    throw std::invalid_argument("PotentialSpec: non-finite samples");
}

PotentialSpec PotentialSpec::stationary_part() const {
  PotentialSpec p = *this;
  p.drive_a0.setZero();
  p.drive_a_z.setZero();
  p.time_profile = TimeProfile{};
  return p;
}

Eigen::VectorXd PotentialSpec::a0_at(double t) const {
  const double g = time_profile(t);
  return g == 0 ? a0 : Eigen::VectorXd(a0 + g * drive_a0);
}

Eigen::VectorXd PotentialSpec::a_z_at(double t) const {
  const double g = time_profile(t);
  return g == 0 ? a_z : Eigen::VectorXd(a_z + g * drive_a_z);
}

Eigen::VectorXd gaussian_well(const Grid1D& grid, double depth, double width, double center) {
  Eigen::VectorXd v(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double u = (grid.x(j) - center) / width;
    v(j) = -depth * std::exp(-0.5 * u * u);
  }
  return v;
}

Eigen::VectorXd smooth_step(const Grid1D& grid, double v0, double smoothing) {
  Eigen::VectorXd v(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double z = grid.x(j);
    if (smoothing > 0) {
      // rising edge at 0, falling edge at the periodic wrap
      const double rise = std::tanh(z / smoothing);
      const double fall = std::tanh((0.5 * grid.length() - std::abs(z)) / smoothing);
      v(j) = z >= 0 ? 0.5 * v0 * (1 + std::min(rise, fall)) : 0.5 * v0 * (1 + std::max(rise, -fall));
    } else {
      v(j) = z >= 0 ? v0 : 0.0;
    }
  }
  return v;
}

GridField mode_field(const Grid1D& grid, const ModeSet<double>& modes, Species species, const Constants& pc) {
  GridField out(grid, species);
  out.frequency = FrequencyTag::positive;
  const double dk = 2.0 * std::numbers::pi / grid.length();
  const double scale = 1.0 / std::sqrt(grid.length());
  for (const auto& m : modes.modes) {
    if (m.species != species) continue;
    if (m.k(0) != 0 || m.k(1) != 0) throw std::invalid_argument("mode_field: only modes along z fit a 1-D grid");
    const double n = std::round(m.k(2) / dk);
    if (std::abs(m.k(2) - n * dk) > 1e-9 || std::abs(n) >= grid.size() / 2)
      throw std::invalid_argument("mode_field: k_z is not a resolvable grid wavenumber");
    const Spinor u = mode_bispinor<double>(m.k, m.r, species, pc);
    for (int j = 0; j < grid.size(); ++j) {
      const cdouble phase = std::polar(scale, m.k(2) * grid.x(j));
      out.values.col(j) += m.amplitude * phase * u;
    }
  }
  return out;
}

}  // namespace csdirac
