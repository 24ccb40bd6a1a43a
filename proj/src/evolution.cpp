#include "csdirac/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csdirac {

std::string_view to_string(Projection p) {
  switch (p) {
    case Projection::none:
      return "none";
    case Projection::positive_free:
      return "positive_free";
    case Projection::positive_stationary:
      return "positive_stationary";
  }
  return "none";
}

Projection projection_from_string(std::string_view name) {
  if (name == "none") return Projection::none;
  if (name == "positive_free") return Projection::positive_free;
  if (name == "positive_stationary") return Projection::positive_stationary;
  throw std::invalid_argument("unknown projection '" + std::string(name) + "'");
}

void EvolutionConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("EvolutionConfig: dt must be positive");
  if (steps < 1) throw std::invalid_argument("EvolutionConfig: steps must be >= 1");
  if (record_every < 1) throw std::invalid_argument("EvolutionConfig: record_every must be >= 1");
}

StrangStepper::StrangStepper(const Grid1D& grid, const PotentialSpec& potential, int charge_sign, double dt,
                             const Constants& pc, const Gammas& g)
    : spectral_(grid), potential_(potential), charge_sign_(charge_sign), dt_(dt), pc_(pc), alpha_z_(alpha(g, 3)) {
  pc.validate();
  potential.validate(grid);
  if (charge_sign != 1 && charge_sign != -1) throw std::invalid_argument("charge_sign must be +1 or -1");
  if (!(dt > 0)) throw std::invalid_argument("StrangStepper: dt must be positive");
  const Mat4& b = beta(g);
  kinetic_.reserve(static_cast<std::size_t>(grid.size()));
  for (int n = 0; n < grid.size(); ++n) {
    const double k = grid.wavenumber(n);
    const double e = dispersion(k, pc);
    const Mat4 h = (pc.hbar * pc.c * k) * alpha_z_ + pc.rest_energy() * b;
    if (e == 0) {
      kinetic_.push_back(Mat4::Identity());
      continue;
    }
    const double phase = e * dt / pc.hbar;
    kinetic_.push_back(std::cos(phase) * Mat4::Identity() - cdouble(0, std::sin(phase) / e) * h);
  }
  if (potential.is_stationary()) stationary_kick_ = half_kick(0.0);
}

StrangStepper::HalfKick StrangStepper::half_kick(double t) const {
  const double q = charge_sign_ * pc_.e;
  const Eigen::VectorXd a0 = potential_.a0_at(t);
  const Eigen::VectorXd az = potential_.a_z_at(t);
  const double scale = 0.5 * dt_ / pc_.hbar;
  HalfKick kick{Eigen::VectorXcd(a0.size()), Eigen::VectorXcd(a0.size())};
  // exp(-i (q A0 - q A_z alpha_z) dt / 2hbar) = e^{-i th0} (cos thz + i sin thz alpha_z)
  for (Eigen::Index j = 0; j < a0.size(); ++j) {
    const double th0 = q * a0(j) * scale;
    const double thz = q * az(j) * scale;
    const cdouble base = std::polar(1.0, -th0);
    kick.diag(j) = base * std::cos(thz);
    kick.off(j) = base * cdouble(0, std::sin(thz));
  }
  return kick;
}

void StrangStepper::apply_kick(const HalfKick& kick, FieldValues& values) const {
  const FieldValues rotated = alpha_z_ * values;
  for (Eigen::Index j = 0; j < values.cols(); ++j)
    values.col(j) = kick.diag(j) * values.col(j) + kick.off(j) * rotated.col(j);
}

void StrangStepper::step(GridField& field) const {
  if (!(field.grid == spectral_.grid())) throw std::invalid_argument("StrangStepper: grid mismatch");
  if (field.charge_sign != charge_sign_) throw std::invalid_argument("StrangStepper: charge sign mismatch");
  const HalfKick kick = stationary_kick_ ? *stationary_kick_ : half_kick(field.time + 0.5 * dt_);
  apply_kick(kick, field.values);
  FieldValues spec = spectral_.forward(field.values);
  for (Eigen::Index n = 0; n < spec.cols(); ++n) spec.col(n) = kinetic_[static_cast<std::size_t>(n)] * spec.col(n);
  field.values = spectral_.inverse(spec);
  apply_kick(kick, field.values);
  field.time += dt_;
}

GridField step_strang(const GridField& field, const PotentialSpec& potential, double dt, const Constants& pc,
                      const Gammas& g) {
  GridField out = field;
  StrangStepper(field.grid, potential, field.charge_sign, dt, pc, g).step(out);
  return out;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.time);
  return t;
}

double Trajectory::record_interval() const {
  if (snapshots.size() < 2) return 0.0;
  return (snapshots.back().time - snapshots.front().time) / static_cast<double>(snapshots.size() - 1);
}

Trajectory evolve(const GridField& field, const PotentialSpec& potential, const EvolutionConfig& config,
                  const Constants& pc, const Gammas& g, const SpectralDecomposition* spectrum) {
  config.validate();
  std::optional<SpectralDecomposition> owned;
  if (config.projection == Projection::positive_stationary) {
    if (spectrum == nullptr) {
      try {
        owned = stationary_spectrum(field.grid, potential.stationary_part(), field.charge_sign, pc, g);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("evolve: projection requested but spectrum unavailable: ") + e.what());
      }
      spectrum = &*owned;
    }
    if (!(spectrum->grid == field.grid) || spectrum->charge_sign != field.charge_sign)
      throw std::invalid_argument("evolve: spectrum does not match the field's grid or charge");
  }

  const StrangStepper stepper(field.grid, potential, field.charge_sign, config.dt, pc, g);
  Trajectory traj;
  traj.snapshots.reserve(static_cast<std::size_t>(config.steps / config.record_every + 1));
  GridField current = field;
  traj.snapshots.push_back(current);
  for (int s = 1; s <= config.steps; ++s) {
    stepper.step(current);
    current.time = field.time + s * config.dt;
    switch (config.projection) {
      case Projection::none:
        break;
      case Projection::positive_free:
        current = project_positive_free(current, pc, g);
        break;
      case Projection::positive_stationary:
        current = project_positive(current, *spectrum);
        break;
    }
    if (s % config.record_every == 0) traj.snapshots.push_back(current);
  }
  return traj;
}

std::pair<Trajectory, Trajectory> evolve_pair(const AmplitudePair& pair, const PotentialSpec& potential,
                                              const EvolutionConfig& config, const Constants& pc, const Gammas& g) {
  return {evolve(pair.psi_plus, potential, config, pc, g), evolve(pair.eta_plus, potential, config, pc, g)};
}

}  // namespace csdirac
