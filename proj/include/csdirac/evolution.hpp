#pragma once

// Strang-split time evolution of bispinor fields on the periodic grid.

#include "csdirac/frequency_split.hpp"
#include "csdirac/hamiltonian.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace csdirac {

enum class Projection { none, positive_free, positive_stationary };

std::string_view to_string(Projection p);
/// Throws std::invalid_argument for an unknown name.
Projection projection_from_string(std::string_view name);

struct EvolutionConfig {
  double dt = 0.01;
  int steps = 1;
  Projection projection = Projection::none;
  int record_every = 1;

  void validate() const;
};

/// Second-order splitting for one field species:
///   exp(-i V dt / 2hbar) exp(-i T dt / hbar) exp(-i V dt / 2hbar)
/// with the kinetic factor exact per wavenumber,
///   exp(-i H(k) dt / hbar) = cos(E dt / hbar) - i sin(E dt / hbar) H(k) / E,
/// and the potential factor exact per point (alpha_z squares to one). A
/// time-dependent potential is sampled at the step midpoint.
class StrangStepper {
 public:
  StrangStepper(const Grid1D& grid, const PotentialSpec& potential, int charge_sign, double dt, const Constants& pc,
                const Gammas& g);

  /// Advances field.values by dt and field.time by dt.
  void step(GridField& field) const;

  double dt() const { return dt_; }
  int charge_sign() const { return charge_sign_; }

 private:
  struct HalfKick {
    Eigen::VectorXcd diag;  // multiplies psi
    Eigen::VectorXcd off;   // multiplies alpha_z psi
  };
  HalfKick half_kick(double t) const;
  void apply_kick(const HalfKick& kick, FieldValues& values) const;

  Spectral spectral_;
  PotentialSpec potential_;
  int charge_sign_;
  double dt_;
  Constants pc_;
  Mat4 alpha_z_;
  std::vector<Mat4> kinetic_;
  std::optional<HalfKick> stationary_kick_;
};

/// One Strang step (builds a stepper; use StrangStepper for loops).
GridField step_strang(const GridField& field, const PotentialSpec& potential, double dt, const Constants& pc,
                      const Gammas& g);

struct Trajectory {
  std::vector<GridField> snapshots;

  std::vector<double> times() const;
  /// Spacing between consecutive snapshots.
  double record_interval() const;
};

/// Evolves `field` with its own charge sign. The initial field is recorded,
/// then every record_every steps. With a projection policy the positive
/// branch is projected out after each step. `spectrum` is required for
/// positive_stationary unless it can be computed for the stationary part.
Trajectory evolve(const GridField& field, const PotentialSpec& potential, const EvolutionConfig& config,
                  const Constants& pc, const Gammas& g, const SpectralDecomposition* spectrum = nullptr);

/// Particle and antiparticle amplitudes evolve independently, each with its
/// own charge sign; nothing couples them.
std::pair<Trajectory, Trajectory> evolve_pair(const AmplitudePair& pair, const PotentialSpec& potential,
                                              const EvolutionConfig& config, const Constants& pc, const Gammas& g);

}  // namespace csdirac
