#pragma once

// Executable checks of two physical claims: the Klein step with and without
// the positive-energy restriction, and jitter of the mean position for
// mixed versus positive-frequency packets.

#include "csdirac/evolution.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace csdirac {

enum class KleinRegime { transmitting, evanescent, klein_zone };

std::string_view to_string(KleinRegime r);

/// Wave-packet oracle settings. Box [-L/2, L/2) with the step at z = 0; the
/// periodic wrap adds a falling edge at z = +-L/2 which the measurement time
/// keeps the packet away from.
struct KleinGridOptions {
  int n_points = 16384;
  double length = 1280;
  /// Gaussian amplitude width exp(-(z - z0)^2 / 2w^2).
  double packet_width = 40;
  /// Initial center; defaults to -L/4.
  std::optional<double> x0;
  /// Step smoothing length in grid cells; 0 gives a step that jumps between
  /// neighbouring grid points.
  double smoothing_cells = 0;
  double dt = 0.08;
  int spin = 1;
};

struct KleinResult {
  double energy = 0;
  double v0 = 0;
  KleinRegime regime = KleinRegime::transmitting;
  /// Plane-wave matching with the transmitted wavenumber chosen so that the
  /// group velocity points away from the step (R + T = 1 in every regime).
  double standard_R = 0;
  double standard_T = 0;
  /// Same matching with the transmitted wavenumber taken as +|k'| (momentum
  /// convention); in the Klein zone this gives R > 1 and T < 0.
  double momentum_convention_R = 0;
  double momentum_convention_T = 0;
  /// Negative-energy channels carry no flux: total reflection unless the
  /// transmitted branch has positive local energy.
  double restricted_R = 0;
  double restricted_T = 0;
  /// Reflection probability at the carrier wavenumber, read off the spectra
  /// of the incident and reflected packets; NaN if not simulated.
  double grid_R = std::numeric_limits<double>::quiet_NaN();
  /// Relative energy spread of the packet (sigma_E / E); NaN if not simulated.
  double grid_energy_spread = std::numeric_limits<double>::quiet_NaN();
  double smoothing_width = std::numeric_limits<double>::quiet_NaN();
  double packet_width = std::numeric_limits<double>::quiet_NaN();
  std::string kprime_convention = "group_velocity";
};

/// Requires E > mc^2 (std::invalid_argument otherwise). The packet oracle
/// runs only when grid options are given.
KleinResult klein_step(double energy, double v0, const Constants& pc,
                       const std::optional<KleinGridOptions>& grid = std::nullopt, const Gammas& g = make_gammas());

struct PacketParams {
  double k0 = 0;
  double width = 10;
  double x0 = 0;
  /// Weight of the conjugated (negative-frequency) term; 0 gives a purely
  /// positive-frequency packet.
  double alpha = 0;
  int spin = 1;
};

/// Gaussian packet of positive-energy plane waves of spin r. With alpha > 0
/// the charge conjugate of an antiparticle packet of spin -r is added with
/// weight alpha (both parts normalized first), then the sum is normalized.
GridField make_packet(const Grid1D& grid, const PacketParams& params, const Constants& pc, const Gammas& g);

enum class PacketKind { mixed, positive_only };

struct ZitterResult {
  PacketKind kind = PacketKind::mixed;
  std::vector<double> times;
  std::vector<double> mean_x;
  /// max |mean_x - linear fit|.
  double detrended_amplitude = 0;
  /// Angular frequency of the strongest non-zero peak of the detrended
  /// mean_x spectrum.
  double dominant_frequency = 0;
};

/// Linear least-squares detrend.
std::vector<double> detrend(const std::vector<double>& t, const std::vector<double>& y);

/// Angular frequency of the largest peak in the zero-padded discrete
/// spectrum of uniformly sampled data (DC bin excluded).
double dominant_angular_frequency(const std::vector<double>& y, double sample_interval);

ZitterResult mean_position_series(const Grid1D& grid, const GridField& packet, double duration, double dt,
                                  const Constants& pc, const Gammas& g, PacketKind kind);

/// Evolves the mixed packet (params.alpha) and the positive-only packet
/// (alpha = 0) freely without projection. Requires duration >= 10 Compton
/// periods and at least 20 samples per period of the 2mc^2/hbar beat.
std::pair<ZitterResult, ZitterResult> zitterbewegung_compare(const Grid1D& grid, const PacketParams& params,
                                                             double duration, double dt, const Constants& pc,
                                                             const Gammas& g);

}  // namespace csdirac
