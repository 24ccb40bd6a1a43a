#pragma once

// Command-line front end: JSON run configuration, subcommands and CSV output.

#include "csdirac/evolution.hpp"
#include "csdirac/scenarios.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csdirac::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2, kIoError = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named potential shape: none | constant(value) | smooth_well(depth, width)
/// | step(v0, smoothing). Values are A0 samples; the potential energy is
/// charge_sign * e * A0.
struct ShapeConfig {
  std::string shape = "none";
  double value = 0;
  double depth = 0.3;
  double width = 2.0;
  double v0 = 0;
  double smoothing = 0.1;
};

struct DriveConfig {
  ShapeConfig profile{"smooth_well", 0, 0.3, 2.0, 0, 0.1};
  double amplitude = 0;
  double omega = 1;
  std::optional<double> switch_off;
};

struct KleinPoint {
  double energy = 1.25;
  double v0 = 0;
};

struct RunConfig {
  Constants constants;
  int n_points = 256;
  double length = 80;
  ShapeConfig potential;
  std::optional<DriveConfig> drive;
  std::string species = "particle";
  std::optional<int> charge_sign;

  EvolutionConfig evolution{0.01, 1000, Projection::none, 10};
  bool write_fields = false;
  PacketParams packet{1.0, 4.0, -10.0, 0.0, 1};

  std::vector<KleinPoint> klein_points{{1.25, 0.0}, {1.25, 0.2}, {1.25, 1.0}, {1.25, 3.0}};
  bool klein_simulate = false;
  KleinGridOptions klein_grid;

  int zitter_n_points = 512;
  double zitter_length = 160;
  PacketParams zitter_packet{0.0, 10.0, 0.0, 1.0, 1};
  double zitter_duration = 40 * 3.141592653589793;
  double zitter_dt = 0.05;

  int verify_samples = 100;
  double verify_k_max = 10;
  int verify_grid_points = 64;
  double verify_grid_length = 20;
  std::string fault_injection;

  double modes_k_max = 5;
  int modes_count = 21;

  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

/// Parses a JSON document; unknown keys and malformed values raise
/// ConfigError naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
/// Fully resolved configuration as a compact JSON string (keys sorted).
std::string dump_config(const RunConfig& cfg);

Grid1D make_grid(const RunConfig& cfg);
PotentialSpec make_potential(const RunConfig& cfg, const Grid1D& grid);
int resolved_charge_sign(const RunConfig& cfg);

struct CheckRow {
  std::string name;
  double residual = 0;
  double threshold = 0;
  bool skipped = false;
  bool passed() const { return skipped || residual <= threshold; }
};

/// The identity/orthonormality/completeness suite behind `verify`.
std::vector<CheckRow> verification_suite(const RunConfig& cfg);

int cmd_verify(const RunConfig& cfg, bool quiet);
int cmd_evolve(const RunConfig& cfg, bool quiet);
int cmd_klein(const RunConfig& cfg, bool quiet);
int cmd_zitter(const RunConfig& cfg, bool quiet);
int cmd_modes(const RunConfig& cfg, bool quiet);

/// Full entry point (argv[0] is the program name). Returns an ExitCode.
int run(const std::vector<std::string>& args);

}  // namespace csdirac::cli
