#include "csdirac/cli.hpp"

#include "csdirac/frequency_split.hpp"
#include "csdirac/observables.hpp"

#include <CLI11.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace csdirac::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Every output file starts with the artifact version, the command and the
// resolved configuration.
class CsvWriter {
 public:
  CsvWriter(const RunConfig& cfg, const std::string& command, const std::string& file_name) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
    path_ = (std::filesystem::path(cfg.output_dir) / file_name).string();
    out_.open(path_, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!out_) throw IoError("cannot open '" + path_ + "' for writing");
    out_ << "# csdirac " << kVersion << "\n";
    out_ << "# command: " << command << "\n";
    out_ << "# config: " << dump_config(cfg) << "\n";
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing '" + path_ + "'");
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

Gammas gammas_for(const RunConfig& cfg) {
  Gammas g = make_gammas();
  if (cfg.fault_injection == "corrupt_c_matrix") g.c_matrix = Mat4::Identity();
  if (cfg.fault_injection == "scale_gamma4") g(4) *= 2.0;
  return g;
}

Species species_of(const RunConfig& cfg) {
  return cfg.species == "particle" ? Species::particle : Species::antiparticle;
}

// Uniform direction, |k| uniform in [0, k_max].
Vector3<double> random_k(std::mt19937_64& rng, double k_max) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0, k_max);
  Vector3<double> dir(normal(rng), normal(rng), normal(rng));
  while (dir.norm() == 0) dir = Vector3<double>(normal(rng), normal(rng), normal(rng));
  return radius(rng) * dir.normalized();
}

double free_grid_dispersion_residual(const Grid1D& grid, const Constants& pc, const Gammas& g) {
  const DiracHamiltonian h(grid, PotentialSpec::none(grid.size()), 1, pc, g);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense(), Eigen::EigenvaluesOnly);
  std::vector<double> expected;
  for (int n = 0; n < grid.size(); ++n) {
    const double e = dispersion(grid.wavenumber(n), pc);
    expected.insert(expected.end(), {e, e, -e, -e});
  }
  std::sort(expected.begin(), expected.end());
  double worst = 0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    worst = std::max(worst, std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(i)) - expected[i]));
  return worst;
}

Eigen::VectorXd verification_well(const RunConfig& cfg, const Grid1D& grid) {
  if (cfg.potential.shape == "smooth_well")
    return gaussian_well(grid, cfg.potential.depth, cfg.potential.width);
  return gaussian_well(grid, 0.3, 2.0);
}

}  // namespace

std::vector<CheckRow> verification_suite(const RunConfig& cfg) {
  const Constants& pc = cfg.constants;
  const Gammas g = gammas_for(cfg);
  const bool massless = !(pc.m > 0);
  std::mt19937_64 rng(cfg.seed);
  std::vector<CheckRow> rows;

  const IdentityResiduals<double> ids = identity_residuals(g);
  rows.push_back({"charge_conjugation_identities", ids.c_relations(), 0.0});
  rows.push_back({"clifford_relation", ids.clifford, 0.0});
  rows.push_back({"gamma_hermiticity", ids.hermiticity, 0.0});

  std::normal_distribution<double> normal;
  double involution = 0;
  for (int i = 0; i < 1000; ++i) {
    Spinor psi;
    for (int a = 0; a < 4; ++a) psi(a) = cdouble(normal(rng), normal(rng));
    involution = std::max(involution, max_abs(charge_conjugate(charge_conjugate(psi, g), g) - psi));
  }
  rows.push_back({"charge_conjugation_involution", involution, 0.0});

  // Sample momenta always include the rest frame (massive case) and the
  // largest momentum along an axis.
  std::vector<Vector3<double>> ks;
  if (!massless) ks.emplace_back(0, 0, 0);
  ks.emplace_back(0, 0, cfg.verify_k_max);
  while (static_cast<int>(ks.size()) < cfg.verify_samples) {
    const Vector3<double> k = random_k(rng, cfg.verify_k_max);
    if (massless && k.norm() < 1e-8) continue;
    ks.push_back(k);
  }

  double momentum_space = 0, upper_norm = 0, ortho = 0, complete = 0, cross = 0;
  for (const auto& k : ks) {
    const double e = dispersion(k, pc);
    for (int r : {1, -1}) {
      const Spinor u = mode_bispinor<double>(k, r, Species::particle, pc);
      momentum_space = std::max(momentum_space, momentum_space_residual(k, u, pc, g));
      upper_norm = std::max(upper_norm, std::abs(u.head<2>().squaredNorm() - 0.5 * (1 + pc.rest_energy() / e)));
    }
    ortho = std::max(ortho, check_orthonormality(k, pc));
    complete = std::max(complete, check_completeness(k, pc, g).max());
    cross = std::max(cross, check_cross_orthogonality(k, pc, g));
  }
  rows.push_back({"momentum_space_dirac_equation", momentum_space, 1e-13});
  rows.push_back({"upper_spinor_normalization", upper_norm, 1e-14});
  rows.push_back({"mode_orthonormality", ortho, 1e-13});
  rows.push_back({"mode_completeness", complete, 1e-13});
  rows.push_back({"mode_cross_orthogonality", cross, 1e-13});

  if (massless) {
    // The free grid spectrum has exact zero modes and the dense frequency
    // split is undefined without a gap.
    rows.push_back({"free_grid_dispersion", 0, 1e-12, true});
    rows.push_back({"grid_hamiltonian_hermiticity", 0, 1e-12, true});
    rows.push_back({"well_spectrum_cross_orthogonality", 0, 1e-8, true});
    return rows;
  }

  Grid1D grid;
  try {
    grid = Grid1D(cfg.verify_grid_points, cfg.verify_grid_length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("verify.grid_points/grid_length: ") + e.what());
  }
  if (grid.size() > kMaxDenseGridPoints) throw ConfigError("verify.grid_points: dense checks need at most 1024 points");
  rows.push_back({"free_grid_dispersion", free_grid_dispersion_residual(grid, pc, g), 1e-12});

  PotentialSpec well = PotentialSpec::none(grid.size());
  well.a0 = verification_well(cfg, grid);
  const DiracHamiltonian h(grid, well, 1, pc, g);
  rows.push_back({"grid_hamiltonian_hermiticity", hermiticity_residual(h.dense()), 1e-12});

  double cross_grid = std::numeric_limits<double>::infinity();
  try {
    const SpectralDecomposition particle = stationary_spectrum(grid, well, 1, pc, g);
    const SpectralDecomposition antiparticle = stationary_spectrum(grid, well, -1, pc, g);
    cross_grid = cross_orthogonality_check(particle, antiparticle, g);
  } catch (const std::runtime_error&) {
    // A corrupted gamma set breaks hermiticity; the row then reports failure.
  }
  rows.push_back({"well_spectrum_cross_orthogonality", cross_grid, 1e-8});
  return rows;
}

int cmd_verify(const RunConfig& cfg, bool quiet) {
  const std::vector<CheckRow> rows = verification_suite(cfg);
  CsvWriter csv(cfg, "verify", "verify.csv");
  csv.row({"check", "residual", "threshold", "status"});
  bool ok = true;
  for (const auto& r : rows) {
    const std::string status = r.skipped ? "skipped" : (r.passed() ? "pass" : "fail");
    csv.row({r.name, num(r.residual), short_num(r.threshold), status});
    if (!quiet) std::printf("%-36s %-12.3e <= %-8s %s\n", r.name.c_str(), r.residual, short_num(r.threshold).c_str(),
                            status.c_str());
    if (!r.passed()) {
      ok = false;
      std::fprintf(stderr, "verification failed: %s\n", r.name.c_str());
    }
  }
  csv.close();
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_evolve(const RunConfig& cfg, bool quiet) {
  const Constants& pc = cfg.constants;
  const Gammas g = gammas_for(cfg);
  const Grid1D grid = make_grid(cfg);
  const PotentialSpec potential = make_potential(cfg, grid);

  PacketParams packet = cfg.packet;
  packet.alpha = 0;
  GridField field = make_packet(grid, packet, pc, g);
  field.species = species_of(cfg);
  field.charge_sign = resolved_charge_sign(cfg);

  const Trajectory traj = evolve(field, potential, cfg.evolution, pc, g);

  CsvWriter csv(cfg, "evolve", "evolve.csv");
  csv.row({"t", "norm", "energy", "momentum", "mean_x"});
  for (const auto& snap : traj.snapshots) {
    const DiracHamiltonian h(grid, potential, snap.charge_sign, pc, g, snap.time);
    const ObservableReport r = observe(snap, h);
    csv.row({num(r.time), num(r.norm), num(r.energy), num(r.momentum), num(r.mean_x)});
  }
  csv.close();

  if (cfg.write_fields) {
    CsvWriter fields(cfg, "evolve", "fields.csv");
    fields.row({"t", "z", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "re_psi3", "im_psi3", "re_psi4", "im_psi4"});
    for (const auto& snap : traj.snapshots) {
      for (int j = 0; j < grid.size(); ++j) {
        std::vector<std::string> cells{num(snap.time), num(grid.x(j))};
        for (int a = 0; a < 4; ++a) {
          cells.push_back(num(snap.values(a, j).real()));
          cells.push_back(num(snap.values(a, j).imag()));
        }
        fields.row(cells);
      }
    }
    fields.close();
  }
  if (!quiet) std::printf("wrote %zu snapshots to %s\n", traj.snapshots.size(), csv.path().c_str());
  return kSuccess;
}

int cmd_klein(const RunConfig& cfg, bool quiet) {
  const Gammas g = gammas_for(cfg);
  std::optional<KleinGridOptions> grid_options;
  if (cfg.klein_simulate) grid_options = cfg.klein_grid;

  std::vector<KleinResult> results;
  for (const auto& p : cfg.klein_points) {
    try {
      results.push_back(klein_step(p.energy, p.v0, cfg.constants, grid_options, g));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("klein.points (E=" + num(p.energy) + ", v0=" + num(p.v0) + "): " + e.what());
    }
  }

  CsvWriter csv(cfg, "klein", "klein.csv");
  csv.comment("kprime_convention group_velocity: transmitted wavenumber signed so the group velocity leaves the step");
  for (const auto& r : results)
    csv.comment("momentum_convention E=" + num(r.energy) + " v0=" + num(r.v0) + " R=" + num(r.momentum_convention_R) +
                " T=" + num(r.momentum_convention_T));
  csv.row({"E", "v0", "regime", "standard_R", "standard_T", "restricted_R", "restricted_T", "grid_R",
           "kprime_convention"});
  for (const auto& r : results) {
    csv.row({num(r.energy), num(r.v0), std::string(to_string(r.regime)), num(r.standard_R), num(r.standard_T),
             num(r.restricted_R), num(r.restricted_T), num(r.grid_R), r.kprime_convention});
    if (!quiet)
      std::printf("E=%g v0=%g %-12s standard R=%.6f T=%.6f  restricted R=%g T=%g  grid R=%.6f\n", r.energy, r.v0,
                  std::string(to_string(r.regime)).c_str(), r.standard_R, r.standard_T, r.restricted_R,
                  r.restricted_T, r.grid_R);
  }
  csv.close();
  return kSuccess;
}

int cmd_zitter(const RunConfig& cfg, bool quiet) {
  const Constants& pc = cfg.constants;
  const Gammas g = gammas_for(cfg);
  Grid1D grid;
  try {
    grid = Grid1D(cfg.zitter_n_points, cfg.zitter_length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("zitter.n_points/length: ") + e.what());
  }
  const auto [mixed, positive] =
      zitterbewegung_compare(grid, cfg.zitter_packet, cfg.zitter_duration, cfg.zitter_dt, pc, g);

  CsvWriter csv(cfg, "zitter", "zitter.csv");
  csv.row({"t", "mean_x_mixed", "mean_x_positive"});
  for (std::size_t i = 0; i < mixed.times.size(); ++i)
    csv.row({num(mixed.times[i]), num(mixed.mean_x[i]), num(positive.mean_x[i])});
  csv.close();

  const double expected = 2 * pc.rest_energy() / pc.hbar;
  const double frequency_error = std::abs(mixed.dominant_frequency - expected) / expected;
  const double jitter_threshold = 1e-6 * pc.hbar / (pc.m * pc.c);
  const bool mixed_ok = frequency_error <= 0.05;
  const bool positive_ok = positive.detrended_amplitude < jitter_threshold;

  CsvWriter summary(cfg, "zitter", "zitter_summary.csv");
  summary.row({"packet", "dominant_frequency", "expected_frequency", "detrended_amplitude", "metric", "threshold",
               "pass"});
  summary.row({"mixed", num(mixed.dominant_frequency), num(expected), num(mixed.detrended_amplitude),
               num(frequency_error), "0.05", mixed_ok ? "pass" : "fail"});
  summary.row({"positive_only", num(positive.dominant_frequency), num(expected), num(positive.detrended_amplitude),
               num(positive.detrended_amplitude), short_num(jitter_threshold), positive_ok ? "pass" : "fail"});
  summary.close();

  if (!quiet) {
    std::printf("mixed:         dominant frequency %.6f (expected %.6f), jitter %.3e\n", mixed.dominant_frequency,
                expected, mixed.detrended_amplitude);
    std::printf("positive-only: jitter %.3e (threshold %.1e)\n", positive.detrended_amplitude, jitter_threshold);
  }
  return mixed_ok && positive_ok ? kSuccess : kVerificationFailure;
}

int cmd_modes(const RunConfig& cfg, bool quiet) {
  const Constants& pc = cfg.constants;
  CsvWriter csv(cfg, "modes", "modes.csv");
  csv.row({"kz", "species", "r", "energy", "re_u1", "im_u1", "re_u2", "im_u2", "re_u3", "im_u3", "re_u4", "im_u4",
           "norm"});
  int written = 0;
  for (int i = 0; i < cfg.modes_count; ++i) {
    const double kz =
        cfg.modes_count == 1 ? 0.0 : -cfg.modes_k_max + 2 * cfg.modes_k_max * i / (cfg.modes_count - 1);
    for (Species s : {Species::particle, Species::antiparticle}) {
      for (int r : {1, -1}) {
        if (!(dispersion(kz, pc) > 0)) continue;
        const Spinor u = mode_bispinor<double>(kz, r, s, pc);
        std::vector<std::string> cells{num(kz), s == Species::particle ? "particle" : "antiparticle",
                                       std::to_string(r), num(dispersion(kz, pc))};
        for (int a = 0; a < 4; ++a) {
          cells.push_back(num(u(a).real()));
          cells.push_back(num(u(a).imag()));
        }
        cells.push_back(num(u.squaredNorm()));
        csv.row(cells);
        ++written;
      }
    }
  }
  csv.close();
  if (!quiet) std::printf("wrote %d modes to %s\n", written, csv.path().c_str());
  return kSuccess;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Charge-symmetric positive-frequency Dirac toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--seed", seed, "64-bit seed for random test data");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify", "Identity, orthonormality and completeness checks"},
      {"evolve", "Evolve a wave packet and record observables"},
      {"klein", "Step-potential reflection and transmission"},
      {"zitter", "Mean-position jitter of mixed and positive-only packets"},
      {"modes", "Tabulate plane-wave spinors and dispersion"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed) cfg.seed = *seed;

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "verify") return cmd_verify(cfg, quiet);
    if (command == "evolve") return cmd_evolve(cfg, quiet);
    if (command == "klein") return cmd_klein(cfg, quiet);
    if (command == "zitter") return cmd_zitter(cfg, quiet);
    return cmd_modes(cfg, quiet);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerificationFailure;
  }
}

}  // namespace csdirac::cli
