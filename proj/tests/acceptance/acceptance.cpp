// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria (capped at 1).

#include "csdirac/cli.hpp"
#include "csdirac/frequency_split.hpp"
#include "csdirac/observables.hpp"
#include "csdirac/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace csdirac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::map<std::string, cli::CheckRow> suite_rows() {
  std::map<std::string, cli::CheckRow> rows;
  for (auto& r : cli::verification_suite(cli::RunConfig{})) rows[r.name] = r;
  return rows;
}

void report_rows(Outcome& out, const std::map<std::string, cli::CheckRow>& rows,
                 const std::vector<std::string>& names) {
  for (const auto& n : names) {
    const auto& r = rows.at(n);
    out.check(r.passed(), n + " residual " + fmt("%.3g", r.residual) + " <= " + fmt("%g", r.threshold));
  }
}

PotentialSpec well(const Grid1D& grid) {
  PotentialSpec p = PotentialSpec::none(grid.size());
  p.a0 = gaussian_well(grid, 0.3, 2.0);
  return p;
}

Outcome algebra() {
  Outcome out;
  report_rows(out, suite_rows(),
              {"charge_conjugation_identities", "clifford_relation", "gamma_hermiticity",
               "charge_conjugation_involution"});
  return out;
}

Outcome dispersion_and_spinors() {
  Outcome out;
  report_rows(out, suite_rows(), {"free_grid_dispersion", "momentum_space_dirac_equation", "upper_spinor_normalization"});
  return out;
}

Outcome orthonormality() {
  Outcome out;
  report_rows(out, suite_rows(), {"mode_orthonormality", "mode_completeness", "well_spectrum_cross_orthogonality"});
  return out;
}

Outcome conservation() {
  Outcome out;
  const Constants pc;
  const Gammas g = make_gammas();

  const Grid1D grid(256, 80.0);
  const PotentialSpec p = well(grid);
  GridField f = make_packet(grid, PacketParams{0.8, 4.0, -10.0, 0.0, 1}, pc, g);
  const StrangStepper stepper(grid, p, 1, 0.01, pc, g);
  for (int s = 0; s < 10000; ++s) stepper.step(f);
  out.check(std::abs(norm_squared(f) - 1) < 1e-10, "norm drift over 1e4 steps " + fmt("%.3g", std::abs(norm_squared(f) - 1)));

  const GridField free_packet = make_packet(grid, PacketParams{1.0, 3.0, -10.0, 0.0, 1}, pc, g);
  const PotentialSpec none = PotentialSpec::none(grid.size());
  const double coarse =
      continuity_residual(evolve(free_packet, none, EvolutionConfig{0.01, 400, Projection::none, 10}, pc, g), g, pc);
  const double fine =
      continuity_residual(evolve(free_packet, none, EvolutionConfig{0.01, 400, Projection::none, 5}, pc, g), g, pc);
  out.check(std::abs(coarse / fine - 4) <= 0.5, "continuity convergence ratio " + fmt("%.4f", coarse / fine));

  const DiracHamiltonian h(grid, p, 1, pc, g);
  const GridField probe = make_packet(grid, PacketParams{0.8, 3.0, -4.0, 0.0, 1}, pc, g);
  const FieldValues dt = time_derivative(probe, h);
  const EnergyMomentum direct = total_energy_momentum(probe, h);
  const EnergyMomentum tensor = tensor_energy_momentum(probe, dt, pc, g);
  const double tensor_gap = std::max(std::abs(direct.energy - tensor.energy), std::abs(direct.momentum - tensor.momentum));
  out.check(tensor_gap < 1e-10, "tensor vs direct W, P " + fmt("%.3g", tensor_gap));

  const Grid1D small(64, 20.0);
  const PotentialSpec small_well = well(small);
  const SpectralDecomposition spec = stationary_spectrum(small, small_well, 1, pc, g);
  double lagrangian = 0;
  for (int idx : spec.positive_set) {
    const GridField mode = spec.mode(idx);
    const FieldValues mode_dt = cdouble(0, -spec.eigenvalues(idx)) * mode.values;
    lagrangian = std::max(lagrangian, lagrangian_density(mode, mode_dt, small_well, pc, g).cwiseAbs().maxCoeff());
  }
  out.check(lagrangian < 1e-9, "on-shell Lagrangian density " + fmt("%.3g", lagrangian));
  return out;
}

Outcome mode_sums() {
  Outcome out;
  const Constants pc;
  const Gammas g = make_gammas();
  const Grid1D grid(128, 30.0);
  const DiracHamiltonian h(grid, PotentialSpec::none(grid.size()), 1, pc, g);
  const std::vector<std::pair<int, cdouble>> picks{{0, {0.3, 0.1}}, {2, {-0.2, 0.4}}, {5, {0.5, 0}},
                                                   {125, {0.1, -0.3}}, {7, {0.2, 0.2}}};
  double total = 0;
  for (const auto& pick : picks) total += std::norm(pick.second);
  ModeSet<double> ms;
  int r = 1;
  for (const auto& [n, a] : picks) {
    ms.modes.push_back({Vector3<double>(0, 0, grid.wavenumber(n)), r, Species::particle, a / std::sqrt(total), 1});
    r = -r;
  }
  const auto sums = superposition_energy_momentum(ms, pc);
  const EnergyMomentum grid_em = total_energy_momentum(mode_field(grid, ms, Species::particle, pc), h);
  out.check(std::abs(sums.energy - grid_em.energy) < 1e-10, "energy gap " + fmt("%.3g", std::abs(sums.energy - grid_em.energy)));
  out.check(std::abs(sums.momentum(2) - grid_em.momentum) < 1e-10,
            "momentum gap " + fmt("%.3g", std::abs(sums.momentum(2) - grid_em.momentum)));
  return out;
}

Outcome zitterbewegung() {
  Outcome out;
  const Constants pc;
  const Grid1D grid(512, 160.0);
  const double compton = 2 * std::numbers::pi;
  const auto [mixed, positive] =
      zitterbewegung_compare(grid, PacketParams{0.0, 10.0, 0.0, 1.0, 1}, 20 * compton, 0.05, pc, make_gammas());
  const double expected = 2 * pc.rest_energy() / pc.hbar;
  const double rel = std::abs(mixed.dominant_frequency - expected) / expected;
  out.check(rel < 0.05, "mixed dominant frequency " + fmt("%.5f", mixed.dominant_frequency) + " (rel err " + fmt("%.3g", rel) + ")");
  out.check(positive.detrended_amplitude < 1e-6, "positive-only jitter " + fmt("%.3g", positive.detrended_amplitude));
  return out;
}

Outcome klein() {
  Outcome out;
  const Constants pc;
  const KleinResult zone = klein_step(1.25, 3.0, pc);
  out.check(zone.regime == KleinRegime::klein_zone && zone.standard_T > 0.1,
            "klein_zone standard_T " + fmt("%.6f", zone.standard_T) + " > 0.1");
  out.check(zone.restricted_R == 1.0 && zone.restricted_T == 0.0, "restricted R = 1, T = 0 exactly");
  for (double v0 : {0.2, 1.0, 3.0}) {
    const KleinResult r = klein_step(1.25, v0, pc, KleinGridOptions{});
    const double rel = std::abs(r.grid_R - r.standard_R) / r.standard_R;
    out.check(rel <= 0.01, std::string(to_string(r.regime)) + " v0=" + fmt("%g", v0) + " standard_R " +
                               fmt("%.6f", r.standard_R) + " grid_R " + fmt("%.6f", r.grid_R) + " rel " +
                               fmt("%.2e", rel) + " spread " + fmt("%.4f", r.grid_energy_spread));
    out.check(r.grid_energy_spread <= 0.02, "packet energy spread " + fmt("%.4f", r.grid_energy_spread) + " <= 0.02");
  }
  return out;
}

Outcome nonstationary() {
  Outcome out;
  const Constants pc;
  const Gammas g = make_gammas();
  const Grid1D grid(128, 40.0);
  PotentialSpec p = PotentialSpec::none(grid.size());
  p.drive_a0 = gaussian_well(grid, -1.0, 3.0);
  p.time_profile = {0.05, 1.3, 6.0};
  GridField f = make_packet(grid, PacketParams{0.5, 3.0, -2.0, 0.0, 1}, pc, g);
  const StrangStepper stepper(grid, p, 1, 0.02, pc, g);
  auto energy = [&] { return total_energy_momentum(f, DiracHamiltonian(grid, p, 1, pc, g, f.time)).energy; };
  const double w0 = energy();
  double swing = 0, frozen = 0, w_off = 0, norm_drift = 0;
  for (int s = 1; s <= 500; ++s) {
    stepper.step(f);
    const double w = energy();
    norm_drift = std::max(norm_drift, std::abs(norm_squared(f) - 1));
    if (f.time < 6.0) swing = std::max(swing, std::abs(w - w0));
    if (s == 350) w_off = w;
    if (s > 350) frozen = std::max(frozen, std::abs(w - w_off));
  }
  out.check(swing / w0 > 1e-6, "driven relative change of W " + fmt("%.3g", swing / w0));
  out.check(norm_drift < 1e-10, "norm drift " + fmt("%.3g", norm_drift));
  out.check(frozen < 1e-10, "W after switch-off " + fmt("%.3g", frozen));
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome out;
  const fs::path dir = fs::temp_directory_path() / "csdirac_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "config.json";
  std::ofstream(config) << R"({"klein": {"simulate": true, "n_points": 2048, "length": 640, "packet_width": 20},
                              "zitter": {"n_points": 256, "length": 160, "width": 10, "duration": 63, "dt": 0.1}})";
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"verify", {"verify.csv"}}, {"klein", {"klein.csv"}}, {"zitter", {"zitter.csv", "zitter_summary.csv"}}};
  for (const auto& [cmd, files] : runs) {
    std::vector<std::string> first;
    bool ok = true;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int code = cli::run({"csdirac", cmd, "--quiet", "--seed", "11", "--config", config.string(), "--out",
                                 dir.string()});
      ok = ok && code == cli::kSuccess;
      for (std::size_t i = 0; i < files.size(); ++i) {
        const std::string text = slurp(dir / files[i]);
        if (attempt == 0) first.push_back(text);
        else ok = ok && !text.empty() && text == first[i];
      }
    }
    out.check(ok, cmd + " outputs byte-identical across runs");
  }
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, std::function<Outcome()>>> criteria{
      {1, "algebraic identities", algebra},
      {2, "dispersion and spinors", dispersion_and_spinors},
      {3, "orthonormality and completeness", orthonormality},
      {4, "conservation laws", conservation},
      {5, "mode-sum consistency", mode_sums},
      {6, "zitterbewegung", zitterbewegung},
      {7, "klein paradox", klein},
      {8, "nonstationary field", nonstationary},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& [id, name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::printf("%s criterion %d (%s) %.1fs\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
