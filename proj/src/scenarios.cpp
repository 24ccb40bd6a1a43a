#include "csdirac/scenarios.hpp"

#include "csdirac/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace csdirac {

std::string_view to_string(KleinRegime r) {
  switch (r) {
    case KleinRegime::transmitting:
      return "transmitting";
    case KleinRegime::evanescent:
      return "evanescent";
    case KleinRegime::klein_zone:
      return "klein_zone";
  }
  return "transmitting";
}

namespace {

// Reflection and transmission for the amplitude ratio kappa = b / a of the
// lower-to-upper spinor components on the two sides of the step.
std::pair<double, double> matching(double kappa) {
  const double r = (1 - kappa) / (1 + kappa);
  return {r * r, 4 * kappa / ((1 + kappa) * (1 + kappa))};
}

struct PacketRun {
  double reflected = 0;
  double energy_spread = 0;
};

double relative_energy_spread(const GridField& packet, const Constants& pc) {
  const Spectral spectral(packet.grid);
  const FieldValues spec = spectral.forward(packet.values);
  double w = 0, e1 = 0, e2 = 0;
  for (int n = 0; n < packet.size(); ++n) {
    const double weight = spec.col(n).squaredNorm();
    const double e = dispersion(packet.grid.wavenumber(n), pc);
    w += weight;
    e1 += weight * e;
    e2 += weight * e * e;
  }
  e1 /= w;
  e2 /= w;
  return std::sqrt(std::max(0.0, e2 - e1 * e1)) / e1;
}

PacketRun run_packet(double energy, double v0, const Constants& pc, const Gammas& g, const KleinGridOptions& opt,
                     double k0) {
  if (pc.e == 0) throw std::invalid_argument("klein_step: the packet oracle needs a nonzero charge");
  const Grid1D grid(opt.n_points, opt.length);
  const double smoothing = opt.smoothing_cells * grid.spacing();
  PotentialSpec potential = PotentialSpec::none(grid.size());
  potential.a0 = smooth_step(grid, v0 / pc.e, smoothing);

  PacketParams params;
  params.k0 = k0;
  params.width = opt.packet_width;
  params.x0 = opt.x0.value_or(-0.25 * opt.length);
  params.spin = opt.spin;
  GridField field = make_packet(grid, params, pc, g);

  const double vg = pc.c * pc.c * pc.hbar * k0 / energy;
  const double travel = (std::abs(params.x0) + 5 * opt.packet_width) / vg;
  // The transmitted packet must not come back from the falling edge at the
  // wrap before the measurement.
  const double local = energy - v0;
  const double mc2 = pc.rest_energy();
  if (v0 != 0 && std::abs(local) > mc2) {
    const double vt = pc.c * std::sqrt(local * local - mc2 * mc2) / std::abs(local);
    if (10 * opt.packet_width * vt / vg > 0.5 * opt.length)
      throw std::invalid_argument("klein_step: box too short for the transmitted packet");
  }
  const int steps = static_cast<int>(std::ceil(travel / opt.dt));
  const StrangStepper stepper(grid, potential, field.charge_sign, opt.dt, pc, g);
  for (int s = 0; s < steps; ++s) stepper.step(field);

  // Reflection at the carrier energy itself: the weight of the reflected
  // packet at -k0 over the weight of the incident packet at +k0. Both sit in
  // the field-free region, so this removes the averaging of R(E) over the
  // packet's energy spread. The reflected side is cut off smoothly one packet
  // width left of the step, away from slow waves still leaving it.
  const GridField initial = make_packet(grid, params, pc, g);
  const double w = opt.packet_width;
  Eigen::Vector4cd incident = Eigen::Vector4cd::Zero(), reflected = Eigen::Vector4cd::Zero();
  for (int j = 0; j < grid.size(); ++j) {
    const cdouble phase = std::polar(1.0, k0 * grid.x(j));
    const double window = 0.5 * (1 - std::tanh((grid.x(j) + w) / (0.5 * w)));
    incident += initial.values.col(j) * std::conj(phase);
    reflected += window * field.values.col(j) * phase;
  }
  return {reflected.squaredNorm() / incident.squaredNorm(), relative_energy_spread(initial, pc)};
}

}  // namespace

KleinResult klein_step(double energy, double v0, const Constants& pc, const std::optional<KleinGridOptions>& grid,
                       const Gammas& g) {
  pc.validate();
  const double mc2 = pc.rest_energy();
  if (!(energy > mc2)) throw std::invalid_argument("klein_step: energy must exceed mc^2");
  const double hc = pc.hbar * pc.c;
  const double k = std::sqrt(energy * energy - mc2 * mc2) / hc;
  const double local = energy - v0;

  KleinResult res;
  res.energy = energy;
  res.v0 = v0;
  if (local > mc2) {
    res.regime = KleinRegime::transmitting;
  } else if (local > -mc2) {
    res.regime = KleinRegime::evanescent;
  } else {
    res.regime = KleinRegime::klein_zone;
  }

  const double a = hc * k / (energy + mc2);
  if (res.regime == KleinRegime::evanescent || local * local == mc2 * mc2) {
    res.standard_R = res.momentum_convention_R = 1;
    res.standard_T = res.momentum_convention_T = 0;
  } else {
    const double kprime = std::sqrt(local * local - mc2 * mc2) / hc;
    // transmitted group velocity c^2 hbar k' / (E - v0) must be positive
    const double k_group = res.regime == KleinRegime::klein_zone ? -kprime : kprime;
    const double kappa_group = (hc * k_group / (local + mc2)) / a;
    const double kappa_momentum = (hc * kprime / (local + mc2)) / a;
    std::tie(res.standard_R, res.standard_T) = matching(kappa_group);
    std::tie(res.momentum_convention_R, res.momentum_convention_T) = matching(kappa_momentum);
  }

  if (res.regime == KleinRegime::transmitting) {
    res.restricted_R = res.standard_R;
    res.restricted_T = res.standard_T;
  } else {
    res.restricted_R = 1;
    res.restricted_T = 0;
  }

  if (grid) {
    const PacketRun run = run_packet(energy, v0, pc, g, *grid, k);
    res.grid_R = run.reflected;
    res.grid_energy_spread = run.energy_spread;
    res.smoothing_width = grid->smoothing_cells * grid->length / grid->n_points;
    res.packet_width = grid->packet_width;
  }
  return res;
}

namespace {

// Gaussian envelope projected onto positive-energy modes of spin r.
FieldValues positive_packet(const Grid1D& grid, const PacketParams& p, int spin, const Constants& pc) {
  const Spectral spectral(grid);
  Eigen::VectorXcd envelope(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double u = (grid.x(j) - p.x0) / p.width;
    envelope(j) = std::polar(std::exp(-0.5 * u * u), p.k0 * grid.x(j));
  }
  const Eigen::VectorXcd coeffs = spectral.forward(envelope);
  FieldValues spec(4, grid.size());
  for (int n = 0; n < grid.size(); ++n)
    spec.col(n) = coeffs(n) * mode_bispinor<double>(grid.wavenumber(n), spin, Species::particle, pc);
  FieldValues values = spectral.inverse(spec);
  values /= std::sqrt(grid.spacing() * values.squaredNorm());
  return values;
}

}  // namespace

GridField make_packet(const Grid1D& grid, const PacketParams& p, const Constants& pc, const Gammas& g) {
  check_spin_label(p.spin);
  if (!(p.width >= 2 * grid.spacing())) throw std::invalid_argument("make_packet: width is not resolved by the grid");
  if (std::abs(p.x0) + 4 * p.width > 0.5 * grid.length())
    throw std::invalid_argument("make_packet: packet does not fit inside the box");
  const double k_max = std::numbers::pi / grid.spacing();
  if (std::abs(p.k0) + 6 / p.width > k_max) throw std::invalid_argument("make_packet: k0 is not resolved by the grid");
  if (!(p.alpha >= 0)) throw std::invalid_argument("make_packet: alpha must be non-negative");

  GridField out(grid, Species::particle);
  out.values = positive_packet(grid, p, p.spin, pc);
  out.frequency = FrequencyTag::positive;
  if (p.alpha > 0) {
    const FieldValues eta_plus = positive_packet(grid, p, -p.spin, pc);
    out.values += p.alpha * (conjugation_matrix(g) * eta_plus.conjugate());
    out.frequency = FrequencyTag::mixed;
    out.probability_amplitude = false;
  }
  out.values /= std::sqrt(grid.spacing() * out.values.squaredNorm());
  return out;
}

std::vector<double> detrend(const std::vector<double>& t, const std::vector<double>& y) {
  const auto n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  const double slope = denom != 0 ? (n * sty - st * sy) / denom : 0.0;
  const double intercept = (sy - slope * st) / n;
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - (intercept + slope * t[i]);
  return out;
}

double dominant_angular_frequency(const std::vector<double>& y, double sample_interval) {
  std::size_t padded = 1;
  while (padded < 16 * y.size()) padded <<= 1;
  Eigen::VectorXcd data = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(padded));
  for (std::size_t i = 0; i < y.size(); ++i) data(static_cast<Eigen::Index>(i)) = y[i];
  const Eigen::VectorXcd spec = dft(data);
  Eigen::Index best = 1;
  double best_mag = -1;
  for (Eigen::Index n = 1; n <= data.size() / 2; ++n) {
    const double mag = std::abs(spec(n));
    if (mag > best_mag) {
      best_mag = mag;
      best = n;
    }
  }
  return 2 * std::numbers::pi * static_cast<double>(best) / (static_cast<double>(padded) * sample_interval);
}

ZitterResult mean_position_series(const Grid1D& grid, const GridField& packet, double duration, double dt,
                                  const Constants& pc, const Gammas& g, PacketKind kind) {
  const StrangStepper stepper(grid, PotentialSpec::none(grid.size()), packet.charge_sign, dt, pc, g);
  const int steps = static_cast<int>(std::llround(duration / dt));
  ZitterResult res;
  res.kind = kind;
  res.times.reserve(static_cast<std::size_t>(steps + 1));
  res.mean_x.reserve(static_cast<std::size_t>(steps + 1));
  GridField field = packet;
  for (int s = 0; s <= steps; ++s) {
    if (s > 0) {
      stepper.step(field);
      field.time = packet.time + s * dt;
    }
    res.times.push_back(field.time);
    res.mean_x.push_back(position_expectation(field));
  }
  const std::vector<double> residual = detrend(res.times, res.mean_x);
  for (double r : residual) res.detrended_amplitude = std::max(res.detrended_amplitude, std::abs(r));
  res.dominant_frequency = dominant_angular_frequency(residual, dt);
  return res;
}

std::pair<ZitterResult, ZitterResult> zitterbewegung_compare(const Grid1D& grid, const PacketParams& params,
                                                             double duration, double dt, const Constants& pc,
                                                             const Gammas& g) {
  pc.validate();
  if (!(pc.m > 0)) throw std::invalid_argument("zitterbewegung_compare: needs a massive particle");
  const double compton_period = 2 * std::numbers::pi * pc.hbar / pc.rest_energy();
  if (duration < 10 * compton_period * (1 - 1e-12))
    throw std::invalid_argument("zitterbewegung_compare: duration must cover at least 10 Compton periods");
  const double beat_period = std::numbers::pi * pc.hbar / pc.rest_energy();
  if (!(dt > 0) || dt > beat_period / 20)
    throw std::invalid_argument("zitterbewegung_compare: dt must give >= 20 samples per 2mc^2/hbar period");

  PacketParams positive = params;
  positive.alpha = 0;
  const GridField mixed_packet = make_packet(grid, params, pc, g);
  const GridField positive_packet_field = make_packet(grid, positive, pc, g);
  return {mean_position_series(grid, mixed_packet, duration, dt, pc, g, PacketKind::mixed),
          mean_position_series(grid, positive_packet_field, duration, dt, pc, g, PacketKind::positive_only)};
}

}  // namespace csdirac
