#include "csdirac/scenarios.hpp"
#include "csdirac/frequency_split.hpp"
#include "csdirac/observables.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace csdirac;

namespace {

// Independent matching oracle: continuity of the upper and lower spinor
// components for (1,0,a,0) e^{ikz} + r (1,0,-a,0) e^{-ikz} = t (1,0,b,0) e^{ik'z},
// with transmitted flux read off the current psi^+ alpha_z psi.
std::pair<double, double> oracle_rt(double E, double v0, double kprime_sign) {
  const double k = std::sqrt(E * E - 1);
  const double loc = E - v0;
  const std::complex<double> kp =
      std::abs(loc) > 1 ? std::complex<double>(kprime_sign * std::sqrt(loc * loc - 1), 0)
                        : std::complex<double>(0, std::sqrt(1 - loc * loc));
  const double a = k / (E + 1);
  const std::complex<double> b = kp / (loc + 1);
  Eigen::Matrix2cd m;
  m << -1, 1, a, b;
  const Eigen::Vector2cd rt = m.colPivHouseholderQr().solve(Eigen::Vector2cd(1, a));
  const double r = std::norm(rt(0));
  const double flux_in = 2 * a;
  const double t = std::abs(loc) > 1 ? std::norm(rt(1)) * 2 * b.real() / flux_in : 0.0;
  return {r, t};
}

}  // namespace

TEST_CASE("Klein step regimes and coefficients") {
  const Constants pc;
  const KleinResult zone = klein_step(1.25, 3.0, pc);
  CHECK(zone.regime == KleinRegime::klein_zone);
  CHECK(zone.standard_T > 0.1);
  CHECK(zone.restricted_R == 1.0);
  CHECK(zone.restricted_T == 0.0);
  CHECK(zone.standard_R == doctest::Approx(0.4948627735066681).epsilon(1e-12));
  CHECK(std::isnan(zone.grid_R));

  const KleinResult tr = klein_step(1.25, 0.2, pc);
  CHECK(tr.regime == KleinRegime::transmitting);
  CHECK(tr.standard_R == doctest::Approx(0.13098189212919017).epsilon(1e-12));
  CHECK(tr.restricted_R == tr.standard_R);
  CHECK(tr.restricted_T == tr.standard_T);

  const KleinResult ev = klein_step(1.25, 1.0, pc);
  CHECK(ev.regime == KleinRegime::evanescent);
  CHECK(ev.standard_R == 1.0);
  CHECK(ev.standard_T == 0.0);

  const KleinResult free = klein_step(1.25, 0.0, pc);
  CHECK(free.standard_T == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(free.standard_R < 1e-30);
}

TEST_CASE("Klein coefficients agree with the matching oracle") {
  const Constants pc;
  for (double E : {1.1, 1.25, 2.0, 4.0})
    for (double v0 : {-1.5, 0.05, 0.3, 1.0, 2.2, 2.9, 7.5}) {
      CAPTURE(E);
      CAPTURE(v0);
      const KleinResult r = klein_step(E, v0, pc);
      const double sign = r.regime == KleinRegime::klein_zone ? -1 : 1;
      const auto [ro, to] = oracle_rt(E, v0, sign);
      CHECK(std::abs(r.standard_R - ro) < 1e-12);
      CHECK(std::abs(r.standard_T - to) < 1e-12);
      CHECK(std::abs(r.standard_R + r.standard_T - 1) < 1e-9);
      if (r.regime == KleinRegime::klein_zone) {
        const auto [rm, tm] = oracle_rt(E, v0, 1);
        CHECK(std::abs(r.momentum_convention_R - rm) < 1e-12);
        CHECK(std::abs(r.momentum_convention_T - tm) < 1e-12);
        CHECK(r.momentum_convention_R > 1);
        CHECK(r.momentum_convention_T < 0);
      }
      if (r.regime != KleinRegime::transmitting) {
        CHECK(r.restricted_R == 1.0);
        CHECK(r.restricted_T == 0.0);
      }
    }
}

TEST_CASE("the transmitted threshold carries no flux") {
  const KleinResult edge = klein_step(2.0, 3.0, Constants{});
  CHECK(edge.standard_R == 1.0);
  CHECK(edge.standard_T == 0.0);
  CHECK(edge.restricted_T == 0.0);
}

TEST_CASE("Klein step input checks") {
  const Constants pc;
  CHECK_THROWS_AS(klein_step(1.0, 3.0, pc), std::invalid_argument);
  CHECK_THROWS_AS(klein_step(0.5, 0.0, pc), std::invalid_argument);
  Constants bad;
  bad.c = -1;
  CHECK_THROWS_AS(klein_step(1.25, 0.0, bad), std::invalid_argument);
  CHECK(to_string(KleinRegime::klein_zone) == "klein_zone");
}

TEST_CASE("Klein packet oracle on a small grid") {
  const Constants pc;
  KleinGridOptions opt;
  opt.n_points = 2048;
  opt.length = 480;
  opt.packet_width = 20;
  const KleinResult ev = klein_step(1.25, 1.0, pc, opt);
  CHECK(ev.grid_R == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(ev.grid_energy_spread < 0.02);
  CHECK(ev.packet_width == 20);
  const KleinResult none = klein_step(1.25, 0.0, pc, opt);
  CHECK(none.grid_R < 1e-12);
  opt.length = 240;
  opt.n_points = 1024;
  CHECK_THROWS_AS(klein_step(1.25, 3.0, pc, opt), std::invalid_argument);
}

TEST_CASE("positive-only packets have no negative-frequency part") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(256, 80.0);
  for (double k0 : {0.0, 0.8, -1.5}) {
    const GridField f = make_packet(grid, PacketParams{k0, 5.0, 3.0, 0.0, 1}, pc, g);
    CHECK(f.frequency == FrequencyTag::positive);
    CHECK(std::sqrt(grid.spacing()) * split_frequencies_free(f, pc, g).negative.values.norm() < 1e-10);
    CHECK(f.grid.spacing() * f.values.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("mixed packets carry equal weights for alpha = 1") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(256, 80.0);
  const GridField f = make_packet(grid, PacketParams{0.0, 5.0, 0.0, 1.0, 1}, pc, g);
  CHECK(f.frequency == FrequencyTag::mixed);
  const double pos = grid.spacing() * project_positive_free(f, pc, g).values.squaredNorm();
  const double neg = grid.spacing() * split_frequencies_free(f, pc, g).negative.values.squaredNorm();
  CHECK(pos == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(neg == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("packet parameter checks") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(128, 40.0);
  CHECK_THROWS_AS(make_packet(grid, PacketParams{0.0, 0.3, 0.0, 0.0, 1}, pc, g), std::invalid_argument);
  CHECK_THROWS_AS(make_packet(grid, PacketParams{0.0, 5.0, 15.0, 0.0, 1}, pc, g), std::invalid_argument);
  CHECK_THROWS_AS(make_packet(grid, PacketParams{9.5, 5.0, 0.0, 0.0, 1}, pc, g), std::invalid_argument);
  CHECK_THROWS_AS(make_packet(grid, PacketParams{0.0, 5.0, 0.0, -0.1, 1}, pc, g), std::invalid_argument);
  CHECK_THROWS_AS(make_packet(grid, PacketParams{0.0, 5.0, 0.0, 0.0, 0}, pc, g), std::invalid_argument);
}

TEST_CASE("detrend removes a line exactly") {
  const std::vector<double> t{0, 1, 2, 3, 4};
  const std::vector<double> y{1, 3, 5, 7, 9};
  for (double r : detrend(t, y)) CHECK(std::abs(r) < 1e-14);
  const std::vector<double> bump = detrend(t, {0, 0, 1, 0, 0});
  CHECK(bump[2] == doctest::Approx(0.8));
}

TEST_CASE("dominant frequency of a sampled sine") {
  std::vector<double> y;
  const double dt = 0.05, omega = 2.0;
  for (int i = 0; i < 2000; ++i) y.push_back(std::sin(omega * i * dt) + 0.3 * std::sin(0.5 * i * dt));
  CHECK(dominant_angular_frequency(y, dt) == doctest::Approx(omega).epsilon(0.005));
}

TEST_CASE("mean position jitters only for mixed packets") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(512, 160.0);
  const double duration = 20 * std::numbers::pi, dt = 0.05;
  const auto [mixed, positive] = zitterbewegung_compare(grid, PacketParams{0.0, 10.0, 0.0, 1.0, 1}, duration, dt, pc, g);
  CHECK(mixed.kind == PacketKind::mixed);
  CHECK(positive.kind == PacketKind::positive_only);
  CHECK(mixed.times.size() == 1 + static_cast<std::size_t>(std::llround(duration / dt)));
  CHECK(mixed.times.back() == doctest::Approx(std::llround(duration / dt) * dt).epsilon(1e-14));
  CHECK(mixed.dominant_frequency == doctest::Approx(2.0).epsilon(0.01));
  CHECK(mixed.detrended_amplitude > 1e-3);
  CHECK(positive.detrended_amplitude < 1e-6);
}

TEST_CASE("alpha = 0 reproduces the positive-only series bit for bit") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(128, 60.0);
  const auto [a, b] = zitterbewegung_compare(grid, PacketParams{0.5, 5.0, 0.0, 0.0, 1}, 20 * std::numbers::pi, 0.1, pc, g);
  CHECK(a.mean_x == b.mean_x);
}

TEST_CASE("jitter amplitude is linear in small alpha") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(512, 160.0);
  auto amplitude = [&](double alpha) {
    return zitterbewegung_compare(grid, PacketParams{0.0, 10.0, 0.0, alpha, 1}, 20 * std::numbers::pi, 0.05, pc, g)
        .first.detrended_amplitude;
  };
  CHECK(amplitude(0.2) / amplitude(0.1) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("jitter comparison preconditions") {
  const Constants pc;
  const auto g = make_gammas();
  const Grid1D grid(128, 60.0);
  const PacketParams p{0.0, 5.0, 0.0, 1.0, 1};
  CHECK_THROWS_AS(zitterbewegung_compare(grid, p, 5.0, 0.05, pc, g), std::invalid_argument);
  CHECK_THROWS_AS(zitterbewegung_compare(grid, p, 70.0, 0.2, pc, g), std::invalid_argument);
  Constants massless;
  massless.m = 0;
  CHECK_THROWS_AS(zitterbewegung_compare(grid, p, 70.0, 0.05, massless, g), std::invalid_argument);
}
