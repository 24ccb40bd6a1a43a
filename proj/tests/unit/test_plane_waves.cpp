#include "csdirac/plane_waves.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace csdirac;

namespace {

using V3 = Vector3<double>;
using B4 = Bispinor<double>;
using PC = PhysicalConstants<double>;

V3 random_k(std::mt19937_64& rng, double k_max) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(0, k_max);
  return u(rng) * V3(n(rng), n(rng), n(rng)).normalized();
}

}  // namespace

TEST_CASE("dispersion examples") {
  const PC pc;
  CHECK(dispersion(V3(0, 0, 0), pc) == 1.0);
  CHECK(dispersion(V3(0, 0, 0.75), pc) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(dispersion(0.75, pc) == doctest::Approx(1.25).epsilon(1e-15));
  std::mt19937_64 rng(1);
  for (int n = 0; n < 1000; ++n) CHECK(dispersion(random_k(rng, 20), pc) >= pc.rest_energy());
}

TEST_CASE("dispersion keeps explicit constants") {
  const PC pc{2.0, 3.0, 0.5, 1.0};
  // E = sqrt((hbar c k)^2 + (m c^2)^2) with hbar c k = 6 * 0.5 = 3, m c^2 = 4.5
  CHECK(dispersion(0.5, pc) == doctest::Approx(std::sqrt(9.0 + 20.25)));
}

TEST_CASE("constants are validated") {
  CHECK_THROWS_AS((PC{-1, 1, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PC{1, 0, 1, 1}.validate()), std::invalid_argument);
  CHECK_NOTHROW((PC{1, 1, 0, 1}.validate()));
}

TEST_CASE("rest-frame spinors are basis vectors") {
  const PC pc;
  CHECK(mode_bispinor<double>(V3(0, 0, 0), 1, Species::particle, pc) == B4(1, 0, 0, 0));
  CHECK(mode_bispinor<double>(V3(0, 0, 0), -1, Species::particle, pc) == B4(0, 1, 0, 0));
}

TEST_CASE("spinor at kz = 3/4") {
  const PC pc;
  const B4 u = mode_bispinor<double>(0.75, 1, Species::particle, pc);
  // upper sqrt((1 + 4/5) / 2) = sqrt(0.9), lower 0.75 / 2.25 * sqrt(0.9) = sqrt(0.1)
  CHECK(u(0).real() == doctest::Approx(0.9486832980505138).epsilon(1e-15));
  CHECK(u(2).real() == doctest::Approx(0.31622776601683794).epsilon(1e-15));
  CHECK(std::abs(u(1)) == 0);
  CHECK(std::abs(u(3)) == 0);
  CHECK(u.squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("species does not change free spinors") {
  const PC pc;
  const V3 k(0.3, -0.2, 1.1);
  for (int r : {1, -1})
    CHECK(mode_bispinor<double>(k, r, Species::particle, pc) == mode_bispinor<double>(k, r, Species::antiparticle, pc));
}

TEST_CASE("invalid spin label") {
  const PC pc;
  CHECK_THROWS_AS(mode_bispinor<double>(0.5, 0, Species::particle, pc), std::invalid_argument);
  CHECK_THROWS_AS(mode_bispinor<double>(0.5, 2, Species::particle, pc), std::invalid_argument);
}

TEST_CASE("massless spinor at k = 0 has no energy") {
  const PC pc{1, 1, 0, 1};
  CHECK_THROWS_AS(mode_bispinor<double>(0.0, 1, Species::particle, pc), std::domain_error);
  const B4 u = mode_bispinor<double>(2.0, 1, Species::particle, pc);
  CHECK(u.head<2>().squaredNorm() == doctest::Approx(0.5));
}

TEST_CASE("upper spinor normalization over random k") {
  const PC pc;
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    const V3 k = random_k(rng, 10);
    for (int r : {1, -1}) {
      const B4 u = mode_bispinor<double>(k, r, Species::particle, pc);
      CHECK(std::abs(u.head<2>().squaredNorm() - 0.5 * (1 + 1 / dispersion(k, pc))) < 1e-14);
    }
  }
}

TEST_CASE("spinors solve the momentum-space equation") {
  const PC pc;
  const auto g = make_gammas();
  std::mt19937_64 rng(4);
  for (int n = 0; n < 100; ++n) {
    const V3 k = random_k(rng, 10);
    for (int r : {1, -1}) CHECK(momentum_space_residual(k, mode_bispinor<double>(k, r, Species::particle, pc), pc, g) < 1e-13);
  }
}

TEST_CASE("a wrong spinor leaves a momentum-space residual") {
  const PC pc;
  const auto g = make_gammas();
  CHECK(momentum_space_residual(V3(0, 0, 1), B4(1, 0, 0, 0), pc, g) > 0.1);
}

TEST_CASE("orthonormality") {
  const PC pc;
  CHECK(check_orthonormality(V3(0, 0, 0), pc) == 0);
  const B4 up = mode_bispinor<double>(0.75, 1, Species::particle, pc);
  const B4 down = mode_bispinor<double>(0.75, -1, Species::particle, pc);
  CHECK(std::abs(up.dot(down)) == 0);
  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) CHECK(check_orthonormality(random_k(rng, 10), pc) < 1e-14);
}

TEST_CASE("completeness") {
  const PC pc;
  const auto g = make_gammas();
  CHECK(check_completeness(V3(0, 0, 0), pc, g).max() < 1e-15);
  std::mt19937_64 rng(6);
  for (int n = 0; n < 100; ++n) {
    const auto res = check_completeness(random_k(rng, 10), pc, g);
    CHECK(res.max() < 1e-13);
    CHECK(res.positive_only > 0.4);
  }
  CHECK(check_completeness(V3(0, 0, 10), pc, g).max() < 1e-13);
}

TEST_CASE("positive modes are orthogonal to their conjugated partners") {
  const PC pc;
  const auto g = make_gammas();
  CHECK(check_cross_orthogonality(V3(0, 0, 0), pc, g) == 0);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) CHECK(check_cross_orthogonality(random_k(rng, 10), pc, g) < 1e-13);
}

TEST_CASE("conjugated partner is a negative-energy solution at the same momentum") {
  const PC pc;
  const auto g = make_gammas();
  const V3 k(0.2, 0.4, -0.7);
  const Complex<double> i(0, 1);
  Matrix4<double> h = beta(g) * pc.rest_energy();
  for (int j = 1; j <= 3; ++j) h += pc.hbar * pc.c * k(j - 1) * alpha(g, j);
  for (int r : {1, -1}) {
    const B4 v = negative_partner(k, r, pc, g);
    CHECK(max_abs(h * v + dispersion(k, pc) * v) < 1e-14);
  }
}

TEST_CASE("mode-sum energy and momentum") {
  const PC pc;
  ModeSet<double> single;
  single.modes.push_back({V3(0, 0, 0.75), 1, Species::particle, {1, 0}, 1});
  auto em = superposition_energy_momentum(single, pc);
  CHECK(em.energy == doctest::Approx(1.25));
  CHECK(em.momentum(2) == doctest::Approx(0.75));
  CHECK(em.normalized);

  ModeSet<double> pair;
  const double w = std::sqrt(0.5);
  pair.modes.push_back({V3(0, 0, 0.75), 1, Species::particle, {w, 0}, 1});
  pair.modes.push_back({V3(0, 0, -0.75), 1, Species::particle, {0, w}, 1});
  em = superposition_energy_momentum(pair, pc);
  CHECK(std::abs(em.momentum(2)) < 1e-15);
  CHECK(em.energy == doctest::Approx(1.25));

  ModeSet<double> both;
  both.modes.push_back({V3(0, 0, 0), 1, Species::particle, {w, 0}, 1});
  both.modes.push_back({V3(0, 0, 0), 1, Species::antiparticle, {w, 0}, -1});
  em = superposition_energy_momentum(both, pc);
  CHECK(em.energy == doctest::Approx(1.0));

  ModeSet<double> loose;
  loose.modes.push_back({V3(0, 0, 0), 1, Species::particle, {2, 0}, 1});
  em = superposition_energy_momentum(loose, pc);
  CHECK_FALSE(em.normalized);
  CHECK(em.energy >= pc.rest_energy() * loose.total_weight());
}

TEST_CASE("free solution with a single term is a plane wave") {
  const PC pc;
  const auto g = make_gammas();
  const auto sol = general_free_solution<double>(V3(0, 0, 0.5), {1, 0}, {0, 0}, pc, g);
  CHECK(sol.is_probability_amplitude());
  const double rho0 = sol(0.0, 0.0).squaredNorm();
  for (double z : {0.3, 1.7, -4.2})
    for (double t : {0.0, 0.9, 3.1}) CHECK(sol(z, t).squaredNorm() == doctest::Approx(rho0).epsilon(1e-14));
}

TEST_CASE("two-term free solution at rest mixes both frequency signs") {
  const PC pc;
  const auto g = make_gammas();
  const auto sol = general_free_solution<double>(V3(0, 0, 0), {1, 0}, {1, 0}, pc, g);
  CHECK_FALSE(sol.is_probability_amplitude());
  CHECK(sol.omega() == 1.0);
  const Complex<double> i(0, 1);
  for (double t : {0.0, 0.4, 2.5}) {
    const B4 psi = sol(0.0, t);
    CHECK(std::abs(psi(0) - std::exp(-i * t)) < 1e-15);
    CHECK(std::abs(psi(3) + std::exp(i * t)) < 1e-15);
    // the interference term psi_1 psi_4^* rotates at 2 omega
    CHECK(std::abs(psi(0) * std::conj(psi(3)) + std::exp(-2.0 * i * t)) < 1e-15);
  }
  // the two branches sit in orthogonal components, so the density stays flat
  CHECK(sol(0.0, 0.0).squaredNorm() == doctest::Approx(sol(0.0, 0.7).squaredNorm()));
}

TEST_CASE("free solution satisfies the Dirac equation") {
  const PC pc;
  const auto g = make_gammas();
  const V3 k(0, 0, 0.8);
  const auto sol = general_free_solution<double>(k, {0.6, 0.2}, {0.3, -0.5}, pc, g);
  const Complex<double> i(0, 1);
  const double h = 1e-3;
  double worst = 0;
  for (double z : {0.0, 0.7, 2.3})
    for (double t : {0.0, 1.1, 5.0}) {
      // five-point stencils, error O(h^4)
      auto d = [&](auto f) -> B4 { return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12 * h); };
      const B4 dt = d([&](double s) { return B4(sol(z, t + s)); });
      const B4 dz = d([&](double s) { return B4(sol(z + s, t)); });
      const B4 lhs = i * pc.hbar * dt;
      const B4 rhs = -i * pc.hbar * pc.c * (alpha(g, 3) * dz) + pc.rest_energy() * (beta(g) * sol(z, t));
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  CHECK(worst < 1e-10);
}
