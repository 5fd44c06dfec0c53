#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rlab/diffops.hpp"

using namespace rlab;

namespace {

RadialPoly coord(int dim, int j, double c = 1.0) {
  std::vector<int> alpha(dim, 0);
  alpha[j] = 1;
  return RadialPoly::monomial(dim, alpha, c);
}

RadialPoly random_poly(std::mt19937_64& rng, int dim, int max_deg, bool with_radial) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> rad(-1, 1);
  std::uniform_real_distribution<double> cf(-2.0, 2.0);
  RadialPoly f(dim);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> alpha(dim, 0);
    for (int j = 0; j < dim; ++j) {
      alpha[j] = deg(rng);
    }
    f.add_term(alpha, with_radial ? 2 * rad(rng) : 0, cf(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("normalization gives a unique representative") {
  // (x1^2+x2^2+x3^2) r^-2 collapses to 1
  RadialPoly f(3);
  f.add_term({2, 0, 0}, -4, 1.0);
  f.add_term({0, 2, 0}, -4, 1.0);
  f.add_term({0, 0, 2}, -4, 1.0);
  CHECK(f.normalize().same_as(RadialPoly::constant(3, 1.0)));
  // r^2 expands to the polynomial
  RadialPoly r2 = RadialPoly::radial(3, 2);
  RadialPoly sum(3);
  sum.add_term({2, 0, 0}, 0, 1.0);
  sum.add_term({0, 2, 0}, 0, 1.0);
  sum.add_term({0, 0, 2}, 0, 1.0);
  CHECK(r2.same_as(sum));
  // idempotence
  const RadialPoly once = f.normalize();
  const RadialPoly twice = once.normalize();
  CHECK((once - twice).max_abs_coeff() == 0.0);
  // odd radial powers reduce to the r^1 representative
  RadialPoly r3 = RadialPoly::radial(3, 3);
  RadialPoly xr(3);
  xr.add_term({2, 0, 0}, 2, 1.0);
  xr.add_term({0, 2, 0}, 2, 1.0);
  xr.add_term({0, 0, 2}, 2, 1.0);
  CHECK(r3.normalize().same_as(xr.normalize()));
}

TEST_CASE("normalized equality agrees with pointwise evaluation") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.3, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const RadialPoly f = random_poly(rng, 3, 2, true);
    const RadialPoly g = f.normalize();
    const RealVec x{u(rng), u(rng), u(rng)};
    CHECK(f.eval(x) == doctest::Approx(g.eval(x)).epsilon(1e-10));
  }
}

TEST_CASE("derivatives: power rule, harmonicity of 1/r") {
  CHECK(coord(3, 0).derive(0).same_as(RadialPoly::constant(3, 1.0)));
  const RadialPoly r2 = RadialPoly::radial(3, 2);
  CHECK(r2.derive(1).normalize().same_as(coord(3, 1, 2.0)));
  // laplacian of 1/r vanishes away from the origin
  RadialPoly inv = RadialPoly::radial(3, -1);
  RadialPoly lap(3);
  for (int j = 0; j < 3; ++j) {
    lap = lap + inv.derive(j).derive(j);
  }
  CHECK(lap.normalize().is_zero());
}

TEST_CASE("derivative satisfies leibniz on random pairs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const RadialPoly f = random_poly(rng, 3, 2, true);
    const RadialPoly g = random_poly(rng, 3, 2, true);
    const int j = static_cast<int>(trial % 3);
    const RadialPoly lhs = (f * g).derive(j);
    const RadialPoly rhs = f.derive(j) * g + f * g.derive(j);
    CHECK((lhs - rhs).normalize().is_zero(1e-8));
  }
}

TEST_CASE("operator application, composition, commutators") {
  const LinDiffOp lap = laplacian(3);
  CHECK(lap.apply(RadialPoly::radial(3, -1)).is_zero());
  // [d_j, f] g = (d_j f) g
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const RadialPoly f = random_poly(rng, 3, 2, false);
    const RadialPoly g = random_poly(rng, 3, 2, false);
    const int j = static_cast<int>(trial % 3);
    const LinDiffOp c = op_commutator(LinDiffOp::partial(3, j), LinDiffOp::multiplication(f));
    CHECK((c.apply(g) - (f.derive(j) * g).normalize()).normalize().is_zero(1e-8));
  }
  // [laplacian, x1] = 2 d_1
  const LinDiffOp c = op_commutator(lap, LinDiffOp::multiplication(coord(3, 0)));
  const LinDiffOp expect = LinDiffOp::partial(3, 0) * 2.0;
  const RadialPoly probe = random_poly(rng, 3, 3, true);
  CHECK((c.apply(probe) - expect.apply(probe)).normalize().is_zero(1e-9));
  // self-commutator vanishes
  const LinDiffOp self = op_commutator(hydrogen_op(1.0), hydrogen_op(1.0));
  CHECK(self.apply(probe).is_zero(1e-9));
}

TEST_CASE("order detection by nested commutators") {
  std::vector<RadialPoly> probes{coord(3, 0), coord(3, 1), coord(3, 2)};
  CHECK(order_detect(laplacian(3), 2, probes));
  CHECK_FALSE(order_detect(laplacian(3), 1, probes));
  CHECK(order_detect(LinDiffOp::multiplication(coord(3, 0)), 0, probes));

  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> ord(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = ord(rng);
    LinDiffOp d(3);
    std::vector<int> sigma(3, 0);
    std::uniform_int_distribution<int> axis(0, 2);
    for (int a = 0; a < k; ++a) {
      sigma[axis(rng)] += 1;
    }
    d.add_term(sigma, random_poly(rng, 3, 1, false) + RadialPoly::constant(3, 3.0));
    d.add_term(std::vector<int>(3, 0), random_poly(rng, 3, 1, false));
    CHECK(order_detect(d, k, probes));
    CHECK_FALSE(order_detect(d, k - 1, probes));
  }
}

TEST_CASE("named operators evaluate as displayed") {
  CHECK(hydrogen_op(2.0)
            .apply(coord(3, 2))
            .same_as(RadialPoly::radial(3, -1) * coord(3, 2, -2.0)));
  CHECK(conformal_kepler_op(3.0)
            .apply(RadialPoly::constant(4, 1.0))
            .same_as(RadialPoly::radial(4, -2, -3.0)));
}

TEST_CASE("ks map: points, radial relation, norm identity") {
  const auto x = ks_point_map({0.0, 1.0, 0.0, 0.0});
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 1.0);
  // pullback of r is R^2
  CHECK(ks_pullback(RadialPoly::radial(3, 1)).same_as(RadialPoly::radial(4, 2).normalize()));
  // <x,x> - R^4 = 0 identically
  const auto pi = ks_map();
  RadialPoly norm2(4);
  for (const auto& comp : pi.components) {
    norm2 = norm2 + comp * comp;
  }
  CHECK((norm2 - RadialPoly::radial(4, 4)).normalize().is_zero());
}

TEST_CASE("fiber generator annihilates exactly the pullbacks") {
  CHECK(x3_annihilation_check(coord(3, 0)));
  CHECK(x3_annihilation_check(coord(3, 1)));
  CHECK(x3_annihilation_check(coord(3, 2)));
  CHECK(x3_annihilation_check(RadialPoly::radial(3, 1)));
  CHECK(x3_annihilation_check(coord(3, 0) * RadialPoly::radial(3, -1)));
  // a non-pullback probe upstairs is moved by the generator
  RadialPoly y1(4);
  y1.add_term({0, 1, 0, 0}, 0, 1.0);
  CHECK_FALSE(x3_apply_upstairs(y1).normalize().is_zero());
}

TEST_CASE("conformal kepler operator projects onto the hydrogen operator") {
  const auto pi = ks_map();
  CHECK(projectability_check(conformal_kepler_op(1.7), hydrogen_op(1.7), pi, 4) == 0.0);
  CHECK(projectability_check(LinDiffOp::identity(4), LinDiffOp::identity(3), pi, 2) == 0.0);
  // the bare 4d laplacian does not project onto the 3d one
  CHECK(projectability_check(laplacian(4), laplacian(3), pi, 2) > 0.1);
}

TEST_CASE("radial sector similarity transformation") {
  CHECK(radial_sector_check(0, RadialPoly::radial(1, 2)) < 1e-12);
  CHECK(radial_sector_check(1, RadialPoly::radial(1, 1)) < 1e-12);
  for (int m = 0; m <= 3; ++m) {
    for (int j = -2; j <= 6; ++j) {
      CHECK(radial_sector_check(m, RadialPoly::radial_half(1, j)) < 1e-12);
    }
  }
}

TEST_CASE("scalar spectra") {
  CHECK(hydrogen_level(1.0, 0) == -0.5);
  CHECK(hydrogen_level(1.0, 1) == -0.125);
  CHECK(oscillator_frequency(-0.5) == 2.0);
  CHECK_THROWS_AS(oscillator_frequency(0.1), DomainError);
  CHECK_THROWS_AS(hydrogen_level(1.0, -1), DomainError);
}

TEST_CASE("finite difference hydrogen spectrum matches the closed form") {
  const auto ev = hydrogen_radial_solve(1.0, 60.0, 4000, 3);
  CHECK(std::abs(ev[0] - hydrogen_level(1.0, 0)) < 1e-3);
  CHECK(std::abs(ev[1] - hydrogen_level(1.0, 1)) < 1e-3);
  CHECK(std::abs(ev[2] - hydrogen_level(1.0, 2)) < 2e-3);
  // k = 0 reduces to the particle in a box
  const double L = 10.0;
  const auto box = hydrogen_radial_solve(0.0, L, 3000, 3);
  for (int j = 1; j <= 3; ++j) {
    const double exact = std::numbers::pi * std::numbers::pi * j * j / (2.0 * L * L);
    CHECK(std::abs(box[j - 1] - exact) / exact < 1e-4);
  }
  CHECK_THROWS_AS(hydrogen_radial_solve(1.0, 10.0, 5, 10), DomainError);
}

TEST_CASE("angular quadrature reproduces bessel values") {
  for (int m = 0; m <= 5; ++m) {
    for (double pq : {0.5, 1.0, 5.0}) {
      const Complex quad = quad_periodic(
          [&](double phi) {
            return std::exp(Complex{0, m * phi}) * std::exp(Complex{0, pq * std::cos(phi)});
          },
          256);
      // the phase convention contributes a factor i^m relative to the real Bessel value
      const Complex im = std::pow(Complex{0, 1}, m);
      CHECK(std::abs(quad / im - Complex{2.0 * std::numbers::pi * bessel_j(m, pq), 0}) < 1e-8);
    }
  }
}
