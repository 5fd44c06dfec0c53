#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rlab/classical.hpp"

using namespace rlab;

namespace {

Vec3 free_flight(const Vec3& r0, const Vec3& v0, double t) {
  return {r0[0] + v0[0] * t, r0[1] + v0[1] * t, r0[2] + v0[2] * t};
}

RealVec random_phase_point(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  RealVec pt(dim);
  for (auto& x : pt) {
    x = u(rng);
  }
  return pt;
}

}  // namespace

TEST_CASE("radial reductions reproduce the full free flight") {
  const Vec3 r0{1.0, 0.3, -0.2};
  const Vec3 v0{0.4, 1.1, 0.7};
  const RadialData d0 = reduce_free_to_radial({r0, v0});
  RadialParams params;
  params.l2 = d0.l2;
  params.E = d0.E;
  params.alpha = 0.37;
  const double T = 3.0;
  for (RadialKind kind : {RadialKind::fixed_l, RadialKind::fixed_E, RadialKind::convex}) {
    auto traj = integrate_rk4(radial_reduced_field(kind, params), {d0.r, d0.rdot}, 0, T, 1e-3);
    const double expect = norm(free_flight(r0, v0, T));
    CHECK(std::abs(traj.states.back()[0] - expect) < 1e-8);
  }
}

TEST_CASE("time dependent radial reduction: consistent variant tracks the flight") {
  const Vec3 r0{1.0, 0.3, -0.2};
  const Vec3 v0{0.4, 1.1, 0.7};
  // along r(t) = r0 + v0 t the distance to the launch point |r - vt| = |r0| is constant
  RadialParams params;
  params.k = norm(r0);
  const double t0 = 1.0, t1 = 3.0;
  const Vec3 r1 = free_flight(r0, v0, t0);
  const RadialData d1 = reduce_free_to_radial({r1, v0});
  auto traj = integrate_rk4(radial_reduced_field(RadialKind::timedep_consistent, params),
                            {d1.r, d1.rdot}, t0, t1, 1e-3);
  CHECK(std::abs(traj.states.back()[0] - norm(free_flight(r0, v0, t1))) < 1e-8);

  // the verbatim transcription has -1/(r t^2) instead of -r/t^2 and misses the flight
  auto bad = integrate_rk4(radial_reduced_field(RadialKind::timedep, params), {d1.r, d1.rdot}, t0,
                           t1, 1e-3);
  CHECK(std::abs(bad.states.back()[0] - norm(free_flight(r0, v0, t1))) > 1e-2);
}

TEST_CASE("sl2 bracket table") {
  std::mt19937_64 rng(42);
  for (int n : {1, 2, 3}) {
    auto xi1 = sl2_xi(1, n);
    auto xi2 = sl2_xi(2, n);
    auto xi3 = sl2_xi(3, n);
    for (int i = 0; i < 200; ++i) {
      const RealVec pt = random_phase_point(rng, 2 * n);
      CHECK(canonical_poisson(xi3, xi1, pt) ==
            doctest::Approx(2.0 * xi1.value(pt)).epsilon(1e-12));
      CHECK(canonical_poisson(xi2, xi3, pt) ==
            doctest::Approx(2.0 * xi2.value(pt)).epsilon(1e-12));
      CHECK(canonical_poisson(xi2, xi1, pt) ==
            doctest::Approx(2.0 * xi3.value(pt)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sl2 flow matches the lifted free flight and conserves the casimir") {
  const Vec3 r0{1.0, -0.5, 0.2};
  const Vec3 v0{0.3, 0.8, -0.6};
  const SL2Point p0 = sl2_lift(r0, v0);
  for (double t : {0.0, 0.5, 1.7, 4.0}) {
    const SL2Point ft = sl2_flow(p0, t);
    const SL2Point lift = sl2_lift(free_flight(r0, v0, t), v0);
    CHECK(ft.xi1 == doctest::Approx(lift.xi1).epsilon(1e-13));
    CHECK(ft.xi2 == doctest::Approx(lift.xi2).epsilon(1e-13));
    CHECK(ft.xi3 == doctest::Approx(lift.xi3).epsilon(1e-13));
    CHECK(sl2_casimir(ft) == doctest::Approx(sl2_casimir(p0)).epsilon(1e-12));
  }
}

TEST_CASE("oscillator reduced flow solves its linear system") {
  auto field = [](double, const RealVec& s) { return RealVec{2.0 * s[1], -2.0 * s[0]}; };
  auto traj = integrate_rk4(field, {0.7, -1.2}, 0, 2.5, 1e-4);
  auto [eta1, xi3] = oscillator_reduced_flow(0.7, -1.2, 2.5);
  CHECK(std::abs(traj.states.back()[0] - eta1) < 1e-10);
  CHECK(std::abs(traj.states.back()[1] - xi3) < 1e-10);
}

TEST_CASE("calogero reduction: eigenvalue dynamics match the reduced equations") {
  const Sym2 X0{1.0, 0.4, -0.5};
  const Sym2 V0{0.2, 0.9, 0.6};
  std::optional<Eig2> branch;
  const CalogeroState c0 = calogero_reduce({X0, V0}, branch);
  auto traj = integrate_rk4(calogero_field(c0.l), {c0.q1, c0.q2, c0.p1, c0.p2}, 0, 2.0, 1e-4);
  for (size_t i = 0; i < traj.times.size(); i += 100) {
    const double t = traj.times[i];
    const Sym2 Xt{X0.a + t * V0.a, X0.b + t * V0.b, X0.c + t * V0.c};
    const CalogeroState ct = calogero_reduce({Xt, V0}, branch);
    CHECK(std::abs(traj.states[i][0] - ct.q1) < 1e-7);
    CHECK(std::abs(traj.states[i][1] - ct.q2) < 1e-7);
    CHECK(std::abs(traj.states[i][2] - ct.p1) < 1e-7);
    CHECK(std::abs(traj.states[i][3] - ct.p2) < 1e-7);
    // the angular momentum of the reduced motion is a constant of the matrix flight
    CHECK(std::abs(ct.l - c0.l) < 1e-9);
  }
}

TEST_CASE("calogero reduction rejects degenerate spectra without history") {
  std::optional<Eig2> branch;
  CHECK_THROWS_AS(calogero_reduce({Sym2{1, 0, 1}, Sym2{0, 1, 0}}, branch), DomainError);
}

TEST_CASE("mat_eigenvalues agrees with the closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const Sym2 X{u(rng), u(rng), u(rng)};
    auto [q1, q2] = mat_eigenvalues(X);
    const double mean = (X.a + X.c) / 2.0;
    const double rho = std::hypot(2.0 * X.b, X.c - X.a) / 2.0;
    CHECK(q1 == doctest::Approx(mean - rho).epsilon(1e-12));
    CHECK(q2 == doctest::Approx(mean + rho).epsilon(1e-12));
  }
}

TEST_CASE("hamilton-jacobi action generates the momentum") {
  const Sym2 X0{0.4, -0.2, 1.1};
  const Sym2 Xt{1.3, 0.5, -0.7};
  const double t = 0.8;
  auto entries = [&](const RealVec& x) { return hj_action({x[0], x[1], x[2]}, X0, t); };
  const double pa = finite_diff(entries, {Xt.a, Xt.b, Xt.c}, {1, 0, 0}, 1, 1e-5);
  const double pb = finite_diff(entries, {Xt.a, Xt.b, Xt.c}, {0, 1, 0}, 1, 1e-5);
  const double pc = finite_diff(entries, {Xt.a, Xt.b, Xt.c}, {0, 0, 1}, 1, 1e-5);
  // P = (Xt - X0)/t; the b-entry derivative picks up both symmetric slots
  CHECK(pa == doctest::Approx((Xt.a - X0.a) / t).epsilon(1e-8));
  CHECK(pb == doctest::Approx(2.0 * (Xt.b - X0.b) / t).epsilon(1e-8));
  CHECK(pc == doctest::Approx((Xt.c - X0.c) / t).epsilon(1e-8));
}

TEST_CASE("monopole flow conserves the modified angular momentum") {
  const double k = 0.7, m = 1.3;
  const RealVec s0{1.0, 0.2, -0.4, 0.3, 0.9, 0.5};
  const MonopoleState st0{{s0[0], s0[1], s0[2]}, {s0[3], s0[4], s0[5]}, k, m};
  const Vec3 J0 = monopole_invariant(st0);
  auto traj = integrate_rk4(monopole_field(k, m), s0, 0, 10.0, 1e-3);
  double speed0 = norm(st0.v);
  for (size_t i = 0; i < traj.times.size(); i += 500) {
    const MonopoleState st{{traj.states[i][0], traj.states[i][1], traj.states[i][2]},
                           {traj.states[i][3], traj.states[i][4], traj.states[i][5]},
                           k,
                           m};
    const Vec3 J = monopole_invariant(st);
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(J[a] - J0[a]) < 1e-7);
    }
    // the magnetic force does no work
    CHECK(std::abs(norm(st.v) - speed0) < 1e-9);
  }
}

namespace {

TS3Point ts3_from_state(const RealVec& s) {
  return {{s[0], s[1], s[2], s[3]}, {s[4], s[5], s[6], s[7]}};
}

RealVec ts3_initial() {
  Vec4 y{0.4, -0.3, 0.7, 0.5};
  Vec4 p{0.2, 0.6, -0.1, 0.3};
  RealVec s{y[0], y[1], y[2], y[3], p[0], p[1], p[2], p[3]};
  ts3_projection()(s);
  return s;
}

}  // namespace

TEST_CASE("sphere pendulum upstairs: constraints and invariants hold along the flow") {
  const RealVec s0 = ts3_initial();
  const TS3Point pt0 = ts3_from_state(s0);
  const double h0 = ts3_hamiltonian(pt0);
  const double k0 = ts3_sigma_k(pt0);
  auto traj = integrate_rk4(ts3_hamiltonian_field(), s0, 0, 6.0, 1e-3, ts3_projection());
  for (size_t i = 0; i < traj.times.size(); i += 300) {
    const TS3Point pt = ts3_from_state(traj.states[i]);
    CHECK(std::abs(dot(pt.y, pt.y) - 1.0) < 1e-12);
    CHECK(std::abs(dot(pt.y, pt.p)) < 1e-12);
    CHECK(std::abs(ts3_hamiltonian(pt) - h0) < 1e-8);
    CHECK(std::abs(ts3_sigma_k(pt) - k0) < 1e-8);
  }
}

TEST_CASE("hopf projection is invariant along the circle action") {
  const RealVec s0 = ts3_initial();
  const TS3Point pt0 = ts3_from_state(s0);
  const TS2State base = hopf_project(pt0);
  CHECK(std::abs(dot(base.x, base.x) - 1.0) < 1e-12);
  CHECK(std::abs(dot(base.x, base.v)) < 1e-12);
  for (double s : {0.3, 1.1, 2.9}) {
    const double c = std::cos(s), sn = std::sin(s);
    // flow of y3 d/dy0 - y0 d/dy3 + ... rotates the (0,3) and (1,2) planes together
    auto rot = [&](const Vec4& w) {
      return Vec4{c * w[0] - sn * w[3], c * w[1] - sn * w[2], sn * w[1] + c * w[2],
                  sn * w[0] + c * w[3]};
    };
    const TS2State moved = hopf_project({rot(pt0.y), rot(pt0.p)});
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(moved.x[a] - base.x[a]) < 1e-12);
      CHECK(std::abs(moved.v[a] - base.v[a]) < 1e-12);
    }
  }
  TS3Point off = pt0;
  off.y[0] += 0.1;
  CHECK_THROWS_AS(hopf_project(off), DomainError);
}

TEST_CASE("projected flow is the spherical pendulum after rescaling time by sqrt(2)") {
  // the projection intertwines the flows on the zero level of the circle momentum,
  // so remove the vertical component of p as well
  RealVec s0 = ts3_initial();
  {
    TS3Point pt = ts3_from_state(s0);
    const Vec4 w{-pt.y[3], -pt.y[2], pt.y[1], pt.y[0]};
    const double sk = dot(pt.p, w);
    for (int i = 0; i < 4; ++i) {
      s0[4 + i] -= sk * w[i];
    }
    CHECK(std::abs(ts3_sigma_k(ts3_from_state(s0))) < 1e-14);
  }
  const TS2State base = hopf_project(ts3_from_state(s0));
  // downstairs initial condition in pendulum time tau = sqrt(2) t: velocities shrink by sqrt(2)
  const double rt2 = std::numbers::sqrt2;
  RealVec d0{base.x[0], base.x[1], base.x[2], base.v[0] / rt2, base.v[1] / rt2, base.v[2] / rt2};
  const double T = 4.0;
  auto up = integrate_rk4(ts3_hamiltonian_field(), s0, 0, T, 1e-3, ts3_projection());
  auto down = integrate_rk4(pendulum_field(), d0, 0, rt2 * T, 1e-3, ts2_projection());
  const TS2State proj = hopf_project(ts3_from_state(up.states.back()));
  const RealVec& end = down.states.back();
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(proj.x[a] - end[a]) < 1e-6);
    CHECK(std::abs(proj.v[a] / rt2 - end[3 + a]) < 1e-6);
  }
}

TEST_CASE("pendulum flow conserves energy and the axial momentum") {
  RealVec d0{0.6, 0.0, 0.8, 0.0, 0.5, 0.0};
  ts2_projection()(d0);
  const TS2State st0{{d0[0], d0[1], d0[2]}, {d0[3], d0[4], d0[5]}};
  auto [e0, l0] = energy_momentum_map(st0);
  auto traj = integrate_rk4(pendulum_field(), d0, 0, 8.0, 1e-3, ts2_projection());
  for (size_t i = 0; i < traj.times.size(); i += 400) {
    const TS2State st{{traj.states[i][0], traj.states[i][1], traj.states[i][2]},
                      {traj.states[i][3], traj.states[i][4], traj.states[i][5]}};
    auto [e, l] = energy_momentum_map(st);
    CHECK(std::abs(e - e0) < 1e-8);
    CHECK(std::abs(l - l0) < 1e-8);
  }
}

TEST_CASE("rotation and vertical generators are tangent to the sphere bundle") {
  std::vector<PhaseFunction> constraints(2);
  constraints[0].value = [](const RealVec& s) {
    return s[0] * s[0] + s[1] * s[1] + s[2] * s[2] - 1.0;
  };
  constraints[0].grad = [](const RealVec& s) {
    return RealVec{2 * s[0], 2 * s[1], 2 * s[2], 0, 0, 0};
  };
  constraints[1].value = [](const RealVec& s) {
    return s[0] * s[3] + s[1] * s[4] + s[2] * s[5];
  };
  constraints[1].grad = [](const RealVec& s) {
    return RealVec{s[3], s[4], s[5], s[0], s[1], s[2]};
  };
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RealVec> samples;
  for (int i = 0; i < 50; ++i) {
    RealVec s{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    ts2_projection()(s);
    samples.push_back(s);
  }
  for (int l = 0; l < 3; ++l) {
    CHECK(tangency_check(ts2_rotation_generator(l), constraints, samples) < 1e-10);
    CHECK(tangency_check(ts2_vertical_generator(l), constraints, samples) < 1e-10);
  }
  // a field pushing radially off the sphere must be flagged at order one
  TangentField radial{[](const RealVec& s) {
    return RealVec{s[0], s[1], s[2], 0, 0, 0};
  }};
  CHECK(tangency_check(radial, constraints, samples) > 0.5);
}
