#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rlab/star_algebra.hpp"

using namespace rlab;

namespace {

CommPoly mono(const std::vector<int>& a, double c) {
  CommPoly p(static_cast<int>(a.size()));
  p.add_term(a, DeformSeries(c));
  return p;
}

CommPoly random_poly(std::mt19937_64& rng, int nvars, int max_deg, int nterms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  CommPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> alpha(nvars, 0);
    int budget = deg(rng);
    for (int d = 0; d < budget; ++d) {
      alpha[std::uniform_int_distribution<int>(0, nvars - 1)(rng)] += 1;
    }
    p.add_term(alpha, DeformSeries(coef(rng)));
  }
  return p;
}

// canonical bracket on (q1, q2, p1, p2) for cross checks against the star product
CommPoly pbracket(const CommPoly& f, const CommPoly& g) {
  CommPoly out(4);
  const int pairs[2][2] = {{0, 2}, {1, 3}};
  for (const auto& pr : pairs) {
    out = out + f.derive(pr[0]) * g.derive(pr[1]) - f.derive(pr[1]) * g.derive(pr[0]);
  }
  return out;
}

Word random_word(std::mt19937_64& rng, int nletters, int max_len) {
  Word w(std::uniform_int_distribution<size_t>(1, max_len)(rng));
  for (auto& s : w) {
    s = std::uniform_int_distribution<int>(0, nletters - 1)(rng);
  }
  return w;
}

}  // namespace

TEST_CASE("deformation series q expansion") {
  const DeformSeries mu2 = DeformSeries::param(2);
  CHECK(mu2.q_coeff(0) == Complex{1.0, 0.0});
  CHECK(mu2.q_coeff(1) == Complex{-2.0, 0.0});
  CHECK(mu2.q_coeff(2) == Complex{1.0, 0.0});
  CHECK(mu2.q_coeff(3) == Complex{0.0, 0.0});
  const DeformSeries mu_inv = DeformSeries::param(-1);
  CHECK(mu_inv.q_coeff(0) == Complex{1.0, 0.0});
  CHECK(mu_inv.q_coeff(1) == Complex{1.0, 0.0});
  CHECK(mu_inv.q_coeff(2) == Complex{1.0, 0.0});
  const DeformSeries m = DeformSeries::param(1) * DeformSeries::param(-3);
  CHECK(m.min_power() == -2);
  CHECK(std::abs(m.eval(0.5) - Complex{4.0, 0.0}) < 1e-12);
}

TEST_CASE("normal form is a projection") {
  const auto sys = woronowicz_system();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const NCPoly p = NCPoly::word(sys.alphabet, random_word(rng, 4, 6));
    const NCPoly nf = normal_form(p, sys);
    CHECK((normal_form(nf, sys) - nf).is_zero());
  }
}

TEST_CASE("two-sided ideal membership reduces to zero") {
  const auto sys = woronowicz_system();
  const auto& a = sys.alphabet;
  std::vector<NCPoly> relations;
  for (const auto& rule : sys.rules) {
    relations.push_back(NCPoly::word(a, {rule.lhs.first, rule.lhs.second}) - rule.rhs);
  }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const NCPoly l = NCPoly::word(a, random_word(rng, 4, 3));
    const NCPoly r = NCPoly::word(a, random_word(rng, 4, 3));
    for (const auto& rel : relations) {
      CHECK(normal_form(l * rel * r, sys).is_zero());
    }
  }
}

TEST_CASE("rewrite budget enforcement") {
  const auto sys = woronowicz_system();
  const NCPoly p = NCPoly::word(sys.alphabet, {3, 2, 3, 2, 3, 2});
  CHECK_THROWS_AS(normal_form(p, sys, 2), NonTermination);
}

TEST_CASE("confluence probe") {
  CHECK(confluence_probe(oscillator_system(0.7, 0.3), 80, 6));
  CHECK(confluence_probe(woronowicz_system(), 80, 6));

  // ab -> a and ab -> b is terminating but not confluent
  RewriteSystem bad;
  bad.alphabet = {"a", "b"};
  bad.rules.push_back({{0, 1}, NCPoly::word(bad.alphabet, {0})});
  bad.rules.push_back({{0, 1}, NCPoly::word(bad.alphabet, {1})});
  CHECK_FALSE(confluence_probe(bad, 200, 5));
}

TEST_CASE("deformed oscillator") {
  const auto sys = oscillator_system(1.0, 1.0);
  const auto& al = sys.alphabet;
  const NCPoly a = NCPoly::generator(al, 0);
  const NCPoly ad = NCPoly::generator(al, 1);
  // canonical commutation at q = 1
  CHECK((normal_form(nc_commutator(a, ad), sys) - NCPoly::unit(al)).is_zero());

  const auto sysq = oscillator_system(0.5, 2.0);
  const NCPoly nf = normal_form(ad * a, sysq);
  CHECK(std::abs(nf.terms().at(Word{0, 1}).coeff(0) - Complex{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(nf.terms().at(Word{}).coeff(0) - Complex{-2.0, 0.0}) < 1e-12);

  // the number-like word a a+ is stationary; a alone rotates at -i w
  const NCPoly num = a * ad;
  CHECK(oscillator_derivation(num, 2.0).is_zero());
  CHECK((oscillator_derivation(a, 2.0) - a * DeformSeries(Complex{0.0, -2.0})).is_zero());
}

TEST_CASE("quantum SU(2) normal ordering") {
  const auto sys = woronowicz_system();
  const auto& a = sys.alphabet;
  const DeformSeries mu = DeformSeries::param(1);
  // alpha nu = (1-q) nu alpha
  const NCPoly an = normal_form(NCPoly::word(a, {2, 0}), sys);
  CHECK((an - NCPoly::word(a, {0, 2}, mu)).is_zero());
  // alpha* alpha = 1 - nu* nu
  const NCPoly asa = normal_form(NCPoly::word(a, {3, 2}), sys);
  CHECK((asa - (NCPoly::unit(a) - NCPoly::word(a, {0, 1}))).is_zero());
  // n = nu nu* commutes with nu and satisfies alpha n = mu^2 n alpha
  const NCPoly n = NCPoly::word(a, {0, 1});
  const NCPoly nu = NCPoly::generator(a, 0);
  const NCPoly alpha = NCPoly::generator(a, 2);
  CHECK(normal_form(nc_commutator(n, nu), sys).is_zero());
  CHECK(normal_form(alpha * n - n * alpha * DeformSeries::param(2), sys).is_zero());
}

TEST_CASE("quantum SU(2) relation checks") {
  const auto checks = su2q_relation_checks();
  REQUIRE(checks.size() == 6);

  CHECK(checks[0].exact);  // the two printed forms of u agree
  CHECK(checks[2].exact);  // uw - wu = (q^2-2q)(1-u)w
  CHECK(checks[3].exact);  // w*u - uw* = (q^2-2q)w*(1-u), the adjoint of the above

  // u^2 + w*w = 1 fails at order q; residual 4(mu^-2 - 1)(n - n^2)
  CHECK_FALSE(checks[1].exact);
  CHECK(checks[1].residual_q1 == doctest::Approx(8.0));
  // [w, w*] fails in both commutator conventions
  CHECK_FALSE(checks[4].exact);
  CHECK(checks[4].residual_q1 == doctest::Approx(12.0));
  CHECK_FALSE(checks[5].exact);
  CHECK(checks[5].residual_q1 == doctest::Approx(32.0));

  // every residual vanishes in the undeformed limit q = 0 (mu = 1)
  for (const auto& c : checks) {
    double worst = 0.0;
    for (const auto& [w, coeff] : c.residual.terms()) {
      (void)w;
      worst = std::max(worst, std::abs(coeff.eval(1.0)));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Woronowicz flow generator") {
  const auto chk = woronowicz_flow_check(0.3);
  CHECK(chk.h_commutes_with_nu);
  CHECK(chk.alpha_equation_exact);
  CHECK(chk.phase_rate == doctest::Approx(0.3 * 0.3 - 0.6));
}

TEST_CASE("classical limit reproduces the bracket table") {
  const auto hat = su2q_coordinates();  // (q1, q2, p1, p2)
  auto lim = [&](int i, int j) { return classical_limit(nc_commutator(hat[i], hat[j])); };

  CHECK((lim(0, 1) - mono({1, 0, 0, 1}, -1.0)).is_zero(1e-9));  // {q1,q2} = -q1 p2
  CHECK(lim(0, 2).is_zero(1e-9));                               // {q1,p1} = 0
  CHECK((lim(0, 3) - mono({1, 1, 0, 0}, 1.0)).is_zero(1e-9));   // {q1,p2} = q1 q2
  CHECK((lim(1, 2) - mono({0, 0, 1, 1}, 1.0)).is_zero(1e-9));   // {q2,p1} = p1 p2
  CHECK((lim(1, 3) - (mono({2, 0, 0, 0}, -1.0) + mono({0, 0, 2, 0}, -1.0))).is_zero(1e-9));
  CHECK((lim(2, 3) - mono({0, 1, 1, 0}, 1.0)).is_zero(1e-9));   // {p1,p2} = p1 q2

  // not a commutator: nonzero classical part
  CHECK_THROWS_AS(classical_limit(hat[0]), DomainError);

  // the quadratic Casimir commutes with every generator through order q
  const NCPoly c_hat = hat[0] * hat[0] + hat[1] * hat[1] + hat[2] * hat[2] + hat[3] * hat[3];
  for (int j = 0; j < 4; ++j) {
    CHECK(classical_limit(nc_commutator(c_hat, hat[j])).is_zero(1e-9));
  }
}

TEST_CASE("quadratic Poisson structure on S^3") {
  // the table agrees with the classical limit of the quantum commutators
  const auto hat = su2q_coordinates();
  const std::array<CommPoly, 4> coord = {CommPoly::var(4, 0), CommPoly::var(4, 1),
                                         CommPoly::var(4, 2), CommPoly::var(4, 3)};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const CommPoly lhs = s3_poisson(coord[i], coord[j]);
      const CommPoly rhs = classical_limit(nc_commutator(hat[i], hat[j]));
      CHECK((lhs - rhs).is_zero(1e-9));
    }
  }

  // Jacobi identity on random polynomials
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const CommPoly f = random_poly(rng, 4, 3, 3);
    const CommPoly g = random_poly(rng, 4, 3, 3);
    const CommPoly h = random_poly(rng, 4, 3, 3);
    const CommPoly jac = s3_poisson(f, s3_poisson(g, h)) + s3_poisson(g, s3_poisson(h, f)) +
                         s3_poisson(h, s3_poisson(f, g));
    CHECK(jac.max_abs_coeff() < 1e-9 * (1.0 + f.max_abs_coeff() + g.max_abs_coeff()));
  }

  // the round sphere function is Casimir
  const CommPoly cas = s3_casimir();
  for (int j = 0; j < 4; ++j) {
    CHECK(s3_poisson(cas, coord[j]).is_zero(1e-12));
  }
}

TEST_CASE("reduction to S^2") {
  const auto [u, v, z] = s2_elements();
  const CommPoly cas = s3_casimir();
  CHECK((u * u + v * v + z * z - cas * cas).is_zero(1e-12));

  // reduced bracket {v, u} = 2(C - u) z as polynomials on the ambient space
  CHECK((s3_poisson(v, u) - (cas - u) * z * DeformSeries(2.0)).is_zero(1e-12));
  CHECK((s3_poisson(u, z) - (cas - u) * v * DeformSeries(2.0)).is_zero(1e-12));

  // u is invariant under the reduced flow and {u, casimir} = 0 already checked
  CHECK(s3_poisson(u, cas).is_zero(1e-12));
}

TEST_CASE("flow intertwining on the unit sphere") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const auto [eu, ev, ez] = s2_elements();
  for (int t = 0; t < 30; ++t) {
    std::array<double, 4> s{dist(rng), dist(rng), dist(rng), dist(rng)};
    const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    for (auto& x : s) {
      x /= n;  // casimir = 1
    }
    const double time = 3.0 * dist(rng);
    const auto st = s3_classical_flow(s, time);
    const RealVec v0{s[0], s[1], s[2], s[3]};
    const RealVec vt{st[0], st[1], st[2], st[3]};
    const std::array<double, 3> uvz0{eu.eval(v0).real(), ev.eval(v0).real(), ez.eval(v0).real()};
    const auto uvzt = s2_reduced_flow(uvz0, time);
    CHECK(std::abs(eu.eval(vt).real() - uvzt[0]) < 1e-9);
    CHECK(std::abs(ev.eval(vt).real() - uvzt[1]) < 1e-9);
    CHECK(std::abs(ez.eval(vt).real() - uvzt[2]) < 1e-9);
  }
}

TEST_CASE("stereographic chart") {
  // 2/(x^2+y^2+1) = 1 - u on the unit sphere
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    double u = dist(rng), v = dist(rng), z = dist(rng);
    const double n = std::sqrt(u * u + v * v + z * z);
    u /= n;
    v /= n;
    z /= n;
    const auto [x, y] = stereographic_project(u, v, z);
    CHECK(std::abs(2.0 / (x * x + y * y + 1.0) - (1.0 - u)) < 1e-12);
  }
  CHECK_THROWS_AS(stereographic_project(1.0, 0.0, 0.0), DomainError);

  // the pushforward of the reduced field is minus the printed plane field
  const auto chk = stereographic_pushforward_check(100);
  CHECK(chk.sign == doctest::Approx(-1.0));
  CHECK(chk.residual < 1e-9);
}

TEST_CASE("Moyal product basics") {
  const CommPoly q1 = CommPoly::var(4, 0);
  const CommPoly p1 = CommPoly::var(4, 2);
  const CommPoly q2 = CommPoly::var(4, 1);
  const CommPoly itheta = CommPoly::constant(4, DeformSeries::param(1, Complex{0.0, 1.0}));
  CHECK((moyal_product(q1, p1) - moyal_product(p1, q1) - itheta).is_zero(1e-12));
  CHECK((moyal_product(q1, q2) - moyal_product(q2, q1)).is_zero(1e-12));

  std::mt19937_64 rng(29);
  for (int t = 0; t < 25; ++t) {
    const CommPoly f = random_poly(rng, 4, 3, 3);
    const CommPoly g = random_poly(rng, 4, 3, 3);
    const CommPoly h = random_poly(rng, 4, 3, 3);
    // order theta^0 is the pointwise product
    CHECK((moyal_product(f, g).parameter_part(0) - f * g).is_zero(1e-9));
    // order theta^1 of the commutator is i theta {f, g}
    const CommPoly comm = moyal_product(f, g) - moyal_product(g, f);
    const CommPoly expect = pbracket(f, g) * DeformSeries::param(1, Complex{0.0, 1.0});
    CHECK((comm.parameter_part(1) - expect).is_zero(1e-9));
    // associativity
    const CommPoly lhs = moyal_product(moyal_product(f, g), h);
    const CommPoly rhs = moyal_product(f, moyal_product(g, h));
    CHECK((lhs - rhs).max_abs_coeff() < 1e-9 * (1.0 + lhs.max_abs_coeff()));
  }
}

TEST_CASE("su(2) generators under the quadratic moment map") {
  const auto [x, y, w] = su2_generators_pulled_back();
  const CommPoly fh = su2_fh();
  // bracket relations {x, y} = w and cyclic
  CHECK((pbracket(x, y) - w).is_zero(1e-12));
  CHECK((pbracket(y, w) - x).is_zero(1e-12));
  CHECK((pbracket(w, x) - y).is_zero(1e-12));
  // the sphere relation pulled back
  CHECK((x * x + y * y + w * w - fh * fh * DeformSeries(1.0 / 16.0)).is_zero(1e-12));
  // all star products of generators Poisson commute with f_H
  CHECK(commutant_closure_check() < 1e-12);
}

TEST_CASE("reduced star product formula") {
  // F = 1 and F = x_l reproduce the star product exactly
  const CommPoly one = CommPoly::constant(3, 1.0);
  for (int j = 1; j <= 3; ++j) {
    CHECK(reduced_star_verify(j, one).is_zero(1e-12));
    for (int l = 0; l < 3; ++l) {
      CHECK(reduced_star_verify(j, CommPoly::var(3, l)).is_zero(1e-12));
    }
  }
  // general polynomials agree through order theta^1
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const CommPoly f = random_poly(rng, 3, 3, 3);
    for (int j = 1; j <= 3; ++j) {
      const CommPoly res = reduced_star_verify(j, f);
      CHECK(res.parameter_part(0).is_zero(1e-9));
      CHECK(res.parameter_part(1).is_zero(1e-9));
    }
  }
  CHECK_THROWS_AS(reduced_star_verify(0, one), DomainError);
  CHECK_THROWS_AS(reduced_star_verify(1, CommPoly::constant(4, 1.0)), DomainError);
}
