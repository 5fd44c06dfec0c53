#include "rlab/star_algebra.hpp"

#include <cmath>

namespace rlab {

// --- CommPoly ----------------------------------------------------------------

CommPoly CommPoly::constant(int nvars, DeformSeries c) {
  CommPoly p(nvars);
  p.add_term(std::vector<int>(nvars, 0), c);
  return p;
}

CommPoly CommPoly::var(int nvars, int j, DeformSeries c) {
  CommPoly p(nvars);
  std::vector<int> alpha(nvars, 0);
  alpha[j] = 1;
  p.add_term(alpha, c);
  return p;
}

CommPoly& CommPoly::add_term(const std::vector<int>& alpha, const DeformSeries& c) {
  if (static_cast<int>(alpha.size()) != nvars_) {
    throw DomainError("CommPoly: exponent size mismatch");
  }
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (!c.is_zero(1e-14)) {
      terms_.emplace(alpha, c);
    }
    return *this;
  }
  it->second = it->second + c;
  if (it->second.is_zero(1e-14)) {
    terms_.erase(it);
  }
  return *this;
}

CommPoly CommPoly::operator+(const CommPoly& o) const {
  if (nvars_ != o.nvars_) {
    throw DomainError("CommPoly: dimension mismatch");
  }
  CommPoly out = *this;
  for (const auto& [a, c] : o.terms_) {
    out.add_term(a, c);
  }
  return out;
}

CommPoly CommPoly::operator-(const CommPoly& o) const { return *this + -o; }

CommPoly CommPoly::operator*(const CommPoly& o) const {
  if (nvars_ != o.nvars_) {
    throw DomainError("CommPoly: dimension mismatch");
  }
  CommPoly out(nvars_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      std::vector<int> s = a;
      for (int j = 0; j < nvars_; ++j) {
        s[j] += b[j];
      }
      out.add_term(s, ca * cb);
    }
  }
  return out;
}

CommPoly CommPoly::operator*(const DeformSeries& c) const {
  CommPoly out(nvars_);
  for (const auto& [a, v] : terms_) {
    out.add_term(a, v * c);
  }
  return out;
}

CommPoly CommPoly::derive(int j) const {
  CommPoly out(nvars_);
  for (const auto& [a, c] : terms_) {
    if (a[j] > 0) {
      std::vector<int> b = a;
      b[j] -= 1;
      out.add_term(b, c * DeformSeries(static_cast<double>(a[j])));
    }
  }
  return out;
}

bool CommPoly::is_zero(double tol) const { return max_abs_coeff() <= tol; }

double CommPoly::max_abs_coeff() const {
  double worst = 0.0;
  for (const auto& [a, c] : terms_) {
    worst = std::max(worst, c.max_abs());
  }
  return worst;
}

CommPoly CommPoly::parameter_part(int power) const {
  CommPoly out(nvars_);
  for (const auto& [a, c] : terms_) {
    const Complex v = c.coeff(power);
    if (std::abs(v) > 1e-14) {
      out.add_term(a, DeformSeries::param(power, v));
    }
  }
  return out;
}

Complex CommPoly::eval(const RealVec& x, Complex parameter) const {
  Complex sum = 0.0;
  for (const auto& [a, c] : terms_) {
    Complex t = c.eval(parameter);
    for (int j = 0; j < nvars_; ++j) {
      for (int k = 0; k < a[j]; ++k) {
        t *= x[j];
      }
    }
    sum += t;
  }
  return sum;
}

// --- deformed oscillator -----------------------------------------------------

RewriteSystem oscillator_system(double q, double r) {
  RewriteSystem sys;
  sys.alphabet = {"a", "a+"};
  NCPoly rhs = NCPoly::word(sys.alphabet, {0, 1}, DeformSeries(q)) +
               NCPoly::unit(sys.alphabet, DeformSeries(-r));
  sys.rules.push_back({{1, 0}, rhs});
  sys.validate();
  return sys;
}

NCPoly oscillator_derivation(const NCPoly& p, double omega) {
  return apply_derivation(p, {DeformSeries(Complex{0.0, -omega}),
                              DeformSeries(Complex{0.0, omega})});
}

// --- Woronowicz quantum SU(2) ------------------------------------------------

namespace {

const std::vector<std::string>& wz_alphabet() {
  static const std::vector<std::string> a = {"nu", "nu*", "alpha", "alpha*"};
  return a;
}

// (1 - mu)^k = q^k expressed in the mu representation
DeformSeries q_power(int k) {
  DeformSeries out(1.0);
  const DeformSeries one_minus_mu = DeformSeries(1.0) - DeformSeries::param(1);
  for (int i = 0; i < k; ++i) {
    out = out * one_minus_mu;
  }
  return out;
}

DeformSeries q_poly(const std::vector<std::pair<int, double>>& entries) {
  DeformSeries out;
  for (const auto& [k, c] : entries) {
    out = out + q_power(k) * DeformSeries(c);
  }
  return out;
}

}  // namespace

RewriteSystem woronowicz_system() {
  RewriteSystem sys;
  sys.alphabet = wz_alphabet();
  const auto& a = sys.alphabet;
  const DeformSeries mu = DeformSeries::param(1);
  const DeformSeries mu_inv = DeformSeries::param(-1);
  const DeformSeries mu2 = DeformSeries::param(2);
  sys.rules.push_back({{1, 0}, NCPoly::word(a, {0, 1})});
  sys.rules.push_back({{2, 0}, NCPoly::word(a, {0, 2}, mu)});
  sys.rules.push_back({{2, 1}, NCPoly::word(a, {1, 2}, mu)});
  sys.rules.push_back({{3, 0}, NCPoly::word(a, {0, 3}, mu_inv)});
  sys.rules.push_back({{3, 1}, NCPoly::word(a, {1, 3}, mu_inv)});
  sys.rules.push_back({{3, 2}, NCPoly::unit(a) - NCPoly::word(a, {0, 1})});
  sys.rules.push_back({{2, 3}, NCPoly::unit(a) - NCPoly::word(a, {0, 1}, mu2)});
  sys.validate();
  return sys;
}

Su2qElements su2q_elements() {
  const auto& a = wz_alphabet();
  Su2qElements e;
  e.u = NCPoly::unit(a) - NCPoly::word(a, {1, 0}, DeformSeries(2.0));
  e.w = NCPoly::word(a, {1, 2}, DeformSeries(2.0));
  e.w_star = NCPoly::word(a, {3, 0}, DeformSeries(2.0));
  return e;
}

std::vector<RelationCheck> su2q_relation_checks() {
  const auto sys = woronowicz_system();
  const auto& a = wz_alphabet();
  const auto [u, w, ws] = su2q_elements();
  const NCPoly one = NCPoly::unit(a);
  auto nf = [&](const NCPoly& p) { return normal_form(p, sys); };
  auto q1_norm = [](const NCPoly& p) {
    double worst = 0.0;
    for (const auto& [word, c] : p.terms()) {
      (void)word;
      worst = std::max(worst, std::abs(c.q_coeff(1)));
    }
    return worst;
  };
  std::vector<RelationCheck> out;
  auto push = [&](const std::string& name, const NCPoly& residual_raw) {
    const NCPoly res = nf(residual_raw);
    out.push_back({name, res.is_zero(), q1_norm(res), res});
  };

  // the two printed expressions for u coincide in the quotient
  const NCPoly u_alt = NCPoly::word(a, {3, 2}) - NCPoly::word(a, {1, 0});
  push("u = 1 - 2 nu* nu = alpha* alpha - nu* nu", u - u_alt);

  // u^2 + w* w = 1 as printed (u is self adjoint)
  push("u^2 + w* w = 1 (printed; fails in q)", u * u + ws * w - one);

  // [w, u] relation; exact once the commutator is read as uw - wu
  const DeformSeries q2m2q = q_poly({{2, 1.0}, {1, -2.0}});
  push("uw - wu = (q^2-2q)(1-u)w", (u * w - w * u) - (one - u) * w * q2m2q);
  push("w*u - uw* = (q^2-2q)w*(1-u)", (ws * u - u * ws) - ws * (one - u) * q2m2q);

  // [w, w*] as printed; fails in both commutator conventions
  const DeformSeries c1 = q_poly({{2, -2.0}, {1, 2.0}});
  const DeformSeries c2 = q_poly({{1, 4.0}, {2, -6.0}, {3, 4.0}, {4, -1.0}});
  const NCPoly rhs = (one - u) * c1 + (one - u) * (one - u) * c2;
  push("ww* - w*w = printed rhs (fails in q)", (w * ws - ws * w) - rhs);
  push("w*w - ww* = printed rhs (fails in q)", (ws * w - w * ws) - rhs);
  return out;
}

std::array<NCPoly, 4> su2q_coordinates() {
  const auto& a = wz_alphabet();
  const DeformSeries half(0.5);
  const DeformSeries minus_half_i(Complex{0.0, -0.5});
  return {
      (NCPoly::generator(a, 0) + NCPoly::generator(a, 1)) * half,          // q1
      (NCPoly::generator(a, 2) + NCPoly::generator(a, 3)) * half,          // q2
      (NCPoly::generator(a, 0) - NCPoly::generator(a, 1)) * minus_half_i,  // p1
      (NCPoly::generator(a, 2) - NCPoly::generator(a, 3)) * minus_half_i,  // p2
  };
}

CommPoly classical_limit(const NCPoly& commutator) {
  const NCPoly nf = normal_form(commutator, woronowicz_system());
  // letters map to z1 = q1 + i p1, z2 = q2 + i p2 and conjugates;
  // variables ordered (q1, q2, p1, p2)
  auto letter_poly = [](int s) {
    CommPoly p(4);
    const int base = (s < 2) ? 0 : 1;  // q1 or q2
    const int mom = (s < 2) ? 2 : 3;   // p1 or p2
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    p.add_term({base == 0 ? 1 : 0, base == 1 ? 1 : 0, 0, 0}, DeformSeries(1.0));
    std::vector<int> alpha(4, 0);
    alpha[mom] = 1;
    p.add_term(alpha, DeformSeries(Complex{0.0, sign}));
    return p;
  };
  CommPoly q0(4), q1(4);
  for (const auto& [word, c] : nf.terms()) {
    CommPoly image = CommPoly::constant(4, DeformSeries(1.0));
    for (int s : word) {
      image = image * letter_poly(s);
    }
    q0 = q0 + image * DeformSeries(c.q_coeff(0));
    q1 = q1 + image * DeformSeries(c.q_coeff(1));
  }
  if (!q0.is_zero(1e-9)) {
    throw DomainError("classical_limit: input is not a commutator (q^0 part nonzero)");
  }
  // bracket = -Im of the q^1 coefficient (global convention constant)
  CommPoly out(4);
  for (const auto& [alpha, c] : q1.terms()) {
    out.add_term(alpha, DeformSeries(-c.coeff(0).imag()));
  }
  return out;
}

// --- quadratic Poisson structure on S^3 --------------------------------------

namespace {

CommPoly mono4(std::vector<int> alpha, double c) {
  CommPoly p(4);
  p.add_term(std::move(alpha), DeformSeries(c));
  return p;
}

// bracket table on (q1, q2, p1, p2); antisymmetric, B[i][j] for i < j
const CommPoly& s3_table(int i, int j) {
  static const std::array<std::array<CommPoly, 4>, 4> table = [] {
    std::array<std::array<CommPoly, 4>, 4> t;
    for (auto& row : t) {
      row.fill(CommPoly(4));
    }
    t[0][1] = mono4({1, 0, 0, 1}, -1.0);                          // {q1,q2} = -q1 p2
    t[0][3] = mono4({1, 1, 0, 0}, 1.0);                           // {q1,p2} = q1 q2
    t[1][2] = mono4({0, 0, 1, 1}, 1.0);                           // {q2,p1} = p1 p2
    t[1][3] = mono4({2, 0, 0, 0}, -1.0) + mono4({0, 0, 2, 0}, -1.0);  // {q2,p2}
    t[2][3] = mono4({0, 1, 1, 0}, 1.0);                           // {p1,p2} = p1 q2
    return t;
  }();
  return table[i][j];
}

}  // namespace

CommPoly s3_poisson(const CommPoly& f, const CommPoly& g) {
  if (f.nvars() != 4 || g.nvars() != 4) {
    throw DomainError("s3_poisson: four-variable polynomials required");
  }
  CommPoly out(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const CommPoly& b = s3_table(i, j);
      if (b.terms().empty()) {
        continue;
      }
      out = out + (f.derive(i) * g.derive(j) - f.derive(j) * g.derive(i)) * b;
    }
  }
  return out;
}

std::array<CommPoly, 3> s2_elements() {
  const CommPoly u = mono4({0, 2, 0, 0}, 1.0) + mono4({0, 0, 0, 2}, 1.0) +
                     mono4({2, 0, 0, 0}, -1.0) + mono4({0, 0, 2, 0}, -1.0);
  const CommPoly v = mono4({0, 0, 1, 1}, 2.0) + mono4({1, 1, 0, 0}, 2.0);
  const CommPoly z = mono4({0, 1, 1, 0}, 2.0) + mono4({1, 0, 0, 1}, -2.0);
  return {u, v, z};
}

CommPoly s3_casimir() {
  return mono4({2, 0, 0, 0}, 1.0) + mono4({0, 2, 0, 0}, 1.0) + mono4({0, 0, 2, 0}, 1.0) +
         mono4({0, 0, 0, 2}, 1.0);
}

std::array<double, 4> s3_classical_flow(const std::array<double, 4>& state, double t) {
  const double q1 = state[0], q2 = state[1], p1 = state[2], p2 = state[3];
  const double rho = q1 * q1 + p1 * p1;
  const double c = std::cos(2.0 * t * rho);
  const double s = std::sin(2.0 * t * rho);
  return {q1, -s * p2 + c * q2, p1, c * p2 + s * q2};
}

std::array<double, 3> s2_reduced_flow(const std::array<double, 3>& uvz, double t) {
  const double u = uvz[0], v = uvz[1], z = uvz[2];
  const double c = std::cos((1.0 - u) * t);
  const double s = std::sin((1.0 - u) * t);
  return {u, c * v + s * z, -s * v + c * z};
}

std::array<double, 2> stereographic_project(double u, double v, double z) {
  if (u == 1.0) {
    throw DomainError("stereographic_project: north pole");
  }
  return {v / (1.0 - u), z / (1.0 - u)};
}

PushforwardCheck stereographic_pushforward_check(int samples) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double sign = 0.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double u = dist(rng), v = dist(rng), z = dist(rng);
    const double n = std::sqrt(u * u + v * v + z * z);
    u /= n;
    v /= n;
    z /= n;
    if (u > 0.8) {
      u = -u;
    }
    const auto [x, y] = stereographic_project(u, v, z);
    // reduced field on (u,v,z) and its image under the projection
    const double vdot = (1.0 - u) * z;
    const double zdot = -(1.0 - u) * v;
    const double xdot = vdot / (1.0 - u);
    const double ydot = zdot / (1.0 - u);
    const double denom = x * x + y * y + 1.0;
    const double xp = -2.0 * y / denom;
    const double yp = 2.0 * x / denom;
    if (sign == 0.0) {
      sign = (xdot * xp + ydot * yp >= 0) ? 1.0 : -1.0;
    }
    worst = std::max({worst, std::abs(xdot - sign * xp), std::abs(ydot - sign * yp)});
  }
  return {sign, worst};
}

WoronowiczFlowCheck woronowicz_flow_check(double q) {
  const auto sys = woronowicz_system();
  const auto& a = wz_alphabet();
  const auto [u, w, ws] = su2q_elements();
  (void)w;
  (void)ws;
  const NCPoly h = u * DeformSeries(0.5);
  const NCPoly nu = NCPoly::generator(a, 0);
  const NCPoly nus = NCPoly::generator(a, 1);
  const NCPoly alpha = NCPoly::generator(a, 2);
  WoronowiczFlowCheck out{};
  out.h_commutes_with_nu = normal_form(nc_commutator(h, nu), sys).is_zero() &&
                           normal_form(nc_commutator(h, nus), sys).is_zero();
  const NCPoly rhs =
      NCPoly::word(a, {1, 0, 2}, q_poly({{2, 1.0}, {1, -2.0}}));  // (q^2-2q) nu* nu alpha
  out.alpha_equation_exact = normal_form(nc_commutator(h, alpha) - rhs, sys).is_zero();
  out.phase_rate = q * q - 2.0 * q;
  return out;
}

// --- Moyal product and the su(2) reduction -----------------------------------

namespace {

// canonical pairs on (q1, q2, p1, p2)
constexpr int kPairs[2][2] = {{0, 2}, {1, 3}};

using Tensor = std::map<std::pair<std::vector<int>, std::vector<int>>, DeformSeries>;

void tensor_add(Tensor& t, const std::vector<int>& a, const std::vector<int>& b,
                const DeformSeries& c) {
  auto key = std::make_pair(a, b);
  auto it = t.find(key);
  if (it == t.end()) {
    if (!c.is_zero(1e-14)) {
      t.emplace(std::move(key), c);
    }
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero(1e-14)) {
    t.erase(it);
  }
}

// derivative of a monomial exponent vector along axis j, as factor and shift
bool mono_derive(const std::vector<int>& a, int j, std::vector<int>& out, double& factor) {
  if (a[j] == 0) {
    return false;
  }
  out = a;
  out[j] -= 1;
  factor = a[j];
  return true;
}

Tensor poisson_bidifferential(const Tensor& t) {
  Tensor out;
  for (const auto& [key, c] : t) {
    for (const auto& pair : kPairs) {
      const int iq = pair[0], ip = pair[1];
      std::vector<int> da, db;
      double fa = 0.0, fb = 0.0;
      if (mono_derive(key.first, iq, da, fa) && mono_derive(key.second, ip, db, fb)) {
        tensor_add(out, da, db, c * DeformSeries(fa * fb));
      }
      if (mono_derive(key.first, ip, da, fa) && mono_derive(key.second, iq, db, fb)) {
        tensor_add(out, da, db, c * DeformSeries(-fa * fb));
      }
    }
  }
  return out;
}

}  // namespace

CommPoly moyal_product(const CommPoly& f, const CommPoly& g) {
  if (f.nvars() != 4 || g.nvars() != 4) {
    throw DomainError("moyal_product: four-variable polynomials required");
  }
  Tensor t;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      tensor_add(t, a, b, ca * cb);
    }
  }
  CommPoly out(4);
  DeformSeries prefactor(1.0);
  const DeformSeries step = DeformSeries::param(1, Complex{0.0, 0.5});  // i theta / 2
  int n = 0;
  while (!t.empty()) {
    for (const auto& [key, c] : t) {
      std::vector<int> s = key.first;
      for (int j = 0; j < 4; ++j) {
        s[j] += key.second[j];
      }
      out.add_term(s, c * prefactor);
    }
    ++n;
    prefactor = prefactor * step * DeformSeries(1.0 / n);
    t = poisson_bidifferential(t);
  }
  return out;
}

namespace {

CommPoly canonical_bracket(const CommPoly& f, const CommPoly& g) {
  CommPoly out(4);
  for (const auto& pair : kPairs) {
    const int iq = pair[0], ip = pair[1];
    out = out + f.derive(iq) * g.derive(ip) - f.derive(ip) * g.derive(iq);
  }
  return out;
}

}  // namespace

std::array<CommPoly, 3> su2_generators_pulled_back() {
  const CommPoly x = mono4({1, 1, 0, 0}, 0.5) + mono4({0, 0, 1, 1}, 0.5);
  const CommPoly y = mono4({1, 0, 0, 1}, 0.5) + mono4({0, 1, 1, 0}, -0.5);
  const CommPoly w = mono4({2, 0, 0, 0}, 0.25) + mono4({0, 0, 2, 0}, 0.25) +
                     mono4({0, 2, 0, 0}, -0.25) + mono4({0, 0, 0, 2}, -0.25);
  return {x, y, w};
}

CommPoly su2_fh() { return s3_casimir(); }

CommPoly su2_pullback(const CommPoly& f_xyw) {
  if (f_xyw.nvars() != 3) {
    throw DomainError("su2_pullback: three-variable polynomials required");
  }
  const auto gens = su2_generators_pulled_back();
  CommPoly out(4);
  for (const auto& [a, c] : f_xyw.terms()) {
    CommPoly term = CommPoly::constant(4, c);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < a[j]; ++k) {
        term = term * gens[j];
      }
    }
    out = out + term;
  }
  return out;
}

double commutant_closure_check() {
  const auto gens = su2_generators_pulled_back();
  const CommPoly fh = su2_fh();
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const CommPoly res = canonical_bracket(fh, moyal_product(gens[i], gens[j]));
      worst = std::max(worst, res.max_abs_coeff());
    }
  }
  return worst;
}

CommPoly reduced_star_verify(int j, const CommPoly& f_xyw) {
  if (j < 1 || j > 3) {
    throw DomainError("reduced_star_verify: generator index in 1..3");
  }
  if (f_xyw.nvars() != 3) {
    throw DomainError("reduced_star_verify: F must live in (x, y, w)");
  }
  const int jj = j - 1;
  const CommPoly xj = CommPoly::var(3, jj);
  auto eps = [](int a, int b, int c) {
    if (a == b || b == c || a == c) {
      return 0;
    }
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
  };
  // printed candidate: x_j F - (i theta/2) eps_{jlm} x_l d_m F
  //                    - (theta^2/8)[(1 + x_k d_k) d_j F - (1/2) x_j d_k d_k F]
  CommPoly formula = xj * f_xyw;
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      const int e = eps(jj, l, m);
      if (e != 0) {
        formula = formula + CommPoly::var(3, l) * f_xyw.derive(m) *
                                DeformSeries::param(1, Complex{0.0, -0.5 * e});
      }
    }
  }
  CommPoly second = f_xyw.derive(jj);
  for (int k = 0; k < 3; ++k) {
    second = second + CommPoly::var(3, k) * f_xyw.derive(jj).derive(k);
    second = second - xj * f_xyw.derive(k).derive(k) * DeformSeries(0.5);
  }
  formula = formula + second * DeformSeries::param(2, -0.125);

  const auto gens = su2_generators_pulled_back();
  return su2_pullback(formula) - moyal_product(gens[jj], su2_pullback(f_xyw));
}

}  // namespace rlab
