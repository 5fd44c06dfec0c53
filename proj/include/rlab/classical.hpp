#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rlab/numeric.hpp"

namespace rlab {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

double dot(const Vec3& a, const Vec3& b);
double dot(const Vec4& a, const Vec4& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

struct FreeState3 {
  Vec3 r{};
  Vec3 v{};
};

struct SL2Point {
  double xi1 = 0, xi2 = 0, xi3 = 0;
};

// symmetric 2x2 matrix by entries [[a, b],[b, c]]
struct Sym2 {
  double a = 0, b = 0, c = 0;
};

struct MatFreeState {
  Sym2 X;
  Sym2 V;
};

struct CalogeroState {
  double q1 = 0, q2 = 0, p1 = 0, p2 = 0, l = 0;
};

struct MonopoleState {
  Vec3 r{};
  Vec3 v{};
  double k = 0;
  double m = 1;
};

struct TS3Point {
  Vec4 y{};
  Vec4 p{};
};

struct TS2State {
  Vec3 x{};
  Vec3 v{};
};

struct RadialData {
  double r = 0, rdot = 0, l2 = 0, E = 0;
};

RadialData reduce_free_to_radial(const FreeState3& s);

enum class RadialKind {
  fixed_l,
  fixed_E,
  convex,
  timedep,             // verbatim transcription, see notes in tests
  timedep_consistent,  // derived from the defining invariant
};

struct RadialParams {
  double l2 = 0, E = 0, alpha = 0, k = 0;
};

double radial_rhs(RadialKind kind, const RadialParams& p, double r, double rdot, double t);
VectorField radial_reduced_field(RadialKind kind, const RadialParams& p);

SL2Point sl2_lift(const Vec3& r, const Vec3& p);
SL2Point sl2_flow(const SL2Point& p0, double t);
double sl2_casimir(const SL2Point& p);
std::pair<double, double> oscillator_reduced_flow(double eta1, double xi3, double t);

// function on T*R^n with analytic gradient, layout (x_1..x_n, p_1..p_n)
struct PhaseFunction {
  std::function<double(const RealVec&)> value;
  std::function<RealVec(const RealVec&)> grad;
};

// bracket fixed by {p_a, x^b} = delta_a^b
double canonical_poisson(const PhaseFunction& f, const PhaseFunction& g, const RealVec& pt);
PhaseFunction sl2_xi(int index, int n);

CalogeroState calogero_reduce(const MatFreeState& s, std::optional<Eig2>& branch);
VectorField calogero_field(double l);
std::array<double, 2> mat_eigenvalues(const Sym2& X);

double hj_action(const Sym2& Xt, const Sym2& X0, double t);

VectorField monopole_field(double k, double m);
Vec3 monopole_invariant(const MonopoleState& s);

VectorField ts3_hamiltonian_field();
std::function<void(RealVec&)> ts3_projection();
double ts3_sigma_k(const TS3Point& pt);
double ts3_hamiltonian(const TS3Point& pt);

TS2State hopf_project(const TS3Point& pt, double check_tol = 1e-6);

VectorField pendulum_field();
std::function<void(RealVec&)> ts2_projection();
std::pair<double, double> energy_momentum_map(const TS2State& s);

// vector field and constraint on TR^3 (6 coordinates x1..x3, v1..v3)
struct TangentField {
  std::function<RealVec(const RealVec&)> at;
};

double tangency_check(const TangentField& field, const std::vector<PhaseFunction>& constraints,
                      const std::vector<RealVec>& samples);
TangentField ts2_rotation_generator(int l);
TangentField ts2_vertical_generator(int l);

}  // namespace rlab
