#pragma once

#include <array>
#include <map>
#include <vector>

#include "rlab/radialpoly.hpp"

namespace rlab {

// D = sum_sigma g_sigma d^sigma with RadialPoly coefficients
class LinDiffOp {
 public:
  LinDiffOp() = default;
  explicit LinDiffOp(int dim) : dim_(dim) {}

  static LinDiffOp multiplication(const RadialPoly& f);
  static LinDiffOp partial(int dim, int axis);
  static LinDiffOp identity(int dim);

  int dim() const { return dim_; }
  const std::map<std::vector<int>, RadialPoly>& terms() const { return terms_; }
  int order() const;

  LinDiffOp& add_term(const std::vector<int>& sigma, const RadialPoly& g);

  LinDiffOp operator+(const LinDiffOp& o) const;
  LinDiffOp operator-(const LinDiffOp& o) const;
  LinDiffOp operator*(double c) const;

  RadialPoly apply(const RadialPoly& f) const;

 private:
  int dim_ = 0;
  std::map<std::vector<int>, RadialPoly> terms_;
};

RadialPoly op_apply(const LinDiffOp& d, const RadialPoly& f);
LinDiffOp op_compose(const LinDiffOp& d1, const LinDiffOp& d2);
LinDiffOp op_commutator(const LinDiffOp& d1, const LinDiffOp& d2);

bool order_detect(const LinDiffOp& d, int k, const std::vector<RadialPoly>& probes);

LinDiffOp laplacian(int n);
LinDiffOp hydrogen_op(double k);
LinDiffOp conformal_kepler_op(double k);

struct PolyMap {
  int source_dim = 0;
  int target_dim = 0;
  std::vector<RadialPoly> components;
};

PolyMap ks_map();
std::array<double, 3> ks_point_map(const std::array<double, 4>& y);
RadialPoly ks_pullback(const RadialPoly& f);
RadialPoly poly_pullback(const PolyMap& pi, const RadialPoly& f);

bool x3_annihilation_check(const RadialPoly& f_downstairs);
// direct evaluation of the fiber generator on a function upstairs
RadialPoly x3_apply_upstairs(const RadialPoly& g);

double projectability_check(const LinDiffOp& d_up, const LinDiffOp& d_down, const PolyMap& pi,
                            int basis_degree);

double radial_sector_check(int m, const RadialPoly& test);

double oscillator_frequency(double E);
double hydrogen_level(double k, int m);

std::vector<double> hydrogen_radial_solve(double k, double r_max, int n, int count);

}  // namespace rlab
