#include "rlab/deform.hpp"

#include <cmath>

namespace rlab {

namespace {
constexpr double kDropTol = 1e-14;
}

DeformSeries DeformSeries::param(int power, Complex c) {
  DeformSeries s;
  s.add(power, c);
  return s;
}

Complex DeformSeries::coeff(int power) const {
  auto it = c_.find(power);
  return it == c_.end() ? Complex{0.0, 0.0} : it->second;
}

bool DeformSeries::is_zero(double tol) const { return max_abs() <= tol; }

double DeformSeries::max_abs() const {
  double worst = 0.0;
  for (const auto& [p, c] : c_) {
    worst = std::max(worst, std::abs(c));
  }
  return worst;
}

int DeformSeries::min_power() const { return c_.empty() ? 0 : c_.begin()->first; }

int DeformSeries::max_power() const { return c_.empty() ? 0 : c_.rbegin()->first; }

DeformSeries& DeformSeries::add(int power, Complex c) {
  auto it = c_.find(power);
  if (it == c_.end()) {
    if (std::abs(c) > kDropTol) {
      c_.emplace(power, c);
    }
    return *this;
  }
  it->second += c;
  if (std::abs(it->second) <= kDropTol) {
    c_.erase(it);
  }
  return *this;
}

DeformSeries DeformSeries::operator+(const DeformSeries& o) const {
  DeformSeries out = *this;
  for (const auto& [p, c] : o.c_) {
    out.add(p, c);
  }
  return out;
}

DeformSeries DeformSeries::operator-(const DeformSeries& o) const { return *this + (-o); }

DeformSeries DeformSeries::operator*(const DeformSeries& o) const {
  DeformSeries out;
  for (const auto& [pa, ca] : c_) {
    for (const auto& [pb, cb] : o.c_) {
      out.add(pa + pb, ca * cb);
    }
  }
  return out;
}

DeformSeries DeformSeries::operator-() const {
  DeformSeries out;
  for (const auto& [p, c] : c_) {
    out.add(p, -c);
  }
  return out;
}

Complex DeformSeries::eval(Complex value) const {
  Complex sum = 0.0;
  for (const auto& [p, c] : c_) {
    sum += c * std::pow(value, p);
  }
  return sum;
}

Complex DeformSeries::q_coeff(int k) const {
  // mu^n = (1-q)^n: coefficient of q^k is (-1)^k n(n-1)...(n-k+1)/k!
  Complex sum = 0.0;
  for (const auto& [n, c] : c_) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) {
      b *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    sum += c * ((k % 2 == 0) ? b : -b);
  }
  return sum;
}

}  // namespace rlab
