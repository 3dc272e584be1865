#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace chj {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Uniform periodic grid on the flat 1-torus R/PZ.  Node x_i = i*dx, i in [0,n).
struct Torus {
  double period = two_pi;
  int n = 0;
  double dx = 0.0;

  Torus() = default;
  Torus(int n_, double period_ = two_pi) : period(period_), n(n_) {
    if (n_ < 2) throw std::invalid_argument("Torus: need at least 2 nodes");
    if (!(period_ > 0.0)) throw std::invalid_argument("Torus: period must be positive");
    dx = period / n;
  }

  double x(int i) const { return wrap_index(i) * dx; }

  int wrap_index(int i) const {
    int r = i % n;
    return r < 0 ? r + n : r;
  }

  // Representative of x in [0, period).
  double wrap_point(double x) const {
    double r = std::fmod(x, period);
    return r < 0 ? r + period : r;
  }

  // Circle distance d(x,y) <= period/2.
  double dist(double a, double b) const {
    double d = std::fabs(std::fmod(a - b, period));
    if (d > period / 2) d = period - d;
    return d;
  }
  double dist_idx(int i, int j) const { return dist(x(i), x(j)); }

  // Signed displacement from b to a, folded into (-period/2, period/2].
  double signed_disp(double a, double b) const {
    double d = std::fmod(a - b, period);
    if (d <= -period / 2) d += period;
    if (d > period / 2) d -= period;
    return d;
  }

  friend bool operator==(const Torus& a, const Torus& b) {
    return a.n == b.n && a.period == b.period;
  }
  friend bool operator!=(const Torus& a, const Torus& b) { return !(a == b); }
};

// (e^{lambda t} - 1)/lambda with its analytic limit t at lambda = 0.
inline double expm1_over(double lambda, double t) {
  if (lambda == 0.0) return t;
  return std::expm1(lambda * t) / lambda;
}

}  // namespace chj
