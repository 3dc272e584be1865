#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace chj {

// Extended-real value: finite double or +infinity.  +inf is a genuine tag,
// not a large float, so ordering and min are exact.  -inf is not representable;
// solvers that need a numeric floor clamp explicitly.
struct ExtReal {
  double v = 0.0;
  bool infinite = false;

  static ExtReal finite(double x) {
    assert(!std::isnan(x));
    return ExtReal{x, false};
  }
  static ExtReal inf() { return ExtReal{0.0, true}; }

  bool is_inf() const { return infinite; }
  bool is_finite() const { return !infinite; }

  // Value of a finite entry.  Never inspect v when infinite.
  double value() const {
    assert(!infinite);
    return v;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.v == b.v;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.infinite) return false;          // +inf < x never
    if (b.infinite) return true;           // finite < +inf
    return a.v < b.v;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }

  friend ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }
  friend ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

  // +inf absorbs addition.
  friend ExtReal operator+(const ExtReal& a, double s) {
    return a.infinite ? inf() : finite(a.v + s);
  }
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    return (a.infinite || b.infinite) ? inf() : finite(a.v + b.v);
  }
};

}  // namespace chj
