#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "chj/ext_real.hpp"
#include "chj/torus.hpp"

namespace chj {

// Extended-real function sampled on a periodic grid; the discrete stand-in for
// LSC(M, R u {+inf}) data and solution slices.
struct GridFn {
  Torus torus;
  std::vector<ExtReal> values;

  GridFn() = default;
  GridFn(const Torus& t, std::vector<ExtReal> v) : torus(t), values(std::move(v)) {
    if ((int)values.size() != torus.n)
      throw std::invalid_argument("GridFn: value count does not match grid");
  }

  static GridFn constant(const Torus& t, double c) {
    return GridFn(t, std::vector<ExtReal>(t.n, ExtReal::finite(c)));
  }
  static GridFn all_inf(const Torus& t) {
    return GridFn(t, std::vector<ExtReal>(t.n, ExtReal::inf()));
  }
  template <class F>
  static GridFn sample(const Torus& t, F&& f) {
    std::vector<ExtReal> v(t.n);
    for (int i = 0; i < t.n; ++i) v[i] = ExtReal::finite(f(t.x(i)));
    return GridFn(t, std::move(v));
  }

  int n() const { return torus.n; }
  const ExtReal& operator[](int i) const { return values[torus.wrap_index(i)]; }
  ExtReal& at(int i) { return values[torus.wrap_index(i)]; }

  bool has_inf() const {
    for (const auto& v : values)
      if (v.is_inf()) return true;
    return false;
  }
  bool all_inf() const {
    for (const auto& v : values)
      if (v.is_finite()) return false;
    return true;
  }
  double max_abs_finite() const {
    double m = 0.0;
    for (const auto& v : values)
      if (v.is_finite()) m = std::max(m, std::fabs(v.v));
    return m;
  }
  double min_finite() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values)
      if (v.is_finite()) m = std::min(m, v.v);
    return m;
  }
  double max_finite() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : values)
      if (v.is_finite()) m = std::max(m, v.v);
    return m;
  }
};

inline GridFn pointwise_min(const GridFn& f, const GridFn& g) {
  if (f.torus != g.torus) throw std::invalid_argument("pointwise_min: grid mismatch");
  GridFn out = f;
  for (int i = 0; i < f.n(); ++i) out.values[i] = min(f.values[i], g.values[i]);
  return out;
}

// f + s on finite entries; +inf absorbs.
inline GridFn add_constant(const GridFn& f, double s) {
  GridFn out = f;
  for (auto& v : out.values) v = v + s;
  return out;
}

// Finite entries scaled by a positive factor; +inf stays +inf.
inline GridFn scale_finite(const GridFn& f, double factor) {
  GridFn out = f;
  for (auto& v : out.values)
    if (v.is_finite()) v.v *= factor;
  return out;
}

// -f; only defined for finite f (-inf is not representable).
inline GridFn negate(const GridFn& f) {
  if (f.has_inf()) throw std::invalid_argument("negate: function has +inf entries");
  GridFn out = f;
  for (auto& v : out.values) v.v = -v.v;
  return out;
}

// Pointwise clip of f into [lo, hi]; all three on a common grid, lo/hi finite.
inline GridFn clip_between(const GridFn& f, const GridFn& lo, const GridFn& hi) {
  if (f.torus != lo.torus || f.torus != hi.torus)
    throw std::invalid_argument("clip_between: grid mismatch");
  GridFn out = f;
  for (int i = 0; i < f.n(); ++i) {
    double l = lo.values[i].value(), h = hi.values[i].value();
    double x = f.values[i].is_finite() ? f.values[i].value() : h;
    out.values[i] = ExtReal::finite(std::min(std::max(x, l), h));
  }
  return out;
}

// phi_{y,c}: value c at node y, +inf elsewhere.  c = +inf gives the
// identically-+inf function.
inline GridFn point_data(const Torus& torus, int y, ExtReal c) {
  if (y < 0 || y >= torus.n) throw std::invalid_argument("point_data: node out of range");
  GridFn out = GridFn::all_inf(torus);
  out.values[y] = c;
  return out;
}
inline GridFn point_data(const Torus& torus, int y, double c) {
  return point_data(torus, y, ExtReal::finite(c));
}

// Monotone ladder level phi_k(x) = min_y (phi(y) + k d(x,y)).  The result is
// k-Lipschitz on the grid, <= phi pointwise, and nondecreasing in k; it
// converges pointwise to phi as k -> inf, which is what the existence
// construction needs from its approximating sequence.
inline GridFn lipschitz_ladder(const GridFn& phi, double k) {
  if (k < 0) throw std::invalid_argument("lipschitz_ladder: k must be nonnegative");
  if (phi.all_inf()) return phi;
  const Torus& T = phi.torus;
  GridFn out = phi;
  for (int i = 0; i < T.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < T.n; ++j) {
      if (phi.values[j].is_inf()) continue;
      best = std::min(best, phi.values[j].value() + k * T.dist_idx(i, j));
    }
    out.values[i] = ExtReal::finite(best);
  }
  return out;
}

// Discrete lower relaxed limit: at each node, min over the given tail slices
// and over nodes within stencil_radius cells.
inline GridFn relaxed_lower_limit(const std::vector<GridFn>& slices, int stencil_radius) {
  if (slices.empty()) throw std::invalid_argument("relaxed_lower_limit: no slices");
  if (slices.size() < 2)
    throw std::invalid_argument("relaxed_lower_limit: need at least 2 tail slices");
  const Torus& T = slices.front().torus;
  for (const auto& s : slices)
    if (s.torus != T) throw std::invalid_argument("relaxed_lower_limit: grid mismatch");
  GridFn out = GridFn::all_inf(T);
  for (int i = 0; i < T.n; ++i) {
    ExtReal best = ExtReal::inf();
    for (const auto& s : slices)
      for (int d = -stencil_radius; d <= stencil_radius; ++d) best = min(best, s[i + d]);
    out.values[i] = best;
  }
  return out;
}

// Sup distance with ceiling semantics: mismatched finiteness contributes the
// ceiling, agreeing +inf contributes 0.
inline double sup_metric(const GridFn& f, const GridFn& g, double ceiling = 1e6) {
  if (f.torus != g.torus) throw std::invalid_argument("sup_metric: grid mismatch");
  double m = 0.0;
  for (int i = 0; i < f.n(); ++i) {
    const ExtReal &a = f.values[i], &b = g.values[i];
    if (a.is_inf() && b.is_inf()) continue;
    if (a.is_inf() != b.is_inf()) {
      m = std::max(m, ceiling);
      continue;
    }
    m = std::max(m, std::fabs(a.v - b.v));
  }
  return m;
}

// Scheme-order tolerance: first-order monotone schemes lose half an order at
// kinks, so the kinky default is 4 sqrt(dx) times a data scale.
inline double tol_scheme(double dx, double scale, bool kinky = true) {
  return kinky ? 4.0 * std::sqrt(dx) * scale : 4.0 * dx * scale;
}

}  // namespace chj
