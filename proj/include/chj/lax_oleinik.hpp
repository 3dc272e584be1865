#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chj/cauchy_fd.hpp"
#include "chj/grid_fn.hpp"
#include "chj/legendre.hpp"
#include "chj/parallel.hpp"

namespace chj {

struct DpConfig {
  double tau = 0.0;          // <= 0: auto, dx rounded up to divide T
  int window = 0;            // <= 0: auto from velocity_bound
  double lambda_shift = -1;  // < 0: auto, = h.lambda (see solve_dp)
  double action_budget = 50.0;
  double u_window = 0.0;  // <= 0: auto from data
  double p_window = 32.0;
  int p_steps = 1025;
  bool keep_step_slices = true;
  std::vector<double> output_times;  // empty -> {0, T}
};

// Per-(step, node) minimizing predecessor; -1 where the value is +inf.
struct ArgminField {
  int n = 0;
  int steps = 0;
  std::vector<int32_t> pred;

  int32_t at(int step, int node) const { return pred[(size_t)(step - 1) * n + node]; }
};

struct Curve {
  std::vector<double> times;
  std::vector<int> nodes;
};

struct DpResult {
  Trajectory traj;  // u-slices at requested output times
  ArgminField argmin;
  double tau = 0.0;
  int window = 0;
  double lambda_shift = 0.0;
  bool window_warning = false;  // window*dx/tau outside the transform's trusted range
  std::vector<double> step_times;
  std::vector<GridFn> u_steps;  // all step slices (if keep_step_slices)
};

// One Bellman step in the e^{lt}-transformed variables:
//   v'(x_i) = min_{|i-j|<=window} v(x_j) + tau * Ltilde(x_mid, (x_i-x_j)/tau, t_n, v(x_j))
// with midpoint spatial evaluation and left-endpoint u.  Ties break toward
// smaller displacement, then smaller j, so the argmin field is reproducible.
inline std::pair<GridFn, std::vector<int32_t>> dp_step(const Hamiltonian& h, const GridFn& v,
                                                       double t_n, double tau, int window,
                                                       double lambda_shift,
                                                       const DpConfig& cfg = {}) {
  if (!(tau > 0)) throw std::invalid_argument("dp_step: tau must be positive");
  if (window < 1) throw std::invalid_argument("dp_step: window must be >= 1");
  const Torus& T = v.torus;
  GridFn out = GridFn::all_inf(T);
  std::vector<int32_t> pred(T.n, -1);

  // candidate displacements ordered for the tie-break: |dj| ascending, then
  // the smaller index (i - |dj|) first
  std::vector<int> order;
  order.reserve(2 * window + 1);
  order.push_back(0);
  for (int d = 1; d <= window; ++d) {
    order.push_back(-d);
    order.push_back(d);
  }

  parallel_for(T.n, [&](int i) {
    ExtReal best = ExtReal::inf();
    int32_t best_j = -1;
    for (int djs : order) {
      int j = i - djs;  // predecessor index (unwrapped); displacement = djs*dx
      const ExtReal& vj = v[j];
      if (vj.is_inf()) continue;
      double delta = djs * T.dx;
      double xi = delta / tau;
      double x_mid = T.wrap_point(T.x(i) - delta / 2.0);
      ExtReal L = lagrangian_tilde(h, x_mid, xi, t_n, vj.value(), lambda_shift, cfg.p_window,
                                   cfg.p_steps);
      if (L.is_inf()) continue;
      ExtReal cand = ExtReal::finite(vj.value() + tau * L.value());
      if (cand < best) {
        best = cand;
        best_j = T.wrap_index(j);
      }
    }
    out.values[i] = best;
    pred[i] = best_j;
  });
  return {std::move(out), std::move(pred)};
}

namespace detail {

// Pick the step count: at most floor(T/dx) steps so the per-step grid speed
// dx/tau stays <= 1 (unit-speed cones must be able to advance one cell per
// step), then lowered until every requested output time is a step multiple.
inline int dp_step_count(double T, double dx, const std::vector<double>& out_times) {
  int m0 = std::max(1, (int)std::floor(T / dx + 1e-9));
  auto fits = [&](int m) {
    for (double t : out_times) {
      double k = t * m / T;
      if (std::fabs(k - std::round(k)) > 1e-9 * m) return false;
    }
    return true;
  };
  for (int m = m0; m >= 1; --m)
    if (fits(m)) return m;
  return m0;
}

}  // namespace detail

// Variational solver: dynamic programming on the representation formula in the
// transformed variables, with v0 = phi (the transform is the identity at t=0)
// and u(.,t_k) = e^{-l t_k} v_k.  The default shift is l = Lambda, the
// smallest value keeping Ltilde nondecreasing in u; for u-independent
// Hamiltonians this degenerates to the plain Hopf-Lax minimization and keeps
// cone plateaus bit-exact.
inline DpResult solve_dp(const Hamiltonian& h, const GridFn& phi, double T,
                         const DpConfig& cfg = {}) {
  if (T < 0) throw std::invalid_argument("solve_dp: T must be nonnegative");
  const Torus& G = phi.torus;

  DpResult res;
  res.lambda_shift = cfg.lambda_shift >= 0 ? cfg.lambda_shift : h.lambda;
  if (res.lambda_shift < h.lambda)
    throw std::invalid_argument("solve_dp: lambda_shift below the Lipschitz bound");

  std::vector<double> out_times = detail::normalize_output_times(cfg.output_times, T);
  res.traj.torus = G;
  if (T == 0.0) {
    res.traj.times = {0.0};
    res.traj.slices = {phi};
    res.step_times = {0.0};
    if (cfg.keep_step_slices) res.u_steps = {phi};
    return res;
  }

  int m;
  if (cfg.tau > 0) {
    m = std::max(1, (int)std::ceil(T / cfg.tau - 1e-9));  // tau rounded down
  } else {
    m = detail::dp_step_count(T, G.dx, out_times);
  }
  res.tau = T / m;

  if (cfg.window > 0) {
    res.window = cfg.window;
  } else {
    double u_w = cfg.u_window > 0
                     ? cfg.u_window
                     : std::min(100.0, std::max(2.0, (phi.max_abs_finite() + 1.0) *
                                                         std::exp(h.lambda * T)));
    double v_max = velocity_bound(h, cfg.action_budget, u_w);
    if (!std::isfinite(v_max)) {
      res.window = std::max(2, G.n / 8);
    } else {
      res.window = (int)std::ceil(v_max * res.tau / G.dx) + 1;
    }
  }
  res.window = std::max(1, std::min(res.window, G.n / 2 - 1));
  res.window_warning = res.window * G.dx / res.tau > cfg.p_window;

  res.argmin.n = G.n;
  res.argmin.steps = m;
  res.argmin.pred.assign((size_t)m * G.n, -1);

  GridFn v = phi;  // e^{l*0} u = phi
  res.step_times.resize(m + 1);
  res.step_times[0] = 0.0;
  if (cfg.keep_step_slices) {
    res.u_steps.clear();
    res.u_steps.reserve(m + 1);
    res.u_steps.push_back(phi);
  }
  auto record_output = [&](int k, const GridFn& u_slice) {
    double t = k * res.tau;
    for (double t_req : out_times)
      if (std::fabs(t_req - t) < 1e-9 * (1.0 + t_req)) {
        res.traj.times.push_back(t_req);
        res.traj.slices.push_back(u_slice);
        break;
      }
  };
  record_output(0, phi);

  for (int k = 0; k < m; ++k) {
    double t_n = k * res.tau;
    auto [v_next, pred] = dp_step(h, v, t_n, res.tau, res.window, res.lambda_shift, cfg);
    std::copy(pred.begin(), pred.end(), res.argmin.pred.begin() + (size_t)k * G.n);
    v = std::move(v_next);
    res.step_times[k + 1] = (k + 1) * res.tau;
    GridFn u_slice = scale_finite(v, std::exp(-res.lambda_shift * (k + 1) * res.tau));
    if (cfg.keep_step_slices) res.u_steps.push_back(u_slice);
    record_output(k + 1, u_slice);
  }
  return res;
}

// Calibrated-curve backtracking: follow the recorded minimizers from (x, t)
// down to t = 0.
inline Curve backtrack(const DpResult& dp, int node, double t) {
  const Torus& G = dp.traj.torus;
  node = G.wrap_index(node);
  int k = (int)std::round(t / dp.tau);
  if (std::fabs(k * dp.tau - t) > 1e-9 * (1.0 + t) || k < 0 || k > dp.argmin.steps)
    throw std::invalid_argument("backtrack: t is not a step time");
  if (dp.u_steps.empty()) throw std::invalid_argument("backtrack: step slices were not kept");
  if (dp.u_steps[k].values[node].is_inf())
    throw std::invalid_argument("backtrack: value at query point is +inf");

  Curve c;
  c.times.resize(k + 1);
  c.nodes.resize(k + 1);
  c.nodes[k] = node;
  for (int s = k; s >= 1; --s) {
    int32_t p = dp.argmin.at(s, c.nodes[s]);
    if (p < 0)
      throw std::runtime_error("backtrack: predecessor missing at a finite node (argmin field corrupt)");
    c.nodes[s - 1] = p;
  }
  for (int s = 0; s <= k; ++s) c.times[s] = s * dp.tau;
  return c;
}

// Action of a discrete curve: left-endpoint quadrature of
// L(gamma, gamma_dot, u(gamma, s)) plus phi(gamma(0)).  +inf Lagrangian on a
// step marks the curve inadmissible and propagates.
inline ExtReal action(const Hamiltonian& h, const Curve& curve, const DpResult& dp,
                      const GridFn& phi) {
  const Torus& G = dp.traj.torus;
  if (curve.nodes.empty()) throw std::invalid_argument("action: empty curve");
  const ExtReal& phi0 = phi.values[curve.nodes.front()];
  if (phi0.is_inf()) return ExtReal::inf();
  double total = phi0.value();
  for (size_t s = 0; s + 1 < curve.nodes.size(); ++s) {
    double tau = curve.times[s + 1] - curve.times[s];
    double xi = G.signed_disp(G.x(curve.nodes[s + 1]), G.x(curve.nodes[s])) / tau;
    const ExtReal& u_here = dp.u_steps[s].values[curve.nodes[s]];
    if (u_here.is_inf()) return ExtReal::inf();
    ExtReal L = lagrangian(h, G.x(curve.nodes[s]), xi, u_here.value()).value;
    if (L.is_inf()) return ExtReal::inf();
    total += tau * L.value();
  }
  return ExtReal::finite(total);
}

// Admissibility of a curve: finite L(.,.,0) and finite u along every step.
// The same condition read through the e^{ls}-weighted action must agree; a
// disagreement would contradict the finiteness equivalence the representation
// is built on, so it is an integrity error.
inline bool admissible(const Hamiltonian& h, const Curve& curve, const DpResult& dp) {
  const Torus& G = dp.traj.torus;
  const double lam = h.lambda + 1.0;
  bool direct = true;
  ExtReal weighted = ExtReal::finite(0.0);
  for (size_t s = 0; s + 1 < curve.nodes.size(); ++s) {
    double tau = curve.times[s + 1] - curve.times[s];
    double t_s = curve.times[s];
    double xi = G.signed_disp(G.x(curve.nodes[s + 1]), G.x(curve.nodes[s])) / tau;
    double x = G.x(curve.nodes[s]);
    const ExtReal& u_here = dp.u_steps[s].values[curve.nodes[s]];
    if (lagrangian(h, x, xi, 0.0).value.is_inf() || u_here.is_inf()) direct = false;
    if (u_here.is_inf()) {
      weighted = ExtReal::inf();
    } else {
      ExtReal L = lagrangian(h, x, xi, u_here.value()).value;
      if (L.is_inf())
        weighted = ExtReal::inf();
      else
        weighted = weighted +
                   tau * std::exp(lam * t_s) * (L.value() + lam * u_here.value());
    }
  }
  if (!curve.nodes.empty()) {
    size_t last = curve.nodes.size() - 1;
    if (dp.u_steps[last].values[curve.nodes[last]].is_inf()) {
      direct = false;
      weighted = ExtReal::inf();
    }
  }
  if (direct != weighted.is_finite())
    throw std::runtime_error("admissible: direct and weighted finiteness checks disagree");
  return direct;
}

}  // namespace chj
