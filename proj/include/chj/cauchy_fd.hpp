#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "chj/grid_fn.hpp"
#include "chj/hamiltonian.hpp"
#include "chj/parallel.hpp"

namespace chj {

struct FdConfig {
  double cfl_safety = 0.9;
  double ceiling = 1e6;
  double alpha_margin = 1.25;  // artificial-viscosity inflation
  std::vector<double> ladder_levels = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  std::vector<double> output_times;  // empty -> {0, T}

  void validate() const {
    if (!(cfl_safety > 0) || cfl_safety > 1.0)
      throw std::invalid_argument("FdConfig: cfl_safety must be in (0,1]");
    if (!(ceiling > 0)) throw std::invalid_argument("FdConfig: ceiling must be positive");
    if (alpha_margin < 1.0) throw std::invalid_argument("FdConfig: alpha_margin must be >= 1");
    for (size_t i = 1; i < ladder_levels.size(); ++i)
      if (!(ladder_levels[i] > ladder_levels[i - 1]))
        throw std::invalid_argument("FdConfig: ladder_levels must be strictly increasing");
  }
};

struct StepDiag {
  double t, dt, alpha, p_max;
};

struct Trajectory {
  Torus torus;
  std::vector<double> times;
  std::vector<GridFn> slices;
  std::vector<StepDiag> steps;
  bool aborted = false;
  std::string abort_reason;
  // solve_lsc diagnostics
  double ladder_increment_at_T = 0.0;
  int ladder_monotonicity_violations = 0;
  double ladder_level_reached = 0.0;

  const GridFn& slice_at(double t) const {
    if (times.empty()) throw std::runtime_error("Trajectory: empty");
    size_t best = 0;
    for (size_t i = 1; i < times.size(); ++i)
      if (std::fabs(times[i] - t) < std::fabs(times[best] - t)) best = i;
    if (std::fabs(times[best] - t) > 1e-9 * (1.0 + std::fabs(t)))
      throw std::invalid_argument("Trajectory: no slice recorded at requested time");
    return slices[best];
  }
};

// CFL step and viscosity coefficient for the monotone update: alpha bounds
// |dH/dp| on the slice's (p,u) range with a safety margin, and the Lambda*dx
// term keeps the update nondecreasing in the u-argument as well.
inline std::pair<double, double> cfl_dt(const Hamiltonian& h, const GridFn& u,
                                        const FdConfig& cfg) {
  const Torus& T = u.torus;
  double p_max = 0.0, u_max = 0.0;
  for (int i = 0; i < T.n; ++i) {
    double a = u.values[i].is_finite() ? std::min(u.values[i].value(), cfg.ceiling) : cfg.ceiling;
    double b = u[i + 1].is_finite() ? std::min(u[i + 1].value(), cfg.ceiling) : cfg.ceiling;
    p_max = std::max(p_max, std::fabs(b - a) / T.dx);
    u_max = std::max(u_max, std::fabs(a));
  }
  double alpha = cfg.alpha_margin * h.p_bound(p_max, u_max);
  double dt;
  if (alpha <= 0.0) {
    dt = cfg.cfl_safety * T.dx;
  } else {
    dt = cfg.cfl_safety * T.dx / (2.0 * alpha + h.lambda * T.dx);
    dt = std::min(dt, cfg.cfl_safety * T.dx);
  }
  return {dt, alpha};
}

// One central Lax-Friedrichs step.  +inf is clamped to the ceiling for the
// stencil arithmetic and values at or above ceiling/2 are re-tagged +inf on
// output, so fronts of the +inf region propagate at the scheme's speed.
inline GridFn lf_step(const Hamiltonian& h, const GridFn& u, double dt, double alpha,
                      const FdConfig& cfg) {
  const Torus& T = u.torus;
  std::vector<double> w(T.n);
  for (int i = 0; i < T.n; ++i) {
    double v = u.values[i].is_finite() ? u.values[i].value() : cfg.ceiling;
    w[i] = std::min(std::max(v, -cfg.ceiling), cfg.ceiling);
  }
  GridFn out = u;
  parallel_for(T.n, [&](int i) {
    double wm = w[T.wrap_index(i - 1)], wp = w[T.wrap_index(i + 1)];
    double p = (wp - wm) / (2.0 * T.dx);
    double val =
        w[i] - dt * (h.eval(T.x(i), p, w[i]) - alpha * (wp - 2.0 * w[i] + wm) / (2.0 * T.dx));
    out.values[i] = (val >= cfg.ceiling / 2) ? ExtReal::inf() : ExtReal::finite(val);
  });
  return out;
}

namespace detail {

inline std::vector<double> normalize_output_times(const std::vector<double>& req, double T) {
  std::vector<double> times = req;
  times.push_back(0.0);
  times.push_back(T);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
              times.end());
  if (times.front() < -1e-12 || times.back() > T + 1e-12)
    throw std::invalid_argument("output times must lie in [0, T]");
  return times;
}

}  // namespace detail

// Cauchy solve with finite data: marches lf_step with an adaptive CFL step,
// landing exactly on T and the requested output times.  alpha is held
// per-solve and recomputed only when the |Du| or |u| estimate doubles.
// saturate = false aborts on any value crossing ceiling/2 (blow-up guard);
// saturate = true lets values pin at the ceiling, which is the ladder mode.
inline Trajectory solve(const Hamiltonian& h, const GridFn& phi, double T, const FdConfig& cfg,
                        bool saturate = false) {
  cfg.validate();
  if (!saturate && phi.has_inf())
    throw std::invalid_argument("solve: data has +inf entries; use solve_lsc");
  if (T < 0) throw std::invalid_argument("solve: T must be nonnegative");

  Trajectory traj;
  traj.torus = phi.torus;
  std::vector<double> out_times = detail::normalize_output_times(cfg.output_times, T);

  GridFn cur = phi;
  double t = 0.0;
  size_t next_out = 0;
  auto record_if_due = [&](void) {
    while (next_out < out_times.size() && t >= out_times[next_out] - 1e-12) {
      traj.times.push_back(out_times[next_out]);
      traj.slices.push_back(cur);
      ++next_out;
    }
  };
  record_if_due();

  auto [dt_base, alpha] = cfl_dt(h, cur, cfg);
  double p_used = 0.0, u_used = 0.0;
  {
    const Torus& G = phi.torus;
    for (int i = 0; i < G.n; ++i) {
      double a = cur.values[i].is_finite() ? cur.values[i].value() : cfg.ceiling;
      double b = cur[i + 1].is_finite() ? cur[i + 1].value() : cfg.ceiling;
      p_used = std::max(p_used, std::fabs(b - a) / G.dx);
      u_used = std::max(u_used, std::fabs(a));
    }
  }

  const Torus& G = phi.torus;
  while (t < T - 1e-12) {
    double p_est = 0.0, u_est = 0.0;
    for (int i = 0; i < G.n; ++i) {
      double a = cur.values[i].is_finite() ? std::min(cur.values[i].value(), cfg.ceiling)
                                           : cfg.ceiling;
      double b =
          cur[i + 1].is_finite() ? std::min(cur[i + 1].value(), cfg.ceiling) : cfg.ceiling;
      p_est = std::max(p_est, std::fabs(b - a) / G.dx);
      u_est = std::max(u_est, std::fabs(a));
    }
    if (p_est > 2.0 * p_used || u_est > 2.0 * u_used) {
      auto su = cfl_dt(h, cur, cfg);
      dt_base = su.first;
      alpha = su.second;
      p_used = p_est;
      u_used = u_est;
    }
    double dt = std::min(dt_base, T - t);
    if (next_out < out_times.size()) dt = std::min(dt, out_times[next_out] - t);
    dt = std::max(dt, 1e-14);

    cur = lf_step(h, cur, dt, alpha, cfg);
    t += dt;
    traj.steps.push_back(StepDiag{t, dt, alpha, p_est});

    if (!saturate) {
      bool blew = false;
      for (const auto& v : cur.values)
        if (v.is_inf() || std::fabs(v.value()) >= cfg.ceiling / 2) {
          blew = true;
          break;
        }
      if (blew) {
        traj.aborted = true;
        traj.abort_reason = "value crossed ceiling/2 at t=" + std::to_string(t) +
                            "; data left the ceiling regime";
        traj.times.push_back(t);
        traj.slices.push_back(cur);
        return traj;
      }
    }
    record_if_due();
  }
  record_if_due();
  return traj;
}

// LSC/extended-real Cauchy solve via the monotone ladder: solves each
// Lipschitz level and takes the pointwise supremum, mirroring the increasing
// approximation u_k <= u_{k+1} of the existence construction.  Values at or
// above ceiling/2 are re-tagged +inf.
inline Trajectory solve_lsc(const Hamiltonian& h, const GridFn& phi, double T,
                            const FdConfig& cfg) {
  cfg.validate();
  if (T < 0) throw std::invalid_argument("solve_lsc: T must be nonnegative");
  if (phi.all_inf()) {
    Trajectory traj;
    traj.torus = phi.torus;
    for (double t : detail::normalize_output_times(cfg.output_times, T)) {
      traj.times.push_back(t);
      traj.slices.push_back(phi);
    }
    return traj;
  }
  if (!phi.has_inf() && !cfg.ladder_levels.empty()) {
    // finite data: identical to solve once k exceeds the data's Lipschitz
    // constant; run the plain solve in saturate mode for consistency
    double lip = 0.0;
    const Torus& G = phi.torus;
    for (int i = 0; i < G.n; ++i)
      lip = std::max(lip,
                     std::fabs(phi[i + 1].value() - phi.values[i].value()) / G.dx);
    if (lip <= cfg.ladder_levels.back()) return solve(h, phi, T, cfg, true);
  }

  Trajectory combined;
  combined.torus = phi.torus;
  std::vector<GridFn> prev_slices;
  double tol = tol_scheme(phi.torus.dx, std::max(1.0, phi.max_abs_finite()));
  for (double k : cfg.ladder_levels) {
    GridFn level_data = lipschitz_ladder(phi, k);
    Trajectory traj = solve(h, level_data, T, cfg, true);
    if (combined.slices.empty()) {
      combined.times = traj.times;
      combined.slices = traj.slices;
    } else {
      for (size_t s = 0; s < combined.slices.size(); ++s) {
        for (int i = 0; i < phi.torus.n; ++i) {
          const ExtReal& lo = combined.slices[s].values[i];
          const ExtReal& hi = traj.slices[s].values[i];
          // ladder comparison: lower level should not exceed the higher one
          if (hi.is_finite() && lo.is_finite() && lo.value() > hi.value() + tol)
            ++combined.ladder_monotonicity_violations;
          if (lo.is_inf() && hi.is_finite()) ++combined.ladder_monotonicity_violations;
          combined.slices[s].values[i] = max(lo, hi);
        }
      }
      if (!prev_slices.empty())
        combined.ladder_increment_at_T =
            sup_metric(prev_slices.back(), traj.slices.back(), cfg.ceiling);
    }
    prev_slices = traj.slices;
    combined.ladder_level_reached = k;
  }
  for (auto& s : combined.slices)
    for (auto& v : s.values)
      if (v.is_finite() && v.value() >= cfg.ceiling / 2) v = ExtReal::inf();
  return combined;
}

}  // namespace chj
