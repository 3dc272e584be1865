#pragma once

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <vector>

#include "chj/cauchy_fd.hpp"
#include "chj/lax_oleinik.hpp"

namespace chj {

enum class SolverChoice { dp, fd, both };

// Fundamental solution h(.,t,y,c) sampled at a list of times.
struct HTable {
  Torus torus;
  int y = 0;
  ExtReal c = ExtReal::inf();
  std::vector<double> times;
  std::vector<GridFn> slices;

  const GridFn& slice_at(double t) const {
    for (size_t i = 0; i < times.size(); ++i)
      if (std::fabs(times[i] - t) < 1e-9 * (1.0 + std::fabs(t))) return slices[i];
    throw std::invalid_argument("HTable: no slice at requested time");
  }
};

inline HTable h_slice(const Hamiltonian& h, const Torus& torus, int y, ExtReal c,
                      const std::vector<double>& times, SolverChoice choice = SolverChoice::dp,
                      const FdConfig& fd_cfg = {}, const DpConfig& dp_cfg = {}) {
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("h_slice: times must start at 0");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("h_slice: times must ascend");

  HTable table;
  table.torus = torus;
  table.y = torus.wrap_index(y);
  table.c = c;
  table.times = times;

  GridFn phi = point_data(torus, table.y, c);
  if (c.is_inf()) {
    table.slices.assign(times.size(), phi);  // h(x,t,y,inf) = inf
    return table;
  }
  double T = times.back();
  if (T == 0.0) {
    table.slices = {phi};
    return table;
  }
  if (choice == SolverChoice::dp) {
    DpConfig cfg = dp_cfg;
    cfg.output_times = times;
    cfg.keep_step_slices = false;
    DpResult res = solve_dp(h, phi, T, cfg);
    for (double t : times) table.slices.push_back(res.traj.slice_at(t));
  } else {
    FdConfig cfg = fd_cfg;
    cfg.output_times = times;
    Trajectory traj = solve_lsc(h, phi, T, cfg);
    for (double t : times) table.slices.push_back(traj.slice_at(t));
    table.slices[0] = phi;  // t = 0 is the data itself, not a ladder level
  }
  return table;
}

// Cache of fundamental-solution tables keyed by (y, c); superpose fills it on
// demand and flags the on-demand cost.
struct HCache {
  std::map<std::pair<int, double>, HTable> tables;
  bool computed_on_demand = false;
};

// Superposition u(x,t) = min_{y: phi(y) finite} h(x,t,y,phi(y)).
inline GridFn superpose(const Hamiltonian& h, const GridFn& phi, double t,
                        SolverChoice choice = SolverChoice::dp, const FdConfig& fd_cfg = {},
                        const DpConfig& dp_cfg = {}, HCache* cache = nullptr) {
  const Torus& T = phi.torus;
  GridFn out = GridFn::all_inf(T);
  HCache local;
  HCache& c = cache ? *cache : local;
  for (int y = 0; y < T.n; ++y) {
    if (phi.values[y].is_inf()) continue;
    double cy = phi.values[y].value();
    auto key = std::make_pair(y, cy);
    auto it = c.tables.find(key);
    if (it == c.tables.end()) {
      c.computed_on_demand = true;
      HTable tab = h_slice(h, T, y, ExtReal::finite(cy), {0.0, t}, choice, fd_cfg, dp_cfg);
      it = c.tables.emplace(key, std::move(tab)).first;
    }
    out = pointwise_min(out, it->second.slice_at(t));
  }
  return out;
}

// Lipschitz-in-c certificate: difference ratios of h(x,t,y,c) across c-pairs
// must stay within e^{Lambda t} and the signed slopes must be nonnegative.
struct CLipschitzReport {
  std::map<double, double> max_ratio_by_t;
  double min_slope = 0.0;
  bool support_mismatch = false;  // finiteness differed across c at some sample
  bool passed = false;
  double lambda = 0.0;
};

inline CLipschitzReport c_lipschitz_report(const Hamiltonian& h, const Torus& torus,
                                           const std::vector<double>& t_samples, int y,
                                           const std::vector<std::pair<double, double>>& c_pairs,
                                           double ratio_tol = 0.05, double slope_tol = 1e-6,
                                           SolverChoice choice = SolverChoice::dp,
                                           const FdConfig& fd_cfg = {},
                                           const DpConfig& dp_cfg = {}) {
  CLipschitzReport rep;
  rep.lambda = h.lambda;
  rep.min_slope = std::numeric_limits<double>::infinity();
  std::vector<double> times = {0.0};
  for (double t : t_samples) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::map<double, HTable> by_c;
  for (const auto& pr : c_pairs) {
    if (pr.first == pr.second)
      throw std::invalid_argument("c_lipschitz_report: c pair must be distinct");
    for (double cv : {pr.first, pr.second})
      if (!by_c.count(cv))
        by_c.emplace(cv, h_slice(h, torus, y, ExtReal::finite(cv), times, choice, fd_cfg, dp_cfg));
  }

  bool ok = true;
  for (double t : t_samples) {
    double worst = 0.0;
    for (const auto& pr : c_pairs) {
      double c1 = std::min(pr.first, pr.second), c2 = std::max(pr.first, pr.second);
      const GridFn& h1 = by_c.at(c1).slice_at(t);
      const GridFn& h2 = by_c.at(c2).slice_at(t);
      for (int i = 0; i < torus.n; ++i) {
        const ExtReal &a = h1.values[i], &b = h2.values[i];
        if (a.is_inf() && b.is_inf()) continue;
        if (a.is_inf() != b.is_inf()) {
          rep.support_mismatch = true;
          ok = false;
          continue;
        }
        double ratio = std::fabs(b.value() - a.value()) / (c2 - c1);
        double slope = (b.value() - a.value()) / (c2 - c1);
        worst = std::max(worst, ratio);
        rep.min_slope = std::min(rep.min_slope, slope);
      }
    }
    rep.max_ratio_by_t[t] = worst;
    if (worst > std::exp(h.lambda * t) * (1.0 + ratio_tol)) ok = false;
  }
  if (rep.min_slope < -slope_tol) ok = false;
  rep.passed = ok;
  return rep;
}

// Quantitative cone bounds for h(.,.,y,0): a lower barrier from
// C0 = max_x H(x,0,0) and an upper barrier inside a fitted cone d <= delta t,
// with (delta, C1) a sampled linear-growth certificate H(x,p,0) >= delta|p|-C1.
struct ConeBoundsReport {
  double c0 = 0.0;
  double delta = 0.0;
  double c1 = 0.0;
  bool fit_ok = false;
  bool lower_ok = false;
  bool upper_ok = false;
  double worst_lower = 0.0;  // most negative margin of the lower inequality
  double worst_upper = 0.0;  // most positive margin of the upper inequality
};

inline ConeBoundsReport cone_bounds_report(const Hamiltonian& h, const Torus& torus, int y,
                                           double T, SolverChoice choice = SolverChoice::dp,
                                           const FdConfig& fd_cfg = {},
                                           const DpConfig& dp_cfg = {}) {
  if (!(T > 0)) throw std::invalid_argument("cone_bounds_report: T must be positive");
  ConeBoundsReport rep;
  const int xs = 128;
  double h00 = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < xs; ++i) h00 = std::max(h00, h.eval(torus.period * i / xs, 0.0, 0.0));
  rep.c0 = std::max(0.0, h00);

  // coercivity onset, then half the minimal secant slope beyond it
  double r0 = 1.0;
  bool onset = false;
  for (int k = 0; k < 30; ++k) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < xs; ++i) {
      double x = torus.period * i / xs;
      worst = std::min({worst, h.eval(x, r0, 0.0), h.eval(x, -r0, 0.0)});
    }
    if (worst > rep.c0 + 1.0) {
      onset = true;
      break;
    }
    r0 *= 2.0;
  }
  if (onset) {
    auto min_h = [&](double p) {
      double worst = std::numeric_limits<double>::infinity();
      for (int i = 0; i < xs; ++i) {
        double x = torus.period * i / xs;
        worst = std::min({worst, h.eval(x, p, 0.0), h.eval(x, -p, 0.0)});
      }
      return worst;
    };
    double base = min_h(r0);
    double min_slope = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8; ++k) {
      double p = r0 * std::ldexp(1.0, k);
      min_slope = std::min(min_slope, (min_h(p) - base) / (p - r0));
    }
    if (min_slope > 0 && std::isfinite(min_slope)) {
      rep.delta = 0.5 * min_slope;
      rep.fit_ok = true;
      double c1 = 0.0;
      double p_hi = r0 * 256.0;
      for (int i = 0; i < xs; ++i) {
        double x = torus.period * i / xs;
        for (int j = 0; j <= 512; ++j) {
          double p = -p_hi + 2.0 * p_hi * j / 512;
          c1 = std::max(c1, rep.delta * std::fabs(p) - h.eval(x, p, 0.0));
        }
      }
      rep.c1 = c1;
    }
  }

  std::vector<double> times;
  for (int k = 1; k <= 4; ++k) times.push_back(T * k / 4);
  std::vector<double> with0 = {0.0};
  for (double t : times) with0.push_back(t);
  HTable tab = h_slice(h, torus, y, ExtReal::finite(0.0), with0, choice, fd_cfg, dp_cfg);

  double scale = std::max(1.0, tab.slices.back().max_abs_finite());
  double tol = tol_scheme(torus.dx, scale);
  rep.lower_ok = true;
  rep.upper_ok = rep.fit_ok;
  for (double t : times) {
    const GridFn& s = tab.slice_at(t);
    double lower_barrier = -rep.c0 * expm1_over(h.lambda, t);
    for (int i = 0; i < torus.n; ++i) {
      if (s.values[i].is_inf()) continue;
      double margin = s.values[i].value() - lower_barrier;
      rep.worst_lower = std::min(rep.worst_lower, margin);
      if (margin < -tol) rep.lower_ok = false;
    }
    if (rep.fit_ok) {
      double upper_barrier = rep.c1 * expm1_over(h.lambda, t);
      for (int i = 0; i < torus.n; ++i) {
        if (torus.dist_idx(i, tab.y) > rep.delta * t - 3 * torus.dx) continue;
        if (s.values[i].is_inf()) {
          rep.upper_ok = false;
          rep.worst_upper = std::max(rep.worst_upper, 2 * tol);
          continue;
        }
        double excess = s.values[i].value() - upper_barrier;
        rep.worst_upper = std::max(rep.worst_upper, excess);
        if (excess > tol) rep.upper_ok = false;
      }
    }
  }
  return rep;
}

}  // namespace chj
