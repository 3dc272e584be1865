#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "chj/cauchy_fd.hpp"
#include "chj/fundamental.hpp"
#include "chj/grid_fn.hpp"

namespace chj {

struct LongtimeConfig {
  double block_t = 1.0;
  double stop_tol = 1e-4;  // sup-change rate per unit time
  double t_max = 50.0;
  int stencil_radius = 1;
  FdConfig fd;

  void validate() const {
    if (!(block_t > 0)) throw std::invalid_argument("LongtimeConfig: block_t must be positive");
    if (t_max < 2 * block_t)
      throw std::invalid_argument("LongtimeConfig: t_max must be >= 2*block_t");
  }
};

struct StationaryResult {
  GridFn limit;
  bool converged = false;
  bool diverged = false;
  std::string note;
  std::vector<std::pair<double, double>> residual_history;  // (t, rate)
  double t_final = 0.0;
  bool stationarity_warn = false;  // t_infinity: input failed the residual pre-check
  double worst_drop = 0.0;         // t_infinity: largest pointwise decrease seen
};

namespace detail {

inline Trajectory evolve_block(const Hamiltonian& h, const GridFn& state, double block_t,
                               const FdConfig& fd) {
  FdConfig cfg = fd;
  cfg.output_times = {block_t};
  if (state.has_inf()) return solve_lsc(h, state, block_t, cfg);
  return solve(h, state, block_t, cfg);
}

}  // namespace detail

// Long-time limit via repeated application of the semigroup: evolve in blocks,
// estimate the limit by the lower relaxed limit over the trailing blocks, and
// stop when the sup-change rate drops below stop_tol.  Divergence (the blow-up
// guard firing, or the minimum falling through -ceiling/2) is reported, not
// thrown: an empty solution set at the sampled scale looks exactly like this.
inline StationaryResult stationary_limit(const Hamiltonian& h, const GridFn& phi,
                                         const LongtimeConfig& cfg) {
  cfg.validate();
  StationaryResult res;
  res.limit = phi;
  GridFn state = phi;
  std::deque<GridFn> tail;
  tail.push_back(state);

  for (double t = 0.0; t < cfg.t_max - 1e-12;) {
    Trajectory traj = detail::evolve_block(h, state, cfg.block_t, cfg.fd);
    if (traj.aborted) {
      res.diverged = true;
      res.note = traj.abort_reason;
      res.t_final = t;
      return res;
    }
    GridFn next = traj.slices.back();
    if (next.min_finite() < -cfg.fd.ceiling / 2) {
      res.diverged = true;
      res.note = "solution fell below -ceiling/2 (divergence to -inf)";
      res.t_final = t;
      return res;
    }
    t += cfg.block_t;
    double rate = sup_metric(next, state, cfg.fd.ceiling) / cfg.block_t;
    res.residual_history.emplace_back(t, rate);
    state = next;
    tail.push_back(state);
    while (tail.size() > 3) tail.pop_front();
    res.t_final = t;
    if (rate < cfg.stop_tol) {
      res.converged = true;
      break;
    }
  }
  res.limit = tail.size() >= 2
                  ? relaxed_lower_limit(std::vector<GridFn>(tail.begin(), tail.end()),
                                        cfg.stencil_radius)
                  : state;
  return res;
}

enum class TInfinityDirection { forward, ominus };

// The long-time operators: forward evolves S_t (Hamiltonian h) on -v and
// realizes T_inf; ominus evolves the adjoint semigroup on -v and realizes
// T_inf^-.  Iterates must be nondecreasing in t (up to scheme tolerance);
// a violation beyond 10x the tolerance contradicts the monotone-approach
// lemma at desk scale and is an integrity error.
inline StationaryResult t_infinity(const Hamiltonian& h, const GridFn& v,
                                   TInfinityDirection direction, const LongtimeConfig& cfg) {
  cfg.validate();
  if (v.has_inf()) throw std::invalid_argument("t_infinity: input must be finite");
  Hamiltonian g = direction == TInfinityDirection::forward ? h : ominus(h);
  Hamiltonian expected = direction == TInfinityDirection::forward ? ominus(h) : h;

  StationaryResult res;
  // weak stationarity pre-check of v under its expected equation
  {
    double probe_t = std::min(0.05, cfg.block_t);
    Trajectory probe = detail::evolve_block(expected, v, probe_t, cfg.fd);
    if (!probe.aborted) {
      double r = sup_metric(probe.slices.back(), v, cfg.fd.ceiling) / probe_t;
      double scale = std::max(1.0, v.max_abs_finite());
      res.stationarity_warn = r > std::max(0.5, 10.0 * tol_scheme(v.torus.dx, scale));
    } else {
      res.stationarity_warn = true;
    }
  }

  GridFn state = negate(v);
  res.limit = state;
  double scale = std::max(1.0, state.max_abs_finite());
  double mono_tol = 10.0 * tol_scheme(v.torus.dx, scale);

  for (double t = 0.0; t < cfg.t_max - 1e-12;) {
    Trajectory traj = detail::evolve_block(g, state, cfg.block_t, cfg.fd);
    if (traj.aborted) {
      res.diverged = true;
      res.note = traj.abort_reason;
      res.t_final = t;
      return res;
    }
    GridFn next = traj.slices.back();
    double drop = 0.0;
    for (int i = 0; i < state.n(); ++i)
      if (next.values[i].is_finite() && state.values[i].is_finite())
        drop = std::max(drop, state.values[i].value() - next.values[i].value());
    res.worst_drop = std::max(res.worst_drop, drop);
    if (drop > mono_tol)
      throw std::runtime_error("t_infinity: iterates decreased by " + std::to_string(drop) +
                               ", beyond 10x scheme tolerance");
    t += cfg.block_t;
    double rate = sup_metric(next, state, cfg.fd.ceiling) / cfg.block_t;
    res.residual_history.emplace_back(t, rate);
    state = next;
    res.t_final = t;
    if (rate < cfg.stop_tol) {
      res.converged = true;
      break;
    }
  }
  res.limit = state;
  return res;
}

// Contact-gap identity: for u0 stationary, min_x(S_t^-(-u0)(x) - (-u0)(x))
// vanishes for every t.  Returns the gap per requested time.
inline std::vector<double> contact_gap(const Hamiltonian& h, const GridFn& u0,
                                       const std::vector<double>& t_list,
                                       const LongtimeConfig& cfg) {
  if (u0.has_inf()) throw std::invalid_argument("contact_gap: u0 must be finite");
  GridFn v0 = negate(u0);
  double t_max = *std::max_element(t_list.begin(), t_list.end());
  FdConfig fd = cfg.fd;
  fd.output_times = t_list;
  Trajectory traj = solve(ominus(h), v0, t_max, fd);
  if (traj.aborted) throw std::runtime_error("contact_gap: evolution aborted: " + traj.abort_reason);
  std::vector<double> gaps;
  for (double t : t_list) {
    const GridFn& s = traj.slice_at(t);
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < u0.n(); ++i) g = std::min(g, s.values[i].value() - v0.values[i].value());
    gaps.push_back(g);
  }
  return gaps;
}

struct DualityResult {
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  StationaryResult inner, outer;
};

// Thm-6.5(2) roundtrip defect sup|T_inf(T_inf^- u) - u| for u in the image of
// T_inf; inner non-convergence propagates as a non-converged result.
inline DualityResult duality_gap(const Hamiltonian& h, const GridFn& u,
                                 const LongtimeConfig& cfg) {
  DualityResult res;
  res.inner = t_infinity(h, u, TInfinityDirection::ominus, cfg);
  if (!res.inner.converged) return res;
  res.outer = t_infinity(h, res.inner.limit, TInfinityDirection::forward, cfg);
  if (!res.outer.converged) return res;
  res.converged = true;
  res.gap = sup_metric(res.outer.limit, u, cfg.fd.ceiling);
  return res;
}

struct ClassReport {
  std::vector<GridFn> stationary_reps;          // cluster centers of computed S(H)
  std::vector<std::vector<int>> cluster_seeds;  // seed indices per cluster
  std::vector<GridFn> images_ominus;            // T_inf^- of each cluster rep
  std::vector<int> class_of_cluster;            // cluster -> image-class index
  std::vector<GridFn> image_reps;               // distinct images (the v labelling D_v)
  std::vector<GridFn> roundtrip_images;         // T_inf(v) per image class
  int n_stationary_clusters = 0;
  int n_images = 0;
  bool order_ok = false;  // w >= T_inf(v) - tol for every member w of D_v
  std::vector<int> excluded_seeds;
  std::vector<std::string> exclusion_notes;
};

namespace detail {

// single-linkage clustering under sup_metric < merge_tol
inline std::vector<int> cluster_by_sup(const std::vector<GridFn>& items, double merge_tol,
                                       double ceiling) {
  int n = (int)items.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sup_metric(items[i], items[j], ceiling) < merge_tol) parent[find(i)] = find(j);
  std::vector<int> label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (label[r] < 0) label[r] = next++;
    label[i] = label[r];
  }
  return label;
}

}  // namespace detail

// Classification of the stationary set: evolve each seed to its long-time
// limit, cluster the limits, compute the T_inf^- image per cluster, cluster
// the images into classes D_v, and verify the order property w >= T_inf(v).
inline ClassReport classify(const Hamiltonian& h, const std::vector<GridFn>& seeds,
                            double merge_tol, const LongtimeConfig& cfg) {
  if (seeds.size() < 2) throw std::invalid_argument("classify: need at least 2 seeds");
  ClassReport rep;

  std::vector<GridFn> limits;
  std::vector<int> seed_of_limit;
  for (int s = 0; s < (int)seeds.size(); ++s) {
    StationaryResult r = stationary_limit(h, seeds[s], cfg);
    if (!r.converged) {
      rep.excluded_seeds.push_back(s);
      rep.exclusion_notes.push_back(r.diverged ? "diverged: " + r.note
                                               : "no convergence by t_max");
      continue;
    }
    limits.push_back(r.limit);
    seed_of_limit.push_back(s);
  }
  if (limits.empty()) return rep;

  std::vector<int> label = detail::cluster_by_sup(limits, merge_tol, cfg.fd.ceiling);
  int n_clusters = *std::max_element(label.begin(), label.end()) + 1;
  rep.n_stationary_clusters = n_clusters;
  rep.cluster_seeds.assign(n_clusters, {});
  rep.stationary_reps.reserve(n_clusters);
  for (int c = 0; c < n_clusters; ++c) {
    int first = -1;
    for (int i = 0; i < (int)limits.size(); ++i)
      if (label[i] == c) {
        rep.cluster_seeds[c].push_back(seed_of_limit[i]);
        if (first < 0) first = i;
      }
    rep.stationary_reps.push_back(limits[first]);
  }

  for (const GridFn& w : rep.stationary_reps)
    rep.images_ominus.push_back(t_infinity(h, w, TInfinityDirection::ominus, cfg).limit);

  std::vector<int> image_label =
      detail::cluster_by_sup(rep.images_ominus, merge_tol, cfg.fd.ceiling);
  rep.n_images = *std::max_element(image_label.begin(), image_label.end()) + 1;
  rep.class_of_cluster = image_label;
  rep.image_reps.reserve(rep.n_images);
  for (int c = 0; c < rep.n_images; ++c)
    for (int i = 0; i < (int)rep.images_ominus.size(); ++i)
      if (image_label[i] == c) {
        rep.image_reps.push_back(rep.images_ominus[i]);
        break;
      }

  rep.order_ok = true;
  for (int c = 0; c < rep.n_images; ++c) {
    GridFn u = t_infinity(h, rep.image_reps[c], TInfinityDirection::forward, cfg).limit;
    rep.roundtrip_images.push_back(u);
    for (int k = 0; k < rep.n_stationary_clusters; ++k) {
      if (rep.class_of_cluster[k] != c) continue;
      for (int i = 0; i < u.n(); ++i) {
        const ExtReal& w = rep.stationary_reps[k].values[i];
        if (w.is_finite() && u.values[i].is_finite() &&
            w.value() < u.values[i].value() - merge_tol)
          rep.order_ok = false;
      }
    }
  }
  return rep;
}

struct SandwichReport {
  bool converged = false;
  double final_gap = std::numeric_limits<double>::infinity();
  double clip_amount = 0.0;
  double pr3_max_gap = 0.0;  // defect of min_i S_t(-v_i) = S_t(min_i(-v_i))
  double t_reached = 0.0;
};

// Sandwich convergence: clip phi into [min_i(-v_i), u], evolve, and require
// uniform convergence to u; along the way the min-commutation identity for the
// lower envelope is verified.  Non-convergence by t_max is a failed report.
inline SandwichReport sandwich_check(const Hamiltonian& h, const GridFn& u,
                                     const std::vector<GridFn>& v_list, const GridFn& phi,
                                     const LongtimeConfig& cfg, double conv_tol) {
  if (v_list.empty()) throw std::invalid_argument("sandwich_check: need at least one v");
  SandwichReport rep;
  GridFn floor = negate(v_list.front());
  for (size_t i = 1; i < v_list.size(); ++i) floor = pointwise_min(floor, negate(v_list[i]));
  GridFn clipped = clip_between(phi, floor, u);
  rep.clip_amount = sup_metric(clipped, phi, cfg.fd.ceiling);

  // pr-(3): compare the evolved lower envelope with the envelope of evolved
  // pieces over a few blocks
  {
    double t_check = 2.0 * cfg.block_t;
    FdConfig fd = cfg.fd;
    fd.output_times = {t_check};
    Trajectory env = solve(h, floor, t_check, fd);
    GridFn min_of_evolved;
    bool first = true;
    for (const GridFn& v : v_list) {
      Trajectory tv = solve(h, negate(v), t_check, fd);
      min_of_evolved =
          first ? tv.slice_at(t_check) : pointwise_min(min_of_evolved, tv.slice_at(t_check));
      first = false;
    }
    if (!env.aborted)
      rep.pr3_max_gap = sup_metric(env.slice_at(t_check), min_of_evolved, cfg.fd.ceiling);
  }

  GridFn state = clipped;
  for (double t = 0.0; t < cfg.t_max - 1e-12;) {
    Trajectory traj = detail::evolve_block(h, state, cfg.block_t, cfg.fd);
    if (traj.aborted) return rep;
    state = traj.slices.back();
    t += cfg.block_t;
    rep.t_reached = t;
    rep.final_gap = sup_metric(state, u, cfg.fd.ceiling);
    if (rep.final_gap < conv_tol) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

}  // namespace chj
