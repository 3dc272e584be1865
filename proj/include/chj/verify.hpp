#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chj/cauchy_fd.hpp"
#include "chj/fundamental.hpp"
#include "chj/grid_fn.hpp"
#include "chj/hamiltonian.hpp"
#include "chj/io.hpp"
#include "chj/lax_oleinik.hpp"
#include "chj/legendre.hpp"
#include "chj/longtime.hpp"
#include "chj/oracles.hpp"

namespace chj {

struct CheckResult {
  std::string id;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct CriterionReport {
  std::string name;
  std::string title;
  std::vector<CheckResult> checks;
  bool pass = true;
  double seconds = 0.0;

  void add(const std::string& id, double measured, double bound, bool ok,
           const std::string& note = "") {
    checks.push_back(CheckResult{id, measured, bound, ok, note});
    pass = pass && ok;
  }
  // "measured <= bound" convenience
  void add_le(const std::string& id, double measured, double bound, const std::string& note = "") {
    add(id, measured, bound, measured <= bound, note);
  }
};

// Classify seed family: a flat zero plus cosine bumps pinned at van der Corput
// centers with alternating amplitudes.  Each seed is nonnegative and vanishes
// at exactly one point, so orbits stay bounded below by S_t(0).
inline std::vector<GridFn> spread_seeds(const Torus& torus, int k) {
  auto vdc = [](int j) {
    double r = 0.0, b = 0.5;
    while (j > 0) {
      if (j & 1) r += b;
      j >>= 1;
      b *= 0.5;
    }
    return r;
  };
  std::vector<GridFn> seeds;
  seeds.push_back(GridFn::constant(torus, 0.0));
  for (int j = 1; j < k; ++j) {
    double y = vdc(j) * torus.period;
    double a = (j % 2 == 1) ? 1.0 : 3.0;
    seeds.push_back(
        GridFn::sample(torus, [&](double x) { return a * (1.0 - std::cos(x - y)); }));
  }
  return seeds;
}

namespace detail {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace detail

// --- criterion 1: cone solution for the discounted eikonal equation ---------
inline CriterionReport verify_cone_solution(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"cone_solution",
                      "discounted eikonal point data reproduces the exponential cone (DP)"};
  Torus torus(1024, two_pi);
  Hamiltonian h = catalog_get("eikonal_discount");
  GridFn phi = point_data(torus, 0, 1.0);
  DpConfig cfg;
  cfg.output_times = {0.25, 0.5, 1.0};
  cfg.keep_step_slices = false;
  detail::Timer solve_timer;
  DpResult dp = solve_dp(h, phi, 1.0, cfg);
  double solve_seconds = solve_timer.seconds();
  for (double t : cfg.output_times) {
    const GridFn& u = dp.traj.slice_at(t);
    double worst_rel = 0.0;
    int outside_finite = 0;
    for (int i = 0; i < torus.n; ++i) {
      double d = torus.dist_idx(i, 0);
      if (d <= t - 3 * torus.dx) {
        if (u.values[i].is_inf()) {
          worst_rel = 1.0;
          continue;
        }
        worst_rel =
            std::max(worst_rel, std::fabs(u.values[i].value() - std::exp(t)) / std::exp(t));
      } else if (d >= t + 3 * torus.dx) {
        if (u.values[i].is_finite()) ++outside_finite;
      }
    }
    rep.add_le("rel_error(t=" + fmt_double(t) + ")", worst_rel, 0.02);
    rep.add_le("finite_nodes_outside_cone(t=" + fmt_double(t) + ")", outside_finite, 0.0);
  }
  rep.add_le("runtime_seconds", solve_seconds, 60.0);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 2: plain eikonal fundamental solution -------------------------
inline CriterionReport verify_plain_cone(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"plain_cone", "plain eikonal fundamental solution is an exact flat cone"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("eikonal_plain");
  for (double c : {-2.0, 0.0, 3.0})
    for (double t : {0.5, 1.0}) {
      HTable tab = h_slice(h, torus, 0, ExtReal::finite(c), {0.0, t});
      const GridFn& s = tab.slice_at(t);
      double worst = 0.0;
      int outside_finite = 0, inside_inf = 0;
      for (int i = 0; i < torus.n; ++i) {
        double d = torus.dist_idx(i, 0);
        if (d <= t - torus.dx) {
          if (s.values[i].is_inf())
            ++inside_inf;
          else
            worst = std::max(worst, std::fabs(s.values[i].value() - c));
        } else if (d >= t + torus.dx) {
          if (s.values[i].is_finite()) ++outside_finite;
        }
      }
      std::string key = "(c=" + fmt_double(c) + ",t=" + fmt_double(t) + ")";
      rep.add_le("plateau_error" + key, worst, 1e-9);
      rep.add_le("inside_inf_nodes" + key, inside_inf, 0.0);
      rep.add_le("outside_finite_nodes" + key, outside_finite, 0.0);
    }
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 3: stationary member of the quadratic family (FD) ------------
inline CriterionReport verify_stationary_quad(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"stationary_quad", "d^2/2 is stationary for the quadratic discount (FD)"};
  Torus torus(256, two_pi);
  Hamiltonian h = catalog_get("quad_discount");
  GridFn phi = quad_family({0}, torus);
  FdConfig cfg;
  cfg.output_times = {2.0};
  Trajectory traj = solve(h, phi, 2.0, cfg);
  double err = traj.aborted ? cfg.ceiling : sup_metric(traj.slice_at(2.0), phi, cfg.ceiling);
  rep.add_le("sup_metric(S_2 phi, phi)", err, 0.01,
             traj.aborted ? "solver aborted: " + traj.abort_reason : "");
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 4: uniqueness for the pendulum equation ----------------------
inline CriterionReport verify_pendulum_unique(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"pendulum_unique", "pendulum stationary limits agree across seeds"};
  Torus torus(256, two_pi);
  Hamiltonian h = catalog_get("quad_pendulum");
  LongtimeConfig cfg;
  StationaryResult a = stationary_limit(h, GridFn::constant(torus, 0.0), cfg);
  StationaryResult b = stationary_limit(h, GridFn::constant(torus, -3.0), cfg);
  rep.add("seed_0_converged", a.converged ? 1 : 0, 1, a.converged, a.note);
  rep.add("seed_-3_converged", b.converged ? 1 : 0, 1, b.converged, b.note);
  if (a.converged && b.converged)
    rep.add_le("limits_sup_distance", sup_metric(a.limit, b.limit, cfg.fd.ceiling), 0.02);
  else
    rep.add("limits_sup_distance", cfg.fd.ceiling, 0.02, false,
            "a seed failed to converge; agreement not evaluable");
  FineOracleResult oracle = fine_oracle(
      h, [](const Torus& t) { return GridFn::constant(t, 0.0); }, 12.0, {256, 512, 1024});
  rep.add("richardson_gaps_decreasing", oracle.reliable ? 1 : 0, 1, oracle.reliable,
          oracle.gaps.size() == 2 ? "gaps " + fmt_double(oracle.gaps[0]) + " -> " +
                                        fmt_double(oracle.gaps[1])
                                  : "");
  if (a.converged)
    rep.add_le("limit_vs_oracle_horizon", sup_metric(a.limit, oracle.coarsest_dp, cfg.fd.ceiling),
               0.1, "informational horizon T=12 comparison");
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 5: two stationary solutions for the drifted equation ---------
inline CriterionReport verify_drift_two_solutions(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"drift_two_solutions", "drifted quadratic equation has two solutions"};
  Torus torus(256, two_pi);
  Hamiltonian h = catalog_get("quad_drift");
  LongtimeConfig cfg;
  ClassReport cls = classify(h, spread_seeds(torus, 8), 0.05, cfg);
  rep.add("n_stationary_clusters", cls.n_stationary_clusters, 2,
          cls.n_stationary_clusters == 2);
  double best_to_zero = cfg.fd.ceiling;
  GridFn zero = GridFn::constant(torus, 0.0);
  for (const GridFn& w : cls.stationary_reps)
    best_to_zero = std::min(best_to_zero, sup_metric(w, zero, cfg.fd.ceiling));
  rep.add_le("closest_cluster_to_zero", best_to_zero, 0.02);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 6: the non-monotone even-well example -------------------------
inline CriterionReport verify_even_well_classes(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"even_well_classes",
                      "even well: many solutions, exactly two long-time images"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("even_well");
  std::vector<GridFn> seeds = {GridFn::constant(torus, -1.0), GridFn::constant(torus, 0.0),
                               even_well_family({0}, torus),
                               even_well_family({torus.n / 2}, torus),
                               even_well_family({0, torus.n / 2}, torus)};
  LongtimeConfig cfg;
  ClassReport cls = classify(h, seeds, 0.05, cfg);
  rep.add("n_stationary_clusters", cls.n_stationary_clusters, 3,
          cls.n_stationary_clusters >= 3, ">= 3 required");
  int distinct_roundtrips = 0;
  if (!cls.roundtrip_images.empty()) {
    auto label = detail::cluster_by_sup(cls.roundtrip_images, 0.05, cfg.fd.ceiling);
    distinct_roundtrips = *std::max_element(label.begin(), label.end()) + 1;
  }
  rep.add("distinct_roundtrip_images", distinct_roundtrips, 2, distinct_roundtrips == 2);

  double const_err = cfg.fd.ceiling, quad_err = cfg.fd.ceiling;
  GridFn minus_one = even_well_family_const(torus);
  GridFn quad_oracle = even_well_family({0}, torus);
  for (const GridFn& w : cls.stationary_reps) {
    const_err = std::min(const_err, sup_metric(w, minus_one, cfg.fd.ceiling));
    quad_err = std::min(quad_err, sup_metric(w, quad_oracle, cfg.fd.ceiling));
  }
  rep.add_le("constant_cluster_vs_-1", const_err, 0.02);
  rep.add_le("quad_cluster_vs_oracle", quad_err, 0.05);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 7: Lipschitz dependence on the point value c ------------------
inline CriterionReport verify_c_lipschitz(uint64_t seed = 12345) {
  detail::Timer timer;
  CriterionReport rep{"c_lipschitz", "fundamental solutions are e^{Lambda t}-Lipschitz in c"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("eikonal_discount");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  std::vector<std::pair<double, double>> pairs;
  while (pairs.size() < 8) {
    double a = uc(rng), b = uc(rng);
    if (std::fabs(a - b) > 0.1) pairs.emplace_back(a, b);
  }
  std::vector<double> times = {0.5, 1.0};
  CLipschitzReport cl = c_lipschitz_report(h, torus, times, 0, pairs, 0.05, 1e-6);
  for (double t : times)
    rep.add_le("max_ratio(t=" + fmt_double(t) + ")", cl.max_ratio_by_t.at(t),
               std::exp(h.lambda * t) * 1.05);
  rep.add("min_signed_slope", cl.min_slope, -1e-6, cl.min_slope >= -1e-6);
  rep.add("support_mismatch", cl.support_mismatch ? 1 : 0, 0, !cl.support_mismatch);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 8: comparison shifts -------------------------------------------
inline CriterionReport verify_comparison(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"comparison", "constant shifts propagate within e^{+-Lambda t}"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("quad_pendulum");
  GridFn phi = GridFn::sample(torus, [](double x) { return std::sin(x); });
  FdConfig cfg;
  cfg.output_times = {0.25, 0.5, 0.75, 1.0};
  Trajectory base = solve(h, phi, 1.0, cfg);
  Trajectory shifted = solve(h, add_constant(phi, 1.0), 1.0, cfg);
  double scale = std::max({1.0, base.slices.back().max_abs_finite(),
                           shifted.slices.back().max_abs_finite()});
  double tol = tol_scheme(torus.dx, scale);
  double worst_low = 0.0, worst_high = 0.0;
  for (double t : cfg.output_times) {
    const GridFn& a = base.slice_at(t);
    const GridFn& b = shifted.slice_at(t);
    for (int i = 0; i < torus.n; ++i) {
      double diff = b.values[i].value() - a.values[i].value();
      worst_low = std::max(worst_low, (std::exp(-h.lambda * t) - tol) - diff);
      worst_high = std::max(worst_high, diff - (std::exp(h.lambda * t) + tol));
    }
  }
  rep.add_le("lower_bound_violation", worst_low, 0.0, "tol_scheme = " + fmt_double(tol));
  rep.add_le("upper_bound_violation", worst_high, 0.0);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 9: monotone approach and the contact gap ----------------------
inline CriterionReport verify_monotone_limit(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"monotone_limit", "adjoint iterates rise monotonically; contact gap is 0"};
  Torus torus(256, two_pi);
  Hamiltonian h = catalog_get("quad_discount");
  GridFn u0 = quad_family({0}, torus);
  double scale = std::max(1.0, u0.max_abs_finite());
  double tol = tol_scheme(torus.dx, scale);

  LongtimeConfig cfg;
  cfg.block_t = 0.5;
  cfg.t_max = 10.0;
  StationaryResult ti = t_infinity(h, u0, TInfinityDirection::ominus, cfg);
  rep.add_le("worst_iterate_drop", ti.worst_drop, 10.0 * tol);

  std::vector<double> ts = {0.5, 1.0, 2.0};
  std::vector<double> gaps = contact_gap(h, u0, ts, cfg);
  for (size_t i = 0; i < ts.size(); ++i)
    rep.add_le("contact_gap(t=" + fmt_double(ts[i]) + ")", std::fabs(gaps[i]), tol);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 10: duality on computed images ---------------------------------
inline CriterionReport verify_duality(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"duality", "T_inf o T_inf^- is the identity on images"};
  {  // pendulum: image constructed from the unique stationary limit
    Torus torus(512, two_pi);
    Hamiltonian h = catalog_get("quad_pendulum");
    LongtimeConfig cfg;
    StationaryResult w = stationary_limit(h, GridFn::constant(torus, 0.0), cfg);
    if (!w.converged) {
      rep.add("pendulum_gap", cfg.fd.ceiling, 0.05, false, "stationary limit did not converge");
    } else {
      StationaryResult v = t_infinity(h, w.limit, TInfinityDirection::ominus, cfg);
      StationaryResult u = t_infinity(h, v.limit, TInfinityDirection::forward, cfg);
      DualityResult d = duality_gap(h, u.limit, cfg);
      rep.add_le("pendulum_gap", d.converged ? d.gap : cfg.fd.ceiling, 0.05);
    }
  }
  {  // drift: image from the flat stationary solution
    Torus torus(256, two_pi);
    Hamiltonian h = catalog_get("quad_drift");
    LongtimeConfig cfg;
    StationaryResult v = t_infinity(h, GridFn::constant(torus, 0.0), TInfinityDirection::ominus, cfg);
    StationaryResult u = t_infinity(h, v.limit, TInfinityDirection::forward, cfg);
    DualityResult d = duality_gap(h, u.limit, cfg);
    rep.add_le("drift_gap", d.converged ? d.gap : cfg.fd.ceiling, 0.05);
  }
  {  // even well: images from the constant and quadratic families
    Torus torus(256, two_pi);
    Hamiltonian h = catalog_get("even_well");
    LongtimeConfig cfg;
    for (auto& [label, w] :
         std::vector<std::pair<std::string, GridFn>>{{"const", even_well_family_const(torus)},
                                                     {"quad", even_well_family({0}, torus)}}) {
      StationaryResult v = t_infinity(h, w, TInfinityDirection::ominus, cfg);
      StationaryResult u = t_infinity(h, v.limit, TInfinityDirection::forward, cfg);
      DualityResult d = duality_gap(h, u.limit, cfg);
      rep.add_le("even_well_" + label + "_gap", d.converged ? d.gap : cfg.fd.ceiling, 0.05);
    }
  }
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 11: cross-solver consistency -----------------------------------
inline CriterionReport verify_cross_solver(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"cross_solver", "FD and DP agree on a smooth pendulum run"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("quad_pendulum");
  GridFn phi = GridFn::sample(torus, [](double x) { return std::sin(x); });
  FdConfig fd_cfg;
  fd_cfg.output_times = {0.5};
  Trajectory fd = solve(h, phi, 0.5, fd_cfg);
  DpConfig dp_cfg;
  dp_cfg.output_times = {0.5};
  dp_cfg.keep_step_slices = false;
  DpResult dp = solve_dp(h, phi, 0.5, dp_cfg);
  rep.add_le("sup_metric(FD, DP)", sup_metric(fd.slice_at(0.5), dp.traj.slice_at(0.5)), 0.05);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 12: min-commutation of the semigroup ---------------------------
inline CriterionReport verify_min_commutation(uint64_t = 0) {
  detail::Timer timer;
  CriterionReport rep{"min_commutation", "S_t min(phi,psi) = min(S_t phi, S_t psi)"};
  Torus torus(512, two_pi);
  Hamiltonian h = catalog_get("eikonal_discount");
  GridFn phi = point_data(torus, 0, 1.0);
  GridFn psi = point_data(torus, torus.n / 3, -0.5);
  DpConfig cfg;
  cfg.output_times = {0.5, 1.0};
  cfg.keep_step_slices = false;
  DpResult a = solve_dp(h, phi, 1.0, cfg);
  DpResult b = solve_dp(h, psi, 1.0, cfg);
  DpResult m = solve_dp(h, pointwise_min(phi, psi), 1.0, cfg);
  double scale = 3.0;
  double tol = tol_scheme(torus.dx, scale);
  for (double t : cfg.output_times) {
    GridFn envelope = pointwise_min(a.traj.slice_at(t), b.traj.slice_at(t));
    rep.add_le("defect(t=" + fmt_double(t) + ")",
               sup_metric(m.traj.slice_at(t), envelope), tol);
  }
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 13: calibration of backtracked curves ---------------------------
inline CriterionReport verify_calibration(uint64_t seed = 12345) {
  detail::Timer timer;
  CriterionReport rep{"calibration", "backtracked curves achieve the value (action equality)"};
  Torus torus(128, two_pi);
  Hamiltonian h = catalog_get("quad_discount");
  GridFn phi = quad_family({0}, torus);
  DpConfig cfg;
  cfg.output_times = {0.5};
  DpResult dp = solve_dp(h, phi, 0.5, cfg);
  double scale = std::max(1.0, dp.u_steps.back().max_abs_finite());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ui(0, torus.n - 1);
  double worst = 0.0;
  int tried = 0;
  while (tried < 20) {
    int node = ui(rng);
    const ExtReal& u = dp.u_steps.back().values[node];
    if (u.is_inf()) continue;
    ++tried;
    Curve c = backtrack(dp, node, 0.5);
    ExtReal a = action(h, c, dp, phi);
    worst = std::max(worst, std::fabs(a.value() - u.value()));
  }
  rep.add_le("max_action_defect", worst, 5.0 * dp.tau * scale);
  rep.seconds = timer.seconds();
  return rep;
}

// --- criterion 14: property suites across the catalog --------------------------
inline CriterionReport verify_properties(uint64_t seed = 12345) {
  detail::Timer timer;
  CriterionReport rep{"properties", "Fenchel-Young, ladder, audits, determinism"};
  std::mt19937_64 rng(seed);

  // Fenchel-Young across the catalog
  double fy_worst = 0.0;
  for (const auto& name : catalog_names()) {
    Hamiltonian h = catalog_get(name);
    for (int ix = 0; ix < 8; ++ix) {
      double x = h.period * ix / 8;
      for (double u : {-2.0, 0.0, 1.5})
        for (int ip = -5; ip <= 5; ++ip)
          for (int ixi = -5; ixi <= 5; ++ixi) {
            double p = ip, xi = ixi;
            ExtReal L = lagrangian(h, x, xi, u).value;
            if (L.is_inf()) continue;
            fy_worst = std::max(fy_worst, p * xi - L.value() - h.eval(x, p, u));
          }
    }
  }
  rep.add_le("fenchel_young_violation", fy_worst, 1e-9);

  // ladder monotonicity on point data and a random profile
  Torus torus(128, two_pi);
  std::uniform_real_distribution<double> ur(-1.0, 3.0);
  GridFn rough = GridFn::sample(torus, [&](double) { return ur(rng); });
  double ladder_bad = 0.0;
  for (const GridFn& phi : {point_data(torus, 7, 0.5), rough}) {
    GridFn prev = lipschitz_ladder(phi, 0.5);
    for (double k : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      GridFn cur = lipschitz_ladder(phi, k);
      for (int i = 0; i < torus.n; ++i) {
        if (cur.values[i].value() < prev.values[i].value() - 1e-12)
          ladder_bad = std::max(ladder_bad, prev.values[i].value() - cur.values[i].value());
        if (phi.values[i].is_finite() && cur.values[i].value() > phi.values[i].value() + 1e-12)
          ladder_bad = std::max(ladder_bad, cur.values[i].value() - phi.values[i].value());
      }
      prev = cur;
    }
  }
  rep.add_le("ladder_monotonicity_violation", ladder_bad, 0.0);

  // audits across the catalog
  bool audits_ok = true;
  double worst_lambda_excess = 0.0;
  for (const auto& name : catalog_names()) {
    Hamiltonian h = catalog_get(name);
    AssumptionReport a = audit(h, 33, 8.0, 4.0, 4);
    audits_ok = audits_ok && a.passed;
    worst_lambda_excess = std::max(worst_lambda_excess, a.estimated_lambda - h.lambda);
  }
  rep.add("audits_passed", audits_ok ? 1 : 0, 1, audits_ok);
  rep.add_le("estimated_lambda_excess", worst_lambda_excess, 1e-9);

  // determinism: identical runs emit byte-identical CSV
  auto run_once = [&]() {
    Torus t(128, two_pi);
    Hamiltonian h = catalog_get("eikonal_discount");
    DpConfig cfg;
    cfg.output_times = {0.25, 0.5};
    cfg.keep_step_slices = false;
    DpResult dp = solve_dp(h, point_data(t, 5, 1.0), 0.5, cfg);
    FdConfig fcfg;
    fcfg.output_times = {0.5};
    Trajectory fd = solve(catalog_get("quad_pendulum"),
                          GridFn::sample(t, [](double x) { return std::sin(x); }), 0.5, fcfg);
    return csv_trajectory(dp.traj) + csv_trajectory(fd);
  };
  bool deterministic = run_once() == run_once();
  rep.add("csv_byte_identical", deterministic ? 1 : 0, 1, deterministic);

  rep.seconds = timer.seconds();
  return rep;
}

using CriterionRunner = std::function<CriterionReport(uint64_t)>;

inline const std::vector<std::pair<std::string, CriterionRunner>>& criterion_registry() {
  static const std::vector<std::pair<std::string, CriterionRunner>> reg = {
      {"cone_solution", verify_cone_solution},
      {"plain_cone", verify_plain_cone},
      {"stationary_quad", verify_stationary_quad},
      {"pendulum_unique", verify_pendulum_unique},
      {"drift_two_solutions", verify_drift_two_solutions},
      {"even_well_classes", verify_even_well_classes},
      {"c_lipschitz", verify_c_lipschitz},
      {"comparison", verify_comparison},
      {"monotone_limit", verify_monotone_limit},
      {"duality", verify_duality},
      {"cross_solver", verify_cross_solver},
      {"min_commutation", verify_min_commutation},
      {"calibration", verify_calibration},
      {"properties", verify_properties},
  };
  return reg;
}

// Run every criterion; appends the whole-suite wall-time budget check to the
// properties report.
inline std::vector<CriterionReport> verify_all(uint64_t seed = 12345) {
  detail::Timer timer;
  std::vector<CriterionReport> reports;
  for (const auto& [name, fn] : criterion_registry()) reports.push_back(fn(seed));
  double total = timer.seconds();
  for (auto& r : reports)
    if (r.name == "properties") r.add_le("total_suite_wall_seconds", total, 900.0);
  return reports;
}

inline nlohmann::json json_reports(const std::vector<CriterionReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json jr;
    jr["name"] = r.name;
    jr["title"] = r.title;
    jr["pass"] = r.pass;
    jr["seconds"] = r.seconds;
    jr["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json jc;
      jc["id"] = c.id;
      jc["measured"] = c.measured;
      jc["bound"] = c.bound;
      jc["pass"] = c.pass;
      if (!c.note.empty()) jc["note"] = c.note;
      jr["checks"].push_back(jc);
    }
    j.push_back(jr);
  }
  return j;
}

}  // namespace chj
