#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chj/cauchy_fd.hpp"
#include "chj/grid_fn.hpp"
#include "chj/lax_oleinik.hpp"

namespace chj {

// Closed-form references.  Exact formula evaluations only; nothing here calls
// a solver, so these stay independent of the paths they check.

// c e^t on the cone d(x,y) <= t, +inf outside (the discounted point solution).
inline std::function<ExtReal(double, double)> cone_discount(double c, double y,
                                                            const Torus& torus) {
  return [c, y, torus](double x, double t) {
    return torus.dist(x, y) <= t ? ExtReal::finite(c * std::exp(t)) : ExtReal::inf();
  };
}

// c on the cone d(x,y) <= t, +inf outside (plain eikonal point solution).
inline std::function<ExtReal(double, double)> cone_plain(double c, double y, const Torus& torus) {
  return [c, y, torus](double x, double t) {
    return torus.dist(x, y) <= t ? ExtReal::finite(c) : ExtReal::inf();
  };
}

// min_{y in K} d(x,y)^2 / 2 on the grid; the stationary family of the
// quadratic discounted equation.
inline GridFn quad_family(const std::vector<int>& k_nodes, const Torus& torus) {
  if (k_nodes.empty()) throw std::invalid_argument("quad_family: K must be nonempty");
  return GridFn::sample(torus, [&](double x) {
    double best = std::numeric_limits<double>::infinity();
    for (int y : k_nodes) {
      double d = torus.dist(x, torus.x(y));
      best = std::min(best, 0.5 * d * d);
    }
    return best;
  });
}

// Stationary solutions of the even-well equation: the constant -1, or
// 1 + min_{y in K} d(x,y)^2 / 2.
inline GridFn even_well_family_const(const Torus& torus) { return GridFn::constant(torus, -1.0); }
inline GridFn even_well_family(const std::vector<int>& k_nodes, const Torus& torus) {
  return add_constant(quad_family(k_nodes, torus), 1.0);
}

// Brute-force reference: solve with both solvers across a ladder of
// resolutions, restrict to the coarsest grid, and certify by the decrease of
// the inter-level gaps.  The finest DP result is the oracle value.
struct FineOracleResult {
  GridFn oracle;          // finest DP result restricted to the coarsest grid
  GridFn coarsest_dp;     // DP result on the coarsest level
  std::vector<double> gaps;       // consecutive-level DP sup gaps (restricted)
  std::vector<double> fd_dp_gap;  // per-level FD-vs-DP sup gap (diagnostic)
  bool reliable = false;          // gaps shrink level over level
};

inline GridFn restrict_to(const GridFn& fine, const Torus& coarse) {
  if (fine.torus.n % coarse.n != 0)
    throw std::invalid_argument("restrict_to: coarse grid must divide the fine one");
  int stride = fine.torus.n / coarse.n;
  GridFn out = GridFn::all_inf(coarse);
  for (int i = 0; i < coarse.n; ++i) out.values[i] = fine.values[i * stride];
  return out;
}

inline FineOracleResult fine_oracle(const Hamiltonian& h,
                                    const std::function<GridFn(const Torus&)>& phi_gen, double T,
                                    const std::vector<int>& levels, double period = two_pi,
                                    const FdConfig& fd_cfg = {}, DpConfig dp_cfg = {}) {
  if (levels.size() < 2) throw std::invalid_argument("fine_oracle: need at least 2 levels");
  for (size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("fine_oracle: levels must ascend");
    if (levels[i] % levels.front() != 0)
      throw std::invalid_argument("fine_oracle: coarsest level must divide the others");
  }

  FineOracleResult res;
  Torus coarse;
  std::vector<GridFn> dp_restricted;
  dp_cfg.keep_step_slices = false;
  for (size_t l = 0; l < levels.size(); ++l) {
    GridFn phi = phi_gen(Torus(levels[l], period));
    if (l == 0) coarse = phi.torus;
    DpConfig dcfg = dp_cfg;
    dcfg.output_times = {T};
    DpResult dp = solve_dp(h, phi, T, dcfg);
    GridFn dp_T = dp.traj.slice_at(T);

    FdConfig fcfg = fd_cfg;
    fcfg.output_times = {T};
    Trajectory fd =
        phi.has_inf() ? solve_lsc(h, phi, T, fcfg) : solve(h, phi, T, fcfg, true);
    res.fd_dp_gap.push_back(sup_metric(fd.slice_at(T), dp_T, fcfg.ceiling));

    dp_restricted.push_back(restrict_to(dp_T, coarse));
  }
  res.coarsest_dp = dp_restricted.front();
  res.oracle = dp_restricted.back();
  res.reliable = true;
  for (size_t l = 1; l < dp_restricted.size(); ++l)
    res.gaps.push_back(sup_metric(dp_restricted[l - 1], dp_restricted[l], fd_cfg.ceiling));
  for (size_t g = 1; g < res.gaps.size(); ++g)
    if (!(res.gaps[g] < res.gaps[g - 1])) res.reliable = false;
  return res;
}

}  // namespace chj
