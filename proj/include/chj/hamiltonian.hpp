#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chj/ext_real.hpp"
#include "chj/torus.hpp"

namespace chj {

// A Hamiltonian H(x,p,u) on the 1-torus bundled with the constants the
// solvers need: the Lipschitz-in-u bound lambda (0 admitted for u-independent
// H), a bound for |dH/dp| over a (p,u) box, and an optional closed-form
// Lagrangian.  Immutable value; eval is pure and thread-safe.
struct Hamiltonian {
  std::string name;
  double lambda = 0.0;
  double period = two_pi;
  std::function<double(double x, double p, double u)> eval;
  std::function<double(double p_max, double u_max)> p_bound;
  // L(x, xi, u) = sup_p (p xi - H(x,p,u)); +inf outside the effective domain.
  std::function<ExtReal(double x, double xi, double u)> closed_lagrangian;
};

struct CatalogParams {
  double period = two_pi;
  std::function<double(double)> drift;  // quad_drift only; default V(x) = sin x
};

// Bridge function for the even_well entry: C^1, even, positive on (-1,1),
// equal to u+1 on (-inf,-1/2], with |f'| <= 1 so lambda = 1.
inline double even_well_f(double u) {
  double a = std::fabs(u);
  return a <= 0.5 ? 0.75 - u * u : 1.0 - a;
}

inline Hamiltonian catalog_get(const std::string& name, const CatalogParams& params = {}) {
  if (!(params.period > 0.0))
    throw std::invalid_argument("catalog_get: period must be positive");
  Hamiltonian h;
  h.name = name;
  h.period = params.period;

  if (name == "eikonal_plain") {
    h.lambda = 0.0;
    h.eval = [](double, double p, double) { return std::fabs(p); };
    h.p_bound = [](double, double) { return 1.0; };
    h.closed_lagrangian = [](double, double xi, double) {
      return std::fabs(xi) <= 1.0 ? ExtReal::finite(0.0) : ExtReal::inf();
    };
  } else if (name == "eikonal_discount") {
    h.lambda = 1.0;
    h.eval = [](double, double p, double u) { return std::fabs(p) - u; };
    h.p_bound = [](double, double) { return 1.0; };
    h.closed_lagrangian = [](double, double xi, double u) {
      return std::fabs(xi) <= 1.0 ? ExtReal::finite(u) : ExtReal::inf();
    };
  } else if (name == "quad_discount") {
    h.lambda = 1.0;
    h.eval = [](double, double p, double u) { return -u + 0.5 * p * p; };
    h.p_bound = [](double p_max, double) { return p_max; };
    h.closed_lagrangian = [](double, double xi, double u) {
      return ExtReal::finite(0.5 * xi * xi + u);
    };
  } else if (name == "quad_pendulum") {
    h.lambda = 1.0;
    h.eval = [](double x, double p, double u) { return -u + 0.5 * p * p + std::cos(x) - 1.0; };
    h.p_bound = [](double p_max, double) { return p_max; };
    h.closed_lagrangian = [](double x, double xi, double u) {
      return ExtReal::finite(0.5 * xi * xi + u - std::cos(x) + 1.0);
    };
  } else if (name == "quad_drift") {
    h.lambda = 1.0;
    std::function<double(double)> V = params.drift;
    if (!V) V = [](double x) { return std::sin(x); };
    double v_max = 0.0;
    for (int i = 0; i < 4096; ++i)
      v_max = std::max(v_max, std::fabs(V(params.period * i / 4096.0)));
    h.eval = [V](double x, double p, double u) { return -u + 0.5 * p * p + p * V(x); };
    h.p_bound = [v_max](double p_max, double) { return p_max + v_max; };
    h.closed_lagrangian = [V](double x, double xi, double u) {
      double d = xi - V(x);
      return ExtReal::finite(0.5 * d * d + u);
    };
  } else if (name == "even_well") {
    h.lambda = 1.0;
    h.eval = [](double, double p, double u) { return even_well_f(u) + 0.5 * p * p; };
    h.p_bound = [](double p_max, double) { return p_max; };
    h.closed_lagrangian = [](double, double xi, double u) {
      return ExtReal::finite(0.5 * xi * xi - even_well_f(u));
    };
  } else {
    throw std::invalid_argument("catalog_get: unknown Hamiltonian '" + name + "'");
  }
  return h;
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "eikonal_plain", "eikonal_discount", "quad_discount",
      "quad_pendulum", "quad_drift",       "even_well"};
  return names;
}

// Adjoint Hamiltonian H^-(x,p,u) = H(x,-p,-u).  An involution; lambda and the
// momentum bound carry over, and the closed Lagrangian transforms as
// L^-(x,xi,u) = L(x,-xi,-u).
inline Hamiltonian ominus(const Hamiltonian& h) {
  Hamiltonian out;
  out.name = h.name + "_ominus";
  out.lambda = h.lambda;
  out.period = h.period;
  auto eval = h.eval;
  out.eval = [eval](double x, double p, double u) { return eval(x, -p, -u); };
  out.p_bound = h.p_bound;
  if (h.closed_lagrangian) {
    auto L = h.closed_lagrangian;
    out.closed_lagrangian = [L](double x, double xi, double u) { return L(x, -xi, -u); };
  }
  return out;
}

// Regularized Hamiltonian H + gamma p^2.  The closed Lagrangian is dropped
// for gamma > 0; the numerical Legendre transform covers that path.
inline Hamiltonian viscous(const Hamiltonian& h, double gamma) {
  if (gamma < 0) throw std::invalid_argument("viscous: gamma must be nonnegative");
  if (gamma == 0.0) return h;
  Hamiltonian out;
  out.name = h.name + "_viscous";
  out.lambda = h.lambda;
  out.period = h.period;
  auto eval = h.eval;
  out.eval = [eval, gamma](double x, double p, double u) { return eval(x, p, u) + gamma * p * p; };
  auto pb = h.p_bound;
  out.p_bound = [pb, gamma](double p_max, double u_max) {
    return pb(p_max, u_max) + 2.0 * gamma * p_max;
  };
  return out;
}

// Sampled audit of the structural assumptions: continuity is taken for
// granted, coercivity (H2) gets a doubling search for a witness K per sampled
// R, convexity (H3) is checked by the midpoint inequality, and the u-Lipschitz
// bound (H4) is estimated from difference quotients.  A falsifier, not a
// verifier: passing means no violation was found at the sampled scale.
struct AssumptionReport {
  double estimated_lambda = 0.0;
  long convexity_violations = 0;
  std::map<double, double> coercivity_witness;  // R -> K
  bool passed = false;
  double declared_lambda = 0.0;
  std::optional<double> failed_r;  // R whose witness search hit the cap
};

inline AssumptionReport audit(const Hamiltonian& h, int x_samples, double p_window,
                              double u_window, int r_samples) {
  if (!(p_window > 0) || !(u_window > 0))
    throw std::invalid_argument("audit: windows must be positive");
  if (x_samples < 3 || r_samples < 3)
    throw std::invalid_argument("audit: sample counts must be >= 3");

  AssumptionReport rep;
  rep.declared_lambda = h.lambda;

  const int pu_steps = 33;
  std::vector<double> xs(x_samples), ps(pu_steps), us(pu_steps);
  for (int i = 0; i < x_samples; ++i) xs[i] = h.period * i / x_samples;
  for (int i = 0; i < pu_steps; ++i) {
    ps[i] = -p_window + 2.0 * p_window * i / (pu_steps - 1);
    us[i] = -u_window + 2.0 * u_window * i / (pu_steps - 1);
  }

  for (double x : xs)
    for (double p : ps) {
      for (int i = 0; i + 1 < pu_steps; ++i) {
        double du = us[i + 1] - us[i];
        double dH = std::fabs(h.eval(x, p, us[i + 1]) - h.eval(x, p, us[i]));
        rep.estimated_lambda = std::max(rep.estimated_lambda, dH / du);
      }
    }

  for (double x : xs)
    for (double u : us)
      for (int i = 0; i + 2 < pu_steps; ++i) {
        double mid = h.eval(x, 0.5 * (ps[i] + ps[i + 2]), u);
        double avg = 0.5 * (h.eval(x, ps[i], u) + h.eval(x, ps[i + 2], u));
        double scale = std::max({1.0, std::fabs(mid), std::fabs(avg)});
        if (mid > avg + 1e-9 * scale) ++rep.convexity_violations;
      }

  bool coercive_ok = true;
  for (int j = 0; j < r_samples; ++j) {
    double r = std::ldexp(1.0, j);  // R = 1, 2, 4, ...
    double k = 1.0;
    bool found = false;
    const double k_cap = std::ldexp(1.0, 40);
    while (k <= k_cap) {
      double worst = std::numeric_limits<double>::infinity();
      for (double x : xs)
        for (int i = 0; i < pu_steps; ++i) {
          double u = -r + 2.0 * r * i / (pu_steps - 1);
          worst = std::min({worst, h.eval(x, k, u), h.eval(x, -k, u)});
        }
      if (worst > r) {
        rep.coercivity_witness[r] = k;
        found = true;
        break;
      }
      k *= 2.0;
    }
    if (!found) {
      coercive_ok = false;
      if (!rep.failed_r) rep.failed_r = r;
    }
  }

  rep.passed = coercive_ok && rep.convexity_violations == 0 &&
               rep.estimated_lambda <= h.lambda * (1.0 + 1e-9) + 1e-12;
  return rep;
}

}  // namespace chj
