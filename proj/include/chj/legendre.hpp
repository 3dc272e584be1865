#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "chj/hamiltonian.hpp"

namespace chj {

struct LagrangianEval {
  ExtReal value = ExtReal::inf();
  std::optional<double> argmax_p;  // set only on the numerical path
};

namespace detail {

// Golden-section maximization of g on [lo, hi] (g unimodal there by convexity
// of p -> H).
template <class G>
inline double golden_max(G&& g, double lo, double hi) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = g(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace detail

inline constexpr double legendre_divergence_ceiling = 1e12;

// Legendre transform L(x,xi,u) = sup_p (p xi - H(x,p,u)).  Uses the catalog's
// closed form when present; otherwise a grid sup over [-p_window, p_window]
// with one golden-section refinement.  A positive objective slope at the
// window edge certifies divergence (convexity makes the edge slope a
// certificate), encoded as +inf.
inline LagrangianEval lagrangian(const Hamiltonian& h, double x, double xi, double u,
                                 double p_window = 32.0, int p_steps = 1025) {
  if (h.closed_lagrangian) return LagrangianEval{h.closed_lagrangian(x, xi, u), std::nullopt};
  if (!(p_window > 0) || p_steps < 3) throw std::invalid_argument("lagrangian: bad window");

  auto g = [&](double p) { return p * xi - h.eval(x, p, u); };
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  double dp = 2.0 * p_window / (p_steps - 1);
  for (int i = 0; i < p_steps; ++i) {
    double v = g(-p_window + i * dp);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i == 0 && g(-p_window) - g(-p_window + dp) > 0) return LagrangianEval{};
  if (best_i == p_steps - 1 && g(p_window) - g(p_window - dp) > 0) return LagrangianEval{};
  if (best > legendre_divergence_ceiling) return LagrangianEval{};

  double lo = -p_window + std::max(0, best_i - 1) * dp;
  double hi = -p_window + std::min(p_steps - 1, best_i + 1) * dp;
  double refined = detail::golden_max(g, lo, hi);
  double val = std::max(best, refined);
  // argmax from a short re-scan of the refined bracket
  double arg = lo;
  for (int i = 0; i <= 64; ++i) {
    double p = lo + (hi - lo) * i / 64.0;
    if (g(p) >= val - 1e-12 * (1.0 + std::fabs(val))) {
      arg = p;
      break;
    }
  }
  return LagrangianEval{ExtReal::finite(val), arg};
}

// The shifted Lagrangian e^{lt} L(x, xi, e^{-lt} u) + l u; nondecreasing in u
// whenever lambda_shift >= h.lambda, which is what the DP update relies on.
inline ExtReal lagrangian_tilde(const Hamiltonian& h, double x, double xi, double t, double u,
                                double lambda_shift, double p_window = 32.0,
                                int p_steps = 1025) {
  if (lambda_shift < h.lambda)
    throw std::invalid_argument("lagrangian_tilde: lambda_shift below the Lipschitz bound");
  double w = std::exp(lambda_shift * t);
  ExtReal L = lagrangian(h, x, xi, u / w, p_window, p_steps).value;
  if (L.is_inf()) return ExtReal::inf();
  return ExtReal::finite(w * L.value() + lambda_shift * u);
}

inline ExtReal lagrangian_tilde(const Hamiltonian& h, double x, double xi, double t, double u) {
  return lagrangian_tilde(h, x, xi, t, u, h.lambda + 1.0);
}

// Velocity window from superlinearity: minimizes (budget + C(A))/A over
// momentum levels A, where C(A) bounds H on |p| = A over the sampled (x,u)
// box.  Any single A gives a valid certificate; the scan just tightens it.
// Returns +inf only if no finite certificate exists at the sampling cap.
inline double velocity_bound(const Hamiltonian& h, double action_budget, double u_window) {
  if (!std::isfinite(action_budget))
    throw std::invalid_argument("velocity_bound: budget must be finite");
  const int x_steps = 64, u_steps = 9;
  auto c_of = [&](double a) {
    double c = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < x_steps; ++i) {
      double x = h.period * i / x_steps;
      for (int j = 0; j < u_steps; ++j) {
        double u = u_steps == 1 ? 0.0 : -u_window + 2.0 * u_window * j / (u_steps - 1);
        c = std::max({c, h.eval(x, a, u), h.eval(x, -a, u)});
      }
    }
    return c;
  };
  auto v_of = [&](double a) {
    double c = c_of(a);
    if (!std::isfinite(c)) return std::numeric_limits<double>::infinity();
    return (action_budget + c) / a;
  };

  double best_a = 0.0, best_v = std::numeric_limits<double>::infinity();
  for (int k = -4; k <= 24; ++k) {
    double a = std::ldexp(1.0, k);
    double v = v_of(a);
    if (v < best_v) {
      best_v = v;
      best_a = a;
    }
  }
  if (!std::isfinite(best_v)) return std::numeric_limits<double>::infinity();
  // refine in log A around the best bracket
  double lo = best_a / 2, hi = best_a * 2;
  double neg = detail::golden_max([&](double la) { return -v_of(std::exp(la)); }, std::log(lo),
                                  std::log(hi));
  return std::min(best_v, -neg);
}

}  // namespace chj
