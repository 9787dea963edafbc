#pragma once

// Maximum of the Green function. G(., t; nu) peaks at x*(t) = c_nu t^nu with
// value G*(t) = m_nu t^{-nu}, where c_nu is the maximiser of G(r; nu) at t = 1
// and m_nu = G(c_nu; nu) = M_nu(c_nu) / 2. Everything time-dependent follows
// from the pair (c_nu, m_nu).

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fracwave/error.hpp"
#include "fracwave/green_function.hpp"
#include "fracwave/types.hpp"
#include "fracwave/wright.hpp"

namespace fracwave {

inline constexpr double extremum_default_tol = 1e-8;

/// c_nu, m_nu and the accuracies they were computed to.
struct ExtremumCoeffs {
  Nu nu;
  double c;
  double m;
  double c_tol;
  double m_tol;
};

namespace detail {

inline constexpr double golden_ratio = 1.6180339887498948482;

struct Bracket {
  double lo;
  double hi;
};

// Interval around the maximiser of G(.; nu) with an interior sample above both
// ends, found by a coarse scan of [0, 2], once widened to [0, 4].
inline Bracket bracket_maximum(const GreenSolver& solver) {
  auto g = [&](double r) { return solver.similarity(r).value; };
  constexpr double step = 0.1;
  std::vector<double> values;
  int best = 0;
  for (int i = 0; i <= 40; ++i) {
    values.push_back(g(step * i));
    if (values.back() > values[best]) best = i;
    if (i == 20 && best < 20) break;
  }
  const int last = static_cast<int>(values.size()) - 1;
  if (best == last) {
    throw bracket_failure("maximum of G(.; nu=" + std::to_string(solver.nu().value()) +
                          ") not bracketed in [0, " + std::to_string(step * last) + "]");
  }
  if (best > 0) return {step * (best - 1), step * (best + 1)};

  // The peak sits below the first scan step; approach zero geometrically.
  const double g0 = values[0];
  double outer = step;
  for (double b = step / golden_ratio; b > 1e-12; b /= golden_ratio) {
    if (g(b) > g0) return {0.0, outer};
    outer = b;
  }
  throw bracket_failure("maximum of G(.; nu=" + std::to_string(solver.nu().value()) +
                        ") is indistinguishable from x = 0");
}

inline Bracket golden_section_max(const GreenSolver& solver, Bracket b, double width) {
  auto g = [&](double r) { return solver.similarity(r).value; };
  const double inv = 1.0 / golden_ratio;
  double x1 = b.hi - inv * (b.hi - b.lo);
  double x2 = b.lo + inv * (b.hi - b.lo);
  double g1 = g(x1), g2 = g(x2);
  while (b.hi - b.lo > width) {
    if (g1 < g2) {
      b.lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = b.lo + inv * (b.hi - b.lo);
      g2 = g(x2);
    } else {
      b.hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = b.hi - inv * (b.hi - b.lo);
      g1 = g(x1);
    }
  }
  return b;
}

struct Located {
  double c;
  double c_tol;
  double curvature;  // |G''| estimate at c
};

// Golden-section search on G, then bisection on dG/dr: the M'_nu series where
// it is cheap and well-conditioned, the sine transform otherwise.
inline Located locate_maximum(const GreenSolver& solver, double tol) {
  const Nu nu = solver.nu();
  const Bracket coarse = bracket_maximum(solver);
  Bracket b = golden_section_max(solver, coarse, std::max(1e-5, tol));

  const double mid = 0.5 * (b.lo + b.hi);
  const bool use_series = mainardi_prime_reliable(nu, coarse.hi, 1e-14);
  auto slope = [&](double r) -> EvalResult {
    if (use_series) {
      const EvalResult d = mainardi_m_prime(nu, r, 1e-14);
      return {0.5 * d.value, 0.5 * d.abs_err};
    }
    return solver.similarity_slope(r);
  };

  // Widen until the slope changes sign across the bracket.
  double d_lo = slope(b.lo).value, d_hi = slope(b.hi).value;
  double half = 0.5 * (b.hi - b.lo);
  while (!(d_lo > 0.0 && d_hi < 0.0)) {
    half *= 2.0;
    b = {std::max(coarse.lo, mid - half), std::min(coarse.hi, mid + half)};
    if (b.lo == coarse.lo && b.hi == coarse.hi && half > coarse.hi - coarse.lo) {
      // No sign change available: keep the golden-section answer.
      const Bracket g = golden_section_max(solver, coarse, std::max(1e-5, tol));
      return {0.5 * (g.lo + g.hi), 0.5 * (g.hi - g.lo), 0.0};
    }
    d_lo = slope(b.lo).value;
    d_hi = slope(b.hi).value;
  }
  const double curvature = (d_lo - d_hi) / (b.hi - b.lo);

  double slope_err = 0.0;
  while (b.hi - b.lo > tol) {
    const double x = 0.5 * (b.lo + b.hi);
    const EvalResult d = slope(x);
    slope_err = d.abs_err;
    if (d.value == 0.0) {
      b = {x, x};
      d_lo = d_hi = 0.0;
      break;
    }
    if (d.value > 0.0) {
      b.lo = x;
      d_lo = d.value;
    } else {
      b.hi = x;
      d_hi = d.value;
    }
  }
  // Secant step inside the final bracket; the bracket still bounds the error.
  const double c = d_lo == d_hi ? b.lo : b.lo + d_lo * (b.hi - b.lo) / (d_lo - d_hi);
  const double c_tol = 0.5 * (b.hi - b.lo) + slope_err / std::max(curvature, 1e-300);
  return {c, c_tol, curvature};
}

inline void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("time must be positive and finite");
}

}  // namespace detail

/// c_nu and m_nu. Interior nu: golden-section search on the cosine-transform
/// profile, polished on its slope. nu = 1/2 and nu = 1 are exact.
inline ExtremumCoeffs extremum_coeffs(Nu nu, double tol = extremum_default_tol,
                                      double eps = green_default_eps) {
  if (!(tol > 0.0) || !(eps > 0.0)) throw domain_error("tolerances must be positive");
  if (nu.is_diffusion()) return {nu, 0.0, 1.0 / (2.0 * std::sqrt(pi)), 0.0, 0.0};
  if (nu.is_wave()) return {nu, 1.0, std::numeric_limits<double>::infinity(), 0.0, 0.0};

  // The profile is very flat near the diffusion endpoint.
  if (nu.value() < 0.505) eps = std::min(eps, 1e-12);
  const GreenSolver solver(nu, eps, 4.0);
  const detail::Located at = detail::locate_maximum(solver, tol);
  const EvalResult m = solver.similarity(at.c);
  const double m_tol = m.abs_err + 0.5 * at.curvature * at.c_tol * at.c_tol;
  return {nu, at.c, m.value, at.c_tol, m_tol};
}

/// c_nu to within tol.
inline double max_location_coeff(Nu nu, double tol = extremum_default_tol) {
  return extremum_coeffs(nu, tol).c;
}

/// m_nu = G(c; nu) for the maximiser c = c_nu, through the cosine transform.
inline double max_value_coeff(Nu nu, double c, double tol = green_default_eps) {
  if (nu.is_wave()) throw domain_error("m_nu diverges at the wave endpoint nu = 1");
  if (!(c >= 0.0)) throw domain_error("maximum location must be >= 0");
  if (nu.is_diffusion()) return diffusion_green(c, 1.0);
  return GreenSolver(nu, tol, std::max(c, 1.0)).similarity(c).value;
}

/// x*(t) = c_nu t^nu.
inline double max_location(const ExtremumCoeffs& k, double t) {
  detail::require_positive_time(t);
  return k.c * std::pow(t, k.nu.value());
}

/// G*(t) = m_nu t^{-nu}; infinite at nu = 1.
inline double max_value(const ExtremumCoeffs& k, double t) {
  detail::require_positive_time(t);
  return k.m * std::pow(t, -k.nu.value());
}

/// v(t) = dx*/dt = nu c_nu t^{nu-1}.
inline double propagation_speed(const ExtremumCoeffs& k, double t) {
  detail::require_positive_time(t);
  return k.nu.value() * k.c * std::pow(t, k.nu.value() - 1.0);
}

/// x*(t) G*(t) = c_nu m_nu, independent of t.
inline double product_constant(const ExtremumCoeffs& k) {
  if (k.nu.is_wave()) throw domain_error("c_nu m_nu is infinite at the wave endpoint nu = 1");
  return k.c * k.m;
}

inline double max_location(Nu nu, double t) { return max_location(extremum_coeffs(nu), t); }
inline double max_value(Nu nu, double t) { return max_value(extremum_coeffs(nu), t); }
inline double propagation_speed(Nu nu, double t) { return propagation_speed(extremum_coeffs(nu), t); }
inline double product_constant(Nu nu) { return product_constant(extremum_coeffs(nu)); }

/// Time below which the maximum for order `a` outruns the one for order `b`
/// (nu_a < nu_b): solves nu_a c_a t^{nu_a - 1} = nu_b c_b t^{nu_b - 1}.
inline double speed_crossover_time(const ExtremumCoeffs& a, const ExtremumCoeffs& b) {
  const double na = a.nu.value(), nb = b.nu.value();
  if (!(na < nb)) throw domain_error("crossover needs nu_a < nu_b");
  if (!(a.c > 0.0 && b.c > 0.0)) throw domain_error("crossover needs positive c_nu on both sides");
  return std::pow(na * a.c / (nb * b.c), 1.0 / (nb - na));
}

struct TrackPoint {
  double t;
  double x_star;
  double g_star;
};

/// (x*(t), G*(t)) along t_grid: a branch of the hyperbola x G = c_nu m_nu.
inline std::vector<TrackPoint> hyperbola_track(const ExtremumCoeffs& k, std::span<const double> t_grid) {
  if (!k.nu.is_interior()) throw domain_error("hyperbola track needs 1/2 < nu < 1");
  std::vector<TrackPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back({t, max_location(k, t), max_value(k, t)});
  return out;
}

inline std::vector<TrackPoint> hyperbola_track(Nu nu, std::span<const double> t_grid) {
  return hyperbola_track(extremum_coeffs(nu), t_grid);
}

}  // namespace fracwave
