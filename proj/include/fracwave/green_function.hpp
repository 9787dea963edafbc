#pragma once

// Green function G(x, t; nu) of the Cauchy problem for the time-fractional
// diffusion-wave equation, 1/2 <= nu <= 1, evaluated through the cosine
// transform
//
//   G(x, t; nu) = (1/pi) int_0^inf E_{2nu}(-kappa^2 t^{2nu}) cos(x kappa) dkappa
//
// and the similarity law G(x, t; nu) = t^{-nu} G(x t^{-nu}, 1; nu).
//
// GreenSolver integrates the t = 1 transform in two pieces:
//   [0, A]    fixed Gauss-Legendre panels (16 points, checked against 8), with
//             E_{2nu} tabulated once per solver so that each r costs only the
//             cosine sums;
//   [A, inf)  the algebraic part sum_k a_k kappa^{-2k} of the Mittag-Leffler
//             asymptotics, integrated after rotating the contour to
//             kappa = A + i u, where the oscillation becomes decay exp(-r u).
// A is chosen so that the exponentially damped part of E_{2nu} beyond A is
// below the error budget.
//
// plan_truncation / integrate_truncated keep the plain route: integrate up to
// the A given by the crude bound |E_{2nu}(-y)| <= 2 / (y |Gamma(1-2nu)|) and
// drop the rest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fracwave/detail/gauss_legendre.hpp"
#include "fracwave/error.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

inline constexpr double green_default_eps = 1e-10;
inline constexpr double profile_default_eps = 1e-8;

/// G(x, t; 1/2): the heat kernel.
inline double diffusion_green(double x, double t) {
  return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(pi * t));
}

struct GreenQuery {
  Nu nu;
  double x;
  double t;

  GreenQuery(Nu nu_, double x_, double t_) : nu(nu_), x(x_), t(t_) {
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("time must be positive and finite");
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw domain_error("x must be finite and >= 0 (G is even in x)");
    }
  }
};

struct Panel {
  double lo;
  double hi;
};

/// Finite integration interval for the plain truncated transform.
struct TruncationPlan {
  Nu nu;
  double t;
  double eps;
  double A;
  double x_max;               // largest x the panel widths resolve
  std::vector<Panel> panels;  // partition of [0, A]
  double tail_estimate;       // bound on the dropped [A, inf) contribution
};

namespace detail {

inline void require_interior(Nu nu, const char* what) {
  if (nu.is_diffusion()) {
    throw domain_error(std::string(what) +
                       ": nu = 1/2 is the diffusion endpoint (Gamma(1-2nu) pole); use the Gaussian");
  }
  if (nu.is_wave()) throw domain_error("wave endpoint is analytic (delta)");
}

inline std::vector<Panel> uniform_panels(double A, double width) {
  std::vector<Panel> panels;
  const auto count = static_cast<std::size_t>(std::ceil(A / width));
  panels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    panels.push_back({static_cast<double>(i) * width, std::min(A, static_cast<double>(i + 1) * width)});
  }
  return panels;
}

}  // namespace detail

/// A with A > 2 t^{-2nu} / (eps pi |Gamma(1-2nu)|) and A >= 10 t^{-nu}; panels of
/// at most one half-period of cos(x kappa) for x <= x_max (width 1 when x_max = 0).
inline TruncationPlan plan_truncation(Nu nu, double t, double eps, double x_max = 0.0) {
  detail::require_interior(nu, "plan_truncation");
  if (!(t > 0.0)) throw domain_error("time must be positive");
  if (!(eps > 0.0)) throw domain_error("eps must be positive");
  if (!(x_max >= 0.0)) throw domain_error("x_max must be >= 0");

  const double v = nu.value();
  const double scale = 2.0 * std::pow(t, -2.0 * v) / (pi * std::abs(std::tgamma(1.0 - 2.0 * v)));
  const double bound = std::nextafter(scale / eps, std::numeric_limits<double>::infinity());
  const double A = std::max(bound, 10.0 * std::pow(t, -v));
  const double width = x_max > 0.0 ? std::min(1.0, pi / x_max) : 1.0;
  return {nu, t, eps, A, x_max, detail::uniform_panels(A, width), scale / A};
}

/// (1/pi) int_0^A E_{2nu}(-kappa^2 t^{2nu}) cos(x kappa) dkappa over the plan's
/// panels; abs_err adds the plan's tail estimate to the quadrature error.
inline EvalResult integrate_truncated(const TruncationPlan& plan, double x) {
  if (!(x >= 0.0) || x > plan.x_max * (1.0 + 1e-12) + (plan.x_max == 0.0 ? 1.0 : 0.0)) {
    throw domain_error("x outside the range resolved by the truncation plan");
  }
  const MittagLeffler ml(plan.nu.alpha());
  const double t2nu = std::pow(plan.t, 2.0 * plan.nu.value());
  const auto& g16 = detail::gauss_legendre<16>();
  const auto& g8 = detail::gauss_legendre<8>();
  const double ml_tol = std::max(plan.eps * pi / (4.0 * plan.A), 1e-15);

  double sum = 0.0, disc = 0.0, ml_err = 0.0;
  auto f = [&](double kappa, double& err) {
    const EvalResult e = ml(kappa * kappa * t2nu, ml_tol);
    err = e.abs_err;
    return e.value * std::cos(x * kappa);
  };
  for (const Panel& p : plan.panels) {
    const double mid = 0.5 * (p.lo + p.hi), half = 0.5 * (p.hi - p.lo);
    double q16 = 0.0, q8 = 0.0, err = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      q16 += g16.weights[i] * f(mid + half * g16.nodes[i], err);
      ml_err += half * g16.weights[i] * err;
    }
    for (std::size_t i = 0; i < 8; ++i) q8 += g8.weights[i] * f(mid + half * g8.nodes[i], err);
    sum += half * q16;
    disc += half * std::abs(q16 - q8);
  }
  return {sum / pi, plan.tail_estimate + (disc + ml_err) / pi};
}

/// Cosine-transform evaluator of the t = 1 profile G(r; nu) = M_nu(r) / 2 for a
/// fixed interior nu, valid for 0 <= r <= r_max. Immutable after construction.
class GreenSolver {
 public:
  GreenSolver(Nu nu, double eps = green_default_eps, double r_max = 4.0)
      : nu_(nu), eps_(eps), r_max_(r_max), ml_(nu.alpha()) {
    detail::require_interior(nu, "GreenSolver");
    if (!(eps > 0.0)) throw domain_error("eps must be positive");
    if (!(r_max >= 0.0) || !std::isfinite(r_max)) throw domain_error("r_max must be finite and >= 0");
    budget_ = pi * eps / 8.0;  // per error source, in units of the raw integral
    choose_cutoff();
    choose_tail_terms();
    for (double width_scale = 1.0;; width_scale *= 0.5) {
      tabulate(width_scale);
      // The slope kernel carries an extra factor kappa <= A.
      const double cosine = panel_sums(r_max_, Kernel::cosine).discrepancy;
      const double slope = panel_sums(r_max_, Kernel::slope).discrepancy;
      if (cosine <= budget_ && slope <= budget_ * std::max(1.0, cutoff_)) break;
      if (width_scale < 0.1) {
        throw non_convergence("panel quadrature cannot meet the error budget for nu=" +
                              std::to_string(nu.value()));
      }
    }
  }

  [[nodiscard]] Nu nu() const noexcept { return nu_; }
  [[nodiscard]] double eps() const noexcept { return eps_; }
  [[nodiscard]] double r_max() const noexcept { return r_max_; }
  [[nodiscard]] double cutoff() const noexcept { return cutoff_; }
  [[nodiscard]] int tail_terms() const noexcept { return static_cast<int>(tail_.size()); }
  [[nodiscard]] std::size_t panel_count() const noexcept { return panel_lo_.size(); }

  /// G(r; nu) at t = 1.
  [[nodiscard]] EvalResult similarity(double r) const { return evaluate(r, Kernel::cosine); }

  /// dG(r; nu)/dr at t = 1 (right derivative at r = 0). The error bound is
  /// reported, not enforced against eps.
  [[nodiscard]] EvalResult similarity_slope(double r) const { return evaluate(r, Kernel::slope); }

 private:
  enum class Kernel { cosine, slope };

  // Bound on (2/alpha) int_A^inf kappa exp(cos(pi/alpha) kappa^{1/nu}) dkappa.
  [[nodiscard]] double damped_part_bound(double A) const {
    const double v = nu_.value();
    const double c = -std::cos(pi / nu_.alpha());
    const double U = std::pow(A, 1.0 / v);
    const double s = 2.0 * v - 1.0;
    if (c * U <= 2.0 * s + 1.0) return std::numeric_limits<double>::infinity();
    return (2.0 / nu_.alpha()) * v * std::pow(U, s) * std::exp(-c * U) / (c - s / U);
  }

  void choose_cutoff() {
    double A = std::max(10.0, 1.05 * std::sqrt(ml_.switch_point()));
    while (damped_part_bound(A) > budget_) A *= 1.05;
    cutoff_ = A;
    damped_bound_ = damped_part_bound(A);
  }

  void choose_tail_terms() {
    const double A = cutoff_;
    const double x = A * A;
    const int kmax = ml_.algebraic_terms_available() - 1;
    for (int k = 1; k <= kmax; ++k) {
      tail_.push_back(ml_.algebraic_coeff(k));
      // First omitted term, integrated over [A, inf) with the extra kappa of the slope kernel.
      const double omitted = ml_.algebraic_envelope(k + 1, x) * A * A / (2.0 * k);
      if (omitted <= budget_) {
        tail_trunc_ = omitted;
        return;
      }
      if (ml_.algebraic_envelope(k + 1, x) >= ml_.algebraic_envelope(k, x)) break;
    }
    throw non_convergence("asymptotic tail of E_" + std::to_string(nu_.alpha()) +
                          " cannot meet the error budget at A=" + std::to_string(A));
  }

  [[nodiscard]] double local_frequency(double kappa) const {
    const double v = nu_.value();
    return std::pow(kappa, 1.0 / v - 1.0) * std::sin(pi / nu_.alpha()) / v;
  }

  void tabulate(double width_scale) {
    const auto& g16 = detail::gauss_legendre<16>();
    const auto& g8 = detail::gauss_legendre<8>();
    const double A = cutoff_;
    const double ml_tol = std::max(budget_ / A, 1e-15);
    panel_lo_.clear();
    panel_hi_.clear();
    node16_.clear();
    weight16_.clear();
    node8_.clear();
    weight8_.clear();
    ml_err_ = 0.0;

    double lo = 0.0;
    while (lo < A) {
      const double probe = std::min(A, lo + 1.0);
      const double width = width_scale * std::min(1.0, pi / (r_max_ + local_frequency(probe)));
      const double hi = std::min(A, lo + width);
      panel_lo_.push_back(lo);
      panel_hi_.push_back(hi);
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < 16; ++i) {
        const double k = mid + half * g16.nodes[i];
        const EvalResult e = ml_(k * k, ml_tol);
        node16_.push_back(k);
        weight16_.push_back(half * g16.weights[i] * e.value);
        ml_err_ += half * g16.weights[i] * e.abs_err;
      }
      for (std::size_t i = 0; i < 8; ++i) {
        const double k = mid + half * g8.nodes[i];
        node8_.push_back(k);
        weight8_.push_back(half * g8.weights[i] * ml_(k * k, ml_tol).value);
      }
      lo = hi;
    }
  }

  // int_A^inf g(kappa) e^{i r kappa} dkappa with g the algebraic tail (times
  // kappa for the slope kernel), along kappa = A + i u.
  [[nodiscard]] EvalResult tail_integral(double r, Kernel kernel) const {
    const double A = cutoff_;
    const int shift = kernel == Kernel::slope ? 1 : 0;
    if (r == 0.0) {
      if (kernel == Kernel::slope) return {0.0, 0.0};
      double sum = 0.0;
      for (std::size_t k = 1; k <= tail_.size(); ++k) {
        sum += tail_[k - 1] * std::pow(A, 1.0 - 2.0 * k) / (2.0 * k - 1.0);
      }
      return {sum, std::numeric_limits<double>::epsilon() * std::abs(sum)};
    }

    auto amplitude = [&](double u) {
      const std::complex<double> z(A, u);
      const std::complex<double> inv2 = 1.0 / (z * z);
      std::complex<double> power = shift ? z * inv2 : inv2;  // z^{shift - 2}
      std::complex<double> sum = 0.0;
      for (double a : tail_) {
        sum += a * power;
        power *= inv2;
      }
      return sum * std::exp(-r * u);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double err_re = 0.0, err_im = 0.0;
    const double tol = 1e-12;
    const double re = integrator.integrate([&](double u) { return amplitude(u).real(); }, tol, &err_re);
    const double im = integrator.integrate([&](double u) { return amplitude(u).imag(); }, tol, &err_im);
    const std::complex<double> value = std::complex<double>(0.0, 1.0) *
                                       std::polar(1.0, r * A) * std::complex<double>(re, im);
    const double err = err_re + err_im + 1e-15 * std::abs(value);
    return {kernel == Kernel::cosine ? value.real() : value.imag(), err};
  }

  struct PanelSums {
    double sum = 0.0;
    double discrepancy = 0.0;  // sum over panels of |Q16 - Q8|
    double magnitude = 0.0;
  };

  [[nodiscard]] PanelSums panel_sums(double r, Kernel kernel) const {
    auto factor = [&](double k) {
      return kernel == Kernel::cosine ? std::cos(r * k) : -k * std::sin(r * k);
    };
    PanelSums out;
    for (std::size_t p = 0; p < panel_lo_.size(); ++p) {
      double q16 = 0.0, q8 = 0.0;
      for (std::size_t i = 16 * p; i < 16 * (p + 1); ++i) {
        const double term = weight16_[i] * factor(node16_[i]);
        q16 += term;
        out.magnitude += std::abs(term);
      }
      for (std::size_t i = 8 * p; i < 8 * (p + 1); ++i) q8 += weight8_[i] * factor(node8_[i]);
      out.sum += q16;
      out.discrepancy += std::abs(q16 - q8);
    }
    return out;
  }

  [[nodiscard]] EvalResult evaluate(double r, Kernel kernel) const {
    if (!(r >= 0.0) || r > r_max_ * (1.0 + 1e-12)) {
      throw domain_error("similarity variable " + std::to_string(r) + " outside [0, " +
                         std::to_string(r_max_) + "]");
    }
    if (kernel == Kernel::slope && r == 0.0) {
      // Right derivative: M'_nu(0) / 2 = -1 / (2 Gamma(1 - 2nu)).
      return {-0.5 * tail_.front(), std::numeric_limits<double>::epsilon()};
    }
    const PanelSums panels = panel_sums(r, kernel);
    const EvalResult tail = tail_integral(r, kernel);
    const bool slope = kernel == Kernel::slope;
    // The slope kernel carries an extra factor kappa <= A on [0, A].
    const double ml_part = slope ? ml_err_ * cutoff_ : ml_err_;
    const double raw_err = panels.discrepancy + ml_part + tail.abs_err + tail_trunc_ + damped_bound_ +
                           4.0 * std::numeric_limits<double>::epsilon() * panels.magnitude;
    // Slope: d/dr of cos(r kappa) is -kappa sin(r kappa).
    const double tail_value = slope ? -tail.value : tail.value;
    const EvalResult result{(panels.sum + tail_value) / pi, raw_err / pi};
    if (!slope && !(result.abs_err <= eps_)) {
      throw non_convergence("cosine-transform error " + std::to_string(result.abs_err) +
                            " exceeds eps " + std::to_string(eps_) + " at r=" + std::to_string(r));
    }
    return result;
  }

  Nu nu_;
  double eps_;
  double r_max_;
  MittagLeffler ml_;
  double budget_ = 0.0;
  double cutoff_ = 0.0;
  double damped_bound_ = 0.0;
  double tail_trunc_ = 0.0;
  double ml_err_ = 0.0;
  std::vector<double> tail_;
  std::vector<double> panel_lo_, panel_hi_;
  std::vector<double> node16_, weight16_, node8_, weight8_;
};

/// G(r; nu) = G(r, 1; nu) through the cosine transform, 1/2 < nu < 1.
inline EvalResult green_similarity(Nu nu, double r, double eps = green_default_eps) {
  return GreenSolver(nu, eps, std::max(r, 1.0)).similarity(r);
}

/// G(x, t; nu): Gaussian at nu = 1/2, t^{-nu} G(x t^{-nu}; nu) inside, and a
/// domain error at the wave endpoint.
inline EvalResult green(const GreenQuery& q, double eps = green_default_eps) {
  if (!(eps > 0.0)) throw domain_error("eps must be positive");
  if (q.nu.is_wave()) throw domain_error("wave endpoint is analytic (delta)");
  if (q.nu.is_diffusion()) {
    const double v = diffusion_green(q.x, q.t);
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * v};
  }
  const double v = q.nu.value();
  const double scale = std::pow(q.t, -v);
  const double r = q.x * scale;
  const EvalResult s = GreenSolver(q.nu, eps / scale, std::max(r, 1.0)).similarity(r);
  return {scale * s.value, scale * s.abs_err};
}

/// Sampled x-profile of G(., t; nu).
struct GreenProfile {
  Nu nu;
  double t;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> accuracy;
};

/// G(x_i, t; nu) on a strictly increasing, nonnegative grid, sharing one solver.
inline GreenProfile profile(Nu nu, double t, std::span<const double> grid,
                            double eps = profile_default_eps) {
  if (!(t > 0.0)) throw domain_error("time must be positive");
  if (!(eps > 0.0)) throw domain_error("eps must be positive");
  if (nu.is_wave()) throw domain_error("wave endpoint is analytic (delta)");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw domain_error("grid must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw domain_error("grid must be strictly increasing");
  }

  GreenProfile out{nu, t, {grid.begin(), grid.end()}, {}, {}};
  out.values.reserve(grid.size());
  out.accuracy.reserve(grid.size());
  if (nu.is_diffusion()) {
    for (double x : grid) {
      const double v = diffusion_green(x, t);
      out.values.push_back(v);
      out.accuracy.push_back(4.0 * std::numeric_limits<double>::epsilon() * v);
    }
    return out;
  }

  const double scale = std::pow(t, -nu.value());
  const double r_max = grid.empty() ? 1.0 : std::max(grid.back() * scale, 1.0);
  const GreenSolver solver(nu, eps / scale, r_max);
  for (double x : grid) {
    const EvalResult s = solver.similarity(x * scale);
    out.values.push_back(scale * s.value);
    out.accuracy.push_back(scale * s.abs_err);
  }
  return out;
}

}  // namespace fracwave
