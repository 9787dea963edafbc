#pragma once

// One-parameter Mittag-Leffler function E_alpha(-x) on the negative real axis,
// 1 <= alpha <= 2, x >= 0.
//
// Three regimes:
//   * closed forms at alpha = 1 (exp(-x)) and alpha = 2 (cos(sqrt(x)));
//   * the Taylor series sum (-x)^n / Gamma(alpha n + 1), summed in long double
//     and re-summed in __float128 when the long double roundoff bound is too
//     large for the requested tolerance;
//   * for x >= switch_point(), the asymptotic expansion
//       E_alpha(-x) = (2/alpha) exp(rho cos(pi/alpha)) cos(rho sin(pi/alpha))
//                     + sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - alpha k),
//     rho = x^{1/alpha}, truncated at its smallest term.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/float128.hpp>

#include "fracwave/detail/reciprocal_gamma.hpp"
#include "fracwave/error.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

/// Argument pair of E_alpha(-x).
struct MlArg {
  double alpha;
  double x;

  MlArg(double alpha_, double x_) : alpha(alpha_), x(x_) {
    if (!(alpha >= 1.0 && alpha <= 2.0)) {
      throw domain_error("Mittag-Leffler order must lie in [1, 2], got " + std::to_string(alpha));
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw domain_error("Mittag-Leffler argument magnitude must be finite and >= 0");
    }
  }
};

/// Evaluator of E_alpha(-x) for a fixed order. Construction tabulates the
/// series and asymptotic coefficients; evaluation is const and thread-safe.
class MittagLeffler {
 public:
  static constexpr double default_tol = 1e-12;
  static constexpr int term_cap = 300;
  /// Smallest asymptotic term at the switch point.
  static constexpr double switch_threshold = 1e-14;

  explicit MittagLeffler(double alpha) : alpha_(alpha) {
    (void)MlArg{alpha, 0.0};
    const double log_pi = std::log(pi);

    series_ld_.reserve(term_cap + 1);
    for (int n = 0; n <= term_cap; ++n) {
      series_ld_.push_back(detail::rgamma<long double>(static_cast<long double>(alpha) * n + 1));
    }

    if (has_asymptotic()) {
      const int kmax = static_cast<int>(170.0 / alpha);
      asym_.reserve(kmax);
      log_env_.reserve(kmax);
      for (int k = 1; k <= kmax; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        asym_.push_back(sign * detail::rgamma<double>(1.0 - alpha * k));
        log_env_.push_back(std::lgamma(alpha * k) - log_pi);
        env_.push_back(std::exp(log_env_.back()));
      }
      switch_ = calibrate_switch();

      // Quad-precision series coefficients, long enough to converge at the
      // switch point with a wide margin.
      const double log_x = std::log(switch_);
      int n = 0;
      for (; n < term_cap; ++n) {
        if (n > 0 && n * log_x - std::lgamma(alpha * n + 1) < std::log(1e-40)) break;
      }
      series_q_.reserve(n + 2);
      for (int j = 0; j <= n + 1; ++j) {
        series_q_.push_back(detail::rgamma<quad>(quad(alpha) * j + 1));
      }
    } else {
      switch_ = std::numeric_limits<double>::infinity();
    }
  }

  [[nodiscard]] double alpha() const noexcept { return alpha_; }

  /// x at which the dispatcher moves from the Taylor series to the asymptotic
  /// expansion; infinite at the closed-form orders alpha = 1, 2.
  [[nodiscard]] double switch_point() const noexcept { return switch_; }

  [[nodiscard]] bool has_asymptotic() const noexcept { return alpha_ > 1.0 && alpha_ < 2.0; }

  /// Coefficient a_k of x^{-k} in the algebraic part of the asymptotic expansion.
  [[nodiscard]] double algebraic_coeff(int k) const { return asym_.at(k - 1); }

  /// Gamma(alpha k)/pi x^{-k}, an upper bound on |a_k x^{-k}|.
  [[nodiscard]] double algebraic_envelope(int k, double x) const {
    return std::exp(log_env_.at(k - 1) - k * std::log(x));
  }

  [[nodiscard]] int algebraic_terms_available() const noexcept {
    return static_cast<int>(asym_.size());
  }

  /// Truncated Taylor series with the alternating-series remainder bound.
  [[nodiscard]] EvalResult series(double x, double tol = default_tol) const {
    check(x, tol);
    if (x == 0.0) return {1.0, 0.0};
    if (const auto r = sum_series<long double>(series_ld_, x, tol); r.abs_err <= tol) return r;
    if (!series_q_.empty()) {
      if (const auto r = sum_series<quad>(series_q_, x, tol); r.abs_err <= tol) return r;
    }
    throw non_convergence("Mittag-Leffler series for alpha=" + std::to_string(alpha_) +
                          " at x=" + std::to_string(x) + " cannot reach tol " +
                          std::to_string(tol));
  }

  /// Asymptotic expansion truncated before its smallest term; abs_err is the
  /// envelope of the first omitted term.
  [[nodiscard]] EvalResult asymptotic(double x, double tol = default_tol) const {
    check(x, tol);
    if (!has_asymptotic()) {
      throw asymptotic_divergence("asymptotic expansion of E_alpha(-x) needs 1 < alpha < 2");
    }
    if (x == 0.0) throw asymptotic_divergence("asymptotic expansion is undefined at x = 0");

    const int kmax = algebraic_terms_available();
    double sum = 0.0;
    double inv_pow = 1.0;
    double omitted = std::numeric_limits<double>::infinity();
    int k = 1;
    for (; k <= kmax; ++k) {
      inv_pow /= x;
      sum += asym_[k - 1] * inv_pow;
      const double env_next =
          k < kmax ? env_[k] * inv_pow / x : std::numeric_limits<double>::infinity();
      const double env_here = env_[k - 1] * inv_pow;
      // At the smallest term the remainder is of its size, not bounded by it.
      omitted = 4.0 * env_next;
      if (env_next >= env_here) break;
      if (env_next <= tol * 1e-3) {
        // Stopped early: the omitted terms keep shrinking down to the
        // smallest one, which also bounds the remainder beyond it.
        double env = env_next;
        omitted = 0.0;
        for (int j = k + 1; j < kmax; ++j) {
          omitted += env;
          const double after = env * env_[j] / (env_[j - 1] * x);
          if (after >= env) break;
          env = after;
        }
        omitted += env;
        break;
      }
    }

    // Long double keeps the phase rho sin(pi/alpha) accurate for large rho.
    using ld = long double;
    const ld pi_ld = 3.141592653589793238462643383279502884L;
    const ld rho_ld = std::pow(static_cast<ld>(x), 1.0L / alpha_);
    const ld amp_ld = (2.0L / alpha_) * std::exp(rho_ld * std::cos(pi_ld / alpha_));
    const double rho = static_cast<double>(rho_ld);
    const double amplitude = static_cast<double>(amp_ld);
    const double exp_part = static_cast<double>(amp_ld * std::cos(rho_ld * std::sin(pi_ld / alpha_)));

    // Near alpha = 1 the negative axis lies close to the Stokes line arg z =
    // alpha pi, where the exponential part is only partly switched on.
    const double stokes = amplitude * std::erfc((alpha_ - 1.0) * pi * std::sqrt(0.5 * rho));
    // The phase rho sin(pi/alpha) carries a rounding error proportional to rho.
    const double value = sum + exp_part;
    const double err = omitted + stokes +
                       4 * std::numeric_limits<double>::epsilon() * (std::abs(sum) + amplitude) +
                       4 * static_cast<double>(std::numeric_limits<ld>::epsilon()) * amplitude * rho;
    if (err > tol) {
      throw asymptotic_divergence("asymptotic expansion of E_" + std::to_string(alpha_) +
                                  "(-" + std::to_string(x) + ") cannot reach tol " +
                                  std::to_string(tol) + " (smallest term " +
                                  std::to_string(omitted) + ")");
    }
    return {value, err};
  }

  /// Regime dispatcher.
  [[nodiscard]] EvalResult operator()(double x, double tol = default_tol) const {
    check(x, tol);
    if (x == 0.0) return {1.0, 0.0};
    if (alpha_ == 1.0) {
      const long double v = std::exp(-static_cast<long double>(x));
      return {static_cast<double>(v), std::numeric_limits<double>::epsilon() * static_cast<double>(v)};
    }
    if (alpha_ == 2.0) {
      const long double v = std::cos(std::sqrt(static_cast<long double>(x)));
      return {static_cast<double>(v), std::numeric_limits<double>::epsilon()};
    }
    if (x < switch_) return series(x, tol);
    try {
      return asymptotic(x, tol);
    } catch (const asymptotic_divergence&) {
      if (x > 4 * switch_) throw;
      return series(x, tol);
    }
  }

 private:
  using quad = boost::multiprecision::float128;

  void check(double x, double tol) const {
    (void)MlArg{alpha_, x};
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
  }

  template <class Real>
  EvalResult sum_series(const std::vector<Real>& coeffs, double x, double tol) const {
    const Real xr = x;
    Real power = 1;
    Real sum = 0;
    Real sum_abs = 0;
    const int cap = static_cast<int>(coeffs.size()) - 1;
    for (int n = 0; n < cap; ++n) {
      const Real mag = power * coeffs[n];
      sum += (n % 2 == 0) ? mag : Real(-mag);
      sum_abs += mag;
      power *= xr;
      const double next = static_cast<double>(power * coeffs[n + 1]);
      if (!std::isfinite(next)) break;
      const double cur = static_cast<double>(mag);
      // Leibniz bound once the magnitudes decrease.
      if (next < cur && next <= tol / 64) {
        const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
        const double rounding = (n + 10) * eps * static_cast<double>(sum_abs) +
                                std::numeric_limits<double>::epsilon() * std::abs(static_cast<double>(sum));
        return {static_cast<double>(sum), next + rounding};
      }
    }
    return {static_cast<double>(sum), std::numeric_limits<double>::infinity()};
  }

  double calibrate_switch() const {
    auto smallest_log_term = [this](double log_x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < log_env_.size(); ++k) {
        best = std::min(best, log_env_[k] - static_cast<double>(k + 1) * log_x);
      }
      return best;
    };
    const double target = std::log(switch_threshold);
    double lo = 0.0, hi = std::log(1e8);
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (smallest_log_term(mid) <= target ? hi : lo) = mid;
    }
    return std::exp(hi);
  }

  double alpha_;
  double switch_ = 0.0;
  std::vector<long double> series_ld_;
  std::vector<quad> series_q_;
  std::vector<double> asym_;
  std::vector<double> log_env_;
  std::vector<double> env_;
};

inline EvalResult ml_series(MlArg arg, double tol = MittagLeffler::default_tol) {
  return MittagLeffler(arg.alpha).series(arg.x, tol);
}

inline EvalResult ml_asymptotic(MlArg arg, double tol = MittagLeffler::default_tol) {
  return MittagLeffler(arg.alpha).asymptotic(arg.x, tol);
}

/// E_alpha(-x) through the regime dispatcher.
inline EvalResult ml(MlArg arg, double tol = MittagLeffler::default_tol) {
  return MittagLeffler(arg.alpha)(arg.x, tol);
}

}  // namespace fracwave
