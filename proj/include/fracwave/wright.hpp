#pragma once

// Wright function W_{lambda,mu}(-r) = sum_n (-r)^n / (n! Gamma(lambda n + mu))
// on the negative real axis, and the Mainardi functions built from it:
//   M_nu(r)  = W_{-nu, 1-nu}(-r)
//   F_nu(r)  = W_{-nu, 0}(-r) = nu r M_nu(r)
//   M'_nu(r) = -W_{-nu, 1-2nu}(-r)
//
// The series alternates with terms that first grow and then decay, so for
// large r (and nu close to 1) it cancels badly. Before summing, the term
// envelope is planned in double precision; the sum then runs in the cheapest
// of long double, __float128, or 50/100/200-digit binary floats that carries
// enough digits for the requested absolute tolerance.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include "fracwave/detail/reciprocal_gamma.hpp"
#include "fracwave/error.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

inline constexpr double wright_default_tol = 1e-12;

struct WrightParams {
  double lambda;
  double mu;
  double z_mag;  // r, with z = -r

  WrightParams(double lambda_, double mu_, double z_mag_)
      : lambda(lambda_), mu(mu_), z_mag(z_mag_) {
    if (!(lambda > -1.0)) throw domain_error("Wright function needs lambda > -1");
    if (!std::isfinite(mu)) throw domain_error("Wright function needs a finite mu");
    if (!(z_mag >= 0.0) || !std::isfinite(z_mag)) {
      throw domain_error("Wright function argument magnitude must be finite and >= 0");
    }
  }
};

enum class SeriesPrecision { long_double, quad, digits50, digits100, digits200 };

inline const char* to_string(SeriesPrecision p) {
  switch (p) {
    case SeriesPrecision::long_double: return "long double";
    case SeriesPrecision::quad: return "float128";
    case SeriesPrecision::digits50: return "50 digits";
    case SeriesPrecision::digits100: return "100 digits";
    case SeriesPrecision::digits200: return "200 digits";
  }
  return "?";
}

/// How a Wright series will be summed.
struct SeriesPlan {
  int terms = 0;              // n = 0 .. terms-1 are summed
  double truncation = 0.0;    // bound on the omitted tail
  double log10_peak = 0.0;    // log10 of the largest term envelope
  double digits = 0.0;        // significant digits the sum must carry
  SeriesPrecision precision = SeriesPrecision::long_double;

  /// Summable in hardware-speed precision within the nominal term cap.
  [[nodiscard]] bool reliable() const noexcept {
    return precision <= SeriesPrecision::quad && terms <= 300;
  }
};

namespace detail {

inline constexpr int wright_term_limit = 6000;

template <class Real>
EvalResult sum_wright(const WrightParams& p, int terms, double truncation) {
  using std::abs;
  const Real r = p.z_mag;
  const Real lambda = p.lambda;
  const Real mu = p.mu;
  Real scale = 1;  // r^n / n!
  Real sum = 0;
  Real sum_abs = 0;
  for (int n = 0; n < terms; ++n) {
    const Real term = scale * rgamma<Real>(lambda * n + mu);
    if (n % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    sum_abs += abs(term);
    scale *= r / (n + 1);
  }
  const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
  const double rounding = (terms + 20) * eps * static_cast<double>(sum_abs) +
                          std::numeric_limits<double>::epsilon() * std::abs(static_cast<double>(sum));
  return {static_cast<double>(sum), truncation + rounding};
}

}  // namespace detail

/// Chooses the number of terms and the working precision for W_{lambda,mu}(-r).
/// Throws cancellation_loss when no supported precision suffices.
inline SeriesPlan plan_wright(const WrightParams& p, double tol) {
  if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
  SeriesPlan plan;
  if (p.z_mag == 0.0) {
    plan.terms = 1;
    plan.log10_peak = detail::log_rgamma_envelope(p.mu) / std::log(10.0);
    plan.digits = 17;
    return plan;
  }

  const double log_r = std::log(p.z_mag);
  const double log_tol = std::log(tol);
  auto log_env = [&](int n) {
    return n * log_r - std::lgamma(n + 1.0) + detail::log_rgamma_envelope(p.lambda * n + p.mu);
  };

  double peak = -std::numeric_limits<double>::infinity();
  double here = log_env(0);
  int n = 0;
  for (; n < detail::wright_term_limit; ++n) {
    peak = std::max(peak, here);
    const double next = log_env(n + 1);
    // Past the peak the envelope ratio q keeps shrinking: tail <= next / (1 - q).
    if (next < here) {
      const double log_tail = next - std::log1p(-std::exp(next - here));
      if (log_tail <= log_tol - std::log(16.0)) {
        plan.terms = n + 1;
        plan.truncation = std::exp(log_tail);
        break;
      }
    }
    here = next;
  }
  if (plan.terms == 0) {
    throw cancellation_loss("Wright series for r=" + std::to_string(p.z_mag) +
                            " needs more than " + std::to_string(detail::wright_term_limit) +
                            " terms");
  }

  const double ln10 = std::log(10.0);
  plan.log10_peak = peak / ln10;
  plan.digits = plan.log10_peak + std::log10(plan.terms + 20.0) - std::log10(tol) + 3.0;

  // Gamma(1 - lambda n - mu) must stay inside the long double / float128 range.
  const double largest_gamma_arg = std::abs(p.lambda) * plan.terms + std::abs(p.mu) + 1.0;
  const bool hardware_range = largest_gamma_arg < 1700.0;
  if (hardware_range && plan.digits <= 16.0) {
    plan.precision = SeriesPrecision::long_double;
  } else if (hardware_range && plan.digits <= 31.0) {
    plan.precision = SeriesPrecision::quad;
  } else if (plan.digits <= 47.0) {
    plan.precision = SeriesPrecision::digits50;
  } else if (plan.digits <= 97.0) {
    plan.precision = SeriesPrecision::digits100;
  } else if (plan.digits <= 197.0) {
    plan.precision = SeriesPrecision::digits200;
  } else {
    throw cancellation_loss("Wright series for r=" + std::to_string(p.z_mag) + " would cancel " +
                            std::to_string(plan.log10_peak) + " decades");
  }
  return plan;
}

/// W_{lambda,mu}(-r) by series, |error| <= tol.
inline EvalResult wright(const WrightParams& p, double tol = wright_default_tol) {
  namespace mp = boost::multiprecision;
  const SeriesPlan plan = plan_wright(p, tol);
  EvalResult r;
  switch (plan.precision) {
    case SeriesPrecision::long_double:
      r = detail::sum_wright<long double>(p, plan.terms, plan.truncation);
      break;
    case SeriesPrecision::quad:
      r = detail::sum_wright<mp::float128>(p, plan.terms, plan.truncation);
      break;
    case SeriesPrecision::digits50:
      r = detail::sum_wright<mp::number<mp::cpp_bin_float<50>, mp::et_off>>(p, plan.terms, plan.truncation);
      break;
    case SeriesPrecision::digits100:
      r = detail::sum_wright<mp::number<mp::cpp_bin_float<100>, mp::et_off>>(p, plan.terms, plan.truncation);
      break;
    case SeriesPrecision::digits200:
      r = detail::sum_wright<mp::number<mp::cpp_bin_float<200>, mp::et_off>>(p, plan.terms, plan.truncation);
      break;
  }
  if (!(r.abs_err <= tol)) {
    throw cancellation_loss("Wright series error " + std::to_string(r.abs_err) +
                            " exceeds tol " + std::to_string(tol));
  }
  return r;
}

namespace detail {

inline void require_mainardi_order(Nu nu) {
  if (nu.is_wave()) {
    throw domain_error("M_nu at nu = 1 is a delta function; the wave endpoint is analytic");
  }
}

}  // namespace detail

/// Mainardi function M_nu(r) = W_{-nu,1-nu}(-r).
inline EvalResult mainardi_m(Nu nu, double r, double tol = wright_default_tol) {
  detail::require_mainardi_order(nu);
  return wright({-nu.value(), 1.0 - nu.value(), r}, tol);
}

/// F_nu(r) = nu r M_nu(r).
inline EvalResult mainardi_f(Nu nu, double r, double tol = wright_default_tol) {
  detail::require_mainardi_order(nu);
  const double scale = nu.value() * r;
  if (scale == 0.0) return {0.0, 0.0};
  const EvalResult m = mainardi_m(nu, r, tol / scale);
  return {scale * m.value, scale * m.abs_err};
}

/// dM_nu/dr = -W_{-nu,1-2nu}(-r), the term-wise derivative of the M series.
inline EvalResult mainardi_m_prime(Nu nu, double r, double tol = wright_default_tol) {
  detail::require_mainardi_order(nu);
  const EvalResult w = wright({-nu.value(), 1.0 - 2.0 * nu.value(), r}, tol);
  return {-w.value, w.abs_err};
}

/// Whether the M'_nu series at r is cheap and well-conditioned.
inline bool mainardi_prime_reliable(Nu nu, double r, double tol = wright_default_tol) {
  if (nu.is_wave()) return false;
  try {
    return plan_wright({-nu.value(), 1.0 - 2.0 * nu.value(), r}, tol).reliable();
  } catch (const numerical_error&) {
    return false;
  }
}

}  // namespace fracwave
