#pragma once

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

namespace fracwave::detail {

/// True when a is 0, -1, -2, ... (poles of Gamma).
template <class Real>
bool is_gamma_pole(const Real& a) {
  using std::floor;
  return a <= 0 && floor(a) == a;
}

/// 1/Gamma(a), an entire function: exactly zero at the poles of Gamma and
/// evaluated through reflection for negative arguments.
template <class Real>
Real rgamma(const Real& a) {
  using std::exp;
  if (is_gamma_pole(a)) return Real(0);
  if (a > 0) {
    if (a > 100) return exp(-boost::math::lgamma(a));
    return 1 / boost::math::tgamma(a);
  }
  // 1/Gamma(a) = sin(pi a) Gamma(1 - a) / pi
  return boost::math::sin_pi(a) * boost::math::tgamma(Real(1) - a) /
         boost::math::constants::pi<Real>();
}

/// log|1/Gamma(a)|; -inf at the poles. Double precision, for planning only.
inline double log_abs_rgamma(double a) {
  if (is_gamma_pole(a)) return -std::numeric_limits<double>::infinity();
  if (a > 0) return -std::lgamma(a);
  const double s = std::abs(boost::math::sin_pi(a));
  return std::lgamma(1.0 - a) + std::log(s) - std::log(boost::math::constants::pi<double>());
}

/// Upper envelope of log|1/Gamma(a)| with |sin(pi a)| replaced by one.
inline double log_rgamma_envelope(double a) {
  if (a > 0) return -std::lgamma(a);
  return std::lgamma(1.0 - a) - std::log(boost::math::constants::pi<double>());
}

}  // namespace fracwave::detail
