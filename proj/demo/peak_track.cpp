// Prints c_nu, m_nu and the moving maximum of G(x, t; nu) for a few orders.
#include <cstdio>

#include "fracwave/fracwave.hpp"

int main() {
  using namespace fracwave;
  std::printf("%6s %14s %14s %14s\n", "nu", "c_nu", "m_nu", "c_nu*m_nu");
  for (double v : {0.5, 0.6, 0.75, 0.85, 0.95}) {
    const ExtremumCoeffs k = extremum_coeffs(Nu(v));
    std::printf("%6.3f %14.10f %14.10f %14.10f\n", v, k.c, k.m, k.c * k.m);
  }

  const ExtremumCoeffs k = extremum_coeffs(Nu(0.75));
  std::printf("\nnu = 0.75: maximum of G(., t)\n%8s %14s %14s %14s\n", "t", "x*(t)", "G*(t)", "v(t)");
  for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    std::printf("%8.3f %14.10f %14.10f %14.10f\n", t, max_location(k, t), max_value(k, t),
                propagation_speed(k, t));
  }

  // Check the peak against a direct evaluation of the transform at t = 2.
  const double t = 2.0;
  const EvalResult at_peak = green(GreenQuery(Nu(0.75), max_location(k, t), t));
  std::printf("\nG(x*(2), 2) = %.12f +- %.1e\n", at_peak.value, at_peak.abs_err);
}
