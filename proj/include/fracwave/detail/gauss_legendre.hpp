#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace fracwave::detail {

template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};    // on [-1, 1]
  std::array<double, N> weights{};
};

/// N-point Gauss-Legendre rule; nodes by Newton iteration on P_N in long double.
template <std::size_t N>
GaussLegendreRule<N> make_gauss_legendre() {
  GaussLegendreRule<N> rule;
  const long double pi_l = 3.141592653589793238462643383279502884L;
  for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
    long double x = std::cos(pi_l * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(N) + 0.5L));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (std::size_t k = 2; k <= N; ++k) {
        const long double pk = ((2.0L * k - 1) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = N * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[N - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[N - 1 - i] = static_cast<double>(w);
  }
  if (N % 2 == 1) rule.nodes[N / 2] = 0.0;
  return rule;
}

template <std::size_t N>
const GaussLegendreRule<N>& gauss_legendre() {
  static const GaussLegendreRule<N> rule = make_gauss_legendre<N>();
  return rule;
}

}  // namespace fracwave::detail
