// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracwave/fracwave.hpp"
#include "oracles.hpp"

using namespace fracwave;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double gaussian(double x, double t) { return std::exp(-x * x / (4 * t)) / (2 * std::sqrt(M_PI * t)); }

// Coefficient sweep shared by criteria 4-7.
struct SweepPoint {
  double nu;
  ExtremumCoeffs k;
};

std::vector<SweepPoint>& sweep() {
  static std::vector<SweepPoint> points = [] {
    std::vector<SweepPoint> out;
    for (int i = 0; i <= 99; ++i) {
      const double nu = 0.5 + 0.005 * i;
      out.push_back({nu, extremum_coeffs(Nu(nu))});
    }
    out.push_back({1.0, extremum_coeffs(Nu(1.0))});
    return out;
  }();
  return points;
}

Verdict diffusion_oracle() {
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    for (int i = 0; i <= 50; ++i) {
      const double x = 0.1 * i;
      worst = std::max(worst, std::abs(green({Nu(0.5), x, t}).value - gaussian(x, t)));
    }
  }
  double cont = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    cont = std::max(cont, std::abs(green({Nu(0.51), x, 1.0}).value - gaussian(x, 1.0)));
  }
  return {worst <= 1e-10 && cont <= 5e-3,
          fmt("closed form max err %.2e (<= 1e-10), nu=0.51 vs Gaussian %.2e (<= 5e-3)", worst, cont)};
}

Verdict dual_representation() {
  double worst = 0.0;
  for (double nu : {0.6, 0.75, 0.9}) {
    for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
      const double g = green_similarity(Nu(nu), r).value;
      const double m = mainardi_m(Nu(nu), r).value;
      worst = std::max(worst, std::abs(g - 0.5 * m));
    }
  }
  return {worst <= 1e-8, fmt("max |G - M/2| = %.2e (<= 1e-8)", worst)};
}

Verdict normalization() {
  double worst = 0.0;
  for (double nu : {0.6, 0.75, 0.9}) {
    for (double t : {0.5, 1.0, 2.0}) {
      // Trapezoid over [0, X] with X far into the decay; the tail beyond X is
      // bounded by the last sample times the remaining width budget.
      const double scale = std::pow(t, nu);
      const double X = 12.0 * scale;
      const int n = 4000;
      const double h = X / n;
      std::vector<double> grid(n + 1);
      for (int i = 0; i <= n; ++i) grid[i] = i * h;
      const GreenProfile p = profile(Nu(nu), t, grid);
      double s = 0.5 * (p.values.front() + p.values.back());
      for (int i = 1; i < n; ++i) s += p.values[i];
      const double total = 2.0 * s * h;
      const double tail = 2.0 * p.values.back() * X;
      worst = std::max(worst, std::abs(total - 1.0) + tail);
    }
  }
  return {worst <= 1e-3, fmt("max |2 int G - 1| + tail = %.2e (<= 1e-3)", worst)};
}

Verdict paper_constants() {
  const auto& pts = sweep();
  double c_max = -1, c_arg = 0, m_min = INFINITY, m_arg = 0;
  for (const auto& p : pts) {
    if (p.nu >= 1.0) continue;
    if (p.k.c > c_max) {
      c_max = p.k.c;
      c_arg = p.nu;
    }
    if (p.k.m < m_min) {
      m_min = p.k.m;
      m_arg = p.nu;
    }
  }
  const double m_half = extremum_coeffs(Nu(0.5)).m;
  const bool ends = max_location_coeff(Nu(0.5)) == 0.0 && max_location_coeff(Nu(1.0)) == 1.0;
  const bool ok = std::abs(c_arg - 0.85) <= 0.02 && std::abs(c_max - 1.28) <= 0.02 &&
                  std::abs(m_arg - 0.61) <= 0.02 && std::abs(m_min - 0.25) <= 0.01 &&
                  std::abs(m_half - 0.5 / std::sqrt(M_PI)) <= 1e-10 && ends;
  return {ok, fmt("max c = %.6f at nu = %.3f; min m = %.6f at nu = %.3f; m_0.5 err %.1e; c_0.5 = %g, c_1 = %g",
                  c_max, c_arg, m_min, m_arg, std::abs(m_half - 0.5 / std::sqrt(M_PI)),
                  max_location_coeff(Nu(0.5)), max_location_coeff(Nu(1.0)))};
}

Verdict c_at_least_one() {
  double lowest = INFINITY, where = 0;
  for (const auto& p : sweep()) {
    if (p.nu < 0.69 - 1e-12 || p.nu > 0.99 + 1e-12) continue;
    if (p.k.c < lowest) {
      lowest = p.k.c;
      where = p.nu;
    }
  }
  return {lowest >= 1.0 - 5e-3, fmt("min c on [0.69, 0.99] = %.6f at nu = %.3f (>= 0.995)", lowest, where)};
}

Verdict product_behaviour() {
  bool increasing = true;
  double prev = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double nu = 0.55 + 0.05 * i;
    const double p = product_constant(extremum_coeffs(Nu(nu)));
    if (!(p > prev)) increasing = false;
    prev = p;
  }
  double lo = INFINITY, hi = 0.0;
  for (const auto& p : sweep()) {
    if (p.nu <= 0.56 + 1e-12 || p.nu >= 0.99 - 1e-12) continue;
    lo = std::min(lo, product_constant(p.k));
    hi = std::max(hi, product_constant(p.k));
  }
  return {increasing && lo > 0.1 && hi < 10.0,
          fmt("increasing on {0.55..0.95}: %s; range on (0.56, 0.99): [%.4f, %.4f]", increasing ? "yes" : "no", lo,
              hi)};
}

Verdict certificates() {
  int checked = 0, series_checked = 0, failures = 0;
  double worst_prime = 0.0;
  for (const auto& p : sweep()) {
    if (!Nu(p.nu).is_interior()) continue;
    const GreenSolver solver(Nu(p.nu), p.nu < 0.505 ? 1e-12 : 1e-10, 4.0);
    const double delta = 100 * p.k.c_tol;
    const double at = solver.similarity(p.k.c).value;
    if (!(solver.similarity(std::max(0.0, p.k.c - delta)).value < at && solver.similarity(p.k.c + delta).value < at)) {
      ++failures;
    }
    ++checked;
    if (mainardi_prime_reliable(Nu(p.nu), p.k.c)) {
      worst_prime = std::max(worst_prime, std::abs(mainardi_m_prime(Nu(p.nu), p.k.c).value));
      ++series_checked;
    }
  }
  double worst_scan = 0.0;
  for (double nu : {0.6, 0.75, 0.9}) {
    const GreenSolver solver(Nu(nu), 1e-8, 2.0);
    double best_x = 0, best = -1;
    for (int i = 0; i <= 2000; ++i) {
      const double g = solver.similarity(1e-3 * i).value;
      if (g > best) {
        best = g;
        best_x = 1e-3 * i;
      }
    }
    worst_scan = std::max(worst_scan, std::abs(best_x - max_location_coeff(Nu(nu))));
  }
  return {failures == 0 && worst_prime <= 1e-7 && worst_scan <= 2e-3,
          fmt("3-point certificate %d/%d; |M'(c)| max %.2e over %d series points (<= 1e-7); grid scan %.1e (<= 2e-3)",
              checked - failures, checked, worst_prime, series_checked, worst_scan)};
}

Verdict scaling_law() {
  const double eps = green_default_eps;
  double worst = 0.0;
  for (double nu : {0.55, 0.65, 0.75, 0.85, 0.95}) {
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      for (double t : {0.5, 2.0, 5.0}) {
        const double s = std::pow(t, -nu);
        const double lhs = green({Nu(nu), x, t}, eps).value;
        const double rhs = s * green({Nu(nu), x * s, 1.0}, eps).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return {worst <= 2 * eps, fmt("max scaling defect %.2e (<= %.0e)", worst, 2 * eps)};
}

Verdict speed_crossover() {
  const ExtremumCoeffs a = extremum_coeffs(Nu(0.505));
  const ExtremumCoeffs b = extremum_coeffs(Nu(0.55));
  const double t = std::pow(0.505 * a.c / (0.55 * b.c), 1.0 / 0.045);
  const double decades = std::abs(std::log10(t / 3.04e-24));
  return {decades <= 1.0, fmt("c_0.505 = %.10f, c_0.55 = %.10f, t_cross = %.3e vs 3.04e-24: %.3f decades (<= 1)",
                              a.c, b.c, t, decades)};
}

Verdict special_functions() {
  double e1 = 0, e2 = 0, w0 = 0, gauss = 0, fd = 0;
  const MittagLeffler ml1(1.0), ml2(2.0);
  for (double x = 0; x <= 700; x += 7) e1 = std::max(e1, std::abs(ml1(x).value - std::exp(-x)));
  for (double x = 0; x <= 1e8; x += 9.7e5) {
    const double exact = static_cast<double>(cos(sqrt(oracle::big(x))));
    e2 = std::max(e2, std::abs(ml2(x).value - exact));
  }
  for (double mu : {0.25, 0.4, 0.5, 1.0, 1.5}) {
    for (double lambda : {-0.5, -0.6, -0.9}) {
      w0 = std::max(w0, std::abs(wright({lambda, mu, 0.0}).value - 1.0 / std::tgamma(mu)));
    }
  }
  for (double r = 0; r <= 10; r += 0.1) {
    gauss = std::max(gauss, std::abs(mainardi_m(Nu(0.5), r).value - oracle::gaussian_m(r)));
  }
  const double h = 1e-6;
  for (double nu : {0.55, 0.65, 0.75, 0.85}) {
    for (double r : {0.25, 0.75, 1.25, 1.75}) {
      const double d = (mainardi_m(Nu(nu), r + h, 1e-15).value - mainardi_m(Nu(nu), r - h, 1e-15).value) / (2 * h);
      fd = std::max(fd, std::abs(mainardi_m_prime(Nu(nu), r).value - d));
    }
  }
  const bool ok = e1 <= 1e-12 && e2 <= 1e-12 && w0 <= 1e-12 && gauss <= 1e-12 && fd <= 1e-8;
  return {ok, fmt("E1 %.1e, E2 %.1e, W(0) %.1e, M_1/2 %.1e (<= 1e-12); M' vs FD %.1e (<= 1e-8)", e1, e2, w0, gauss,
                  fd)};
}

}  // namespace

// Usage: acceptance [--expect-fail N,M,...]
// Exit status is 0 when the failing criteria are exactly the listed ones.
int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) != "--expect-fail") {
      std::fprintf(stderr, "usage: %s [--expect-fail N,M,...]\n", argv[0]);
      return 2;
    }
    std::stringstream list(argv[i + 1]);
    for (std::string item; std::getline(list, item, ',');) expected.insert(std::stoi(item));
  }
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"1 diffusion oracle", diffusion_oracle},
      {"2 dual representation", dual_representation},
      {"3 normalization", normalization},
      {"4 paper constants", paper_constants},
      {"5 c_nu >= 1 on [0.69, 0.99]", c_at_least_one},
      {"6 product behaviour", product_behaviour},
      {"7 extremum certificates", certificates},
      {"8 scaling law", scaling_law},
      {"9 speed crossover", speed_crossover},
      {"10 special functions", special_functions},
  };
  int failed = 0;
  std::set<int> failing;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %-30s %s  [%.1fs]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) {
      ++failed;
      failing.insert(index);
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (!expected.empty()) {
    std::printf("expected failures:");
    for (int k : expected) std::printf(" %d", k);
    std::printf("; %s\n", failing == expected ? "matched" : "MISMATCH");
  }
  return failing == expected ? 0 : 1;
}
