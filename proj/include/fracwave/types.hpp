#pragma once

#include <cmath>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave {

/// A value together with a bound on |computed - exact|.
struct EvalResult {
  double value = 0.0;
  double abs_err = 0.0;
};

/// Order parameter nu = alpha / 2 of the diffusion-wave equation, 1/2 <= nu <= 1.
class Nu {
 public:
  explicit Nu(double nu) : nu_(nu) {
    if (!(nu >= 0.5 && nu <= 1.0)) {
      throw domain_error("nu must lie in [0.5, 1], got " + std::to_string(nu));
    }
  }

  [[nodiscard]] double value() const noexcept { return nu_; }
  [[nodiscard]] double alpha() const noexcept { return 2.0 * nu_; }
  [[nodiscard]] bool is_diffusion() const noexcept { return nu_ == 0.5; }
  [[nodiscard]] bool is_wave() const noexcept { return nu_ == 1.0; }
  /// Strictly between the two classical endpoints.
  [[nodiscard]] bool is_interior() const noexcept { return nu_ > 0.5 && nu_ < 1.0; }

  friend bool operator==(Nu a, Nu b) noexcept { return a.nu_ == b.nu_; }

 private:
  double nu_;
};

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace fracwave
