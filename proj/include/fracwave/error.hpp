#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Numerical failure: a routine could not reach the requested accuracy.
class numerical_error : public error {
 public:
  using error::error;
};

/// Taylor series did not meet its remainder bound within the term cap.
class non_convergence : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Smallest term of a divergent asymptotic expansion exceeds the tolerance.
class asymptotic_divergence : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Alternating series would lose more digits than any working precision carries.
class cancellation_loss : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// No interval with an interior point above both endpoints was found.
class bracket_failure : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace fracwave
