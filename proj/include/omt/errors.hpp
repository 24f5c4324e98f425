#pragma once

#include <stdexcept>
#include <string>

namespace omt {

// Bad configuration values or malformed input files. CLI exit code 1.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API called outside its validity domain (wrong regime, wrong case).
class misuse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: degenerate system, instability, quadrature breakdown.
// CLI exit code 2.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operating point is mechanically unstable (total damping <= 0).
class instability_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Linear system or noise covariance is numerically singular.
class degenerate_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Requested measurement channel carries no signal.
class signal_blind_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Quadrature grid cannot resolve the integrand.
class quadrature_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace omt
