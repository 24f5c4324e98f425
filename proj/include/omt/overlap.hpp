#pragma once

#include <vector>

#include "omt/errors.hpp"

namespace omt {

enum class Parity { even, odd, none };

// Transverse mode profile on one coordinate: either an L2-normalized
// Hermite-Gauss function or a sampled curve (linear interpolation, zero
// outside the sample grid).
class ModeProfile {
 public:
  static ModeProfile hermite_gauss_mode(int n, double waist);
  static ModeProfile sampled(std::vector<double> grid, std::vector<double> values);

  double operator()(double u) const;
  Parity parity() const { return parity_; }

  // Half-width beyond which the profile is negligible.
  double extent() const;
  // Smallest oscillation/feature length the quadrature must resolve.
  double feature_scale() const;

  bool is_hermite() const { return hermite_; }
  int index() const { return n_; }
  double waist() const { return waist_; }

 private:
  ModeProfile() = default;
  bool hermite_ = true;
  int n_ = 0;
  double waist_ = 1.0;
  std::vector<double> grid_, values_;
  Parity parity_ = Parity::none;
};

// Value of the L2-normalized Hermite-Gauss function of order n at u.
double hermite_gauss(int n, double waist, double u);

// Triple-product overlap integral  int P_a(u) P_b(u) P_c(u) du,
// evaluated by composite Gauss-Legendre quadrature sized off the profiles'
// feature scales (>= 20 nodes per feature). Throws quadrature_error when the
// required resolution exceeds the node budget.
double overlap_eta(const ModeProfile& a, const ModeProfile& b, const ModeProfile& c);

// Coupling asymmetry |int P1 P2 Pm| / |int P1 P0 Pm|, directly usable as the
// eta_plus/eta_minus ratio. Throws numerical_error when the denominator
// overlap vanishes (parity-forbidden configuration).
double eta_ratio(const ModeProfile& psi0, const ModeProfile& psi1,
                 const ModeProfile& psi2, const ModeProfile& psi_m);

}  // namespace omt
