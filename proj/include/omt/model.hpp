#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omt/errors.hpp"

namespace omt {

// One operating point of the three-mode transducer: two optical sideband
// modes read out a single mechanical mode, with the central mode acting only
// through its classical pump amplitude. All rates are half-linewidths in a
// common unit; by convention everything is expressed in units of gamma_m.
struct SystemParams {
  double gamma0_plus = 0.0;   // input-coupling half-linewidth, upper sideband
  double gamma0_minus = 0.0;  // input-coupling half-linewidth, lower sideband
  double gammae_plus = 0.0;   // internal-loss half-linewidth, upper sideband
  double gammae_minus = 0.0;  // internal-loss half-linewidth, lower sideband
  double gamma0_center = 0.0; // pump-mode coupling half-linewidth
  double gammae_center = 0.0; // pump-mode loss half-linewidth
  double gamma_m = 0.0;       // mechanical half-linewidth
  double eta_plus = 0.0;      // optomechanical coupling, upper sideband (real, >= 0)
  double eta_minus = 0.0;     // optomechanical coupling, lower sideband (real, >= 0)
  double pump_amplitude = 0.0; // A0, normalized so |A0|^2 is a photon flux
  double n_thermal = 0.0;      // mean thermal occupation of the mechanics

  // Optional bookkeeping; the rotating-frame model never uses these.
  std::optional<double> omega_m;
  std::optional<double> omega_0;
  std::optional<double> omega_plus;
  std::optional<double> omega_minus;

  double gamma_plus() const { return gamma0_plus + gammae_plus; }
  double gamma_minus() const { return gamma0_minus + gammae_minus; }
  double gamma_center() const { return gamma0_center + gammae_center; }

  // Throws config_error listing every violated constraint.
  void validate() const;
};

// Intracavity pump amplitude from the external drive: C0 = sqrt(2/gamma0)*A0.
double c0_from_pump(double pump_amplitude, double gamma0_center);

// Coupling coefficients derived from an operating point:
//   g_pm   = C0^2 eta_pm^2 / gamma_pm
//   g_diff = g_plus - g_minus   (optically induced mechanical damping)
//   g_sum  = g_plus + g_minus   (photonic gain coefficient)
struct DerivedCouplings {
  double g_plus = 0.0;
  double g_minus = 0.0;
  double g_diff = 0.0;
  double g_sum = 0.0;
  double c0 = 0.0;

  // Cavity-filtered measurement strength for the symmetric configuration
  // (equal sideband linewidths and couplings):
  //   K(omega) = 4 gamma eta^2 C0^2 / (gamma^2 + omega^2)
  // Throws misuse_error when the configuration is not symmetric.
  double coupling_strength_K(double omega) const;

  bool symmetric = false;
  double sym_gamma = 0.0;  // common sideband half-linewidth when symmetric
  double sym_eta = 0.0;
};

DerivedCouplings derive_couplings(const SystemParams& params);

// Heuristic thresholds for the regime checks; not physics, just warning levels.
struct RegimeThresholds {
  double mech_fraction = 0.1;  // warn when gamma_m >= fraction * min(gamma_pm)
  double loss_fraction = 0.1;  // warn when gammae >= fraction * gamma0
};

struct RegimeFinding {
  std::string inequality;  // the violated assumption, e.g. "gamma_m << gamma_pm"
  std::string detail;
};

// Soft checks of the modelling assumptions (narrow mechanics, small loss).
// Returns findings, never throws.
std::vector<RegimeFinding> validate_regime(const SystemParams& params,
                                           const RegimeThresholds& thresholds = {});

}  // namespace omt
