#pragma once

#include <cstdint>
#include <vector>

#include "omt/combine.hpp"
#include "omt/model.hpp"

namespace omt {

// Deterministic drive added to the mechanical equation.
struct SignalSpec {
  enum class Kind { none, sinusoid, pulse };
  Kind kind = Kind::none;
  double amplitude = 0.0;
  double omega_s = 0.0;  // sinusoid frequency
  double tau = 0.0;      // pulse duration (rectangular, starting at t = 0)
};

struct SimConfig {
  double dt = 0.0;
  double total_time = 0.0;
  std::uint64_t seed = 0;
  SignalSpec signal{};

  // dt * max(gamma_pm, gamma_m + |g_diff|) <= 0.01 and
  // total_time * gamma_m >= 200; throws config_error otherwise.
  void validate(const SystemParams& params) const;
};

struct TimeSeries {
  double dt = 0.0;
  std::vector<double> b_plus;   // output amplitude quadrature, upper sideband
  std::vector<double> b_minus;  // output amplitude quadrature, lower sideband
  std::vector<double> d;        // mechanical amplitude quadrature
};

// Euler-Maruyama integration of the amplitude-quadrature Langevin equations
// with white vacuum/thermal drives scaled to the unit-PSD convention of the
// frequency-domain solver. Refuses unstable operating points.
TimeSeries simulate(const SystemParams& params, const SimConfig& cfg);

struct PsdEstimate {
  std::vector<double> omega;    // angular frequency bins
  std::vector<double> psd;
  std::vector<double> ci_low;   // 95% confidence band (chi-squared)
  std::vector<double> ci_high;
  int n_segments = 0;
};

// Averaged-periodogram PSD (Hann window). overlap_fraction in [0, 0.9].
// Normalized so unit-PSD white noise estimates to 1. Throws numerical_error
// when fewer than 8 segments fit.
PsdEstimate psd_welch(const std::vector<double>& x, double dt,
                      int segment_length, double overlap_fraction);

struct DeviationReport {
  int n_bins = 0;
  double frac_within_ci = 0.0;
  double mean_rel_dev = 0.0;
  double max_rel_dev = 0.0;
};

// Per-bin comparison of an analytic PSD curve (linearly interpolated onto the
// estimate's bins) against the empirical estimate, restricted to a band.
DeviationReport compare(const std::vector<double>& omega_analytic,
                        const std::vector<double>& psd_analytic,
                        const PsdEstimate& empirical, double band_lo,
                        double band_hi);

// Analytic output-referred PSD of a measurement channel on a frequency grid,
// convenience wrapper for oracle comparisons.
std::vector<double> analytic_output_psd(const SystemParams& params,
                                        const CombinationWeights& w,
                                        const std::vector<double>& omegas);

}  // namespace omt
