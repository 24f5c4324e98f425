#pragma once

#include <array>
#include <string>
#include <utility>

#include "omt/freqdomain.hpp"

namespace omt {

// A measured scalar channel y = conj(w_plus) b_plus + conj(w_minus) b_minus.
// Force-referred densities are invariant under rescaling both weights by the
// same nonzero constant.
struct CombinationWeights {
  cplx w_plus{};
  cplx w_minus{};
  std::string label;

  CombinationWeights() = default;
  CombinationWeights(cplx wp, cplx wm, std::string lbl);

  // Channel response: conj(w_plus) t_bplus[ch] + conj(w_minus) t_bminus[ch].
  cplx response(const TransferSet& t, InputChannel ch) const;
  double norm() const;
};

CombinationWeights balanced_difference();  // (1, -1)/sqrt(2)
CombinationWeights balanced_sum();         // (1, +1)/sqrt(2)

// Force-referred noise budget at one frequency for one channel.
struct NoiseBudgetRow {
  double omega = 0.0;
  double s_total = 0.0;                     // optical (vacuum-port) total
  std::array<double, 4> s_by_channel{};     // a+, a-, e+, e- contributions
  double s_thermal = 0.0;                   // = 2 gamma_m (2 n_T + 1) always
  double s_sql = 0.0;
  double ratio_R = 0.0;                     // s_total / s_sql
  double signal_gain = 0.0;                 // |w . t_f| at unit weight norm
};

// The four sideband combinations built from the coupling coefficients:
//   alpha/beta_plus  = (sqrt(g-) x_+ + sqrt(g+) x_-) / sqrt(g_sum)
//   alpha/beta_minus = (sqrt(g+) x_+ - sqrt(g-) x_-) / sqrt(g_sum)
// alpha_* act on inputs, beta_* on outputs; the weight pairs coincide.
struct AlphaBetaSet {
  CombinationWeights alpha_plus, alpha_minus, beta_plus, beta_minus;
};

AlphaBetaSet alpha_beta_weights(const DerivedCouplings& c);

// Coefficient kappa of the composite channel beta_minus + kappa beta_plus.
//   exact:      2 sqrt(g_sum^2 - g_diff^2) / (gamma_m + g_diff)
//               cancels the optical noise of the composite in the adiabatic
//               lossless limit (and exactly zeroes it when g_diff = gamma_m)
//   asymptotic: 2 sqrt(g_diff^2 + g_sum^2) / (gamma_m + g_diff)
//               the large-gain approximation of the same coefficient,
//               accurate to O(g_diff^2/g_sum^2)
enum class BetaCoefficient { exact, asymptotic };

double beta_correction_coefficient(const DerivedCouplings& c, double gamma_m,
                                   BetaCoefficient kind);

// The composite measurement channel expressed as a single weight pair on
// (b_plus, b_minus). Requires gamma_m + g_diff > 0.
CombinationWeights composite_beta_combination(const SystemParams& params,
                                              const DerivedCouplings& c,
                                              BetaCoefficient kind = BetaCoefficient::exact);

// Correction coefficient that actually minimizes the optical noise of
// beta_minus + kappa beta_plus for the given transfer set (real kappa).
double optimal_beta_correction(const TransferSet& t, const DerivedCouplings& c);

// Refers every noise input to the signal force through the chosen channel.
// Throws signal_blind_error when the channel does not couple to the signal.
NoiseBudgetRow force_referred_psd(const TransferSet& t,
                                  const CombinationWeights& w,
                                  double n_thermal);

// Whitened matched-filter optimum over complex weight pairs:
//   w* = N^-1 t_f,  s_min = 1 / (t_f^dag N^-1 t_f),
// with N the vacuum-noise covariance of the two output quadratures.
// Returns the weights (unit norm) and the minimal force-referred density.
std::pair<CombinationWeights, double> optimal_weights(const TransferSet& t);

// Standard quantum limit 2 sqrt(gamma_m^2 + omega^2).
double sql(double omega, double gamma_m);

// Closed-form force-referred noise floors for special configurations.
enum class ReferenceCase {
  symmetric_lossless,  // (gamma_m^2 + w^2) / K(w)
  nonsym_lossless,     // ((gamma_m - g_diff)^2 + w^2) / (2 g_sum), adiabatic
  nonsym_bound,        // (g_diff^2 + w^2) / (2 g_sum) with its lower bound
};

struct ReferenceValue {
  double s_qu = 0.0;
  double lower_bound = 0.0;  // only set for nonsym_bound
  double s_sql = 0.0;
};

ReferenceValue analytic_reference(const SystemParams& params,
                                  const DerivedCouplings& c, double omega,
                                  ReferenceCase which);

// Amplitude gain sqrt(g_sum/gamma_m) of the composite channel at the tuned
// point g_diff = gamma_m (lossless). Throws misuse_error off the tuned point.
double amplification_gain(const SystemParams& params, const DerivedCouplings& c);

// Output-referred noise PSD of a channel (vacuum ports plus thermal force).
double output_noise_psd(const TransferSet& t, const CombinationWeights& w,
                        double n_thermal);

}  // namespace omt
