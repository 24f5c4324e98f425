#include "omt/combine.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace omt {

namespace {

constexpr int kVacuumChannels = 4;  // a+, a-, e+, e-

const std::array<InputChannel, kVacuumChannels> kVacuum = {
    InputChannel::a_plus, InputChannel::a_minus, InputChannel::e_plus,
    InputChannel::e_minus};

}  // namespace

CombinationWeights::CombinationWeights(cplx wp, cplx wm, std::string lbl)
    : w_plus(wp), w_minus(wm), label(std::move(lbl)) {
  if (std::abs(wp) == 0.0 && std::abs(wm) == 0.0)
    throw config_error("combination weights must not both be zero");
}

cplx CombinationWeights::response(const TransferSet& t, InputChannel ch) const {
  const int i = static_cast<int>(ch);
  return std::conj(w_plus) * t.t_bplus[i] + std::conj(w_minus) * t.t_bminus[i];
}

double CombinationWeights::norm() const {
  return std::hypot(std::abs(w_plus), std::abs(w_minus));
}

CombinationWeights balanced_difference() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, -s, "difference"};
}

CombinationWeights balanced_sum() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, "sum"};
}

AlphaBetaSet alpha_beta_weights(const DerivedCouplings& c) {
  if (!(c.g_sum > 0))
    throw misuse_error("alpha/beta combinations undefined: g_sum = g_plus + g_minus is 0");
  const double rp = std::sqrt(c.g_plus / c.g_sum);
  const double rm = std::sqrt(c.g_minus / c.g_sum);
  AlphaBetaSet s;
  s.alpha_plus = {rm, rp, "alpha-plus"};
  s.alpha_minus = {rp, -rm, "alpha-minus"};
  s.beta_plus = {rm, rp, "beta-plus"};
  s.beta_minus = {rp, -rm, "beta-minus"};
  return s;
}

double beta_correction_coefficient(const DerivedCouplings& c, double gamma_m,
                                   BetaCoefficient kind) {
  const double den = gamma_m + c.g_diff;
  if (!(den > 0))
    throw misuse_error("beta correction undefined: gamma_m + g_diff <= 0");
  if (kind == BetaCoefficient::exact) {
    const double arg = c.g_sum * c.g_sum - c.g_diff * c.g_diff;  // = 4 g+ g-
    return 2.0 * std::sqrt(std::max(arg, 0.0)) / den;
  }
  return 2.0 * std::sqrt(c.g_diff * c.g_diff + c.g_sum * c.g_sum) / den;
}

CombinationWeights composite_beta_combination(const SystemParams& params,
                                              const DerivedCouplings& c,
                                              BetaCoefficient kind) {
  const double kappa = beta_correction_coefficient(c, params.gamma_m, kind);
  const AlphaBetaSet ab = alpha_beta_weights(c);
  CombinationWeights w;
  w.w_plus = ab.beta_minus.w_plus + kappa * ab.beta_plus.w_plus;
  w.w_minus = ab.beta_minus.w_minus + kappa * ab.beta_plus.w_minus;
  w.label = kind == BetaCoefficient::exact ? "beta-composite"
                                           : "beta-composite-asymptotic";
  return w;
}

double optimal_beta_correction(const TransferSet& t, const DerivedCouplings& c) {
  const AlphaBetaSet ab = alpha_beta_weights(c);
  // Minimize sum_i |y_minus_i + kappa y_plus_i|^2 over real kappa.
  double num = 0.0, den = 0.0;
  for (InputChannel ch : kVacuum) {
    const cplx yp = ab.beta_plus.response(t, ch);
    const cplx ym = ab.beta_minus.response(t, ch);
    num += std::real(ym * std::conj(yp));
    den += std::norm(yp);
  }
  if (!(den > 0))
    throw degenerate_error("composite correction undefined: beta-plus channel has no noise response");
  return -num / den;
}

NoiseBudgetRow force_referred_psd(const TransferSet& t,
                                  const CombinationWeights& w,
                                  double n_thermal) {
  const cplx yf = w.response(t, InputChannel::signal_f);
  double tf_scale = 0.0;
  for (int i = 0; i < kNumChannels; ++i)
    tf_scale = std::max(tf_scale, std::max(std::abs(t.t_bplus[i]), std::abs(t.t_bminus[i])));
  if (std::abs(yf) <= 1e-12 * w.norm() * tf_scale) {
    std::ostringstream msg;
    msg << "channel '" << w.label << "' is signal-blind at omega = " << t.omega;
    throw signal_blind_error(msg.str());
  }
  const double gain2 = std::norm(yf);

  NoiseBudgetRow row;
  row.omega = t.omega;
  for (int k = 0; k < kVacuumChannels; ++k) {
    const double s = std::norm(w.response(t, kVacuum[k])) / gain2;
    row.s_by_channel[k] = s;
    row.s_total += s;
  }
  row.s_thermal =
      channel_psd(InputChannel::thermal_q, n_thermal) *
      std::norm(w.response(t, InputChannel::thermal_q)) / gain2;
  row.s_sql = sql(t.omega, t.gamma_m);
  row.ratio_R = row.s_total / row.s_sql;
  row.signal_gain = std::abs(yf) / w.norm();
  return row;
}

std::pair<CombinationWeights, double> optimal_weights(const TransferSet& t) {
  // Stack the vacuum transfer columns; N = T T^dag. Working from the SVD of T
  // keeps the matched filter well conditioned when the back-action term is
  // large.
  Eigen::Matrix<cplx, 2, kVacuumChannels> T;
  for (int k = 0; k < kVacuumChannels; ++k) {
    const int i = static_cast<int>(kVacuum[k]);
    T(0, k) = t.t_bplus[i];
    T(1, k) = t.t_bminus[i];
  }
  Eigen::Vector2cd tf(t.t_bplus[static_cast<int>(InputChannel::signal_f)],
                      t.t_bminus[static_cast<int>(InputChannel::signal_f)]);
  if (tf.norm() <= 1e-300 ||
      tf.norm() <= 1e-14 * T.norm())
    throw signal_blind_error("optimal_weights: no signal reaches the outputs");

  Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, kVacuumChannels>> svd(
      T, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 1e-14 * sv(0)))
    throw degenerate_error("optimal_weights: vacuum-noise covariance is singular");

  double inv_smin = 0.0;
  Eigen::Vector2cd w = Eigen::Vector2cd::Zero();
  for (int k = 0; k < 2; ++k) {
    const cplx proj = svd.matrixU().col(k).adjoint() * tf;
    inv_smin += std::norm(proj) / (sv(k) * sv(k));
    w += svd.matrixU().col(k) * (proj / (sv(k) * sv(k)));
  }
  w.normalize();
  CombinationWeights cw;
  cw.w_plus = w(0);
  cw.w_minus = w(1);
  cw.label = "optimal";
  return {cw, 1.0 / inv_smin};
}

double sql(double omega, double gamma_m) {
  return 2.0 * std::hypot(gamma_m, omega);
}

ReferenceValue analytic_reference(const SystemParams& p,
                                  const DerivedCouplings& c, double omega,
                                  ReferenceCase which) {
  const bool lossless = p.gammae_plus == 0.0 && p.gammae_minus == 0.0;
  ReferenceValue v;
  v.s_sql = sql(omega, p.gamma_m);
  switch (which) {
    case ReferenceCase::symmetric_lossless: {
      if (!c.symmetric || !lossless)
        throw misuse_error("symmetric_lossless reference requires equal sideband "
                           "linewidths/couplings and zero internal loss");
      v.s_qu = (p.gamma_m * p.gamma_m + omega * omega) / c.coupling_strength_K(omega);
      return v;
    }
    case ReferenceCase::nonsym_lossless: {
      if (!lossless)
        throw misuse_error("nonsym_lossless reference requires zero internal loss");
      if (!(c.g_sum > 0))
        throw misuse_error("nonsym_lossless reference requires g_sum > 0");
      const double d = p.gamma_m - c.g_diff;
      v.s_qu = (d * d + omega * omega) / (2.0 * c.g_sum);
      return v;
    }
    case ReferenceCase::nonsym_bound: {
      if (!lossless)
        throw misuse_error("nonsym_bound reference requires zero internal loss");
      if (!(c.g_sum > 0))
        throw misuse_error("nonsym_bound reference requires g_sum > 0");
      v.s_qu = (c.g_diff * c.g_diff + omega * omega) / (2.0 * c.g_sum);
      v.lower_bound = std::abs(c.g_diff * omega / c.g_sum);
      return v;
    }
  }
  throw misuse_error("unknown reference case");
}

double amplification_gain(const SystemParams& p, const DerivedCouplings& c) {
  const bool lossless = p.gammae_plus == 0.0 && p.gammae_minus == 0.0;
  if (!lossless)
    throw misuse_error("amplification_gain: requires zero internal loss");
  if (std::abs(c.g_diff - p.gamma_m) > 1e-9 * p.gamma_m)
    throw misuse_error("amplification_gain: requires the tuned point g_diff = gamma_m");
  return std::sqrt(c.g_sum / p.gamma_m);
}

double output_noise_psd(const TransferSet& t, const CombinationWeights& w,
                        double n_thermal) {
  double s = 0.0;
  for (InputChannel ch : kVacuum) s += std::norm(w.response(t, ch));
  s += channel_psd(InputChannel::thermal_q, n_thermal) *
       std::norm(w.response(t, InputChannel::thermal_q));
  return s;
}

}  // namespace omt
