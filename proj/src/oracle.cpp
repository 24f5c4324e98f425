#include "omt/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace omt {

void SimConfig::validate(const SystemParams& p) const {
  const DerivedCouplings c = derive_couplings(p);
  const double max_rate = std::max({p.gamma_plus(), p.gamma_minus(),
                                    p.gamma_m + std::abs(c.g_diff)});
  std::ostringstream errs;
  if (!(dt > 0) || dt * max_rate > 0.01)
    errs << "  dt must satisfy dt * max rate <= 0.01 (dt*rate = "
         << dt * max_rate << ")\n";
  if (!(total_time * p.gamma_m >= 200.0))
    errs << "  total_time must cover >= 200 mechanical correlation times\n";
  if (signal.kind == SignalSpec::Kind::pulse && !(signal.tau > 0))
    errs << "  pulse signal requires tau > 0\n";
  const std::string msg = errs.str();
  if (!msg.empty()) throw config_error("invalid simulation config:\n" + msg);
}

TimeSeries simulate(const SystemParams& p, const SimConfig& cfg) {
  p.validate();
  cfg.validate(p);
  const DerivedCouplings c = derive_couplings(p);
  if (!(p.gamma_m + c.g_diff > 0)) {
    std::ostringstream msg;
    msg << "refusing to integrate an unstable operating point: gamma_m + g_diff = "
        << p.gamma_m + c.g_diff << " <= 0";
    throw instability_error(msg.str());
  }

  const double dt = cfg.dt;
  const auto n_steps = static_cast<size_t>(std::llround(cfg.total_time / dt));
  const double c0 = c.c0;
  const double gp = p.gamma_plus(), gm = p.gamma_minus();
  const double ep_c0 = p.eta_plus * c0, em_c0 = p.eta_minus * c0;

  // White drives with quadrature PSD S enter as increments of variance S*dt;
  // the direct port feedthrough samples the same realization at S/dt. This
  // scaling reproduces the unit reflected-vacuum PSD of the frequency-domain
  // convention (checked by the calibration tests).
  const double sdt = std::sqrt(dt);
  const double k0p = std::sqrt(2.0 * p.gamma0_plus * dt);
  const double k0m = std::sqrt(2.0 * p.gamma0_minus * dt);
  const double kep = std::sqrt(2.0 * p.gammae_plus * dt);
  const double kem = std::sqrt(2.0 * p.gammae_minus * dt);
  const double kq = std::sqrt(2.0 * p.gamma_m * dt * (2.0 * p.n_thermal + 1.0));
  const double r0p = std::sqrt(2.0 * p.gamma0_plus);
  const double r0m = std::sqrt(2.0 * p.gamma0_minus);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto signal_at = [&](double t) -> double {
    switch (cfg.signal.kind) {
      case SignalSpec::Kind::none: return 0.0;
      case SignalSpec::Kind::sinusoid:
        return cfg.signal.amplitude * std::cos(cfg.signal.omega_s * t);
      case SignalSpec::Kind::pulse:
        return t < cfg.signal.tau ? cfg.signal.amplitude : 0.0;
    }
    return 0.0;
  };

  TimeSeries ts;
  ts.dt = dt;
  ts.b_plus.resize(n_steps);
  ts.b_minus.resize(n_steps);
  ts.d.resize(n_steps);

  double cp = 0.0, cm = 0.0, d = 0.0;
  for (size_t k = 0; k < n_steps; ++k) {
    const double xi_ap = gauss(rng);
    const double xi_am = gauss(rng);
    const double xi_ep = gauss(rng);
    const double xi_em = gauss(rng);
    const double xi_q = gauss(rng);

    ts.b_plus[k] = -xi_ap / sdt + r0p * cp;
    ts.b_minus[k] = -xi_am / sdt + r0m * cm;
    ts.d[k] = d;

    const double fs = signal_at(static_cast<double>(k) * dt);
    const double cp_n = cp + dt * (-gp * cp - ep_c0 * d) + k0p * xi_ap + kep * xi_ep;
    const double cm_n = cm + dt * (-gm * cm + em_c0 * d) + k0m * xi_am + kem * xi_em;
    const double d_n =
        d + dt * (-p.gamma_m * d + c0 * (p.eta_plus * cp + p.eta_minus * cm) + fs) +
        kq * xi_q;
    cp = cp_n;
    cm = cm_n;
    d = d_n;
  }
  return ts;
}

namespace {

// Standard-normal quantile for the 95% interval.
constexpr double kZ975 = 1.959963984540054;

// Wilson-Hilferty chi-squared quantile approximation.
double chi2_quantile(double z, double dof) {
  const double a = 2.0 / (9.0 * dof);
  const double t = 1.0 - a + z * std::sqrt(a);
  return dof * t * t * t;
}

}  // namespace

PsdEstimate psd_welch(const std::vector<double>& x, double dt,
                      int segment_length, double overlap_fraction) {
  if (segment_length < 16)
    throw config_error("psd_welch: segment_length too small");
  if (!(overlap_fraction >= 0.0 && overlap_fraction <= 0.9))
    throw config_error("psd_welch: overlap_fraction must be in [0, 0.9]");
  const auto n = static_cast<long>(x.size());
  const long step =
      std::max<long>(1, std::lround(segment_length * (1.0 - overlap_fraction)));
  const long n_segments = n < segment_length ? 0 : 1 + (n - segment_length) / step;
  if (n_segments < 8) {
    std::ostringstream msg;
    msg << "psd_welch: only " << n_segments
        << " segments available, need at least 8";
    throw numerical_error(msg.str());
  }

  std::vector<double> window(segment_length);
  double wsq = 0.0;
  for (int i = 0; i < segment_length; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / segment_length));
    wsq += window[i] * window[i];
  }

  const int n_bins = segment_length / 2 + 1;
  std::vector<double> in(segment_length);
  std::vector<fftw_complex> out(n_bins);
  fftw_plan plan = fftw_plan_dft_r2c_1d(segment_length, in.data(), out.data(),
                                        FFTW_ESTIMATE);

  std::vector<double> acc(n_bins, 0.0);
  for (long s = 0; s < n_segments; ++s) {
    const long off = s * step;
    for (int i = 0; i < segment_length; ++i) in[i] = window[i] * x[off + i];
    fftw_execute(plan);
    for (int k = 0; k < n_bins; ++k)
      acc[k] += out[k][0] * out[k][0] + out[k][1] * out[k][1];
  }
  fftw_destroy_plan(plan);

  // Two-sided normalization: unit-PSD white noise -> 1 at every bin.
  const double norm = dt / (wsq * static_cast<double>(n_segments));
  const double dof = 2.0 * static_cast<double>(n_segments);
  const double q_lo = chi2_quantile(-kZ975, dof);
  const double q_hi = chi2_quantile(kZ975, dof);

  PsdEstimate est;
  est.n_segments = static_cast<int>(n_segments);
  est.omega.resize(n_bins);
  est.psd.resize(n_bins);
  est.ci_low.resize(n_bins);
  est.ci_high.resize(n_bins);
  for (int k = 0; k < n_bins; ++k) {
    est.omega[k] = 2.0 * std::numbers::pi * k / (segment_length * dt);
    est.psd[k] = norm * acc[k];
    est.ci_low[k] = est.psd[k] * dof / q_hi;
    est.ci_high[k] = est.psd[k] * dof / q_lo;
  }
  return est;
}

DeviationReport compare(const std::vector<double>& omega_a,
                        const std::vector<double>& psd_a,
                        const PsdEstimate& emp, double band_lo, double band_hi) {
  if (omega_a.size() != psd_a.size() || omega_a.size() < 2)
    throw config_error("compare: analytic grid needs >= 2 points");
  DeviationReport rep;
  int within = 0;
  for (size_t k = 0; k < emp.omega.size(); ++k) {
    const double w = emp.omega[k];
    if (w < band_lo || w > band_hi) continue;
    if (w < omega_a.front() || w > omega_a.back()) continue;
    const auto it = std::upper_bound(omega_a.begin(), omega_a.end(), w);
    const size_t j = std::min<size_t>(omega_a.size() - 1,
                                      static_cast<size_t>(it - omega_a.begin()));
    const double t = (w - omega_a[j - 1]) / (omega_a[j] - omega_a[j - 1]);
    const double sa = psd_a[j - 1] + t * (psd_a[j] - psd_a[j - 1]);

    ++rep.n_bins;
    if (sa >= emp.ci_low[k] && sa <= emp.ci_high[k]) ++within;
    const double dev = std::abs(emp.psd[k] - sa) / sa;
    rep.mean_rel_dev += dev;
    rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
  }
  if (rep.n_bins > 0) {
    rep.frac_within_ci = static_cast<double>(within) / rep.n_bins;
    rep.mean_rel_dev /= rep.n_bins;
  }
  return rep;
}

std::vector<double> analytic_output_psd(const SystemParams& params,
                                        const CombinationWeights& w,
                                        const std::vector<double>& omegas) {
  std::vector<double> out;
  out.reserve(omegas.size());
  for (double omega : omegas) {
    const TransferSet t = output_transfer(params, omega);
    out.push_back(output_noise_psd(t, w, params.n_thermal));
  }
  return out;
}

}  // namespace omt
