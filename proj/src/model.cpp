#include "omt/model.hpp"

#include <cmath>
#include <sstream>

namespace omt {

namespace {

bool finite(double x) { return std::isfinite(x); }

void require(std::ostringstream& errs, bool ok, const char* what) {
  if (!ok) errs << "  " << what << "\n";
}

}  // namespace

void SystemParams::validate() const {
  std::ostringstream errs;
  require(errs, finite(gamma0_plus) && gamma0_plus > 0, "gamma0_plus must be > 0");
  require(errs, finite(gamma0_minus) && gamma0_minus > 0, "gamma0_minus must be > 0");
  require(errs, finite(gamma0_center) && gamma0_center > 0, "gamma0_center must be > 0");
  require(errs, finite(gamma_m) && gamma_m > 0, "gamma_m must be > 0");
  require(errs, finite(gammae_plus) && gammae_plus >= 0, "gammae_plus must be >= 0");
  require(errs, finite(gammae_minus) && gammae_minus >= 0, "gammae_minus must be >= 0");
  require(errs, finite(gammae_center) && gammae_center >= 0, "gammae_center must be >= 0");
  require(errs, finite(eta_plus) && eta_plus >= 0, "eta_plus must be real and >= 0");
  require(errs, finite(eta_minus) && eta_minus >= 0, "eta_minus must be real and >= 0");
  require(errs, finite(pump_amplitude) && pump_amplitude >= 0, "pump_amplitude must be >= 0");
  require(errs, finite(n_thermal) && n_thermal >= 0, "n_thermal must be >= 0");

  // Frequency metadata, when present, must be mutually consistent.
  if (omega_m && omega_0) {
    if (*omega_m <= 0 || *omega_0 <= 0 || *omega_0 <= *omega_m)
      errs << "  omega_0 and omega_m must satisfy omega_0 > omega_m > 0\n";
    const double tol = 1e-12 * (*omega_0);
    if (omega_plus && std::abs(*omega_plus - (*omega_0 + *omega_m)) > tol)
      errs << "  omega_plus inconsistent with omega_0 + omega_m\n";
    if (omega_minus && std::abs(*omega_minus - (*omega_0 - *omega_m)) > tol)
      errs << "  omega_minus inconsistent with omega_0 - omega_m\n";
  }

  const std::string msg = errs.str();
  if (!msg.empty()) throw config_error("invalid system parameters:\n" + msg);
}

double c0_from_pump(double pump_amplitude, double gamma0_center) {
  if (!(gamma0_center > 0))
    throw config_error("c0_from_pump: gamma0_center must be > 0");
  if (!(pump_amplitude >= 0))
    throw config_error("c0_from_pump: pump_amplitude must be >= 0");
  return std::sqrt(2.0 / gamma0_center) * pump_amplitude;
}

DerivedCouplings derive_couplings(const SystemParams& p) {
  p.validate();
  DerivedCouplings c;
  c.c0 = c0_from_pump(p.pump_amplitude, p.gamma0_center);
  const double c0sq = c.c0 * c.c0;
  c.g_plus = c0sq * p.eta_plus * p.eta_plus / p.gamma_plus();
  c.g_minus = c0sq * p.eta_minus * p.eta_minus / p.gamma_minus();
  c.g_diff = c.g_plus - c.g_minus;
  c.g_sum = c.g_plus + c.g_minus;

  const double gp = p.gamma_plus(), gm = p.gamma_minus();
  const double gmax = std::max(gp, gm);
  const double emax = std::max(p.eta_plus, p.eta_minus);
  c.symmetric = std::abs(gp - gm) <= 1e-12 * gmax &&
                std::abs(p.eta_plus - p.eta_minus) <= 1e-12 * std::max(emax, 1e-300);
  if (c.symmetric) {
    c.sym_gamma = gp;
    c.sym_eta = p.eta_plus;
  }
  return c;
}

double DerivedCouplings::coupling_strength_K(double omega) const {
  if (!symmetric)
    throw misuse_error("coupling_strength_K is defined for the symmetric "
                       "configuration only (equal sideband linewidths and couplings)");
  const double num = 4.0 * sym_gamma * sym_eta * sym_eta * c0 * c0;
  return num / (sym_gamma * sym_gamma + omega * omega);
}

std::vector<RegimeFinding> validate_regime(const SystemParams& p,
                                           const RegimeThresholds& th) {
  std::vector<RegimeFinding> findings;
  auto add = [&](const std::string& ineq, const std::string& detail) {
    findings.push_back({ineq, detail});
  };

  const double gmin = std::min(p.gamma_plus(), p.gamma_minus());
  if (p.gamma_m >= th.mech_fraction * gmin) {
    std::ostringstream d;
    d << "gamma_m = " << p.gamma_m << " is not << min(gamma_pm) = " << gmin;
    add("gamma_m << gamma_pm", d.str());
  }
  if (p.gammae_plus >= th.loss_fraction * p.gamma0_plus) {
    std::ostringstream d;
    d << "gammae_plus = " << p.gammae_plus << " is not << gamma0_plus = " << p.gamma0_plus;
    add("gammae_plus << gamma0_plus (loss not small)", d.str());
  }
  if (p.gammae_minus >= th.loss_fraction * p.gamma0_minus) {
    std::ostringstream d;
    d << "gammae_minus = " << p.gammae_minus << " is not << gamma0_minus = " << p.gamma0_minus;
    add("gammae_minus << gamma0_minus (loss not small)", d.str());
  }
  if (p.gammae_center >= th.loss_fraction * p.gamma0_center) {
    std::ostringstream d;
    d << "gammae_center = " << p.gammae_center << " is not << gamma0_center = " << p.gamma0_center;
    add("gammae_center << gamma0_center (loss not small)", d.str());
  }
  return findings;
}

}  // namespace omt
