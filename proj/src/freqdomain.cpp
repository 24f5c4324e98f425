#include "omt/freqdomain.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace omt {

const char* channel_name(InputChannel ch) {
  switch (ch) {
    case InputChannel::a_plus: return "a_plus";
    case InputChannel::a_minus: return "a_minus";
    case InputChannel::e_plus: return "e_plus";
    case InputChannel::e_minus: return "e_minus";
    case InputChannel::thermal_q: return "thermal_q";
    case InputChannel::signal_f: return "signal_f";
  }
  return "?";
}

double channel_psd(InputChannel ch, double n_thermal) {
  switch (ch) {
    case InputChannel::a_plus:
    case InputChannel::a_minus:
    case InputChannel::e_plus:
    case InputChannel::e_minus:
      return 1.0;  // vacuum quadrature PSD, symmetrized convention
    case InputChannel::thermal_q:
      return 2.0 * n_thermal + 1.0;
    case InputChannel::signal_f:
      return 0.0;  // deterministic drive
  }
  return 0.0;
}

IntracavityTransfer system_solve(const SystemParams& p, double omega) {
  p.validate();
  const double c0 = c0_from_pump(p.pump_amplitude, p.gamma0_center);
  const cplx iw(0.0, omega);

  // Unknowns x = (c_plus, c_minus, d).
  Eigen::Matrix3cd A;
  A << cplx(p.gamma_plus()) - iw, 0.0, p.eta_plus * c0,
       0.0, cplx(p.gamma_minus()) - iw, -p.eta_minus * c0,
       -c0 * p.eta_plus, -c0 * p.eta_minus, cplx(p.gamma_m) - iw;

  Eigen::PartialPivLU<Eigen::Matrix3cd> lu(A);

  // Hadamard-style scale for the singularity test.
  double scale = 1.0;
  for (int r = 0; r < 3; ++r)
    scale *= std::abs(A(r, 0)) + std::abs(A(r, 1)) + std::abs(A(r, 2));
  const double det = std::abs(lu.determinant());
  if (!(det > 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "degenerate amplitude-quadrature system at omega = " << omega
        << " (|det| = " << det << "); optical anti-damping cancels the "
           "mechanical damping at this operating point";
    throw degenerate_error(msg.str());
  }

  // Right-hand-side columns, one per input channel. The thermal column is
  // sqrt(2 gamma_m) times the signal column and is scaled after the solve so
  // the proportionality is exact.
  IntracavityTransfer out;
  out.omega = omega;
  auto solve_into = [&](const Eigen::Vector3cd& rhs, InputChannel ch) {
    const Eigen::Vector3cd x = lu.solve(rhs);
    const int i = static_cast<int>(ch);
    out.c_plus[i] = x(0);
    out.c_minus[i] = x(1);
    out.d[i] = x(2);
  };

  solve_into({std::sqrt(2.0 * p.gamma0_plus), 0.0, 0.0}, InputChannel::a_plus);
  solve_into({0.0, std::sqrt(2.0 * p.gamma0_minus), 0.0}, InputChannel::a_minus);
  solve_into({std::sqrt(2.0 * p.gammae_plus), 0.0, 0.0}, InputChannel::e_plus);
  solve_into({0.0, std::sqrt(2.0 * p.gammae_minus), 0.0}, InputChannel::e_minus);
  solve_into({0.0, 0.0, 1.0}, InputChannel::signal_f);

  const double sq = std::sqrt(2.0 * p.gamma_m);
  const int f = static_cast<int>(InputChannel::signal_f);
  const int q = static_cast<int>(InputChannel::thermal_q);
  out.c_plus[q] = sq * out.c_plus[f];
  out.c_minus[q] = sq * out.c_minus[f];
  out.d[q] = sq * out.d[f];
  return out;
}

TransferSet output_transfer(const SystemParams& p, double omega) {
  const IntracavityTransfer ic = system_solve(p, omega);
  TransferSet t;
  t.omega = omega;
  t.gamma_m = p.gamma_m;
  const double sp = std::sqrt(2.0 * p.gamma0_plus);
  const double sm = std::sqrt(2.0 * p.gamma0_minus);
  for (int i = 0; i < kNumChannels; ++i) {
    t.t_bplus[i] = sp * ic.c_plus[i];
    t.t_bminus[i] = sm * ic.c_minus[i];
  }
  t.t_bplus[static_cast<int>(InputChannel::a_plus)] -= 1.0;
  t.t_bminus[static_cast<int>(InputChannel::a_minus)] -= 1.0;
  return t;
}

double effective_linewidth(const SystemParams& p) {
  const DerivedCouplings c = derive_couplings(p);
  const double width = p.gamma_m + c.g_diff;
  if (!(width > 0)) {
    std::ostringstream msg;
    msg << "unstable operating point: gamma_m + g_diff = " << width << " <= 0";
    throw instability_error(msg.str());
  }
  return width;
}

}  // namespace omt
