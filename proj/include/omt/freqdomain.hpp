#pragma once

#include <array>
#include <complex>

#include "omt/model.hpp"

namespace omt {

using cplx = std::complex<double>;

// The six drives of the linearized amplitude-quadrature dynamics.
// Vacuum ports have unit quadrature PSD, the thermal force has 2 n_T + 1,
// and the signal force is deterministic.
enum class InputChannel {
  a_plus = 0,   // vacuum entering the upper-sideband coupling port
  a_minus = 1,  // vacuum entering the lower-sideband coupling port
  e_plus = 2,   // vacuum entering through upper-sideband internal loss
  e_minus = 3,  // vacuum entering through lower-sideband internal loss
  thermal_q = 4,
  signal_f = 5,
};

inline constexpr int kNumChannels = 6;

inline constexpr std::array<InputChannel, kNumChannels> kAllChannels = {
    InputChannel::a_plus,  InputChannel::a_minus, InputChannel::e_plus,
    InputChannel::e_minus, InputChannel::thermal_q, InputChannel::signal_f,
};

const char* channel_name(InputChannel ch);

// Symmetrized quadrature PSD of a noise input (signal_f returns 0: it is
// deterministic, not a noise).
double channel_psd(InputChannel ch, double n_thermal);

using ChannelArray = std::array<cplx, kNumChannels>;

// Per-frequency transfer coefficients from every input to the intracavity
// quadratures (c_plus, c_minus) and the mechanical quadrature d.
struct IntracavityTransfer {
  double omega = 0.0;
  ChannelArray c_plus{};
  ChannelArray c_minus{};
  ChannelArray d{};
};

// Transfer coefficients from every input to the two output quadratures.
struct TransferSet {
  double omega = 0.0;
  double gamma_m = 0.0;
  ChannelArray t_bplus{};
  ChannelArray t_bminus{};
};

// Solves the 3x3 amplitude-quadrature system at spectral frequency omega:
//   (gamma_+ - i w) c_+ + eta_+ C0 d = sqrt(2 gamma0_+) a_+ + sqrt(2 gammae_+) e_+
//   (gamma_- - i w) c_- - eta_- C0 d = sqrt(2 gamma0_-) a_- + sqrt(2 gammae_-) e_-
//   (gamma_m - i w) d - C0 (eta_+ c_+ + eta_- c_-) = sqrt(2 gamma_m) q + f
// Throws degenerate_error when the system is singular (optical anti-damping
// cancelling the mechanical damping).
IntracavityTransfer system_solve(const SystemParams& params, double omega);

// Applies the port relation b_pm = -a_pm + sqrt(2 gamma0_pm) c_pm to the
// intracavity solution. The -1 feedthrough lands only on the matching
// coupling-port vacuum.
TransferSet output_transfer(const SystemParams& params, double omega);

// Half-width gamma_m + g_diff of the mechanical response in the adiabatic
// regime. Throws instability_error when <= 0.
double effective_linewidth(const SystemParams& params);

}  // namespace omt
