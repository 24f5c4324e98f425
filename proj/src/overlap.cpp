#include "omt/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace omt {

namespace {

// Nodes/weights of n-point Gauss-Legendre on [-1, 1], Newton iteration on
// the Legendre recurrence from Chebyshev initial guesses.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / pp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
  }
};

const GaussLegendre& panel_rule() {
  static const GaussLegendre rule(16);
  return rule;
}

constexpr long kMaxNodes = 1 << 21;

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     double u) {
  if (u <= xs.front() || u >= xs.back()) return 0.0;
  const auto it = std::upper_bound(xs.begin(), xs.end(), u);
  const size_t j = static_cast<size_t>(it - xs.begin());
  const double t = (u - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

}  // namespace

double hermite_gauss(int n, double waist, double u) {
  if (n < 0) throw config_error("hermite_gauss: order must be >= 0");
  if (!(waist > 0)) throw config_error("hermite_gauss: waist must be > 0");
  const double x = u / waist;
  // Recurrence on the normalized oscillator functions keeps large orders
  // overflow-free.
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return h0 / std::sqrt(waist);
  double h1 = std::sqrt(2.0) * x * h0;
  for (int k = 2; k <= n; ++k) {
    const double h2 = std::sqrt(2.0 / k) * x * h1 - std::sqrt((k - 1.0) / k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1 / std::sqrt(waist);
}

ModeProfile ModeProfile::hermite_gauss_mode(int n, double waist) {
  if (n < 0) throw config_error("mode profile: order must be >= 0");
  if (!(waist > 0)) throw config_error("mode profile: waist must be > 0");
  ModeProfile m;
  m.hermite_ = true;
  m.n_ = n;
  m.waist_ = waist;
  m.parity_ = (n % 2 == 0) ? Parity::even : Parity::odd;
  return m;
}

ModeProfile ModeProfile::sampled(std::vector<double> grid,
                                 std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw config_error("sampled profile: grid/values size mismatch or too short");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw config_error("sampled profile: grid must be strictly increasing");
  ModeProfile m;
  m.hermite_ = false;
  m.grid_ = std::move(grid);
  m.values_ = std::move(values);

  // Detect parity from the samples when the grid is (anti)symmetric.
  double vmax = 0.0;
  for (double v : m.values_) vmax = std::max(vmax, std::abs(v));
  bool even = true, odd = true;
  for (size_t i = 0; i < m.grid_.size(); ++i) {
    const double mirror = interp_linear(m.grid_, m.values_, -m.grid_[i]);
    if (std::abs(mirror - m.values_[i]) > 1e-10 * vmax) even = false;
    if (std::abs(mirror + m.values_[i]) > 1e-10 * vmax) odd = false;
  }
  m.parity_ = even ? Parity::even : (odd ? Parity::odd : Parity::none);
  return m;
}

double ModeProfile::operator()(double u) const {
  if (hermite_) return hermite_gauss(n_, waist_, u);
  return interp_linear(grid_, values_, u);
}

double ModeProfile::extent() const {
  if (hermite_) return waist_ * (std::sqrt(2.0 * n_ + 1.0) + 8.0);
  return std::max(std::abs(grid_.front()), std::abs(grid_.back()));
}

double ModeProfile::feature_scale() const {
  if (hermite_) return waist_ / std::sqrt(n_ + 1.0);
  double dmin = grid_.back() - grid_.front();
  for (size_t i = 1; i < grid_.size(); ++i)
    dmin = std::min(dmin, grid_[i] - grid_[i - 1]);
  // A sampled curve is resolved once a few nodes land per sample interval.
  return 4.0 * dmin;
}

double overlap_eta(const ModeProfile& a, const ModeProfile& b,
                   const ModeProfile& c) {
  const double L = std::min({a.extent(), b.extent(), c.extent()});
  const double feature =
      std::min({a.feature_scale(), b.feature_scale(), c.feature_scale()});
  const auto& rule = panel_rule();
  const int nodes_per_feature = 40;
  const long nodes_needed =
      std::lround(std::ceil(nodes_per_feature * 2.0 * L / feature));
  if (nodes_needed > kMaxNodes) {
    std::ostringstream msg;
    msg << "overlap quadrature cannot resolve the integrand: needs "
        << nodes_needed << " nodes (budget " << kMaxNodes << ")";
    throw quadrature_error(msg.str());
  }
  int n_panels = static_cast<int>(std::max<long>(8, (nodes_needed + 15) / 16));
  if (n_panels % 2 != 0) ++n_panels;  // mirror panels about u = 0

  // Symmetric panel layout so parity cancellations survive in floating point.
  const double h = 2.0 * L / n_panels;
  double sum = 0.0;
  for (int pnl = 0; pnl < n_panels; ++pnl) {
    const double lo = -L + pnl * h;
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (size_t k = 0; k < rule.x.size(); ++k) {
      const double u = mid + 0.5 * h * rule.x[k];
      s += rule.w[k] * a(u) * b(u) * c(u);
    }
    sum += 0.5 * h * s;
  }
  return sum;
}

double eta_ratio(const ModeProfile& psi0, const ModeProfile& psi1,
                 const ModeProfile& psi2, const ModeProfile& psi_m) {
  const double num = std::abs(overlap_eta(psi1, psi2, psi_m));
  const double den = std::abs(overlap_eta(psi1, psi0, psi_m));
  if (den <= 1e-10) {
    std::ostringstream msg;
    msg << "eta ratio undefined: reference overlap |int psi1 psi0 psi_m| = "
        << den << " vanishes (parity-forbidden configuration)";
    throw numerical_error(msg.str());
  }
  return num / den;
}

}  // namespace omt
