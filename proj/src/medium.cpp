#include "eitq/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eitq {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

MediumParams MediumParams::validated() const {
  MediumParams p = *this;
  require(p.length_L > 0, "length_L must be positive");
  require(p.density_n > 0, "density_n must be positive");
  require(p.beam_area_A > 0, "beam_area_A must be positive");
  require(p.gamma_ba > 0, "gamma_ba must be positive");
  require(p.gamma_bc >= 0, "gamma_bc must be nonnegative");
  require(p.omega_c >= 0, "omega_c must be nonnegative");
  require(p.coupling_g >= 0, "coupling_g must be nonnegative");
  require(p.c_light > 0, "c_light must be positive");

  const double derived_N = p.density_n * p.beam_area_A * p.length_L;
  if (p.atom_number_N <= 0) {
    p.atom_number_N = derived_N;
  } else {
    require(std::abs(p.atom_number_N - derived_N) <= 1e-9 * p.atom_number_N,
            "atom_number_N inconsistent with density_n * beam_area_A * length_L");
  }
  if (p.gamma_b <= 0) p.gamma_b = p.gamma_ba;
  if (p.gamma_c <= 0) p.gamma_c = p.gamma_ba;
  if (p.gamma_ac <= 0) p.gamma_ac = p.gamma_ba;
  return p;
}

std::complex<double> lambda_medium(const MediumParams& p, double omega) {
  double re, im;
  lambda_medium_parts(p.ng2(), p.c_light, p.gamma_ba, p.gamma_bc, p.omega_c,
                      omega, re, im);
  return {re, im};
}

std::complex<double> lambda(const MediumParams& p, double omega) {
  return lambda_medium(p, omega) + std::complex<double>(0.0, -omega / p.c_light);
}

std::complex<double> Susceptibility::lambda(double omega) const {
  return eitq::lambda(params, omega);
}

Susceptibility derived_figures(const MediumParams& p) {
  if (p.omega_c <= p.gamma_bc)
    throw DegenerateRegime("omega_c must exceed gamma_bc for slow-light figures");
  const double d0 = p.gamma_ba * p.gamma_bc + p.omega_c * p.omega_c;
  const double window_den =
      p.omega_c * p.omega_c * (2.0 * p.gamma_bc + p.gamma_ba) -
      p.gamma_bc * p.gamma_bc * p.gamma_bc;
  if (window_den <= 0)
    throw DegenerateRegime("transparency window expression is nonpositive");

  const double ng2 = p.ng2();
  Susceptibility s;
  s.params = p;
  s.absorption_K = ng2 * p.gamma_bc / (p.c_light * d0);
  s.group_velocity =
      p.c_light /
      (1.0 + ng2 * (p.omega_c * p.omega_c - p.gamma_bc * p.gamma_bc) / (d0 * d0));
  // g = 0 leaves the medium invisible; the window is unbounded there.
  s.window = ng2 > 0 ? std::sqrt(p.c_light * d0 * d0 * d0 /
                                 (ng2 * p.length_L * window_den))
                     : std::numeric_limits<double>::infinity();
  s.delay = p.length_L * (1.0 / s.group_velocity - 1.0 / p.c_light);
  return s;
}

double TaylorResiduals::max() const {
  return std::max({absorption, inverse_vg, curvature});
}

TaylorResiduals taylor_check(const MediumParams& p, double h) {
  const Susceptibility s = derived_figures(p);
  if (h <= 0) {
    if (!std::isfinite(s.window))
      throw std::invalid_argument("taylor_check needs a finite window to pick h");
    h = s.window / 1000.0;
  }

  const std::complex<double> lp = lambda(p, h);
  const std::complex<double> l0 = lambda(p, 0.0);
  const std::complex<double> lm = lambda(p, -h);

  TaylorResiduals r;
  {
    const double num = std::abs(l0.real() - s.absorption_K);
    const double den = std::max(std::abs(l0.real()), std::abs(s.absorption_K));
    r.absorption = den > 0 ? num / den : 0.0;
  }
  {
    // -Im dLambda/domega at 0 equals 1/v_g, free-space term included.
    const double slope = (lp.imag() - lm.imag()) / (2.0 * h);
    r.inverse_vg = std::abs(-slope - 1.0 / s.group_velocity) * s.group_velocity;
  }
  {
    const double fd2 = (lp.real() - 2.0 * l0.real() + lm.real()) / (h * h);
    const double expected = 2.0 / (s.window * s.window * p.length_L);
    r.curvature = expected > 0 ? std::abs(fd2 - expected) / expected : std::abs(fd2);
  }
  return r;
}

double calibrate_coupling(const MediumParams& p_without_g, double target_vg) {
  const MediumParams& p = p_without_g;
  if (!(target_vg > 0) || !(target_vg <= p.c_light))
    throw std::invalid_argument("target_vg must lie in (0, c]");
  if (p.omega_c * p.omega_c <= p.gamma_bc * p.gamma_bc)
    throw DegenerateRegime("calibration requires omega_c > gamma_bc");

  const double d0 = p.gamma_ba * p.gamma_bc + p.omega_c * p.omega_c;
  const double ng2 = (p.c_light / target_vg - 1.0) * d0 * d0 /
                     (p.omega_c * p.omega_c - p.gamma_bc * p.gamma_bc);
  return std::sqrt(ng2 / p.atom_number_N);
}

}  // namespace eitq
