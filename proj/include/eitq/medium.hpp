#pragma once

#include <complex>

#include "eitq/errors.hpp"

namespace eitq {

inline constexpr double speed_of_light = 299792458.0;  // m/s

/// Physical parameters of the cell and fields. All rates are angular
/// frequencies in rad/s; lengths in m, areas in m^2, densities in m^-3.
struct MediumParams {
  double length_L = 0;       // cell length
  double atom_number_N = 0;  // atoms in the interaction volume (0: derive from n*A*L)
  double density_n = 0;
  double beam_area_A = 0;
  double gamma_ba = 0;  // optical coherence decay
  double gamma_bc = 0;  // ground-state dephasing (may be 0)
  double gamma_b = 0, gamma_c = 0, gamma_ac = 0;
  double omega_c = 0;    // control Rabi frequency, real and nonnegative
  double coupling_g = 0; // atom-field coupling, real and nonnegative
  double c_light = speed_of_light;

  double ng2() const { return atom_number_N * coupling_g * coupling_g; }

  // Returns a copy with atom_number_N filled in from n*A*L when unset and the
  // remaining decay rates defaulted to gamma_ba when unset.
  // Throws std::invalid_argument naming the offending field.
  MediumParams validated() const;
};

/// Slow-light figures of merit from the quadratic expansion of the transfer
/// exponent about the carrier.
struct Susceptibility {
  MediumParams params;
  double absorption_K = 0;    // 1/m, zeroth order
  double group_velocity = 0;  // m/s
  double window = 0;          // rad/s, transparency window (positive root)
  double delay = 0;           // s, L*(1/v_g - 1/c)

  std::complex<double> lambda(double omega) const;
};

// Medium part of the transfer exponent, scalar kernel. Valid for any
// floating-point Real; kept header-visible for reuse at higher precision.
template <class Real>
void lambda_medium_parts(Real ng2, Real c, Real gamma_ba, Real gamma_bc,
                         Real omega_c, Real omega, Real& re, Real& im) {
  const Real d_re = gamma_ba * gamma_bc - omega * omega + omega_c * omega_c;
  const Real d_im = -omega * (gamma_ba + gamma_bc);
  const Real den = d_re * d_re + d_im * d_im;
  // (gamma_bc - i*omega) / (d_re + i*d_im)
  const Real n_re = (gamma_bc * d_re - omega * d_im) / den;
  const Real n_im = (-omega * d_re - gamma_bc * d_im) / den;
  const Real pref = ng2 / c;
  re = pref * n_re;
  im = pref * n_im;
}

/// Medium term of the transfer exponent Lambda, without the free-space -i*omega/c.
std::complex<double> lambda_medium(const MediumParams& p, double omega);

/// Full complex transfer exponent Lambda(omega) in 1/m. Exact rational form,
/// no series approximation.
std::complex<double> lambda(const MediumParams& p, double omega);

/// Closed-form K, v_g, delta-omega and delay. Throws DegenerateRegime when
/// omega_c <= gamma_bc or the window expression turns nonpositive.
Susceptibility derived_figures(const MediumParams& p);

/// Finite-difference validation of the expansion coefficients against the
/// exact Lambda. All residuals are relative.
struct TaylorResiduals {
  double absorption = 0;  // K vs Re Lambda(0)
  double inverse_vg = 0;  // 1/v_g vs -Im dLambda/domega at 0
  double curvature = 0;   // 2/(window^2 L) vs d^2 Re Lambda/domega^2 at 0
  double max() const;
};
TaylorResiduals taylor_check(const MediumParams& p, double h = 0.0);

/// Inverts the group-velocity formula for the coupling; the returned g
/// reproduces target_vg through derived_figures to relative 1e-12.
double calibrate_coupling(const MediumParams& p_without_g, double target_vg);

}  // namespace eitq
