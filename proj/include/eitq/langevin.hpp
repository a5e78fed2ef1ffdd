#pragma once

#include <complex>

#include "eitq/medium.hpp"

namespace eitq {

/// Atomic population and coherence expectation values entering the noise
/// correlation brackets.
struct Populations {
  double sigma_bb = 1.0;
  double sigma_cc = 0.0;
  double sigma_aa = 0.0;
  std::complex<double> sigma_ac{0.0, 0.0};
  std::complex<double> sigma_ca{0.0, 0.0};

  static Populations weak_probe() { return Populations{}; }
  void validate() const;  // populations in [0,1], summing to 1 within 1e-12
};

/// Amplitudes multiplying delta(z1-z2) delta(w1+w2) in the white-noise force
/// correlations, i.e. the population brackets divided by n*A.
struct DiffusionCoefficients {
  double d_ba_ab = 0;
  std::complex<double> d_ab_bc{0, 0};
  std::complex<double> d_cb_ba{0, 0};
  double d_bc_cb = 0;
  double d_cb_bc = 0;  // shares the bracket of d_bc_cb
};

/// Evaluates the diffusion amplitudes at the given populations.
/// Requires gamma_b = gamma_c = gamma_ba = gamma_ac (UnequalDecayRates otherwise).
DiffusionCoefficients diffusion(const MediumParams& p, const Populations& pops);

/// (1 - e^{-2xL}) / (2x), the propagation filling factor of the distributed
/// noise sources, with a series branch at the removable singularity x -> 0.
double attenuation_integral(double re_lambda, double length);

/// Added-noise spectral density under the weak-probe populations. Dimensionless,
/// shot noise = 1; the same term enters squeezing and entanglement outputs.
double noise_floor(const MediumParams& p, double omega);

/// Low-absorption variant: the filling factor is evaluated at the line-center
/// absorption K instead of Re Lambda(omega).
double noise_floor_low_absorption(const MediumParams& p, double omega);

/// Relative difference between the closed-form filling factor and composite
/// Simpson quadrature of the underlying cell integral. n_panels >= 16.
double noise_floor_quadrature_check(const MediumParams& p, double omega,
                                    int n_panels);

}  // namespace eitq
