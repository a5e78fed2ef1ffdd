#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "eitq/medium.hpp"

namespace eitq::testing {

// Warm rubidium-like reference cell used throughout the suite: 3.5 cm cell,
// 1e12 atoms/cm^3, gamma_ba = 6pi Mrad/s, control Rabi frequency 30pi Mrad/s,
// coupling calibrated so the group velocity is 3100 m/s.
inline MediumParams reference_cell(double gamma_bc = 10.0) {
  MediumParams p;
  p.length_L = 0.035;
  p.density_n = 1e18;
  p.beam_area_A = 1e-6;
  p.gamma_ba = 6e6 * M_PI;
  p.gamma_bc = gamma_bc;
  p.omega_c = 30e6 * M_PI;
  p.coupling_g = 0.0;
  p = p.validated();
  p.coupling_g = calibrate_coupling(p, 3100.0);
  return p;
}

// Random-cell generator for property tests. Ranges keep the cell in the
// slow-light regime: strong control, weak dephasing, moderate optical depth.
struct CellSampler {
  std::mt19937 rng;
  explicit CellSampler(unsigned seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  MediumParams draw() {
    for (;;) {
      MediumParams p;
      p.length_L = uniform(0.01, 0.1);
      p.density_n = log_uniform(1e16, 1e19);
      p.beam_area_A = log_uniform(1e-7, 1e-5);
      p.gamma_ba = log_uniform(1e6, 1e8);
      p.gamma_bc = p.gamma_ba * log_uniform(1e-7, 3e-4);
      p.omega_c = p.gamma_ba * uniform(2.0, 10.0);
      p.coupling_g = 0.0;
      p = p.validated();
      const double vg = log_uniform(100.0, std::min(1e5, 0.4 * p.length_L * p.gamma_ba));
      p.coupling_g = calibrate_coupling(p, vg);
      const double kl = derived_figures(p).absorption_K * p.length_L;
      if (kl <= 0.3) return p;  // keep the optical depth moderate
    }
  }
};

}  // namespace eitq::testing
