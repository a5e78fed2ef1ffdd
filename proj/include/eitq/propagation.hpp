#pragma once

#include <Eigen/Core>
#include <iosfwd>

#include "eitq/medium.hpp"

namespace eitq {

/// Gaussian probe envelope entering the cell at z = 0.
struct PulseSpec {
  double center_time = 0;       // s, >= 4*rms_width so the grid truncation is negligible
  double rms_width = 0;         // s, amplitude rms
  double peak_amplitude = 1.0;  // dimensionless; keep well below omega_c/g
  double carrier_detuning = 0;  // rad/s offset from line center

  void validate() const;
  double bandwidth() const { return 1.0 / rms_width; }  // rad/s
};

/// Space-time field produced by the characteristics integrator. t_grid holds
/// retarded time tau = t - z/c; lab time at depth z is tau + z/c.
struct PulseField {
  Eigen::ArrayXd z_grid;      // m, nz+1 levels from 0 to L
  Eigen::ArrayXd t_grid;      // s (retarded)
  Eigen::MatrixXcd envelope;  // (nz+1) x nt
  Eigen::MatrixXcd sigma_ba;
  Eigen::MatrixXcd sigma_bc;
  double c_light = speed_of_light;
  double max_step_error = 0;  // largest embedded per-step estimate, relative
  int filtered_modes = 0;     // grid modes removed by the spectral guard band
};

/// Integrates the weak-probe equations of motion along characteristics:
/// the atomic pair is advanced over retarded time by classical RK4 (with an
/// embedded step-doubling estimate), the envelope by a second-order
/// predictor-corrector in z. Throws StepSizeTooCoarse when the per-step
/// estimate exceeds 1e-6.
PulseField propagate(const MediumParams& p, const PulseSpec& pulse, int nz, int nt);

/// Centroid delay of the output intensity relative to the input, with the
/// vacuum transit time removed (the retarded frame carries the subtraction).
/// Throws NoPeak when the output energy is below 1e-12 of the input energy.
double measure_delay(const PulseField& field);

/// Comparison of the time-domain integration against the spectral transfer
/// e^{-Lambda L} applied to the same input.
struct TransferReport {
  double rel_l2 = 0;            // relative L2 discrepancy of the output envelopes
  double measured_delay = 0;    // s, centroid estimate from the time domain
  double trans_time_domain = 0; // energy transmission, both routes
  double trans_freq_domain = 0;
  double bandwidth_ratio = 0;   // pulse bandwidth / transparency window
  bool in_window = false;       // bandwidth_ratio <= 0.2 and detuning inside the window
  double max_step_error = 0;
};
TransferReport transfer_equivalence(const MediumParams& p, const PulseSpec& pulse,
                                    int nz, int nt);

/// Columnar dump (z, t, Re E, Im E) with lab time t = tau + z/c. Headered CSV;
/// stride subsamples both grids.
void dump_field_csv(const PulseField& field, std::ostream& os, int stride = 1);

}  // namespace eitq
