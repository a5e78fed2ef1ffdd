#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "eitq/langevin.hpp"
#include "eitq/medium.hpp"

namespace eitq {

/// Sideband frequencies relative to the carrier, strictly increasing.
struct FrequencyGrid {
  Eigen::ArrayXd omegas;  // rad/s

  static FrequencyGrid linspace(double omega_min, double omega_max, int points);
  static FrequencyGrid single(double omega);
  void validate() const;
  Eigen::Index size() const { return omegas.size(); }
  bool same_as(const FrequencyGrid& other) const;
};

/// Second-moment description of a squeezed probe beam, shot noise = 1.
/// theta is the interrogated quadrature angle measured from the minor axis.
struct SqueezedInput {
  double s_min = 1.0;
  double s_max = 1.0;
  double theta = 0.0;
  std::function<double(double)> frequency_profile;  // multiplicative, default flat

  double value_at(double omega) const;  // input spectrum at the interrogated angle
  double value_at(double omega, double theta_override) const;
  void validate() const;
};

/// Symmetric two-beam squeezed pair with an optional classical excess-noise
/// impurity. Exposes the four stationary input moments used by the
/// difference-operator spectra; moments are normalized per beam (vacuum = 1).
struct EntangledInput {
  double r = 0.0;            // two-mode squeezing parameter, r >= 0
  double excess_noise = 0.0; // >= 0

  double sxx(double omega) const;  // single-beam spectrum, any quadrature
  double syy(double omega) const;
  double sxy(double theta, double phi, double omega) const;  // = syx
  // Normalized input difference spectrum at (theta, phi); two vacua give 1.
  double a_in(double theta, double phi, double omega) const;
  void validate() const;
};

enum class SpectrumKind { squeezing, entanglement, duan, noise_floor, transmission };

std::string to_string(SpectrumKind kind);

/// A sampled real spectrum over a frequency grid.
struct SpectrumCurve {
  FrequencyGrid grid;
  Eigen::ArrayXd values;
  SpectrumKind kind = SpectrumKind::squeezing;
};

/// Output quadrature spectrum after the cell: attenuated input plus the
/// added-noise floor. The transfer and noise are independent of the
/// interrogated angle; the angle only selects the input variance.
SpectrumCurve squeezing_out(const MediumParams& p, const SqueezedInput& in,
                            const FrequencyGrid& grid);

/// Exact difference-operator spectrum of the delayed beam against its vacuum
/// partner, with group-delay compensation applied to the slowed arm. The
/// result is real; the imaginary residue of the cross terms is asserted
/// below 1e-10 and dropped.
SpectrumCurve entanglement_out_full(const MediumParams& p, const EntangledInput& in,
                                    double theta, double phi, const FrequencyGrid& grid);

/// Same, with an explicit compensation delay instead of the derived one.
SpectrumCurve entanglement_out_full(const MediumParams& p, const EntangledInput& in,
                                    double theta, double phi, const FrequencyGrid& grid,
                                    double compensation_delay);

/// Low-absorption form: input spectrum attenuated by e^{-KL} plus the
/// line-center noise term. Sets *kl_flag when KL > 0.1 (result still computed).
SpectrumCurve entanglement_out_approx(const MediumParams& p, const EntangledInput& in,
                                      double theta, double phi, const FrequencyGrid& grid,
                                      bool* kl_flag = nullptr);

/// Pointwise geometric mean of two difference spectra taken at conjugate
/// quadrature pairs. Grids must be identical.
SpectrumCurve duan_measure(const SpectrumCurve& a1, const SpectrumCurve& a2);

/// Symmetric pure two-beam squeezed model whose inseparability measure equals
/// target_duan at every frequency.
EntangledInput make_epr_input(double target_duan);

/// Power transmission e^{-2 Re Lambda L} sampled on the grid.
SpectrumCurve transmission_curve(const MediumParams& p, const FrequencyGrid& grid);

/// Added-noise floor sampled on the grid.
SpectrumCurve noise_floor_curve(const MediumParams& p, const FrequencyGrid& grid);

}  // namespace eitq
