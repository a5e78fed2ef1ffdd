#include "eitq/spectra.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace eitq {

FrequencyGrid FrequencyGrid::linspace(double omega_min, double omega_max, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return single(0.5 * (omega_min + omega_max));
  FrequencyGrid g;
  g.omegas = Eigen::ArrayXd::LinSpaced(points, omega_min, omega_max);
  g.validate();
  return g;
}

FrequencyGrid FrequencyGrid::single(double omega) {
  FrequencyGrid g;
  g.omegas = Eigen::ArrayXd::Constant(1, omega);
  return g;
}

void FrequencyGrid::validate() const {
  if (omegas.size() == 0) throw std::invalid_argument("empty frequency grid");
  if (!omegas.isFinite().all()) throw std::invalid_argument("grid values must be finite");
  for (Eigen::Index i = 1; i < omegas.size(); ++i)
    if (!(omegas[i] > omegas[i - 1]))
      throw std::invalid_argument("grid must be strictly increasing");
}

bool FrequencyGrid::same_as(const FrequencyGrid& other) const {
  return omegas.size() == other.omegas.size() && (omegas == other.omegas).all();
}

void SqueezedInput::validate() const {
  if (!(s_min > 0) || !(s_min <= 1) || !(s_max >= 1))
    throw std::invalid_argument("require 0 < s_min <= 1 <= s_max");
  if (s_min * s_max < 1.0 - 1e-12)
    throw std::invalid_argument("uncertainty product s_min*s_max must be >= 1");
}

double SqueezedInput::value_at(double omega) const { return value_at(omega, theta); }

double SqueezedInput::value_at(double omega, double theta_override) const {
  const double c = std::cos(theta_override), s = std::sin(theta_override);
  const double base = s_min * c * c + s_max * s * s;
  return frequency_profile ? base * frequency_profile(omega) : base;
}

void EntangledInput::validate() const {
  if (r < 0) throw std::invalid_argument("squeezing parameter r must be nonnegative");
  if (excess_noise < 0) throw std::invalid_argument("excess_noise must be nonnegative");
}

double EntangledInput::sxx(double) const { return std::cosh(2.0 * r) + excess_noise; }
double EntangledInput::syy(double omega) const { return sxx(omega); }

double EntangledInput::sxy(double theta, double phi, double) const {
  // Cross spectrum of a symmetric pair; the classical excess keeps the
  // matched-quadrature difference at e^{-2r} (1 + excess).
  const double corr = std::sinh(2.0 * r) + excess_noise * (1.0 - std::exp(-2.0 * r));
  return corr * std::cos(theta + phi);
}

double EntangledInput::a_in(double theta, double phi, double omega) const {
  return 0.5 * (sxx(omega) + syy(omega)) - sxy(theta, phi, omega);
}

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::squeezing: return "squeezing";
    case SpectrumKind::entanglement: return "entanglement";
    case SpectrumKind::duan: return "duan";
    case SpectrumKind::noise_floor: return "noise_floor";
    case SpectrumKind::transmission: return "transmission";
  }
  return "unknown";
}

SpectrumCurve squeezing_out(const MediumParams& p, const SqueezedInput& in,
                            const FrequencyGrid& grid) {
  in.validate();
  grid.validate();
  SpectrumCurve out{grid, Eigen::ArrayXd(grid.size()), SpectrumKind::squeezing};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double omega = grid.omegas[i];
    const double trans =
        std::exp(-2.0 * lambda_medium(p, omega).real() * p.length_L);
    out.values[i] = in.value_at(omega) * trans + noise_floor(p, omega);
  }
  return out;
}

namespace {

SpectrumCurve entanglement_full_impl(const MediumParams& p, const EntangledInput& in,
                                     double theta, double phi,
                                     const FrequencyGrid& grid, double comp_delay) {
  in.validate();
  grid.validate();
  SpectrumCurve out{grid, Eigen::ArrayXd(grid.size()), SpectrumKind::entanglement};
  const double free_phase_len = comp_delay + p.length_L / p.c_light;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double omega = grid.omegas[i];
    const std::complex<double> lam_p = lambda(p, omega);
    const std::complex<double> lam_m = lambda(p, -omega);
    const std::complex<double> iw(0.0, omega);

    // Both beam phases evaluated explicitly; the compensated slow arm leaves
    // only the residual dispersion in the cross terms.
    const std::complex<double> x_term =
        in.sxx(omega) * std::exp(-(lam_p + lam_m) * p.length_L);
    const std::complex<double> cross_1 =
        in.sxy(theta, phi, omega) *
        std::exp(-lam_p * p.length_L - iw * free_phase_len);
    const std::complex<double> cross_2 =
        in.sxy(theta, phi, omega) *
        std::exp(-lam_m * p.length_L + iw * free_phase_len);
    const std::complex<double> y_term = in.syy(omega);

    const std::complex<double> a =
        0.5 * (x_term - cross_1 - cross_2 + y_term) + noise_floor(p, omega);
    if (std::abs(a.imag()) > 1e-10 * std::max(1.0, std::abs(a.real())))
      throw std::logic_error("entanglement spectrum has a nonreal residue");
    out.values[i] = a.real();
  }
  return out;
}

}  // namespace

SpectrumCurve entanglement_out_full(const MediumParams& p, const EntangledInput& in,
                                    double theta, double phi,
                                    const FrequencyGrid& grid) {
  const Susceptibility s = derived_figures(p);
  return entanglement_full_impl(p, in, theta, phi, grid, s.delay);
}

SpectrumCurve entanglement_out_full(const MediumParams& p, const EntangledInput& in,
                                    double theta, double phi,
                                    const FrequencyGrid& grid,
                                    double compensation_delay) {
  derived_figures(p);  // propagate DegenerateRegime for consistency
  return entanglement_full_impl(p, in, theta, phi, grid, compensation_delay);
}

SpectrumCurve entanglement_out_approx(const MediumParams& p, const EntangledInput& in,
                                      double theta, double phi,
                                      const FrequencyGrid& grid, bool* kl_flag) {
  in.validate();
  grid.validate();
  const double k = p.ng2() * p.gamma_bc /
                   (p.c_light * (p.gamma_ba * p.gamma_bc + p.omega_c * p.omega_c));
  if (kl_flag) *kl_flag = k * p.length_L > 0.1;

  SpectrumCurve out{grid, Eigen::ArrayXd(grid.size()), SpectrumKind::entanglement};
  const double trans = std::exp(-k * p.length_L);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double omega = grid.omegas[i];
    out.values[i] = in.a_in(theta, phi, omega) * trans +
                    noise_floor_low_absorption(p, omega);
  }
  return out;
}

SpectrumCurve duan_measure(const SpectrumCurve& a1, const SpectrumCurve& a2) {
  if (!a1.grid.same_as(a2.grid))
    throw GridMismatch("duan_measure requires identical grids");
  if ((a1.values < 0).any() || (a2.values < 0).any())
    throw std::invalid_argument("difference spectra must be nonnegative");
  SpectrumCurve out{a1.grid, (a1.values * a2.values).sqrt(), SpectrumKind::duan};
  return out;
}

EntangledInput make_epr_input(double target_duan) {
  if (!(target_duan > 0) || !(target_duan <= 1))
    throw std::invalid_argument("target inseparability must lie in (0, 1]");
  EntangledInput in;
  in.r = -0.5 * std::log(target_duan);
  in.excess_noise = 0.0;
  return in;
}

SpectrumCurve transmission_curve(const MediumParams& p, const FrequencyGrid& grid) {
  grid.validate();
  SpectrumCurve out{grid, Eigen::ArrayXd(grid.size()), SpectrumKind::transmission};
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out.values[i] =
        std::exp(-2.0 * lambda_medium(p, grid.omegas[i]).real() * p.length_L);
  return out;
}

SpectrumCurve noise_floor_curve(const MediumParams& p, const FrequencyGrid& grid) {
  grid.validate();
  SpectrumCurve out{grid, Eigen::ArrayXd(grid.size()), SpectrumKind::noise_floor};
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out.values[i] = noise_floor(p, grid.omegas[i]);
  return out;
}

}  // namespace eitq
