#include "eitq/langevin.hpp"

#include <cmath>
#include <stdexcept>

namespace eitq {

void Populations::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(sigma_bb) || !in_unit(sigma_cc) || !in_unit(sigma_aa))
    throw std::invalid_argument("populations must lie in [0, 1]");
  if (std::abs(sigma_bb + sigma_cc + sigma_aa - 1.0) > 1e-12)
    throw std::invalid_argument("populations must sum to 1");
}

DiffusionCoefficients diffusion(const MediumParams& p, const Populations& pops) {
  pops.validate();
  const bool equal = p.gamma_b == p.gamma_ba && p.gamma_c == p.gamma_ba &&
                     p.gamma_ac == p.gamma_ba;
  if (!equal)
    throw UnequalDecayRates(
        "diffusion coefficients assume gamma_b = gamma_c = gamma_ba = gamma_ac");

  const double na = p.density_n * p.beam_area_A;  // atoms per meter
  DiffusionCoefficients d;
  d.d_ba_ab = (p.gamma_ba * pops.sigma_aa + 2.0 * p.gamma_ba * pops.sigma_bb -
               p.gamma_bc * (pops.sigma_bb - pops.sigma_cc)) / na;
  d.d_ab_bc = p.gamma_bc * pops.sigma_ac / na;
  d.d_cb_ba = p.gamma_bc * pops.sigma_ca / na;
  d.d_bc_cb = (p.gamma_ba * pops.sigma_aa +
               p.gamma_bc * (pops.sigma_cc + pops.sigma_bb)) / na;
  d.d_cb_bc = d.d_bc_cb;
  return d;
}

double attenuation_integral(double re_lambda, double length) {
  const double x = 2.0 * re_lambda * length;
  if (std::abs(x) < 1e-8) {
    // series of (1 - e^{-x})/x, avoids cancellation near x = 0
    return length * (1.0 - 0.5 * x + x * x / 6.0);
  }
  return (1.0 - std::exp(-x)) / (2.0 * re_lambda);
}

namespace {

double noise_floor_with_fill(const MediumParams& p, double omega, double fill) {
  const std::complex<double> den =
      std::complex<double>(p.gamma_ba, -omega) *
          std::complex<double>(p.gamma_bc, -omega) +
      p.omega_c * p.omega_c;
  const double bracket =
      (omega * omega + p.gamma_bc * p.gamma_bc) * (2.0 * p.gamma_ba - p.gamma_bc) +
      2.0 * p.omega_c * p.omega_c * p.gamma_bc;
  return p.ng2() / p.c_light * fill * bracket / std::norm(den);
}

}  // namespace

double noise_floor(const MediumParams& p, double omega) {
  const double fill =
      attenuation_integral(lambda_medium(p, omega).real(), p.length_L);
  return noise_floor_with_fill(p, omega, fill);
}

double noise_floor_low_absorption(const MediumParams& p, double omega) {
  const double k = p.ng2() * p.gamma_bc /
                   (p.c_light * (p.gamma_ba * p.gamma_bc + p.omega_c * p.omega_c));
  return noise_floor_with_fill(p, omega, attenuation_integral(k, p.length_L));
}

double noise_floor_quadrature_check(const MediumParams& p, double omega,
                                    int n_panels) {
  if (n_panels < 16) throw std::invalid_argument("n_panels must be at least 16");
  if (n_panels % 2 != 0) ++n_panels;

  const double x = lambda_medium(p, omega).real();
  const double closed = attenuation_integral(x, p.length_L);

  // composite Simpson of integral_0^L e^{-2x(L-s)} ds
  const double h = p.length_L / n_panels;
  auto f = [&](double s) { return std::exp(-2.0 * x * (p.length_L - s)); };
  double acc = f(0.0) + f(p.length_L);
  for (int i = 1; i < n_panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  const double quad = acc * h / 3.0;

  return std::abs(quad - closed) / std::max(std::abs(closed), 1e-300);
}

}  // namespace eitq
