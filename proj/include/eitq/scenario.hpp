#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eitq/medium.hpp"
#include "eitq/propagation.hpp"
#include "eitq/spectra.hpp"

namespace eitq {

/// Analysis grid request: either explicit sideband values or a linspace.
struct GridSpec {
  std::vector<double> omegas;  // rad/s, used when non-empty
  double omega_min = 0, omega_max = 0;
  int points = 0;

  FrequencyGrid build() const;
};

struct SweepSpec {
  std::string param;           // dotted field path, e.g. "medium.gamma_bc"
  std::vector<double> values;  // already converted to internal units
  std::string command;         // command repeated over the axis
};

/// One self-describing run configuration loaded from JSON. All dimensioned
/// quantities in the file carry explicit unit suffixes; bare numbers are
/// rejected. Rates use the angular convention described in the README.
struct Scenario {
  MediumParams medium;                   // validated, coupling possibly calibrated
  std::optional<double> calibrate_vg;    // m/s target used to pin coupling_g
  std::variant<SqueezedInput, EntangledInput, PulseSpec> input;
  double theta = 0, phi = 0;             // quadrature angles for entanglement runs
  GridSpec analysis;
  std::optional<SweepSpec> sweep;

  bool has_squeezed() const { return std::holds_alternative<SqueezedInput>(input); }
  bool has_entangled() const { return std::holds_alternative<EntangledInput>(input); }
  bool has_pulse() const { return std::holds_alternative<PulseSpec>(input); }
};

/// Parses and validates a scenario file. Throws ScenarioError naming the
/// offending field.
Scenario load_scenario(const std::string& path);

/// Applies one sweep assignment ("medium.gamma_bc" etc.) to a scenario copy.
void apply_sweep_value(Scenario& s, const std::string& param, double value);

/// Unit-suffix parser for dimensioned quantities, exposed for tests.
/// kind: rate | length | area | density | speed | time. An optional "pi"
/// token multiplies the mantissa by pi ("30pi MHz").
double parse_quantity(const std::string& text, const std::string& kind,
                      const std::string& field);

}  // namespace eitq
