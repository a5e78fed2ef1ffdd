#pragma once

#include <stdexcept>
#include <string>

namespace eitq {

// Control field too weak relative to the ground-state dephasing: the
// slow-light figures (group velocity, window) are not meaningful.
struct DegenerateRegime : std::domain_error {
  using std::domain_error::domain_error;
};

// The noise-coefficient expressions assume gamma_b = gamma_c = gamma_ba = gamma_ac.
struct UnequalDecayRates : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Embedded error estimate of the time stepper exceeded its per-step budget.
struct StepSizeTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoPeak : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario file failed to parse or validate; `field` names the offender.
struct ScenarioError : std::runtime_error {
  std::string field;
  ScenarioError(std::string field_, const std::string& what_)
      : std::runtime_error("scenario field '" + field_ + "': " + what_),
        field(std::move(field_)) {}
};

}  // namespace eitq
