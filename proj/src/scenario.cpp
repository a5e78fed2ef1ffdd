#include "eitq/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace eitq {

using nlohmann::json;

namespace {

const std::map<std::string, double>& unit_table(const std::string& kind) {
  // Rates: suffixes scale the mantissa only; all rate-like numbers are read
  // as angular frequencies in rad/s (see README, "Units and conventions").
  static const std::map<std::string, double> rate{
      {"rad/s", 1.0},   {"krad/s", 1e3},  {"Mrad/s", 1e6}, {"Grad/s", 1e9},
      {"Hz", 1.0},      {"kHz", 1e3},     {"MHz", 1e6},    {"GHz", 1e9}};
  static const std::map<std::string, double> length{
      {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}};
  static const std::map<std::string, double> area{
      {"m^2", 1.0}, {"cm^2", 1e-4}, {"mm^2", 1e-6}, {"um^2", 1e-12}};
  static const std::map<std::string, double> density{
      {"m^-3", 1.0}, {"cm^-3", 1e6}};
  static const std::map<std::string, double> speed{{"m/s", 1.0}, {"km/s", 1e3}};
  static const std::map<std::string, double> time{
      {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
  static const std::map<std::string, std::map<std::string, double>> all{
      {"rate", rate},       {"length", length}, {"area", area},
      {"density", density}, {"speed", speed},   {"time", time}};
  auto it = all.find(kind);
  if (it == all.end()) throw std::logic_error("unknown quantity kind: " + kind);
  return it->second;
}

}  // namespace

double parse_quantity(const std::string& text, const std::string& kind,
                      const std::string& field) {
  std::istringstream ss(text);
  double mantissa = 0;
  if (!(ss >> mantissa))
    throw ScenarioError(field, "expected '<number> [pi] <unit>', got '" + text + "'");

  std::string rest;
  std::getline(ss, rest);
  // strip spaces and an optional '*'
  std::string token;
  for (char ch : rest)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') token += ch;

  if (token.rfind("pi", 0) == 0) {
    mantissa *= M_PI;
    token.erase(0, 2);
  }
  const auto& units = unit_table(kind);
  auto it = units.find(token);
  if (it == units.end())
    throw ScenarioError(field, "unknown or missing " + kind + " unit in '" + text + "'");
  return mantissa * it->second;
}

namespace {

double quantity_field(const json& obj, const std::string& key,
                      const std::string& kind, const std::string& path,
                      bool required = true, double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) throw ScenarioError(path + key, "missing");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_string())
    throw ScenarioError(path + key,
                        "dimensioned quantities need a unit suffix; write e.g. \"10 Hz\"");
  return parse_quantity(v.get<std::string>(), kind, path + key);
}

double number_field(const json& obj, const std::string& key, const std::string& path,
                    bool required = true, double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) throw ScenarioError(path + key, "missing");
    return fallback;
  }
  if (!obj.at(key).is_number())
    throw ScenarioError(path + key, "expected a plain number");
  return obj.at(key).get<double>();
}

MediumParams parse_medium(const json& m, std::optional<double>& calibrate_vg) {
  MediumParams p;
  const std::string path = "medium.";
  p.length_L = quantity_field(m, "length", "length", path);
  p.density_n = quantity_field(m, "density", "density", path);
  p.beam_area_A = quantity_field(m, "beam_area", "area", path);
  p.gamma_ba = quantity_field(m, "gamma_ba", "rate", path);
  p.gamma_bc = quantity_field(m, "gamma_bc", "rate", path);
  p.gamma_b = quantity_field(m, "gamma_b", "rate", path, false);
  p.gamma_c = quantity_field(m, "gamma_c", "rate", path, false);
  p.gamma_ac = quantity_field(m, "gamma_ac", "rate", path, false);
  p.omega_c = quantity_field(m, "omega_c", "rate", path);

  const bool has_g = m.contains("coupling_g");
  const bool has_vg = m.contains("calibrate_vg");
  if (has_g == has_vg)
    throw ScenarioError("medium.coupling_g",
                        "provide exactly one of coupling_g or calibrate_vg");
  try {
    if (has_g) {
      p.coupling_g = quantity_field(m, "coupling_g", "rate", path);
      p = p.validated();
    } else {
      p.coupling_g = 0.0;
      p = p.validated();
      calibrate_vg = quantity_field(m, "calibrate_vg", "speed", path);
      p.coupling_g = calibrate_coupling(p, *calibrate_vg);
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("medium", e.what());
  }
  return p;
}

void parse_input(const json& in, Scenario& s) {
  const std::string kind = in.value("kind", "");
  if (kind == "squeezed") {
    SqueezedInput sq;
    sq.s_min = number_field(in, "s_min", "input.");
    sq.s_max = number_field(in, "s_max", "input.");
    sq.theta = number_field(in, "theta", "input.", false, 0.0);
    try {
      sq.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("input", e.what());
    }
    s.input = sq;
  } else if (kind == "entangled") {
    EntangledInput en;
    const bool has_r = in.contains("r");
    const bool has_target = in.contains("target_duan");
    if (has_r == has_target)
      throw ScenarioError("input", "provide exactly one of r or target_duan");
    try {
      if (has_target) {
        en = make_epr_input(number_field(in, "target_duan", "input."));
      } else {
        en.r = number_field(in, "r", "input.");
      }
      en.excess_noise = number_field(in, "excess_noise", "input.", false, 0.0);
      en.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("input", e.what());
    }
    s.theta = number_field(in, "theta", "input.", false, 0.0);
    s.phi = number_field(in, "phi", "input.", false, 0.0);
    s.input = en;
  } else if (kind == "pulse") {
    PulseSpec ps;
    ps.center_time = quantity_field(in, "center_time", "time", "input.");
    ps.rms_width = quantity_field(in, "rms_width", "time", "input.");
    ps.peak_amplitude = number_field(in, "peak_amplitude", "input.", false, 1.0);
    ps.carrier_detuning = quantity_field(in, "carrier_detuning", "rate", "input.", false);
    try {
      ps.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("input", e.what());
    }
    s.input = ps;
  } else {
    throw ScenarioError("input.kind", "must be one of squeezed, entangled, pulse");
  }
}

GridSpec parse_analysis(const json& a) {
  GridSpec g;
  if (a.contains("omegas")) {
    if (!a.at("omegas").is_array() || a.at("omegas").empty())
      throw ScenarioError("analysis.omegas", "expected a non-empty array");
    for (const auto& v : a.at("omegas")) {
      if (!v.is_string())
        throw ScenarioError("analysis.omegas", "entries need unit suffixes");
      g.omegas.push_back(parse_quantity(v.get<std::string>(), "rate", "analysis.omegas"));
    }
    return g;
  }
  g.omega_min = quantity_field(a, "omega_min", "rate", "analysis.");
  g.omega_max = quantity_field(a, "omega_max", "rate", "analysis.");
  g.points = static_cast<int>(number_field(a, "points", "analysis."));
  if (g.points < 1) throw ScenarioError("analysis.points", "must be at least 1");
  return g;
}

// Sweepable dimensioned fields and their quantity kinds.
const std::map<std::string, std::string>& sweep_kinds() {
  static const std::map<std::string, std::string> kinds{
      {"medium.gamma_ba", "rate"},   {"medium.gamma_bc", "rate"},
      {"medium.omega_c", "rate"},    {"medium.coupling_g", "rate"},
      {"medium.length", "length"},   {"medium.density", "density"},
      {"input.s_min", "number"},     {"input.s_max", "number"},
      {"input.r", "number"},         {"input.excess_noise", "number"},
      {"input.rms_width", "time"},   {"input.carrier_detuning", "rate"}};
  return kinds;
}

SweepSpec parse_sweep(const json& sw) {
  SweepSpec spec;
  if (!sw.contains("param") || !sw.at("param").is_string())
    throw ScenarioError("sweep.param", "missing parameter name");
  spec.param = sw.at("param").get<std::string>();
  const auto& kinds = sweep_kinds();
  auto it = kinds.find(spec.param);
  if (it == kinds.end())
    throw ScenarioError("sweep.param", "'" + spec.param + "' is not sweepable");

  if (!sw.contains("values") || !sw.at("values").is_array())
    throw ScenarioError("sweep.values", "expected an array");
  if (sw.at("values").empty())
    throw ScenarioError("sweep.values", "sweep list must not be empty");
  for (const auto& v : sw.at("values")) {
    if (it->second == "number") {
      if (!v.is_number()) throw ScenarioError("sweep.values", "expected plain numbers");
      spec.values.push_back(v.get<double>());
    } else {
      if (!v.is_string())
        throw ScenarioError("sweep.values", "entries need unit suffixes");
      spec.values.push_back(parse_quantity(v.get<std::string>(), it->second, "sweep.values"));
    }
  }
  spec.command = sw.value("command", "");
  return spec;
}

}  // namespace

FrequencyGrid GridSpec::build() const {
  if (!omegas.empty()) {
    FrequencyGrid g;
    g.omegas = Eigen::Map<const Eigen::ArrayXd>(omegas.data(),
                                                static_cast<Eigen::Index>(omegas.size()));
    g.validate();
    return g;
  }
  return FrequencyGrid::linspace(omega_min, omega_max, points);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ScenarioError("scenario", "cannot open file: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario", std::string("JSON parse failure: ") + e.what());
  }

  Scenario s;
  if (!j.contains("medium")) throw ScenarioError("medium", "missing");
  s.medium = parse_medium(j.at("medium"), s.calibrate_vg);
  if (!j.contains("input")) throw ScenarioError("input", "missing");
  parse_input(j.at("input"), s);
  if (j.contains("analysis")) {
    s.analysis = parse_analysis(j.at("analysis"));
  } else if (!s.has_pulse()) {
    throw ScenarioError("analysis", "missing (required for spectrum commands)");
  }
  if (j.contains("sweep")) s.sweep = parse_sweep(j.at("sweep"));
  return s;
}

void apply_sweep_value(Scenario& s, const std::string& param, double value) {
  auto need_recalibration = [&] {
    if (s.calibrate_vg)
      s.medium.coupling_g = calibrate_coupling(s.medium, *s.calibrate_vg);
  };
  if (param == "medium.gamma_bc") { s.medium.gamma_bc = value; need_recalibration(); return; }
  if (param == "medium.gamma_ba") {
    s.medium.gamma_ba = s.medium.gamma_b = s.medium.gamma_c = s.medium.gamma_ac = value;
    need_recalibration();
    return;
  }
  if (param == "medium.omega_c") { s.medium.omega_c = value; need_recalibration(); return; }
  if (param == "medium.coupling_g") { s.medium.coupling_g = value; return; }
  if (param == "medium.length") {
    s.medium.length_L = value;
    s.medium.atom_number_N = s.medium.density_n * s.medium.beam_area_A * value;
    need_recalibration();
    return;
  }
  if (param == "medium.density") {
    s.medium.density_n = value;
    s.medium.atom_number_N = value * s.medium.beam_area_A * s.medium.length_L;
    need_recalibration();
    return;
  }
  auto mismatch = [&]() -> ScenarioError {
    return ScenarioError("sweep.param", "'" + param + "' does not match the input kind");
  };
  if (param == "input.s_min" || param == "input.s_max") {
    if (!s.has_squeezed()) throw mismatch();
    auto& in = std::get<SqueezedInput>(s.input);
    (param == "input.s_min" ? in.s_min : in.s_max) = value;
    return;
  }
  if (param == "input.r" || param == "input.excess_noise") {
    if (!s.has_entangled()) throw mismatch();
    auto& in = std::get<EntangledInput>(s.input);
    (param == "input.r" ? in.r : in.excess_noise) = value;
    return;
  }
  if (param == "input.rms_width" || param == "input.carrier_detuning") {
    if (!s.has_pulse()) throw mismatch();
    auto& in = std::get<PulseSpec>(s.input);
    (param == "input.rms_width" ? in.rms_width : in.carrier_detuning) = value;
    return;
  }
  throw ScenarioError("sweep.param", "'" + param + "' is not sweepable");
}

}  // namespace eitq
