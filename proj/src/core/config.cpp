#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "check.hpp"
#include "numfmt.hpp"

namespace bucketwheel::config {

namespace {

using UnitTable = std::map<std::string, double, std::less<>>;

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kRpm = 2.0 * std::numbers::pi / 60.0;

const UnitTable kLength{{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
const UnitTable kMass{{"kg", 1.0}, {"g", 1e-3}};
const UnitTable kDensity{{"kg/m^3", 1.0}, {"kg/m3", 1.0}, {"g/cm^3", 1000.0}};
const UnitTable kPressure{{"Pa", 1.0}, {"kPa", 1e3}};
const UnitTable kAccel{{"m/s^2", 1.0}, {"m/s2", 1.0}};
const UnitTable kSpeed{{"m/s", 1.0}};
const UnitTable kAngle{{"rad", 1.0}, {"deg", kDeg}};
const UnitTable kAngularSpeed{{"rad/s", 1.0}, {"rpm", kRpm}, {"deg/s", kDeg}};
const UnitTable kTime{{"s", 1.0}, {"ms", 1e-3}};
const UnitTable kTemperature{{"C", 1.0}, {"degC", 1.0}};
const UnitTable kSpecificHeat{{"J/(kg*C)", 1.0}, {"J/(kg*K)", 1.0}, {"J/kg/C", 1.0}};
const UnitTable kInertia{{"kg*m^2", 1.0}, {"kg*m2", 1.0}};
const UnitTable kForce{{"N", 1.0}};
const UnitTable kTorque{{"N*m", 1.0}};
const UnitTable kPower{{"W", 1.0}, {"kW", 1e3}};
const UnitTable kMassRate{{"kg/s", 1.0}, {"kg/h", 1.0 / 3600.0}};
const UnitTable kFraction{{"", 1.0}, {"%", 1e-2}};
const UnitTable kDimensionless{{"", 1.0}};
const UnitTable kGainX{{"N*m/m", 1.0}};
const UnitTable kGainY{{"N/m", 1.0}};
const UnitTable kGainVy{{"N*s/m", 1.0}};
const UnitTable kGainWheel{{"N*m*s/rad", 1.0}};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

// Binds the entries of one section to handlers; anything unhandled is an error.
class SectionReader {
public:
  SectionReader(const Document& doc, const Section& sec) : doc_(doc), sec_(sec) {}

  using Handler = std::function<void(const Entry&)>;

  void on(const std::string& key, Handler h) { handlers_[key] = std::move(h); }

  void number(const std::string& key, const UnitTable& units, double& target) {
    on(key, [this, &units, &target](const Entry& e) { target = to_number(e, units); });
  }

  void flag(const std::string& key, bool& target) {
    on(key, [this, &target](const Entry& e) {
      const std::string v = lower(trim(e.text));
      if (v == "true" || v == "on" || v == "yes") target = true;
      else if (v == "false" || v == "off" || v == "no") target = false;
      else fail(e, "expected true/false, got '" + e.text + "'");
    });
  }

  template <class Int>
  void integer(const std::string& key, Int& target, Int min_value) {
    on(key, [this, &target, min_value](const Entry& e) {
      const std::string v = trim(e.text);
      Int parsed{};
      const auto res = std::from_chars(v.data(), v.data() + v.size(), parsed);
      if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        fail(e, "expected an integer without unit, got '" + e.text + "'");
      if (parsed < min_value) fail(e, "must be at least " + std::to_string(min_value));
      target = parsed;
    });
  }

  void run() {
    for (const auto& e : sec_.entries) {
      const auto it = handlers_.find(e.key);
      if (it == handlers_.end()) fail(e, "unknown key in section [" + sec_.name + "]");
      it->second(e);
    }
  }

  [[noreturn]] void fail(const Entry& e, const std::string& why) const {
    throw ParseError(doc_.source, e.line, e.key, why);
  }

  // "<number> <unit>"; the unit must be one the key accepts.
  double to_number(const Entry& e, const UnitTable& units) const {
    const std::string text = trim(e.text);
    const std::size_t split = text.find_first_of(" \t");
    const std::string number = text.substr(0, split);
    const std::string unit = split == std::string::npos ? "" : strip_spaces(text.substr(split));
    return scaled(e, number, unit, units);
  }

  // "<n1>, <n2>, ... <unit>"
  std::vector<double> to_list(const Entry& e, const UnitTable& units) const {
    std::vector<std::string> parts;
    std::stringstream ss(e.text);
    for (std::string part; std::getline(ss, part, ',');) parts.push_back(trim(part));
    if (parts.empty() || parts.back().empty()) fail(e, "empty value list");
    std::string unit;
    const std::string last = parts.back();
    const std::size_t split = last.find_first_of(" \t");
    if (split != std::string::npos) {
      unit = strip_spaces(last.substr(split));
      parts.back() = last.substr(0, split);
    }
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(scaled(e, p, unit, units));
    return out;
  }

private:
  double scaled(const Entry& e, const std::string& number, const std::string& unit,
                const UnitTable& units) const {
    double v = 0.0;
    if (!parse_double(number, v)) fail(e, "expected a number, got '" + number + "'");
    const auto it = units.find(unit);
    if (it == units.end()) {
      std::string accepted;
      for (const auto& [name, _] : units) accepted += (accepted.empty() ? "" : ", ") +
                                                     (name.empty() ? std::string("<none>") : name);
      fail(e, (unit.empty() ? std::string("missing unit") : "unit '" + unit + "' not accepted") +
                  " (accepted: " + accepted + ")");
    }
    return v * it->second;
  }

  const Document& doc_;
  const Section& sec_;
  std::map<std::string, Handler> handlers_;
};

void read_wheel(SectionReader& r, WheelConfig& w) {
  r.number("diameter", kLength, w.diameter);
  r.number("blade_width", kLength, w.blade_width);
  r.number("tool_length", kLength, w.tool_length);
  r.number("rake_angle", kAngle, w.rake_angle);
  r.integer("buckets", w.n_buckets, 1);
  r.number("mass", kMass, w.wheel_mass);
  r.on("inertia", [&r, &w](const Entry& e) {
    w.inertia = trim(e.text) == "auto" ? 0.0 : r.to_number(e, kInertia);
  });
}

void read_gains(SectionReader& r, control::Gains& g) {
  r.number("K_x", kGainX, g.k_x);
  r.number("K_y", kGainY, g.k_y);
  r.number("K_vy", kGainVy, g.k_vy);
  r.number("K_1", kGainWheel, g.k_1);
  r.number("K_2", kGainWheel, g.k_2);
  r.number("omega_des", kAngularSpeed, g.omega_des);
  r.number("max_hold_force", kForce, g.max_hold_force);
  r.number("max_torque", kTorque, g.max_torque);
}

const UnitTable& gain_units(tuning::GainId id) {
  switch (id) {
    case tuning::GainId::k_x: return kGainX;
    case tuning::GainId::k_y: return kGainY;
    case tuning::GainId::k_vy: return kGainVy;
    default: return kGainWheel;
  }
}

struct PendingRange {
  bool low_set = false, high_set = false, any = false;
  int line = 0;
  tuning::GainRange range;
};

void read_tuning(SectionReader& r, tuning::TuningSpec& spec,
                 std::map<tuning::GainId, PendingRange>& pending) {
  r.on("method", [&r, &spec](const Entry& e) {
    const std::string v = trim(e.text);
    if (v == "grid") spec.method = tuning::SearchMethod::grid;
    else if (v == "pattern_search" || v == "pattern-search") spec.method = tuning::SearchMethod::pattern_search;
    else r.fail(e, "expected grid or pattern_search");
  });
  r.integer("budget", spec.budget, std::size_t{1});
  r.number("eval_horizon", kTime, spec.eval_horizon);
  r.number("w_drift", kDimensionless, spec.weights.drift);
  r.number("w_settle", kDimensionless, spec.weights.settle);
  r.number("w_liftoff", kDimensionless, spec.weights.liftoff);
  r.number("w_effort", kDimensionless, spec.weights.effort);
  for (const auto id : tuning::kAllGains) {
    const std::string name(tuning::gain_name(id));
    auto& p = pending[id];
    p.range.id = id;
    auto touch = [&p](const Entry& e) {
      if (!p.any) p.line = e.line;
      p.any = true;
    };
    r.on(name + ".low", [&r, &p, id, touch](const Entry& e) {
      touch(e);
      p.range.low = r.to_number(e, gain_units(id));
      p.low_set = true;
    });
    r.on(name + ".high", [&r, &p, id, touch](const Entry& e) {
      touch(e);
      p.range.high = r.to_number(e, gain_units(id));
      p.high_set = true;
    });
    r.on(name + ".points", [&r, &p, touch](const Entry& e) {
      touch(e);
      double v = r.to_number(e, kDimensionless);
      if (!(v >= 1.0) || v != std::floor(v)) r.fail(e, "points must be a positive integer");
      p.range.points = static_cast<int>(v);
    });
    r.on(name + ".values", [&r, &p, id, touch](const Entry& e) {
      touch(e);
      p.range.values = r.to_list(e, gain_units(id));
    });
  }
}

void finish_ranges(const std::string& source, tuning::TuningSpec& spec,
                   const std::map<tuning::GainId, PendingRange>& pending) {
  bool any = false;
  for (const auto& [id, p] : pending) any = any || p.any;
  if (!any) return;
  spec.ranges.clear();
  for (const auto id : tuning::kAllGains) {
    const auto it = pending.find(id);
    if (it == pending.end() || !it->second.any) continue;
    const PendingRange& p = it->second;
    tuning::GainRange range = p.range;
    const std::string name(tuning::gain_name(id));
    if (!p.low_set || !p.high_set) {
      if (range.values.empty())
        throw ParseError(source, p.line, name, "a tuned gain needs .low and .high (or .values)");
      // Bounds default to the span of the listed values.
      const auto [mn, mx] = std::minmax_element(range.values.begin(), range.values.end());
      if (!p.low_set) range.low = *mn;
      if (!p.high_set) range.high = *mx;
      if (range.low == range.high) range.high = range.low * (1.0 + 1e-12);
    }
    spec.ranges.push_back(std::move(range));
  }
}

template <class Fn>
void with_context(const std::string& source, Fn&& fn) {
  try {
    fn();
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

}  // namespace

Document parse_document(std::string_view text, const std::string& source) {
  Document doc;
  doc.source = source;
  std::set<std::string> section_names;
  std::set<std::string> keys;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "", "malformed section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name.empty()) throw ParseError(source, line_no, "", "empty section name");
      if (!section_names.insert(name).second)
        throw ParseError(source, line_no, "", "duplicate section [" + name + "]");
      doc.sections.push_back({name, line_no, {}});
      keys.clear();
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(source, line_no, "", "expected 'key = value'");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) throw ParseError(source, line_no, "", "missing key before '='");
      if (doc.sections.empty())
        throw ParseError(source, line_no, key, "key outside of any [section]");
      if (value.empty()) throw ParseError(source, line_no, key, "missing value");
      if (!keys.insert(key).second) throw ParseError(source, line_no, key, "duplicate key");
      doc.sections.back().entries.push_back({key, value, line_no});
    }
    if (end == text.size()) break;
  }
  return doc;
}

ConfigFile parse_config(std::string_view text, const std::string& source) {
  const Document doc = parse_document(text, source);
  ConfigFile cfg;
  sim::Scenario& sc = cfg.scenario;
  auto& p = sc.params;
  std::map<tuning::GainId, PendingRange> pending;

  for (const auto& sec : doc.sections) {
    SectionReader r(doc, sec);
    if (sec.name == "soil") {
      r.number("density", kDensity, p.soil.density);
      r.number("cohesion", kPressure, p.soil.cohesion);
      r.number("gravity", kAccel, p.soil.gravity);
      r.number("water_content", kFraction, p.soil.water_fraction);
      r.number("specific_heat", kSpecificHeat, p.soil.specific_heat);
      r.number("surface_temp", kTemperature, p.soil.surface_temp);
      r.number("extraction_temp", kTemperature, p.soil.extraction_temp);
    } else if (sec.name == "wheel1") {
      read_wheel(r, p.wheel_1);
    } else if (sec.name == "wheel2") {
      read_wheel(r, p.wheel_2);
    } else if (sec.name == "excavator") {
      r.number("chassis_mass", kMass, p.chassis_mass);
      r.number("max_cut_depth", kLength, p.max_cut_depth);
      r.number("engagement_multiplier", kDimensionless, p.engagement_multiplier);
      r.on("force_angle", [&r, &p](const Entry& e) {
        const std::string v = trim(e.text);
        if (v == "bucket_phase") p.force_angle = dynamics::ForceAngle::bucket_phase;
        else if (v == "wheel_angle") p.force_angle = dynamics::ForceAngle::wheel_angle;
        else r.fail(e, "expected bucket_phase or wheel_angle");
      });
    } else if (sec.name == "gains") {
      read_gains(r, sc.gains);
    } else if (sec.name == "disturbance") {
      r.flag("enabled", sc.disturbance.enabled);
      r.integer("seed", sc.disturbance.seed, std::uint64_t{0});
    } else if (sec.name == "integrator") {
      auto& ic = sc.integrator;
      r.on("method", [&r, &ic](const Entry& e) {
        const std::string v = trim(e.text);
        if (v == "rk4") ic.method = integrator::Method::rk4;
        else if (v == "rk45") ic.method = integrator::Method::rk45;
        else r.fail(e, "expected rk4 or rk45");
      });
      r.number("t_end", kTime, ic.t_end);
      r.number("output_step", kTime, ic.output_step);
      r.number("rel_tol", kDimensionless, ic.rel_tol);
      r.number("abs_tol", kDimensionless, ic.abs_tol);
      r.number("max_step", kTime, ic.max_step);
      r.number("fixed_step", kTime, ic.fixed_step);
    } else if (sec.name == "initial_state") {
      auto& s = sc.initial_state;
      r.number("x", kLength, s.x);
      r.number("y", kLength, s.y);
      r.number("vx", kSpeed, s.vx);
      r.number("vy", kSpeed, s.vy);
      r.number("theta1", kAngle, s.theta1);
      r.number("omega1", kAngularSpeed, s.omega1);
      r.number("theta2", kAngle, s.theta2);
      r.number("omega2", kAngularSpeed, s.omega2);
    } else if (sec.name == "metrics") {
      r.number("liftoff_threshold", kLength, sc.liftoff.threshold);
      r.number("liftoff_duration", kTime, sc.liftoff.min_duration);
      r.number("settle_band", kFraction, sc.settle_band);
    } else if (sec.name == "isru") {
      r.number("excavation_rate", kMassRate, cfg.isru.excavation_rate);
      r.number("mech_power", kPower, cfg.isru.mech_power);
      r.number("power_budget", kPower, cfg.isru.power_budget);
    } else if (sec.name == "tuning") {
      read_tuning(r, cfg.tuning, pending);
    } else {
      throw ParseError(source, sec.line, "", "unknown section [" + sec.name + "]");
    }
    r.run();
  }
  finish_ranges(source, cfg.tuning, pending);

  with_context(source, [&] { sc.validate(); });
  with_context(source, [&] {
    detail::require_non_negative(cfg.isru.excavation_rate, "excavation_rate");
    detail::require_non_negative(cfg.isru.mech_power, "mech_power");
    detail::require_positive(cfg.isru.power_budget, "power_budget");
  });
  return cfg;
}

tuning::TuningSpec parse_tuning_spec(std::string_view text, const std::string& source,
                                     const tuning::TuningSpec& base) {
  const Document doc = parse_document(text, source);
  tuning::TuningSpec spec = base;
  std::map<tuning::GainId, PendingRange> pending;
  for (const auto& sec : doc.sections) {
    if (sec.name != "tuning")
      throw ParseError(source, sec.line, "",
                       "tuning spec files may only contain a [tuning] section, found [" +
                           sec.name + "]");
    SectionReader r(doc, sec);
    read_tuning(r, spec, pending);
    r.run();
  }
  finish_ranges(source, spec, pending);
  with_context(source, [&] { spec.validate(); });
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

ConfigFile load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.string());
}

tuning::TuningSpec load_tuning_spec(const std::filesystem::path& path,
                                    const tuning::TuningSpec& base) {
  return parse_tuning_spec(read_text_file(path), path.string(), base);
}

std::string format_gains(const control::Gains& g) {
  using detail::format_double;
  std::string s = "[gains]\n";
  s += "K_x = " + format_double(g.k_x) + " N*m/m\n";
  s += "K_y = " + format_double(g.k_y) + " N/m\n";
  s += "K_vy = " + format_double(g.k_vy) + " N*s/m\n";
  s += "K_1 = " + format_double(g.k_1) + " N*m*s/rad\n";
  s += "K_2 = " + format_double(g.k_2) + " N*m*s/rad\n";
  s += "omega_des = " + format_double(g.omega_des) + " rad/s\n";
  s += "max_hold_force = " + format_double(g.max_hold_force) + " N\n";
  s += "max_torque = " + format_double(g.max_torque) + " N*m\n";
  return s;
}

std::string default_config_text() {
  return R"(# Dual counter-rotating bucket-wheel excavator on Phobos-like regolith.
# Every dimensioned value needs a unit. Angles: deg or rad.

[soil]
density = 1880 kg/m^3
cohesion = 147 Pa
gravity = 0.0057 m/s^2
water_content = 10 %
specific_heat = 1430 J/(kg*C)
surface_temp = 200 C
extraction_temp = 1000 C

[wheel1]
diameter = 0.622 m
blade_width = 0.0631 m
tool_length = 0.05 m
rake_angle = 10 deg
buckets = 24
mass = 5 kg
inertia = auto            # solid disc, 0.5 m r^2

[wheel2]
diameter = 0.622 m
blade_width = 0.0631 m
tool_length = 0.05 m
rake_angle = -10 deg
buckets = 24
mass = 5 kg
inertia = auto

[excavator]
chassis_mass = 0 kg
max_cut_depth = 0.1 m
engagement_multiplier = 1
force_angle = bucket_phase   # or wheel_angle

[gains]
K_x = 1 N*m/m
K_y = 0.9 N/m
K_vy = 90000 N*s/m
K_1 = 4000 N*m*s/rad
K_2 = 4000 N*m*s/rad
omega_des = 3.3 rpm
max_hold_force = inf N
max_torque = inf N*m

[disturbance]
enabled = false
seed = 0

[integrator]
method = rk45
t_end = 100 s
output_step = 0.1 s
rel_tol = 1e-6
abs_tol = 1e-8
max_step = 0.1 s
fixed_step = 1e-4 s       # rk4 only

[initial_state]
x = 0 m
y = 0 m
vx = 0 m/s
vy = 0 m/s
theta1 = 0 deg
omega1 = 0 rpm
theta2 = 0 deg
omega2 = 0 rpm

[metrics]
liftoff_threshold = 1 mm
liftoff_duration = 0.5 s
settle_band = 5 %

[isru]
excavation_rate = 0 kg/s
mech_power = 0 W
power_budget = 10 kW
)";
}

}  // namespace bucketwheel::config
