#pragma once

// Scenario files. INI-style text:
//
//   # comment
//   [soil]
//   density = 1880 kg/m^3
//   cohesion = 147 Pa
//
// Every dimensioned value carries a unit tag; angles accept deg or rad and
// are stored in radians. Unknown sections and keys are errors; missing keys
// keep their default (the Table 1 scenario).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "isru.hpp"
#include "sim.hpp"
#include "tuning.hpp"

namespace bucketwheel::config {

struct IsruInputs {
  double excavation_rate = 0.0;  // kg/s
  double mech_power = 0.0;       // W
  double power_budget = isru::kDefaultPowerBudget;  // W
};

struct ConfigFile {
  sim::Scenario scenario;
  tuning::TuningSpec tuning;
  IsruInputs isru;
};

/// Raw parsed text: sections of `key = text` entries. How `text` splits
/// into value and unit depends on the key.
struct Entry {
  std::string key;
  std::string text;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::string source;
  std::vector<Section> sections;
};

Document parse_document(std::string_view text, const std::string& source);

/// Defaults overlaid with the document. Throws ParseError naming line and key.
ConfigFile parse_config(std::string_view text, const std::string& source = "<config>");
ConfigFile load_config(const std::filesystem::path& path);

/// Reads a file holding only a [tuning] section and applies it over `base`.
tuning::TuningSpec parse_tuning_spec(std::string_view text, const std::string& source,
                                     const tuning::TuningSpec& base = {});
tuning::TuningSpec load_tuning_spec(const std::filesystem::path& path,
                                    const tuning::TuningSpec& base = {});

/// A [gains] section that parse_config reads back to identical values.
std::string format_gains(const control::Gains& gains);

/// The complete Table 1 default scenario as config text.
std::string default_config_text();

std::string read_text_file(const std::filesystem::path& path);

}  // namespace bucketwheel::config
