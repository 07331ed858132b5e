#pragma once

// Resource accounting for excavated regolith: sensible heat to bring it to
// the water-extraction temperature, water yield, and a power-budget check.
// No latent heat of vaporization is included.

#include <string>

#include "regolith.hpp"

namespace bucketwheel::isru {

inline constexpr double kDefaultPowerBudget = 10000.0;  // W

struct IsruReport {
  double energy_per_kg = 0.0;   // J/kg
  double water_per_kg = 0.0;    // kg water per kg regolith
  double excavation_rate = 0.0; // kg/s
  double water_rate = 0.0;      // kg/s
  double heating_power = 0.0;   // W
  double mech_power = 0.0;      // W
  double total_power = 0.0;     // W
  double power_budget = kDefaultPowerBudget;  // W
  bool within_budget = true;
};

/// specific_heat * (extraction_temp - surface_temp). Throws ValidationError
/// unless extraction_temp > surface_temp.
double heating_energy_per_kg(const regolith::SoilProperties& soil);

/// water_fraction * excavated_mass.
double water_yield(double excavated_mass, const regolith::SoilProperties& soil);

IsruReport power_check(double excavation_rate, const regolith::SoilProperties& soil,
                       double mech_power, double budget = kDefaultPowerBudget);

/// `key = value` lines.
std::string format_key_values(const IsruReport& report);
/// Header row plus one data row.
std::string format_csv(const IsruReport& report);

}  // namespace bucketwheel::isru
