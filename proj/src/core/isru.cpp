#include "isru.hpp"

#include "check.hpp"
#include "numfmt.hpp"

namespace bucketwheel::isru {

double heating_energy_per_kg(const regolith::SoilProperties& soil) {
  detail::require_positive(soil.specific_heat, "specific_heat");
  detail::require(soil.extraction_temp > soil.surface_temp,
                  "extraction_temp must exceed surface_temp");
  return soil.specific_heat * (soil.extraction_temp - soil.surface_temp);
}

double water_yield(double excavated_mass, const regolith::SoilProperties& soil) {
  detail::require_non_negative(excavated_mass, "excavated_mass");
  detail::require(soil.water_fraction >= 0.0 && soil.water_fraction <= 1.0,
                  "water_fraction must lie in [0, 1]");
  return soil.water_fraction * excavated_mass;
}

IsruReport power_check(double excavation_rate, const regolith::SoilProperties& soil,
                       double mech_power, double budget) {
  detail::require_non_negative(excavation_rate, "excavation_rate");
  detail::require_non_negative(mech_power, "mech_power");
  detail::require_positive(budget, "power_budget");

  IsruReport r;
  r.energy_per_kg = heating_energy_per_kg(soil);
  r.water_per_kg = soil.water_fraction;
  r.excavation_rate = excavation_rate;
  r.water_rate = water_yield(excavation_rate, soil);
  r.heating_power = excavation_rate * r.energy_per_kg;
  r.mech_power = mech_power;
  r.total_power = r.heating_power + mech_power;
  r.power_budget = budget;
  r.within_budget = r.total_power <= budget;
  return r;
}

std::string format_key_values(const IsruReport& r) {
  using detail::format_double;
  std::string s;
  s += "energy_per_kg = " + format_double(r.energy_per_kg) + " J/kg\n";
  s += "water_per_kg = " + format_double(r.water_per_kg) + " kg/kg\n";
  s += "excavation_rate = " + format_double(r.excavation_rate) + " kg/s\n";
  s += "water_rate = " + format_double(r.water_rate) + " kg/s\n";
  s += "heating_power = " + format_double(r.heating_power) + " W\n";
  s += "mech_power = " + format_double(r.mech_power) + " W\n";
  s += "total_power = " + format_double(r.total_power) + " W\n";
  s += "power_budget = " + format_double(r.power_budget) + " W\n";
  s += std::string("within_budget = ") + (r.within_budget ? "true" : "false") + "\n";
  return s;
}

std::string format_csv(const IsruReport& r) {
  using detail::format_double;
  std::string s =
      "energy_per_kg,water_per_kg,excavation_rate,water_rate,heating_power,mech_power,"
      "total_power,power_budget,within_budget\n";
  s += format_double(r.energy_per_kg) + "," + format_double(r.water_per_kg) + "," +
       format_double(r.excavation_rate) + "," + format_double(r.water_rate) + "," +
       format_double(r.heating_power) + "," + format_double(r.mech_power) + "," +
       format_double(r.total_power) + "," + format_double(r.power_budget) + "," +
       (r.within_budget ? "true" : "false") + "\n";
  return s;
}

}  // namespace bucketwheel::isru
