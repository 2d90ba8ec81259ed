#include "qring/app/units.hpp"

#include <cmath>

#include "qring/app/usage_error.hpp"

namespace qring::app {

namespace {
constexpr double kNm = 1e-9;
}

void MaterialParams::validate() const {
  if (!(mass_ratio > 0.0) || !std::isfinite(mass_ratio)) throw DomainError("mass_ratio must be positive");
  if (!(rho_o > 0.0) || !std::isfinite(rho_o)) throw DomainError("rho_o must be positive");
  if (!std::isfinite(g_factor)) throw DomainError("g_factor must be finite");
}

double MaterialParams::energy_unit() const {
  const auto& c = constants;
  const double rho = rho_o * kNm;
  const double joule = c.hbar * c.hbar / (2.0 * mass_ratio * c.electron_mass * rho * rho);
  return joule / (c.elementary_charge * 1e-3);
}

double MaterialParams::soi_unit() const { return energy_unit() * rho_o; }

double MaterialParams::field_unit() const {
  const double rho = rho_o * kNm;
  return 2.0 * constants.hbar / (constants.elementary_charge * rho * rho);
}

double MaterialParams::zeeman_s() const { return g_factor * mass_ratio / 4.0; }

Quantity parse_quantity(const std::string& name) {
  if (name == "energy") return Quantity::energy;
  if (name == "soi_strength" || name == "soi") return Quantity::soi_strength;
  if (name == "field") return Quantity::field;
  if (name == "depth") return Quantity::depth;
  throw UsageError("unknown quantity '" + name + "' (expected energy, soi_strength, field or depth)");
}

Direction parse_direction(const std::string& name) {
  if (name == "to-physical" || name == "to_physical") return Direction::to_physical;
  if (name == "to-dimensionless" || name == "to_dimensionless") return Direction::to_dimensionless;
  throw UsageError("unknown direction '" + name + "' (expected to-physical or to-dimensionless)");
}

std::string physical_unit(Quantity q) {
  switch (q) {
    case Quantity::energy:
    case Quantity::depth:
      return "meV";
    case Quantity::soi_strength:
      return "meV nm";
    case Quantity::field:
      return "T";
  }
  return "";
}

double convert(double value, Direction dir, Quantity q, const MaterialParams& material) {
  material.validate();
  double unit = 0.0;
  switch (q) {
    case Quantity::energy:
    case Quantity::depth:
      unit = material.energy_unit();
      break;
    case Quantity::soi_strength:
      unit = material.soi_unit();
      break;
    case Quantity::field:
      unit = material.field_unit();
      break;
  }
  return dir == Direction::to_physical ? value * unit : value / unit;
}

}  // namespace qring::app
