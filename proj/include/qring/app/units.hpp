#pragma once

// Conversion between the dimensionless solver units and laboratory units.
// Energies are measured in ħ²/(2 M_eff ρo²), lengths in ρo, the field in
// 2ħ/(q_e ρo²) and the spin-orbit strength in ħ²/(2 M_eff ρo).

#include <string>

namespace qring::app {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;       // J s
  double electron_mass = 9.109e-31;    // kg
  double elementary_charge = 1.602e-19;  // C

  /// Four-digit electron mass and charge; reproduces the customary GaAs
  /// unit values 0.631933 meV and 18.9579 meV nm.
  static PhysicalConstants published() { return {}; }
  static PhysicalConstants codata2018() { return {1.054571817e-34, 9.1093837015e-31, 1.602176634e-19}; }
};

struct MaterialParams {
  double mass_ratio = 0.067;  // M_eff / M_e
  double g_factor = -0.44;
  double rho_o = 30.0;        // nm
  PhysicalConstants constants = PhysicalConstants::published();

  /// Throws DomainError unless mass_ratio > 0 and rho_o > 0.
  void validate() const;

  /// ħ²/(2 M_eff ρo²) in meV.
  double energy_unit() const;
  /// ħ²/(2 M_eff ρo) in meV nm.
  double soi_unit() const;
  /// 2ħ/(q_e ρo²) in tesla.
  double field_unit() const;
  /// g M_eff / (4 M_e), the Zeeman coefficient in dimensionless units.
  double zeeman_s() const;
};

enum class Quantity { energy, soi_strength, field, depth };
enum class Direction { to_physical, to_dimensionless };

/// Throws UsageError on an unknown name.
Quantity parse_quantity(const std::string& name);
Direction parse_direction(const std::string& name);
std::string physical_unit(Quantity q);

double convert(double value, Direction dir, Quantity q, const MaterialParams& material);

}  // namespace qring::app
