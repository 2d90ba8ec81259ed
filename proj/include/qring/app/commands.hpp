#pragma once

// The subcommands as library functions: each returns a Table plus an exit
// status so the front end only parses flags and writes output.

#include <optional>
#include <string>
#include <vector>

#include "qring/app/table.hpp"
#include "qring/app/units.hpp"
#include "qring/radial.hpp"

namespace qring::app {

/// Validated input envelope.
struct Envelope {
  static constexpr int max_abs_m = 10;
  static constexpr double max_v = 1e4;
  static constexpr double max_a = 10.0;
  static constexpr double min_b = 1e-3;
  static constexpr double max_b = 50.0;
  static constexpr double max_r_i = 0.99;
  static constexpr int max_levels = 20;
};

/// Throws UsageError naming the first violated bound.
void check_envelope(const RingParams& params, int n_levels);

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitIncomplete = 3 };

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  /// Human-readable notes for stderr (solver failures, oracle warnings).
  std::vector<std::string> diagnostics;
};

struct RunOptions {
  /// Append finite-difference oracle columns.
  bool oracle = false;
  int threads = 1;
  /// Grid size for the oracle.
  int oracle_points = 8000;
};

struct LevelsRequest {
  /// params.m is ignored; every entry of m_list is solved.
  RingParams params;
  std::vector<int> m_list{0};
  int n_levels = 1;
  /// Adds E0_meV and Eprime_meV and takes s from the material.
  std::optional<MaterialParams> material;
  /// Upper end of the energy scan; unset means v + 8b(n + |m| + 1).
  std::optional<double> ceiling;
};

/// Columns m, n, e0, delta, e_prime, e_plus, e_minus, then E0_meV,
/// Eprime_meV with a material, then e0_oracle, oracle_abs_dev, oracle_l2
/// with the oracle. Missing levels give kExitIncomplete.
CommandResult cmd_levels(const LevelsRequest& req, const RunOptions& run);

enum class SweptParam { a, b, r_i, v };
SweptParam parse_swept(const std::string& name);
std::string swept_name(SweptParam p);

struct SweepSpec {
  SweptParam swept = SweptParam::b;
  double start = 0.0, stop = 1.0, step = 0.1;
  /// The swept field is overwritten at every grid point.
  RingParams fixed;
  std::vector<int> m_list{0};
  int n_levels = 1;

  /// Throws UsageError unless start < stop, step > 0 and every grid point
  /// lies in the envelope.
  void validate() const;
  /// start, start + step, ... up to stop (inclusive within step·1e-9).
  std::vector<double> points() const;
};

/// Long format: swept_value, m, n, e0, delta, e_prime,
/// minus_eprime_over_e0, error; oracle columns appended on request. Rows
/// are ordered by (swept_value, m, n). A failed point yields rows whose
/// error column is set; the sweep continues.
CommandResult cmd_sweep(const SweepSpec& spec, const std::optional<MaterialParams>& material,
                        const RunOptions& run);

/// One row: quantity, direction, input, output, unit, s.
CommandResult cmd_convert(double value, Direction dir, Quantity q, const MaterialParams& material);

struct WavefunctionRequest {
  RingParams params;
  int n = 1;
  /// 0 selects the solution's tail radius.
  double r_max = 0.0;
  int points = 1001;
};

/// r, u, u_prime on a uniform grid over [0, r_max]; u_oracle appended with
/// the oracle (linear interpolation of the finite-difference eigenvector).
/// Always written with 17 significant digits.
CommandResult cmd_wavefunction(const WavefunctionRequest& req, const RunOptions& run);

/// Published table values at v = 400, a = 1, b = 1.
struct ReferenceCell {
  double r_i = 0.0;
  int m = 0;
  int n = 1;
  double e0 = 0.0;
  double minus_eprime_over_e0 = 0.0;
};
std::vector<ReferenceCell> table1_reference();

inline constexpr double kTable1EnergyTolerance = 1e-4;
inline constexpr double kTable1RatioTolerance = 1e-2;

/// All 24 cells with computed and published values and relative
/// deviations; kExitIncomplete if any cell fails or exceeds tolerance.
CommandResult cmd_table1(const RunOptions& run);

}  // namespace qring::app
