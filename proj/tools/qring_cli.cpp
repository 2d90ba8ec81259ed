// qring: energy levels, Zeeman splitting and wavefunctions of a finite-depth
// quantum ring with equal Rashba and Dresselhaus coupling.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "qring/app/commands.hpp"
#include "qring/app/parallel.hpp"
#include "qring/app/usage_error.hpp"

namespace {

using namespace qring::app;

struct GlobalFlags {
  std::string format = "csv";
  std::string output;
  bool oracle = false;
  int threads = default_threads();
  bool full_precision = false;
  int oracle_points = 8000;

  bool use_material = false;
  MaterialParams material;
  std::string constants = "published";
};

struct RingFlags {
  qring::RingParams params{0, 400.0, 1.0, 1.0, 0.0};
  int n = 1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--v", params.v, "Barrier height in energy units")->capture_default_str();
    cmd.add_option("--a", params.a, "Spin-orbit strength")->capture_default_str();
    cmd.add_option("--b", params.b, "Magnetic field")->capture_default_str();
    cmd.add_option("--ri", params.r_i, "Inner radius over outer radius")->capture_default_str();
  }
};

int emit(const CommandResult& res, const GlobalFlags& g) {
  for (const auto& d : res.diagnostics) std::cerr << "qring: " << d << '\n';
  const Format format = parse_format(g.format);
  if (g.output.empty()) {
    write_table(std::cout, res.table, format, g.full_precision);
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + g.output + "'");
    write_table(out, res.table, format, g.full_precision);
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy levels of an electron in a finite-depth quantum ring in a magnetic field"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "File of 'key = value' lines setting any global option");

  GlobalFlags g;
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", g.output, "Write to this file instead of stdout");
  app.add_flag("--oracle", g.oracle, "Cross-check against the finite-difference solver");
  app.add_option("--oracle-points", g.oracle_points, "Finite-difference grid size")->capture_default_str()
      ->check(CLI::Range(500, 200000));
  app.add_option("--threads", g.threads, "Worker threads (default: all cores)")
      ->envname("QRING_THREADS")->check(CLI::PositiveNumber);
  app.add_flag("--full-precision", g.full_precision, "17 significant digits instead of 6");

  auto* mat_flag = app.add_flag("--material", g.use_material, "Report physical units for the material below");
  auto* mass = app.add_option("--mass-ratio", g.material.mass_ratio, "Effective mass over electron mass")->capture_default_str();
  auto* gfac = app.add_option("--g-factor", g.material.g_factor, "Lande g factor")->capture_default_str();
  auto* rho = app.add_option("--rho-o", g.material.rho_o, "Outer radius in nm")->capture_default_str();
  auto* consts = app.add_option("--constants", g.constants, "published or codata2018")
      ->check(CLI::IsMember({"published", "codata2018"}))->capture_default_str();
  for (auto* opt : {mass, gfac, rho, consts}) opt->group("Material");
  mat_flag->group("Material");

  RingFlags levels_ring;
  std::vector<int> levels_m{0};
  auto* levels = app.add_subcommand("levels", "Levels and Zeeman corrections at one parameter point");
  levels_ring.add_to(*levels);
  levels->add_option("--m", levels_m, "Angular momenta, comma separated")->delimiter(',')->capture_default_str();
  levels->add_option("--n", levels_ring.n, "Levels per m")->capture_default_str();
  std::optional<double> levels_ceiling;
  levels->add_option("--ceiling", levels_ceiling, "Top of the e0 scan (default v + 8b(n + |m| + 1))");

  RingFlags sweep_ring;
  SweepSpec spec;
  std::string swept = "b";
  auto* sweep = app.add_subcommand("sweep", "Levels along a one-parameter grid");
  sweep_ring.add_to(*sweep);
  sweep->add_option("--param", swept, "Swept parameter: a, b, ri or v")->required();
  sweep->add_option("--start", spec.start)->required();
  sweep->add_option("--stop", spec.stop)->required();
  sweep->add_option("--step", spec.step)->required();
  sweep->add_option("--m", spec.m_list, "Angular momenta, comma separated")->delimiter(',')->capture_default_str();
  sweep->add_option("--n", spec.n_levels, "Levels per m")->capture_default_str();

  double value = 0.0;
  std::string quantity, direction = "to-physical";
  auto* conv = app.add_subcommand("convert", "Convert between dimensionless and physical units");
  conv->add_option("value", value)->required();
  conv->add_option("quantity", quantity, "energy, soi_strength, field or depth")->required();
  conv->add_option("--direction", direction, "to-physical or to-dimensionless")->capture_default_str();

  RingFlags wave_ring;
  WavefunctionRequest wreq;
  auto* wave = app.add_subcommand("wavefunction", "Dump r, u, u' of one normalized level");
  wave_ring.add_to(*wave);
  wave->add_option("--m", wave_ring.params.m, "Angular momentum")->capture_default_str();
  wave->add_option("--n", wave_ring.n, "Radial index, 1 for the lowest")->capture_default_str();
  wave->add_option("--r-max", wreq.r_max, "Grid end (default: where u^2 r is negligible)");
  wave->add_option("--points", wreq.points, "Grid points")->capture_default_str();

  auto* table1 = app.add_subcommand("table1", "Reproduce the reference table at v=400, a=1, b=1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (g.constants == "codata2018") g.material.constants = PhysicalConstants::codata2018();
    const bool material_given = g.use_material || mass->count() || gfac->count() || rho->count();
    const std::optional<MaterialParams> material =
        material_given ? std::optional<MaterialParams>(g.material) : std::nullopt;
    const RunOptions run{g.oracle, g.threads, g.oracle_points};

    if (*levels) {
      LevelsRequest req{levels_ring.params, levels_m, levels_ring.n, material, levels_ceiling};
      return emit(cmd_levels(req, run), g);
    }
    if (*sweep) {
      spec.swept = parse_swept(swept);
      spec.fixed = sweep_ring.params;
      return emit(cmd_sweep(spec, material, run), g);
    }
    if (*conv) {
      return emit(cmd_convert(value, parse_direction(direction), parse_quantity(quantity), g.material), g);
    }
    if (*wave) {
      wreq.params = wave_ring.params;
      wreq.n = wave_ring.n;
      return emit(cmd_wavefunction(wreq, run), g);
    }
    if (*table1) return emit(cmd_table1(run), g);
  } catch (const UsageError& e) {
    std::cerr << "qring: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qring: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
