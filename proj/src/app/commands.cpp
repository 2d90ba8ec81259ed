#include "qring/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qring/app/parallel.hpp"
#include "qring/app/usage_error.hpp"
#include "qring/oracle.hpp"
#include "qring/spectrum.hpp"
#include "qring/zeeman.hpp"
#include "table1_data.hpp"

namespace qring::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPublishedS = ZeemanParams{}.s;

std::string describe(const RingParams& p) {
  std::ostringstream os;
  os << "m=" << p.m << " v=" << p.v << " a=" << p.a << " b=" << p.b << " ri=" << p.r_i;
  return os.str();
}

struct LevelRow {
  int m = 0;
  int n = 1;
  double e0 = kNaN, delta = kNaN, e_prime = kNaN, e_plus = kNaN, e_minus = kNaN;
  double oracle_e0 = kNaN, oracle_dev = kNaN, oracle_l2 = kNaN;
  std::string error;
};

struct PointResult {
  std::vector<LevelRow> rows;  // always n_levels entries, n = 1, 2, ...
  std::vector<std::string> notes;
  bool complete = true;
};

void attach_oracle(const RingParams& p, const std::vector<EnergyLevel>& levels, int n_levels,
                   double ceiling, int oracle_points, PointResult& out) {
  double e_max = ceiling;
  if (static_cast<int>(levels.size()) == n_levels) e_max = levels.back().e0;
  try {
    const FDSpectrum fd = fd_spectrum(p, suggest_grid(p, e_max, oracle_points), n_levels);
    for (const auto& w : fd.warnings) out.notes.push_back(describe(p) + ": oracle: " + w);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      LevelRow& row = out.rows[k];
      row.oracle_e0 = fd.levels[k].e0;
      row.oracle_dev = std::fabs(row.e0 - row.oracle_e0);
      row.oracle_l2 = eigenvector_l2_error(levels[k].solution, fd.grid, fd.levels[k].u_samples);
    }
  } catch (const Error& e) {
    out.notes.push_back(describe(p) + ": oracle failed: " + e.what());
  }
}

PointResult solve_point(const RingParams& p, int n_levels, double s, const RunOptions& run,
                        std::optional<double> ceiling = std::nullopt) {
  const double top = ceiling.value_or(default_search_ceiling(p, n_levels));
  PointResult out;
  out.rows.resize(n_levels);
  for (int k = 0; k < n_levels; ++k) {
    out.rows[k].m = p.m;
    out.rows[k].n = k + 1;
  }
  std::vector<EnergyLevel> levels;
  try {
    levels = find_levels(p, n_levels, top);
  } catch (const PartialResultError& e) {
    levels = e.levels;
    out.complete = false;
    out.notes.push_back(describe(p) + ": " + e.what());
  } catch (const Error& e) {
    out.complete = false;
    out.notes.push_back(describe(p) + ": " + e.what());
    for (auto& row : out.rows) row.error = e.what();
    return out;
  }
  const ZeemanParams zp{s, p.b};
  for (std::size_t k = 0; k < levels.size(); ++k) {
    LevelRow& row = out.rows[k];
    row.e0 = levels[k].e0;
    try {
      const SplitLevel split = zeeman_correction(levels[k], zp, p.a);
      row.delta = split.base.delta;
      row.e_prime = split.base.e_prime;
      row.e_plus = split.e_plus;
      row.e_minus = split.e_minus;
    } catch (const Error& e) {
      out.complete = false;
      row.error = e.what();
      out.notes.push_back(describe(p) + " n=" + std::to_string(k + 1) + ": " + e.what());
    }
  }
  for (std::size_t k = levels.size(); k < out.rows.size(); ++k) {
    out.rows[k].error = "level not found below the search ceiling";
  }
  if (run.oracle) attach_oracle(p, levels, n_levels, top, run.oracle_points, out);
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void append_oracle_cells(std::vector<Cell>& cells, const LevelRow& row) {
  cells.emplace_back(row.oracle_e0);
  cells.emplace_back(row.oracle_dev);
  cells.emplace_back(row.oracle_l2);
}

const std::vector<std::string> kOracleColumns{"e0_oracle", "oracle_abs_dev", "oracle_l2"};

double relative_deviation(double value, double reference) {
  return std::fabs(value - reference) / std::fabs(reference);
}

}  // namespace

void check_envelope(const RingParams& p, int n_levels) {
  using E = Envelope;
  auto fail = [](const std::string& what) { throw UsageError(what); };
  if (std::abs(p.m) > E::max_abs_m) fail("|m| must not exceed 10 (got " + std::to_string(p.m) + ")");
  if (!(p.v > 0.0 && p.v <= E::max_v)) fail("v must lie in (0, 1e4]");
  if (!(p.a >= 0.0 && p.a <= E::max_a)) fail("a must lie in [0, 10]");
  if (!(p.b >= E::min_b && p.b <= E::max_b)) fail("b must lie in [1e-3, 50]");
  if (!(p.r_i >= 0.0 && p.r_i <= E::max_r_i)) fail("ri must lie in [0, 0.99]");
  if (n_levels < 1 || n_levels > E::max_levels) fail("n must lie in [1, 20]");
}

CommandResult cmd_levels(const LevelsRequest& req, const RunOptions& run) {
  const std::vector<int> ms = sorted_unique(req.m_list);
  if (ms.empty()) throw UsageError("at least one m is required");
  for (int m : ms) {
    RingParams p = req.params;
    p.m = m;
    check_envelope(p, req.n_levels);
  }
  if (req.ceiling && !std::isfinite(*req.ceiling)) throw UsageError("ceiling must be finite");
  double s = kPublishedS;
  if (req.material) {
    req.material->validate();
    s = req.material->zeeman_s();
  }

  const auto points = parallel_map<PointResult>(ms.size(), run.threads, [&](std::size_t i) {
    RingParams p = req.params;
    p.m = ms[i];
    return solve_point(p, req.n_levels, s, run, req.ceiling);
  });

  CommandResult res;
  res.table.columns = {"m", "n", "e0", "delta", "e_prime", "e_plus", "e_minus"};
  if (req.material) {
    res.table.columns.insert(res.table.columns.end(), {"E0_meV", "Eprime_meV"});
  }
  if (run.oracle) res.table.columns.insert(res.table.columns.end(), kOracleColumns.begin(), kOracleColumns.end());
  for (const auto& pt : points) {
    if (!pt.complete) res.exit_code = kExitIncomplete;
    res.diagnostics.insert(res.diagnostics.end(), pt.notes.begin(), pt.notes.end());
    for (const auto& row : pt.rows) {
      if (std::isnan(row.e0)) continue;
      std::vector<Cell> cells{static_cast<long long>(row.m), static_cast<long long>(row.n), row.e0,
                              row.delta, row.e_prime, row.e_plus, row.e_minus};
      if (req.material) {
        cells.emplace_back(convert(row.e0, Direction::to_physical, Quantity::energy, *req.material));
        cells.emplace_back(convert(row.e_prime, Direction::to_physical, Quantity::energy, *req.material));
      }
      if (run.oracle) append_oracle_cells(cells, row);
      res.table.rows.push_back(std::move(cells));
    }
  }
  return res;
}

SweptParam parse_swept(const std::string& name) {
  if (name == "a") return SweptParam::a;
  if (name == "b") return SweptParam::b;
  if (name == "ri" || name == "r_i") return SweptParam::r_i;
  if (name == "v") return SweptParam::v;
  throw UsageError("unknown swept parameter '" + name + "' (expected a, b, ri or v)");
}

std::string swept_name(SweptParam p) {
  switch (p) {
    case SweptParam::a:
      return "a";
    case SweptParam::b:
      return "b";
    case SweptParam::r_i:
      return "ri";
    case SweptParam::v:
      return "v";
  }
  return "";
}

namespace {

RingParams with_swept(RingParams p, SweptParam which, double value) {
  switch (which) {
    case SweptParam::a:
      p.a = value;
      break;
    case SweptParam::b:
      p.b = value;
      break;
    case SweptParam::r_i:
      p.r_i = value;
      break;
    case SweptParam::v:
      p.v = value;
      break;
  }
  return p;
}

constexpr std::size_t kMaxSweepPoints = 100000;

}  // namespace

std::vector<double> SweepSpec::points() const {
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

void SweepSpec::validate() const {
  if (!(std::isfinite(start) && std::isfinite(stop) && start < stop)) throw UsageError("sweep needs start < stop");
  if (!(step > 0.0)) throw UsageError("sweep step must be positive");
  if ((stop - start) / step >= static_cast<double>(kMaxSweepPoints)) {
    throw UsageError("sweep has more than 100000 points");
  }
  if (m_list.empty()) throw UsageError("at least one m is required");
  for (double x : points()) {
    for (int m : m_list) {
      RingParams p = with_swept(fixed, swept, x);
      p.m = m;
      check_envelope(p, n_levels);
    }
  }
}

CommandResult cmd_sweep(const SweepSpec& spec, const std::optional<MaterialParams>& material,
                        const RunOptions& run) {
  spec.validate();
  double s = kPublishedS;
  if (material) {
    material->validate();
    s = material->zeeman_s();
  }
  const std::vector<double> xs = spec.points();
  const std::vector<int> ms = sorted_unique(spec.m_list);

  const auto points = parallel_map<PointResult>(xs.size() * ms.size(), run.threads, [&](std::size_t i) {
    RingParams p = with_swept(spec.fixed, spec.swept, xs[i / ms.size()]);
    p.m = ms[i % ms.size()];
    return solve_point(p, spec.n_levels, s, run);
  });

  CommandResult res;
  res.table.columns = {"swept_value", "m", "n", "e0", "delta", "e_prime", "minus_eprime_over_e0", "error"};
  if (run.oracle) res.table.columns.insert(res.table.columns.end(), kOracleColumns.begin(), kOracleColumns.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (!pt.complete) res.exit_code = kExitIncomplete;
    res.diagnostics.insert(res.diagnostics.end(), pt.notes.begin(), pt.notes.end());
    for (const auto& row : pt.rows) {
      std::vector<Cell> cells{xs[i / ms.size()], static_cast<long long>(row.m), static_cast<long long>(row.n),
                              row.e0, row.delta, row.e_prime, -row.e_prime / row.e0};
      cells.emplace_back(row.error.empty() ? Cell{} : Cell{row.error});
      if (run.oracle) append_oracle_cells(cells, row);
      res.table.rows.push_back(std::move(cells));
    }
  }
  return res;
}

CommandResult cmd_convert(double value, Direction dir, Quantity q, const MaterialParams& material) {
  if (!std::isfinite(value)) throw UsageError("value must be finite");
  try {
    material.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  CommandResult res;
  res.table.columns = {"quantity", "direction", "input", "output", "unit", "s"};
  static const char* kQuantity[] = {"energy", "soi_strength", "field", "depth"};
  res.table.rows.push_back({std::string(kQuantity[static_cast<int>(q)]),
                            std::string(dir == Direction::to_physical ? "to-physical" : "to-dimensionless"),
                            value, convert(value, dir, q, material), physical_unit(q), material.zeeman_s()});
  return res;
}

CommandResult cmd_wavefunction(const WavefunctionRequest& req, const RunOptions& run) {
  check_envelope(req.params, req.n);
  if (req.points < 2) throw UsageError("points must be at least 2");
  if (req.r_max < 0.0 || !std::isfinite(req.r_max)) throw UsageError("r-max must be non-negative");

  std::vector<EnergyLevel> levels;
  try {
    levels = find_levels(req.params, req.n);
  } catch (const PartialResultError& e) {
    throw Error(describe(req.params) + ": level n=" + std::to_string(req.n) + " not found: " + e.what());
  }
  const RadialSolution& sol = levels.back().solution;
  const double r_max = req.r_max > 0.0 ? req.r_max : sol.tail_radius;

  CommandResult res;
  res.table.always_full_precision = true;
  res.table.columns = {"r", "u", "u_prime"};

  std::vector<double> fd_u;
  FDGrid grid;
  if (run.oracle) {
    grid = suggest_grid(req.params, levels.back().e0, run.oracle_points);
    const FDSpectrum fd = fd_spectrum(req.params, grid, req.n);
    for (const auto& w : fd.warnings) res.diagnostics.push_back("oracle: " + w);
    fd_u = fd.levels.back().u_samples;
    double dot = 0.0;
    for (std::size_t j = 0; j < fd_u.size(); ++j) dot += fd_u[j] * eval_u(sol, grid.node(static_cast<int>(j)));
    if (dot < 0.0) {
      for (double& u : fd_u) u = -u;
    }
    res.table.columns.emplace_back("u_oracle");
  }
  auto oracle_at = [&](double r) {
    const double t = r / grid.spacing() - 0.5;
    if (t <= 0.0) return fd_u.front();
    const auto j = static_cast<std::size_t>(t);
    if (j + 1 >= fd_u.size()) return r > grid.r_max ? 0.0 : fd_u.back();
    const double f = t - static_cast<double>(j);
    return (1.0 - f) * fd_u[j] + f * fd_u[j + 1];
  };

  for (int j = 0; j < req.points; ++j) {
    const double r = r_max * j / (req.points - 1);
    const RadialPoint pt = eval_u_both(sol, r);
    std::vector<Cell> cells{r, pt.u, pt.u_prime};
    if (run.oracle) cells.emplace_back(oracle_at(r));
    res.table.rows.push_back(std::move(cells));
  }
  return res;
}

std::vector<ReferenceCell> table1_reference() {
  std::vector<ReferenceCell> cells;
  std::istringstream in(detail::kTable1Csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    ReferenceCell c;
    char comma = 0;
    fields >> c.r_i >> comma >> c.m >> comma >> c.n >> comma >> c.e0 >> comma >> c.minus_eprime_over_e0;
    cells.push_back(c);
  }
  return cells;
}

CommandResult cmd_table1(const RunOptions& run) {
  const std::vector<ReferenceCell> ref = table1_reference();
  // One solve per (ri, m) covers both n.
  std::vector<std::pair<double, int>> keys;
  for (const auto& c : ref) {
    if (keys.empty() || keys.back() != std::make_pair(c.r_i, c.m)) keys.emplace_back(c.r_i, c.m);
  }
  const auto points = parallel_map<PointResult>(keys.size(), run.threads, [&](std::size_t i) {
    const RingParams p{keys[i].second, 400.0, 1.0, 1.0, keys[i].first};
    return solve_point(p, 2, kPublishedS, run);
  });

  CommandResult res;
  res.table.columns = {"ri",           "m",                "n",         "e0",
                       "e0_published", "e0_rel_dev",       "minus_eprime_over_e0",
                       "ratio_published", "ratio_rel_dev", "within_tolerance",
                       "error"};
  if (run.oracle) res.table.columns.insert(res.table.columns.end(), kOracleColumns.begin(), kOracleColumns.end());
  for (const auto& c : ref) {
    const auto key = std::find(keys.begin(), keys.end(), std::make_pair(c.r_i, c.m)) - keys.begin();
    const PointResult& pt = points[key];
    const LevelRow& row = pt.rows[c.n - 1];
    const double ratio = -row.e_prime / row.e0;
    const double e0_dev = relative_deviation(row.e0, c.e0);
    const double ratio_dev = relative_deviation(ratio, c.minus_eprime_over_e0);
    const bool ok = e0_dev <= kTable1EnergyTolerance && ratio_dev <= kTable1RatioTolerance;
    if (!ok) res.exit_code = kExitIncomplete;
    std::vector<Cell> cells{c.r_i,  static_cast<long long>(c.m), static_cast<long long>(c.n), row.e0, c.e0,
                            e0_dev, ratio, c.minus_eprime_over_e0, ratio_dev, std::string(ok ? "yes" : "no")};
    cells.emplace_back(row.error.empty() ? Cell{} : Cell{row.error});
    if (run.oracle) append_oracle_cells(cells, row);
    res.table.rows.push_back(std::move(cells));
  }
  for (const auto& pt : points) res.diagnostics.insert(res.diagnostics.end(), pt.notes.begin(), pt.notes.end());
  return res;
}

}  // namespace qring::app
