#include "qring/spectrum.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace qring {

namespace {

std::string describe(const RingParams& p) {
  std::ostringstream msg;
  msg.precision(12);
  msg << "(m=" << p.m << ", v=" << p.v << ", a=" << p.a << ", b=" << p.b << ", r_i=" << p.r_i << ")";
  return msg.str();
}

template <int N>
double scaled_determinant(const std::array<std::array<ScaledReal, N>, N>& a) {
  std::array<ScaledReal, N> col_scale;
  for (int j = 0; j < N; ++j) {
    ScaledReal mx;
    for (int i = 0; i < N; ++i) {
      if (abs_less(mx, a[i][j])) mx = a[i][j].abs();
    }
    if (mx.is_zero()) return 0.0;
    col_scale[j] = mx;
  }
  Eigen::Matrix<double, N, N> m;
  for (int i = 0; i < N; ++i) {
    std::array<ScaledReal, N> row;
    ScaledReal mx;
    for (int j = 0; j < N; ++j) {
      row[j] = a[i][j] / col_scale[j];
      if (abs_less(mx, row[j])) mx = row[j].abs();
    }
    if (mx.is_zero()) return 0.0;
    for (int j = 0; j < N; ++j) m(i, j) = (row[j] / mx).to_double();
  }
  return m.determinant();
}

// inf of m²/r² + b²r² over the open interval (lo, hi).
double orbital_infimum(int m, double b, double lo, double hi) {
  auto f = [&](double r) { return m * static_cast<double>(m) / (r * r) + b * b * r * r; };
  if (m == 0) return b * b * lo * lo;
  const double r_star = std::sqrt(std::abs(m) / b);
  if (r_star <= lo) return f(lo);
  if (r_star >= hi) return f(hi);
  return 2.0 * std::abs(m) * b;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

class Scanner {
 public:
  Scanner(const RingParams& p, const SearchOptions& opts) : p_(p), opts_(opts) {}

  double det(double e) {
    const double d = matching_determinant(p_, e);
    if (!std::isfinite(d)) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "find_levels: non-finite determinant at e0=" << e << " " << describe(p_);
      throw EvaluationError(msg.str());
    }
    if (opts_.profile) opts_.profile->grid.push_back({e, d});
    return d;
  }

  double refine(double lo, double hi, double dlo, double dhi) {
    std::uintmax_t iterations = 200;
    auto f = [&](double e) { return matching_determinant(p_, e); };
    auto tol = [](double x, double y) {
      return std::fabs(x - y) <= 1e-13 * std::max(1.0, std::fabs(x));
    };
    try {
      const auto r = boost::math::tools::toms748_solve(f, lo, hi, dlo, dhi, tol, iterations);
      if (!(std::fabs(r.second - r.first) <= 1e-10)) {
        throw RootRefinementError("");
      }
      return 0.5 * (r.first + r.second);
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "find_levels: root refinement failed in [" << lo << ", " << hi << "] "
          << describe(p_);
      throw RootRefinementError(msg.str());
    }
  }

  // A dip of |det| with no sign change: look for a close pair of roots on
  // successively finer grids, then for a tangential zero.
  std::vector<double> resolve_dip(double lo, double hi, double dlo, double dhi) {
    std::vector<double> roots;
    for (int level = 1; level <= opts_.max_halvings; ++level) {
      const int pieces = 1 << level;
      double prev_e = lo, prev_d = dlo;
      roots.clear();
      for (int k = 1; k <= pieces; ++k) {
        const double e = k == pieces ? hi : lo + (hi - lo) * k / pieces;
        const double d = k == pieces ? dhi : det(e);
        if (d == 0.0) {
          roots.push_back(e);
        } else if (prev_d != 0.0 && sign_of(d) != sign_of(prev_d)) {
          roots.push_back(refine(prev_e, e, prev_d, d));
        }
        prev_e = e;
        prev_d = d;
      }
      if (!roots.empty()) return roots;
    }
    // Golden-section minimum of |det|; a tangential zero counts as two
    // coincident roots.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = std::fabs(det(c)), fd = std::fabs(det(d));
    for (int it = 0; it < 60 && b - a > 1e-12 * std::max(1.0, std::fabs(a)); ++it) {
      if (fc < fd) {
        b = d; d = c; fd = fc;
        c = b - g * (b - a);
        fc = std::fabs(det(c));
      } else {
        a = c; c = d; fc = fd;
        d = a + g * (b - a);
        fd = std::fabs(det(d));
      }
    }
    if (std::min(fc, fd) < 1e-8) {
      const double e = fc < fd ? c : d;
      return {e, e};
    }
    return {};
  }

 private:
  const RingParams& p_;
  const SearchOptions& opts_;
};

}  // namespace

double matching_determinant(const RingParams& p, double e0) {
  p.validate();
  if (p.is_dot()) {
    const BasisPoint w21 = basis_function(p, e0, Basis::w21, 1.0);
    const BasisPoint w3 = basis_function(p, e0, Basis::w3, 1.0);
    return scaled_determinant<2>({{{w21.value, -w3.value}, {w21.slope, -w3.slope}}});
  }
  const BasisPoint w1 = basis_function(p, e0, Basis::w1, p.r_i);
  const BasisPoint w21i = basis_function(p, e0, Basis::w21, p.r_i);
  const BasisPoint w22i = basis_function(p, e0, Basis::w22, p.r_i);
  const BasisPoint w21o = basis_function(p, e0, Basis::w21, 1.0);
  const BasisPoint w22o = basis_function(p, e0, Basis::w22, 1.0);
  const BasisPoint w3 = basis_function(p, e0, Basis::w3, 1.0);
  const ScaledReal zero;
  return scaled_determinant<4>({{
      {w1.value, -w21i.value, -w22i.value, zero},
      {w1.slope, -w21i.slope, -w22i.slope, zero},
      {zero, w21o.value, w22o.value, -w3.value},
      {zero, w21o.slope, w22o.slope, -w3.slope},
  }});
}

double effective_potential_floor(const RingParams& p) {
  p.validate();
  const double inf = std::numeric_limits<double>::infinity();
  double lowest = orbital_infimum(p.m, p.b, p.is_dot() ? 0.0 : p.r_i, 1.0);
  if (!p.is_dot()) lowest = std::min(lowest, p.v + orbital_infimum(p.m, p.b, 0.0, p.r_i));
  lowest = std::min(lowest, p.v + orbital_infimum(p.m, p.b, 1.0, inf));
  return lowest + 2.0 * p.b * p.m - p.a * p.a;
}

double default_search_ceiling(const RingParams& p, int n_levels) {
  return p.v + 8.0 * p.b * (n_levels + std::abs(p.m) + 1);
}

std::vector<EnergyLevel> find_levels(const RingParams& p, int n_levels) {
  return find_levels(p, n_levels, default_search_ceiling(p, n_levels));
}

std::vector<EnergyLevel> find_levels(const RingParams& p, int n_levels, double ceiling,
                                     const SearchOptions& opts) {
  p.validate();
  if (n_levels < 1) throw DomainError("find_levels: n_levels must be at least 1");
  const double floor = effective_potential_floor(p);
  const double step = opts.initial_step > 0.0 ? opts.initial_step : std::min(p.b, 0.5);
  Scanner scan(p, opts);

  std::vector<double> roots;
  std::array<DetSample, 3> hist{};
  int filled = 0;
  auto push = [&](DetSample s) {
    hist[0] = hist[1];
    hist[1] = hist[2];
    hist[2] = s;
    filled = std::min(filled + 1, 3);
  };

  double e = floor;
  push({e, scan.det(e)});
  while (static_cast<int>(roots.size()) < n_levels && e < ceiling) {
    e = std::min(e + step, ceiling);
    const DetSample s{e, scan.det(e)};
    const DetSample prev = hist[2];
    if (s.value == 0.0) {
      roots.push_back(s.e0);
    } else if (prev.value != 0.0 && sign_of(s.value) != sign_of(prev.value)) {
      roots.push_back(scan.refine(prev.e0, s.e0, prev.value, s.value));
    } else if (filled >= 2 && hist[1].value != 0.0 && prev.value != 0.0 &&
               sign_of(hist[1].value) == sign_of(prev.value)) {
      const double left = std::fabs(hist[1].value), mid = std::fabs(prev.value);
      const double right = std::fabs(s.value);
      if (mid < 0.5 * std::min(left, right)) {
        for (double r : scan.resolve_dip(hist[1].e0, s.e0, hist[1].value, s.value)) {
          roots.push_back(r);
        }
      }
    }
    push(s);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::fabs(x - y) < 1e-12; }) ,
              roots.end());
  if (static_cast<int>(roots.size()) > n_levels) roots.resize(n_levels);

  std::vector<EnergyLevel> levels;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    EnergyLevel lvl;
    lvl.m = p.m;
    lvl.n = static_cast<int>(k) + 1;
    lvl.e0 = roots[k];
    if (opts.build_solutions) {
      lvl.solution = solve_coefficients(p, roots[k]);
    } else {
      lvl.solution.params = p;
      lvl.solution.e0 = roots[k];
      lvl.solution.gamma_o = p.gamma_o(roots[k]);
      lvl.solution.gamma_i = p.gamma_i(roots[k]);
      lvl.solution.beta = p.beta();
    }
    levels.push_back(std::move(lvl));
  }
  if (static_cast<int>(levels.size()) < n_levels) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "find_levels: found " << levels.size() << " of " << n_levels
        << " levels below the search ceiling " << ceiling << " " << describe(p);
    throw PartialResultError(msg.str(), std::move(levels));
  }
  return levels;
}

RelationReport verify_relations(const RingParams& p, const std::vector<EnergyLevel>& pos,
                                const std::vector<EnergyLevel>& neg) {
  RelationReport report;
  const std::size_t n = std::min(pos.size(), neg.size());
  if (n == 0) return report;
  RingParams p0 = p;
  p0.a = 0.0;
  double top = 0.0;
  for (const auto& l : pos) top = std::max(top, l.e0);
  SearchOptions opts;
  opts.build_solutions = false;
  const double ceiling = std::max(default_search_ceiling(p0, static_cast<int>(n)),
                                  top + p.a * p.a + 8.0 * p.b);
  std::vector<EnergyLevel> zero_a;
  try {
    zero_a = find_levels(p0, static_cast<int>(n), ceiling, opts);
  } catch (const PartialResultError& e) {
    zero_a = e.levels;
  }
  for (std::size_t k = 0; k < n; ++k) {
    RelationResidual row;
    row.n = static_cast<int>(k) + 1;
    row.a_shift = k < zero_a.size() ? pos[k].e0 - (zero_a[k].e0 - p.a * p.a)
                                    : std::numeric_limits<double>::infinity();
    row.m_spacing = (pos[k].e0 - neg[k].e0) - 4.0 * p.b * p.m;
    report.max_a_shift = std::max(report.max_a_shift, std::fabs(row.a_shift));
    report.max_m_spacing = std::max(report.max_m_spacing, std::fabs(row.m_spacing));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qring
