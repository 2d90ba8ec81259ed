#include "qring/radial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qring/errors.hpp"
#include "qring/quadrature.hpp"
#include "qring/specfun.hpp"

namespace qring {

namespace {

constexpr double kTailFraction = 1e-16;
constexpr double kMaxCondition = 1e12;
constexpr int kPeakSamples = 240;

std::string describe(const RingParams& p, double e0) {
  std::ostringstream msg;
  msg.precision(12);
  msg << "(m=" << p.m << ", v=" << p.v << ", a=" << p.a << ", b=" << p.b
      << ", r_i=" << p.r_i << ", e0=" << e0 << ")";
  return msg.str();
}

// 1 for r < r_i, 2 for r_i <= r <= 1, 3 beyond.
int region_of(const RadialSolution& s, double r) {
  if (!s.params.is_dot() && r < s.params.r_i) return 1;
  return r <= 1.0 ? 2 : 3;
}

struct LocalW {
  ScaledReal w, dw;
};

LocalW local_w(const RadialSolution& s, double r, int region) {
  const RingParams& p = s.params;
  auto term = [&](const ScaledReal& c, Basis which) -> LocalW {
    if (c.is_zero()) return {};
    const BasisPoint bp = basis_function(p, s.e0, which, r);
    return {c * bp.value, c * bp.slope};
  };
  switch (region) {
    case 1:
      return term(s.c1, Basis::w1);
    case 2: {
      const LocalW a = term(s.c21, Basis::w21);
      const LocalW b = term(s.c22, Basis::w22);
      return {a.w + b.w, a.dw + b.dw};
    }
    default:
      return term(s.c3, Basis::w3);
  }
}

struct ScaledPoint {
  ScaledReal u, du;
};

// u = P w with P = (br²)^{|m|/2} e^{−br²/2};  u' = P (w' + (|m|/r − br) w).
ScaledPoint u_scaled(const RadialSolution& s, double r, int region) {
  const RingParams& p = s.params;
  const double x = p.b * r * r;
  const int am = std::abs(p.m);
  const double log_pref = (am == 0 ? 0.0 : 0.5 * am * std::log(x)) - 0.5 * x;
  const ScaledReal pref = ScaledReal::from_log(log_pref, 1);
  const LocalW lw = local_w(s, r, region);
  const double dlog = (am == 0 ? 0.0 : am / r) - p.b * r;
  return {pref * lw.w, pref * (lw.dw + ScaledReal(dlog) * lw.w)};
}

// Limit r → 0 of the innermost region, where w = c M(γ, β, 0) = c.
ScaledPoint u_at_origin(const RadialSolution& s) {
  const ScaledReal c = s.params.is_dot() ? s.c21 : s.c1;
  switch (std::abs(s.params.m)) {
    case 0:
      return {c, ScaledReal()};
    case 1:
      return {ScaledReal(), ScaledReal(std::sqrt(s.params.b)) * c};
    default:
      return {ScaledReal(), ScaledReal()};
  }
}

ScaledPoint u_scaled(const RadialSolution& s, double r) {
  if (r == 0.0) return u_at_origin(s);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "radial: evaluation radius must be non-negative, got " << r;
    throw DomainError(msg.str());
  }
  return u_scaled(s, r, region_of(s, r));
}

// Outermost classical turning point of e0 + a² = v + m²/r² + 2bm + b²r², or 1.
double outer_turning_point(const RingParams& p, double e0) {
  const double excess = p.shifted_energy(e0) - p.v - 2.0 * p.b * p.m;
  const double disc = excess * excess - 4.0 * p.b * p.b * p.m * p.m;
  if (excess <= 0.0 || disc < 0.0) return 1.0;
  const double y = (excess + std::sqrt(disc)) / (2.0 * p.b * p.b);
  return std::max(1.0, std::sqrt(y));
}

ScaledReal density(const RadialSolution& s, double r) {
  const ScaledReal u = u_scaled(s, r).u;
  return u * u * ScaledReal(r);
}

ScaledReal density_peak(const RadialSolution& s) {
  const double reach = outer_turning_point(s.params, s.e0) * 1.1;
  ScaledReal peak;
  for (int k = 1; k <= kPeakSamples; ++k) {
    const double r = reach * k / kPeakSamples;
    const ScaledReal d = density(s, r);
    if (abs_less(peak, d)) peak = d.abs();
  }
  return peak;
}

double find_tail_radius(const RadialSolution& s, const ScaledReal& peak) {
  const ScaledReal threshold = peak * ScaledReal(kTailFraction);
  double r = outer_turning_point(s.params, s.e0);
  double h = 0.02;
  for (int step = 0; step < 2000; ++step) {
    if (abs_less(density(s, r), threshold)) return r;
    r += h;
    h *= 1.1;
  }
  throw IntegrationError("radial: wavefunction tail does not decay " + describe(s.params, s.e0));
}

template <std::size_t N, class F>
std::array<double, N> integrate_segments(const RadialSolution& s, const F& f,
                                         const NormOptions& opts) {
  std::vector<double> cuts{0.0};
  if (!s.params.is_dot()) cuts.push_back(s.params.r_i);
  cuts.push_back(1.0);
  const double turn = outer_turning_point(s.params, s.e0);
  if (turn > 1.0) cuts.push_back(turn);
  const double end = s.tail_radius * opts.tail_scale;
  if (end > cuts.back()) cuts.push_back(end);

  quad::Tolerance tol;
  tol.absolute = opts.absolute;
  tol.relative = opts.relative;
  std::array<double, N> total{};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto est = quad::integrate<double, N>(f, cuts[k], cuts[k + 1], tol);
    for (std::size_t c = 0; c < N; ++c) total[c] += est.value[c];
  }
  return total;
}

struct System3 {
  std::array<std::array<ScaledReal, 3>, 3> a;
  std::array<ScaledReal, 3> rhs;
};

// Solves with positive column then row equilibration; returns false if the
// equilibrated matrix has condition number above kMaxCondition.
bool solve_equilibrated(const System3& sys, std::array<ScaledReal, 3>* out, double* cond) {
  std::array<ScaledReal, 3> col_scale;
  for (int j = 0; j < 3; ++j) {
    ScaledReal mx;
    for (int i = 0; i < 3; ++i) {
      if (abs_less(mx, sys.a[i][j])) mx = sys.a[i][j].abs();
    }
    if (mx.is_zero()) {
      *cond = INFINITY;
      return false;
    }
    col_scale[j] = mx;
  }
  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    std::array<ScaledReal, 3> row;
    ScaledReal mx;
    for (int j = 0; j < 3; ++j) {
      row[j] = sys.a[i][j] / col_scale[j];
      if (abs_less(mx, row[j])) mx = row[j].abs();
    }
    for (int j = 0; j < 3; ++j) m(i, j) = (row[j] / mx).to_double();
    rhs(i) = (sys.rhs[i] / mx).to_double();
  }
  // GCC 11 cannot see that JacobiSVD fills every singular value.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
  *cond = sv(2) > 0.0 ? sv(0) / sv(2) : INFINITY;
#pragma GCC diagnostic pop
  if (!(*cond <= kMaxCondition) || !rhs.allFinite()) return false;
  const Eigen::Vector3d y = m.fullPivLu().solve(rhs);
  if (!y.allFinite()) return false;
  for (int j = 0; j < 3; ++j) (*out)[j] = ScaledReal(y(j)) / col_scale[j];
  return true;
}

void normalize(RadialSolution& s, const ScaledReal& provisional_c) {
  const ScaledReal peak = density_peak(s);
  if (peak.is_zero()) {
    throw DegenerateMatchingError("radial: wavefunction vanishes identically " +
                                  describe(s.params, s.e0));
  }
  s.tail_radius = find_tail_radius(s, peak);
  // Bring the peak density to 1 so the quadrature runs in double range.
  const ScaledReal pre = ScaledReal(1.0) / sqrt(peak);
  for (ScaledReal* c : {&s.c1, &s.c21, &s.c22, &s.c3}) *c = *c * pre;
  const double n = radial_norm_integral(s);
  const double two_pi = 2.0 * std::numbers::pi;
  const ScaledReal scale(1.0 / std::sqrt(two_pi * n));
  for (ScaledReal* c : {&s.c1, &s.c21, &s.c22, &s.c3}) *c = *c * scale;
  // 2π ∫ u² r dr for the coefficients before any rescaling, with the
  // provisional coefficient taken as 1.
  s.norm = ScaledReal(two_pi * n) * peak / (provisional_c * provisional_c);
}

}  // namespace

void RingParams::validate() const {
  std::ostringstream msg;
  if (!(r_i >= 0.0 && r_i < 1.0)) msg << "r_i must lie in [0, 1); ";
  if (!(v > 0.0) || !std::isfinite(v)) msg << "v must be positive; ";
  if (!(b >= kMinField) || !std::isfinite(b)) msg << "b must be >= " << kMinField << "; ";
  if (!(a >= 0.0) || !std::isfinite(a)) msg << "a must be non-negative; ";
  const std::string problems = msg.str();
  if (!problems.empty()) {
    throw DomainError("RingParams " + describe(*this, 0.0) + ": " +
                      problems.substr(0, problems.size() - 2));
  }
}

int RingParams::beta() const { return std::abs(m) + 1; }

double RingParams::gamma_o(double e0) const {
  return (m + std::abs(m) + 1) / 2.0 - (shifted_energy(e0) - v) / (4.0 * b);
}

double RingParams::gamma_i(double e0) const {
  return (m + std::abs(m) + 1) / 2.0 - shifted_energy(e0) / (4.0 * b);
}

BasisPoint basis_function(const RingParams& p, double e0, Basis which, double r) {
  const double x = p.b * r * r;
  const ScaledReal dxdr(2.0 * p.b * r);
  const int beta = p.beta();
  switch (which) {
    case Basis::w1: {
      const CHFParams c{p.gamma_o(e0), beta, x};
      return {kummer_m_scaled(c), dxdr * kummer_m_dx_scaled(c)};
    }
    case Basis::w21: {
      const CHFParams c{p.gamma_i(e0), beta, x};
      return {kummer_m_scaled(c), dxdr * kummer_m_dx_scaled(c)};
    }
    case Basis::w22: {
      const CompanionValue y = kummer_companion({p.gamma_i(e0), beta, x});
      return {y.value, dxdr * y.slope};
    }
    case Basis::w3: {
      const CHFParams c{p.gamma_o(e0), beta, x};
      return {tricomi_u_scaled(c), dxdr * tricomi_u_dx_scaled(c)};
    }
  }
  return {};
}

BasisValues basis_values(const RingParams& p, double e0, double r) {
  if (!(r > 0.0)) throw DomainError("basis_values: point must be positive");
  BasisValues out;
  auto fill = [&](Basis which, ScaledReal& w, ScaledReal& wp) {
    const BasisPoint bp = basis_function(p, e0, which, r);
    w = bp.value;
    wp = bp.slope;
  };
  fill(Basis::w1, out.w1, out.w1p);
  fill(Basis::w21, out.w21, out.w21p);
  fill(Basis::w22, out.w22, out.w22p);
  fill(Basis::w3, out.w3, out.w3p);
  return out;
}

RadialSolution solve_coefficients(const RingParams& params, double e0) {
  params.validate();
  RadialSolution s;
  s.params = params;
  s.e0 = e0;
  s.gamma_o = params.gamma_o(e0);
  s.gamma_i = params.gamma_i(e0);
  s.beta = params.beta();

  if (params.is_dot()) {
    // Region 2 reaches the origin, so only the regular M(γi) survives;
    // continuity of u at 1 fixes c3.
    const BasisPoint w21 = basis_function(params, e0, Basis::w21, 1.0);
    const BasisPoint w3 = basis_function(params, e0, Basis::w3, 1.0);
    if (w3.value.is_zero()) {
      throw DegenerateMatchingError("solve_coefficients: w3(1) vanishes " + describe(params, e0));
    }
    s.c21 = ScaledReal(1.0);
    s.c3 = w21.value / w3.value;
    normalize(s, s.c21);
    return s;
  }

  const BasisPoint w1 = basis_function(params, e0, Basis::w1, params.r_i);
  const BasisPoint w21i = basis_function(params, e0, Basis::w21, params.r_i);
  const BasisPoint w22i = basis_function(params, e0, Basis::w22, params.r_i);
  const BasisPoint w21o = basis_function(params, e0, Basis::w21, 1.0);
  const BasisPoint w22o = basis_function(params, e0, Basis::w22, 1.0);
  const BasisPoint w3 = basis_function(params, e0, Basis::w3, 1.0);

  // c1 is fixed to the reciprocal of the larger of |w1|, |w1'| at r_i so the
  // right-hand side stays O(1); normalization removes the choice.
  const ScaledReal c1 = ScaledReal(1.0) /
                        (abs_less(w1.value, w1.slope) ? w1.slope.abs() : w1.value.abs());
  System3 sys;
  sys.a[1] = {w21o.value, w22o.value, -w3.value};
  sys.a[2] = {w21o.slope, w22o.slope, -w3.slope};
  sys.rhs[1] = ScaledReal();
  sys.rhs[2] = ScaledReal();
  // Derivative continuity at r_i first; if that system is singular (w'
  // happens to vanish there), value continuity at r_i replaces it.
  sys.a[0] = {-w21i.slope, -w22i.slope, ScaledReal()};
  sys.rhs[0] = -(c1 * w1.slope);
  std::array<ScaledReal, 3> x;
  double cond = 0.0;
  if (!solve_equilibrated(sys, &x, &cond)) {
    sys.a[0] = {-w21i.value, -w22i.value, ScaledReal()};
    sys.rhs[0] = -(c1 * w1.value);
    double cond_alt = 0.0;
    if (!solve_equilibrated(sys, &x, &cond_alt)) {
      // As r_i -> 0 both systems above degenerate to the dot's 2x2 matching
      // matrix, singular at the level. Matching u and u' at r_i pins c21, c22
      // through a nonzero Wronskian; value continuity at 1 then fixes c3.
      System3 inner;
      inner.a[0] = {-w21i.value, -w22i.value, ScaledReal()};
      inner.a[1] = {-w21i.slope, -w22i.slope, ScaledReal()};
      inner.a[2] = {w21o.value, w22o.value, -w3.value};
      inner.rhs = {-(c1 * w1.value), -(c1 * w1.slope), ScaledReal()};
      double cond_inner = 0.0;
      if (!solve_equilibrated(inner, &x, &cond_inner)) {
        std::ostringstream msg;
        msg << "solve_coefficients: matching system is singular (condition "
            << std::min({cond, cond_alt, cond_inner}) << ") " << describe(params, e0);
        throw DegenerateMatchingError(msg.str());
      }
    }
  }
  s.c1 = c1;
  s.c21 = x[0];
  s.c22 = x[1];
  s.c3 = x[2];
  normalize(s, s.c1);
  return s;
}

RadialPoint eval_u_both(const RadialSolution& sol, double r) {
  const ScaledPoint p = u_scaled(sol, r);
  return {p.u.to_double(), p.du.to_double()};
}

double eval_u(const RadialSolution& sol, double r) { return eval_u_both(sol, r).u; }

double eval_u_prime(const RadialSolution& sol, double r) { return eval_u_both(sol, r).u_prime; }

double Jump::relative() const {
  const double scale = std::max({std::fabs(inner.u), std::fabs(outer.u),
                                 std::fabs(inner.u_prime), std::fabs(outer.u_prime)});
  if (scale == 0.0) return 0.0;
  return std::max(std::fabs(inner.u - outer.u), std::fabs(inner.u_prime - outer.u_prime)) / scale;
}

Jump matching_jump(const RadialSolution& sol, double breakpoint) {
  const bool at_inner = breakpoint < 1.0;
  if (at_inner && sol.params.is_dot()) {
    throw DomainError("matching_jump: a dot has no inner breakpoint");
  }
  const int left = at_inner ? 1 : 2;
  const ScaledPoint in = u_scaled(sol, breakpoint, left);
  const ScaledPoint out = u_scaled(sol, breakpoint, left + 1);
  return {{in.u.to_double(), in.du.to_double()}, {out.u.to_double(), out.du.to_double()}};
}

double tail_radius(const RadialSolution& sol) {
  return find_tail_radius(sol, density_peak(sol));
}

double radial_norm_integral(const RadialSolution& sol, const NormOptions& opts) {
  auto f = [&](double r) -> std::array<double, 1> {
    const double u = eval_u(sol, r);
    return {u * u * r};
  };
  return integrate_segments<1>(sol, f, opts)[0];
}

std::array<double, 2> weighted_norm_integrals(const RadialSolution& sol,
                                              const std::function<double(double)>& weight,
                                              const NormOptions& opts) {
  auto f = [&](double r) -> std::array<double, 2> {
    const double u = eval_u(sol, r);
    const double d = u * u * r;
    return {d, weight(r) * d};
  };
  return integrate_segments<2>(sol, f, opts);
}

std::array<std::complex<double>, 2> SpinorAnsatz::spinor() const {
  const double h = std::numbers::sqrt2 / 2.0;
  const std::complex<double> phase = std::polar(1.0, -std::numbers::pi / 4.0);
  const double sign = branch == SpinBranch::plus ? 1.0 : -1.0;
  return {std::complex<double>(h, 0.0), sign * h * phase};
}

std::complex<double> SpinorAnsatz::phase(double X, double Y) const {
  const double sign = branch == SpinBranch::plus ? -1.0 : 1.0;
  return std::polar(1.0, sign * radial.params.a / std::numbers::sqrt2 * (X + Y));
}

std::array<std::complex<double>, 2> SpinorAnsatz::amplitude(double X, double Y) const {
  const double r = std::hypot(X, Y);
  const double phi = std::atan2(Y, X);
  const std::complex<double> scalar =
      phase(X, Y) * std::polar(1.0, m * phi) * eval_u(radial, r);
  const auto n = spinor();
  return {n[0] * scalar, n[1] * scalar};
}

std::array<SpinorAnsatz, 2> spinor_pair(const RadialSolution& sol) {
  return {SpinorAnsatz{SpinBranch::plus, sol.params.m, sol},
          SpinorAnsatz{SpinBranch::minus, sol.params.m, sol}};
}

}  // namespace qring
