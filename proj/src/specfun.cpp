#include "qring/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "detail/real_traits.hpp"
#include "detail/mpfr_real.hpp"
#include "detail/chf_series.hpp"
#include "qring/errors.hpp"
#include "qring/quadrature.hpp"

namespace qring {

namespace {

using detail::MpfrReal;
using detail::SeriesResult;

// Accepted cancellation in long double before switching to MPFR, and the
// number of correct bits an MPFR result must retain.
constexpr long kNativeLossLimit = 20;
constexpr long kTargetBits = 64;
constexpr long kMaxPrecision = 1L << 16;

enum class Kind { kummer, tricomi_log, companion };

template <class Real>
SeriesResult<Real> run_series(Kind kind, double a, int beta, double x, long bits) {
  switch (kind) {
    case Kind::kummer:
      return detail::kummer_series<Real>(a, beta, x, bits);
    case Kind::tricomi_log:
      return detail::tricomi_log_series<Real>(a, beta, x, bits);
    case Kind::companion:
      return detail::companion_series<Real>(a, beta, x, bits);
  }
  return {};
}

std::string describe(const char* fn, double a, int beta, double x) {
  std::ostringstream msg;
  msg.precision(17);
  msg << fn << "(gamma=" << a << ", beta=" << beta << ", x=" << x << ")";
  return msg.str();
}

struct Evaluated {
  ScaledReal value;
  ScaledReal slope;
};

// Sums the series in long double; if too many leading bits cancel, repeats
// in MPFR with enough guard bits to leave kTargetBits correct.
Evaluated evaluate(Kind kind, double a, int beta, double x, const char* fn) {
  const auto native = run_series<long double>(kind, a, beta, x, kTargetBits);
  if (native.finite && native.loss_bits <= kNativeLossLimit) {
    return {detail::to_scaled(native.value), detail::to_scaled(native.slope)};
  }
  long precision = std::max<long>(128, (native.finite ? native.loss_bits : 0) + 96);
  while (true) {
    detail::PrecisionScope scope(precision);
    const auto r = run_series<MpfrReal>(kind, a, beta, x, precision);
    if (r.finite && precision - r.loss_bits >= kTargetBits) {
      return {detail::to_scaled(r.value), detail::to_scaled(r.slope)};
    }
    if (r.finite && detail::is_zero(r.value) && precision >= kMaxPrecision) {
      return {ScaledReal(), detail::to_scaled(r.slope)};
    }
    if (precision >= kMaxPrecision) {
      throw EvaluationError(describe(fn, a, beta, x) +
                            ": cancellation exceeds the maximum working precision");
    }
    precision = std::min(kMaxPrecision,
                          std::max(2 * precision, r.loss_bits + kTargetBits + 32));
  }
}

bool is_nonpositive_integer(double g) { return g <= 0.0 && g == std::nearbyint(g); }

// M(−j, β, x) is a polynomial of degree j. When long double loses too many
// bits the sum is formed exactly in rationals (x is a dyadic rational), so an
// exact zero comes out as zero instead of exhausting the precision ladder.
ScaledReal kummer_terminating(double a, int beta, double x) {
  const auto native = detail::kummer_series<long double>(a, beta, x, kTargetBits);
  if (native.finite && native.loss_bits <= kNativeLossLimit) return detail::to_scaled(native.value);
  const long j = std::lround(-a);
  mpq_t xq, term, sum, ratio;
  mpq_inits(xq, term, sum, ratio, nullptr);
  mpq_set_d(xq, x);
  mpq_set_ui(term, 1, 1);
  mpq_set_ui(sum, 1, 1);
  for (long k = 0; k < j; ++k) {
    // term_{k+1} = term_k (k − j) x / ((β + k)(k + 1))
    mpq_set_si(ratio, k - j, static_cast<unsigned long>((beta + k) * (k + 1)));
    mpq_canonicalize(ratio);
    mpq_mul(term, term, ratio);
    mpq_mul(term, term, xq);
    mpq_add(sum, sum, term);
  }
  mpfr_t out;
  mpfr_init2(out, 128);
  mpfr_set_q(out, sum, MPFR_RNDN);
  ScaledReal result;
  if (!mpfr_zero_p(out)) {
    long e = 0;
    const double mant = mpfr_get_d_2exp(&e, out, MPFR_RNDN);
    result = ScaledReal::from_parts(mant, e);
  }
  mpfr_clear(out);
  mpq_clears(xq, term, sum, ratio, nullptr);
  return result;
}

// Laplace representation in s = ln t,
//   Γ(a) U(a, b, x) = ∫ exp(ψ(s)) ds,  ψ = −x eˢ + a s + (b − a − 1) ln(1 + eˢ),
// for a >= 1, x > 0. ψ' has exactly one zero, so the integrand is a single
// bell, analytic in a strip around the real axis; the trapezoid rule on it
// converges geometrically in 1/h. h is tied to the bell's width so the
// strip term stays below long double rounding.
ScaledReal tricomi_u_integral(double a_in, int beta, double x_in) {
  using LD = long double;
  const LD a = a_in, b = beta, x = x_in;
  const LD p2 = b - a - 1;
  // ψ'(s*) = 0  ⇔  x t² + (x − b + 1) t − a = 0, t = e^{s*}.
  const LD q = x - b + 1;
  const LD root = std::sqrt(q * q + 4 * x * a);
  const LD t_peak = q >= 0 ? 2 * a / (q + root) : (root - q) / (2 * x);
  const LD s_peak = std::log(t_peak);
  auto psi = [&](LD s) {
    const LD t = std::exp(s);
    return -x * t + a * s + p2 * std::log1p(t);
  };
  const LD psi_peak = psi(s_peak);
  const LD logistic = t_peak / (1 + t_peak);
  const LD curvature = x * t_peak - p2 * logistic * (1 - logistic);
  const LD sigma = 1 / std::sqrt(std::max<LD>(curvature, 1e-30L));
  const LD h = sigma / 4;

  constexpr LD kNegligible = 1e-21L;
  constexpr int kMaxNodes = 200000;
  LD total = 1;  // the peak node, exp(ψ* − ψ*)
  for (int dir : {1, -1}) {
    for (int k = 1; k < kMaxNodes; ++k) {
      const LD term = std::exp(psi(s_peak + dir * k * h) - psi_peak);
      total += term;
      if (term < kNegligible * total && k * h > sigma) break;
    }
  }
  int sign = 1;
  const LD log_gamma = ::lgammal_r(a, &sign);
  return ScaledReal::from_log(psi_peak + std::log(total * h) - log_gamma, 1);
}

// U(−j, b, x) = (−1)^j (b)_j M(−j, b, x).
ScaledReal tricomi_u_polynomial(double a, int beta, double x) {
  const long j = std::lround(-a);
  ScaledReal factor(j % 2 == 0 ? 1.0 : -1.0);
  for (long i = 0; i < j; ++i) factor *= ScaledReal(static_cast<double>(beta + i));
  return factor * kummer_terminating(a, beta, x);
}

// Large-x expansion; accepted only when it reaches full precision.
bool tricomi_u_asymptotic(double a, int beta, double x, ScaledReal* out) {
  const auto r = detail::tricomi_asymptotic<long double>(a, beta, x, kTargetBits);
  if (!r.finite || r.loss_bits > kNativeLossLimit) return false;
  *out = detail::to_scaled(r.value);
  return true;
}

constexpr double kAsymptoticFrom = 30.0;

}  // namespace

void CHFParams::validate() const {
  if (beta < 1) {
    throw DomainError(describe("CHFParams", gamma, beta, x) + ": beta must be a positive integer");
  }
  if (!std::isfinite(gamma) || !std::isfinite(x)) {
    throw DomainError(describe("CHFParams", gamma, beta, x) + ": non-finite parameter");
  }
  if (x < 0.0) {
    throw DomainError(describe("CHFParams", gamma, beta, x) + ": x must be non-negative");
  }
}

CHFParams CHFParams::from_real(double gamma, double beta, double x) {
  if (!(beta >= 1.0) || beta != std::nearbyint(beta) || beta > 1e6) {
    std::ostringstream msg;
    msg << "CHFParams: beta = " << beta << " is not a positive integer";
    throw DomainError(msg.str());
  }
  CHFParams p{gamma, static_cast<int>(beta), x};
  p.validate();
  return p;
}

ScaledReal kummer_m_series_scaled(double gamma, int beta, double x) {
  if (beta < 1) throw DomainError(describe("kummer_m", gamma, beta, x) + ": beta must be >= 1");
  if (x == 0.0) return ScaledReal(1.0);
  if (is_nonpositive_integer(gamma)) return kummer_terminating(gamma, beta, x);
  return evaluate(Kind::kummer, gamma, beta, x, "kummer_m").value;
}

ScaledReal kummer_m_scaled(const CHFParams& p) {
  p.validate();
  return kummer_m_series_scaled(p.gamma, p.beta, p.x);
}

double kummer_m(const CHFParams& p) { return kummer_m_scaled(p).to_double(); }

ScaledReal kummer_m_dx_scaled(const CHFParams& p) {
  p.validate();
  if (p.gamma == 0.0) return ScaledReal();
  const ScaledReal up = kummer_m_series_scaled(p.gamma + 1.0, p.beta + 1, p.x);
  return ScaledReal(p.gamma / p.beta) * up;
}

double kummer_m_dx(const CHFParams& p) { return kummer_m_dx_scaled(p).to_double(); }

ScaledReal tricomi_u_scaled(const CHFParams& p) {
  p.validate();
  if (p.x == 0.0) {
    throw SingularityError(describe("tricomi_u", p.gamma, p.beta, p.x) + ": singular at x = 0");
  }
  if (is_nonpositive_integer(p.gamma)) return tricomi_u_polynomial(p.gamma, p.beta, p.x);
  ScaledReal out;
  if (p.x >= kAsymptoticFrom && tricomi_u_asymptotic(p.gamma, p.beta, p.x, &out)) return out;
  if (p.gamma >= 1.0) return tricomi_u_integral(p.gamma, p.beta, p.x);
  return evaluate(Kind::tricomi_log, p.gamma, p.beta, p.x, "tricomi_u").value;
}

double tricomi_u(const CHFParams& p) { return tricomi_u_scaled(p).to_double(); }

ScaledReal tricomi_u_dx_scaled(const CHFParams& p) {
  p.validate();
  if (p.x == 0.0) {
    throw SingularityError(describe("tricomi_u_dx", p.gamma, p.beta, p.x) + ": singular at x = 0");
  }
  if (p.gamma == 0.0) return ScaledReal();
  return ScaledReal(-p.gamma) * tricomi_u_scaled({p.gamma + 1.0, p.beta + 1, p.x});
}

double tricomi_u_dx(const CHFParams& p) { return tricomi_u_dx_scaled(p).to_double(); }

CompanionValue kummer_companion(const CHFParams& p) {
  p.validate();
  if (p.x == 0.0) {
    throw SingularityError(describe("kummer_companion", p.gamma, p.beta, p.x) +
                           ": singular at x = 0");
  }
  if (p.gamma >= 1.0 && p.gamma == std::nearbyint(p.gamma)) {
    throw DomainError(describe("kummer_companion", p.gamma, p.beta, p.x) +
                      ": undefined at positive integer gamma");
  }
  const Evaluated e = evaluate(Kind::companion, p.gamma, p.beta, p.x, "kummer_companion");
  return {e.value, e.slope};
}

double bessel_j0(double x_in) {
  if (!(x_in >= 0.0)) {
    throw DomainError("bessel_j0: argument must be non-negative");
  }
  using LD = long double;
  const LD x = x_in;
  if (x < 1e-10L) return static_cast<double>(1 - x * x / 4);
  if (x < 25) {
    // Backward recurrence J_{k-1} = (2k/x) J_k − J_{k+1} from far above the
    // turning point, normalised by J0 + 2 Σ J_{2k} = 1.
    const int start = 2 * (static_cast<int>(x / 2) + 30);
    LD next = 0, cur = 1e-40L, norm = 0;
    for (int k = start; k >= 1; --k) {
      const LD prev = (2 * k) / x * cur - next;
      next = cur;
      cur = prev;
      if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2 * cur;
      if (std::fabs(cur) > 1e300L) {
        cur *= 1e-300L;
        next *= 1e-300L;
        norm *= 1e-300L;
      }
    }
    norm += cur;
    return static_cast<double>(cur / norm);
  }
  // Hankel expansion: J0 = sqrt(2/(πx)) (P cos χ − Q sin χ), χ = x − π/4,
  // P = Σ (−1)^k c_{2k} x^{−2k}, Q = −Σ (−1)^k c_{2k+1} x^{−2k−1},
  // c_k = ∏_{i<=k} (2i−1)² / (k! 8^k).
  LD p = 0, q = 0, term = 1, last = std::numeric_limits<LD>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const LD odd = 2 * k - 1;
      term *= odd * odd / (k * 8 * x);
    }
    if (term > last) break;
    last = term;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
    }
    if (term < 1e-22L) break;
  }
  const LD c = std::cos(x), s = std::sin(x);
  const LD sqrt2 = std::numbers::sqrt2_v<LD>;
  const LD cos_chi = (c + s) / sqrt2;
  const LD sin_chi = (s - c) / sqrt2;
  const LD amp = std::sqrt(2 / (std::numbers::pi_v<LD> * x));
  return static_cast<double>(amp * (p * cos_chi - q * sin_chi));
}

}  // namespace qring
