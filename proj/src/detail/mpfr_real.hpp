#pragma once

// Thin value-semantic wrapper over mpfr_t. Every new value takes the
// calling thread's working precision, set with PrecisionScope.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <utility>

#include "qring/scaled_real.hpp"

namespace qring::detail {

class MpfrReal {
 public:
  static mpfr_prec_t& working_precision() {
    thread_local mpfr_prec_t prec = 128;
    return prec;
  }

  MpfrReal() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
  MpfrReal(double x) { mpfr_init2(v_, working_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
  MpfrReal(long double x) { mpfr_init2(v_, working_precision()); mpfr_set_ld(v_, x, MPFR_RNDN); }
  MpfrReal(long x) { mpfr_init2(v_, working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  MpfrReal(int x) : MpfrReal(static_cast<long>(x)) {}
  MpfrReal(const MpfrReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpfrReal(MpfrReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  MpfrReal& operator=(const MpfrReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrReal& operator=(MpfrReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpfrReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  MpfrReal& operator+=(const MpfrReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpfrReal& operator-=(const MpfrReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpfrReal& operator*=(const MpfrReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  MpfrReal& operator/=(const MpfrReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend MpfrReal operator+(MpfrReal a, const MpfrReal& b) { return a += b; }
  friend MpfrReal operator-(MpfrReal a, const MpfrReal& b) { return a -= b; }
  friend MpfrReal operator*(MpfrReal a, const MpfrReal& b) { return a *= b; }
  friend MpfrReal operator/(MpfrReal a, const MpfrReal& b) { return a /= b; }
  friend MpfrReal operator-(MpfrReal a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

  friend bool operator<(const MpfrReal& a, const MpfrReal& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const MpfrReal& a, const MpfrReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator==(const MpfrReal& a, const MpfrReal& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

/// Sets the working precision of the calling thread for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) : saved_(MpfrReal::working_precision()) {
    MpfrReal::working_precision() =
        std::clamp<mpfr_prec_t>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX);
  }
  ~PrecisionScope() { MpfrReal::working_precision() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

inline MpfrReal abs(MpfrReal x) { mpfr_abs(x.get(), x.get(), MPFR_RNDN); return x; }
inline MpfrReal log(MpfrReal x) { mpfr_log(x.get(), x.get(), MPFR_RNDN); return x; }
inline MpfrReal exp(MpfrReal x) { mpfr_exp(x.get(), x.get(), MPFR_RNDN); return x; }
inline MpfrReal digamma(MpfrReal x) { mpfr_digamma(x.get(), x.get(), MPFR_RNDN); return x; }

/// log|Gamma(x)| with the sign of Gamma(x) written to *sign.
inline MpfrReal lgamma(MpfrReal x, int* sign) {
  mpfr_lgamma(x.get(), sign, x.get(), MPFR_RNDN);
  return x;
}

inline bool is_zero(const MpfrReal& x) { return mpfr_zero_p(x.get()) != 0; }
inline bool is_finite(const MpfrReal& x) { return mpfr_number_p(x.get()) != 0; }

/// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
inline long exponent_of(const MpfrReal& x) {
  if (!mpfr_regular_p(x.get())) return -(1L << 40);
  return static_cast<long>(mpfr_get_exp(x.get()));
}

inline ScaledReal to_scaled(const MpfrReal& x) {
  if (is_zero(x)) return ScaledReal();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return ScaledReal::from_parts(m, e);
}

inline MpfrReal from_scaled(const ScaledReal& x) {
  MpfrReal r(x.mantissa());
  mpfr_mul_2si(r.get(), r.get(), static_cast<long>(x.exponent()), MPFR_RNDN);
  return r;
}

inline MpfrReal pow2(long k) {
  MpfrReal r(1L);
  mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
  return r;
}

}  // namespace qring::detail
