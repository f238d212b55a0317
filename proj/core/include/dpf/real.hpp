#pragma once

#include <climits>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace dpf {

// thin RAII wrapper over mpfr_t; new values take the thread default precision
class Real {
public:
    static mpfr_prec_t default_bits();
    static void set_default_bits(mpfr_prec_t bits);

    Real() { mpfr_init2(v_, default_bits()); mpfr_set_zero(v_, 1); }
    Real(double x) { mpfr_init2(v_, default_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x) { mpfr_init2(v_, default_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x) : Real(long(x)) {}
    explicit Real(const mpz_class& z) { mpfr_init2(v_, default_bits()); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    explicit Real(const mpq_class& q) { mpfr_init2(v_, default_bits()); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class round() const;
    long exponent() const { return mpfr_zero_p(v_) ? LONG_MIN / 2 : mpfr_get_exp(v_); }
    int sign() const { return mpfr_sgn(v_); }
    std::string str(int digits = 20) const;

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

private:
    mpfr_t v_;
};

inline Real operator+(Real a, const Real& b) { return a += b; }
inline Real operator-(Real a, const Real& b) { return a -= b; }
inline Real operator*(Real a, const Real& b) { return a *= b; }
inline Real operator/(Real a, const Real& b) { return a /= b; }
inline Real operator-(Real a) { mpfr_neg(a.get(), a.get(), MPFR_RNDN); return a; }
inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow_si(const Real& x, long e);
Real pi_real();

class PrecisionGuard {
public:
    explicit PrecisionGuard(mpfr_prec_t bits) : old_(Real::default_bits()) { Real::set_default_bits(bits); }
    ~PrecisionGuard() { Real::set_default_bits(old_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    mpfr_prec_t old_;
};

// natural log of |z| in double precision without overflow
double log_abs(const mpz_class& z);

}  // namespace dpf
