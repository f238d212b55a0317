#include "dpf/real.hpp"

#include <climits>
#include <cmath>
#include <vector>

namespace dpf {

namespace {
thread_local mpfr_prec_t g_bits = 128;
}

mpfr_prec_t Real::default_bits()
{
    return g_bits;
}

void Real::set_default_bits(mpfr_prec_t bits)
{
    g_bits = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
}

mpz_class Real::round() const
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string Real::str(int digits) const
{
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return buf.data();
}

Real abs(const Real& x)
{
    Real r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x)
{
    Real r(x);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real cbrt(const Real& x)
{
    Real r(x);
    mpfr_cbrt(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x)
{
    Real r(x);
    mpfr_log(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x)
{
    Real r(x);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real pow_si(const Real& x, long e)
{
    Real r(x);
    mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real pi_real()
{
    Real r;
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

double log_abs(const mpz_class& z)
{
    if (z == 0)
        return -INFINITY;
    long e;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(m)) + e * std::log(2.0);
}

}  // namespace dpf
