#include "maass/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace maass {

PrecisionContext::PrecisionContext(int d) : digits(d)
{
    if (d < 15)
        throw std::invalid_argument("precision must be at least 15 decimal digits");
}

mpfr_prec_t PrecisionContext::bits() const
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

double PrecisionContext::tol() const { return std::pow(10.0, -(digits - 5)); }

double PrecisionContext::oracle_tol() const { return std::pow(10.0, -(digits - 15)); }

PrecisionContext PrecisionContext::from_env()
{
    if (const char* env = std::getenv("MAASS_DIGITS")) {
        char* end = nullptr;
        long d = std::strtol(env, &end, 10);
        if (end != env && *end == '\0')
            return PrecisionContext(static_cast<int>(d));
        throw std::invalid_argument("MAASS_DIGITS must be an integer");
    }
    return PrecisionContext(50);
}

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(long double v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_ld(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: " + decimal);
    }
}

Real::Real(const Real& other)
{
    mpfr_init2(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    // Steal the limbs; leave `other` as a valid 2-bit zero.
    *v_ = *other.v_;
    mpfr_init2(other.v_, MPFR_PREC_MIN);
}

Real& Real::operator=(const Real& other)
{
    if (this != &other) {
        mpfr_set_prec(v_, other.prec());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    if (this != &other)
        mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_prec(mpfr_prec_t bits) const
{
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

mpz_class Real::round() const
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string Real::str(int digits) const
{
    if (digits <= 0)
        digits = static_cast<int>(prec() * 0.30102999566398120) - 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::fixed(int decimals) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

namespace {
// Bring `dst` up to the precision of `src` before an in-place operation.
void promote(mpfr_ptr dst, mpfr_srcptr src)
{
    if (mpfr_get_prec(src) > mpfr_get_prec(dst))
        mpfr_prec_round(dst, mpfr_get_prec(src), MPFR_RNDN);
}
} // namespace

Real& Real::operator+=(const Real& o)
{
    promote(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    promote(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o)
{
    promote(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o)
{
    promote(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long o)
{
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long o)
{
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b)
{
    if (mpfr_unordered_p(a.v_, b.v_))
        return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0)
        return std::partial_ordering::less;
    if (c > 0)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::euler_gamma(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
}

Real Real::ln2(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
}

#define MAASS_UNARY(name, fn)                                                                      \
    Real name(const Real& x)                                                                       \
    {                                                                                              \
        Real r(x.prec());                                                                          \
        fn(r.v_, x.v_, MPFR_RNDN);                                                                 \
        return r;                                                                                  \
    }

MAASS_UNARY(sqrt, mpfr_sqrt)
MAASS_UNARY(exp, mpfr_exp)
MAASS_UNARY(log, mpfr_log)
MAASS_UNARY(sin, mpfr_sin)
MAASS_UNARY(cos, mpfr_cos)
MAASS_UNARY(sinh, mpfr_sinh)
MAASS_UNARY(cosh, mpfr_cosh)
MAASS_UNARY(erfc, mpfr_erfc)
MAASS_UNARY(abs, mpfr_abs)
MAASS_UNARY(tgamma, mpfr_gamma)
MAASS_UNARY(digamma, mpfr_digamma)

#undef MAASS_UNARY

Real pow(const Real& x, const Real& y)
{
    Real r(std::max(x.prec(), y.prec()));
    mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

} // namespace maass
