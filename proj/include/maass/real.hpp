#pragma once

// Arbitrary-precision reals backed by MPFR.
//
// Every Real carries its own precision. Binary operations produce a result at
// the larger of the two operand precisions, so there is no process-wide
// precision state: callers choose precision through PrecisionContext and the
// values they construct from it.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace maass {

/// Decimal working precision plus the tolerances derived from it.
struct PrecisionContext {
    int digits = 50;

    PrecisionContext() = default;
    explicit PrecisionContext(int digits);

    /// Binary precision used for MPFR values (digits plus 16 guard bits).
    mpfr_prec_t bits() const;
    /// Acceptance tolerance 10^-(digits-5).
    double tol() const;
    /// Agreement expected between a value and an independent oracle, 10^-(digits-15).
    double oracle_tol() const;
    /// True when a long double carries the requested number of digits.
    bool fits_long_double() const { return digits <= 18; }

    /// Default context; honours the MAASS_DIGITS environment variable.
    static PrecisionContext from_env();
};

class Real {
public:
    explicit Real(mpfr_prec_t bits = 64);
    Real(double v, mpfr_prec_t bits);
    Real(long v, mpfr_prec_t bits);
    Real(int v, mpfr_prec_t bits) : Real(static_cast<long>(v), bits) {}
    Real(long long v, mpfr_prec_t bits) : Real(static_cast<long>(v), bits) {}
    Real(long double v, mpfr_prec_t bits);
    Real(const mpz_class& v, mpfr_prec_t bits);
    Real(const mpq_class& v, mpfr_prec_t bits);
    Real(const std::string& decimal, mpfr_prec_t bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    /// Same value, rounded to a new precision.
    Real with_prec(mpfr_prec_t bits) const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    /// Nearest integer.
    mpz_class round() const;
    /// Decimal string with `digits` significant digits (scientific if needed).
    std::string str(int digits = 0) const;
    /// Fixed-point rendering with `decimals` digits after the point.
    std::string fixed(int decimals) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long o);
    Real& operator/=(long o);
    Real operator-() const;

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator*(long b, Real a) { return a *= b; }
    friend Real operator/(Real a, long b) { return a /= b; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }

    static Real pi(mpfr_prec_t bits);
    static Real euler_gamma(mpfr_prec_t bits);
    static Real ln2(mpfr_prec_t bits);

    friend Real sqrt(const Real& x);
    friend Real exp(const Real& x);
    friend Real log(const Real& x);
    friend Real sin(const Real& x);
    friend Real cos(const Real& x);
    friend Real sinh(const Real& x);
    friend Real cosh(const Real& x);
    friend Real erfc(const Real& x);
    friend Real abs(const Real& x);
    friend Real pow(const Real& x, const Real& y);
    friend Real tgamma(const Real& x);
    friend Real digamma(const Real& x);

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real erfc(const Real& x);
Real abs(const Real& x);
Real pow(const Real& x, const Real& y);
Real tgamma(const Real& x);
Real digamma(const Real& x);

std::ostream& operator<<(std::ostream& os, const Real& x);

// Uniform helpers so numeric templates work for both Real and long double.
// `like` supplies the precision of the result.

inline long double make_like(long double v, long double) { return v; }
inline Real make_like(long double v, const Real& like) { return Real(v, like.prec()); }
inline long double int_like(long v, long double) { return static_cast<long double>(v); }
inline Real int_like(long v, const Real& like) { return Real(v, like.prec()); }

inline long double pi_like(long double) { return 3.141592653589793238462643383279502884L; }
inline Real pi_like(const Real& like) { return Real::pi(like.prec()); }
inline long double euler_like(long double) { return 0.577215664901532860606512090082402431L; }
inline Real euler_like(const Real& like) { return Real::euler_gamma(like.prec()); }
inline long double ln2_like(long double) { return 0.693147180559945309417232121458176568L; }
inline Real ln2_like(const Real& like) { return Real::ln2(like.prec()); }
/// Unit roundoff of the type/precision of `like`.
inline long double epsilon_like(long double) { return 1.0842021724855044340e-19L; }
inline Real epsilon_like(const Real& like)
{
    Real e(1L, like.prec());
    mpfr_mul_2si(e.get(), e.get(), -static_cast<long>(like.prec()), MPFR_RNDN);
    return e;
}
inline long double to_ld(long double v) { return v; }
inline long double to_ld(const Real& v) { return v.to_long_double(); }

/// Precision with `extra` guard bits added (no-op for long double).
inline long double widen(long double v, long) { return v; }
inline Real widen(const Real& v, long extra) { return v.with_prec(v.prec() + extra); }
inline long double narrow_to(long double v, long double) { return v; }
inline Real narrow_to(const Real& v, const Real& like) { return v.with_prec(like.prec()); }

} // namespace maass
