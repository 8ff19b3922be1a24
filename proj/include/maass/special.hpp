#pragma once

// Special functions at working precision: the incomplete gamma value
// beta(y) = Gamma(-3/2, pi y / 6), Bessel J and I of half-integer order, and the
// derivative of J_nu with respect to its order at nu = 3/2.
//
// The Bessel routines are templates over the real type so the bulk coefficient
// sums can run on long double when the requested precision allows it.

#include "maass/real.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace maass::special {

/// Gamma(-3/2, x) for x > 0, by two downward steps from
/// Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)).
Real incomplete_gamma_m32(const Real& x);

/// beta(y) = Gamma(-3/2, pi y / 6), y > 0.
Real beta_gamma(const Real& y);

/// psi(n + 1/2) = -gamma - 2 log 2 + sum_{j=1}^{n} 2/(2j - 1).
template <class R>
R digamma_half(int n, const R& like)
{
    R psi = -euler_like(like) - 2 * ln2_like(like);
    for (int j = 1; j <= n; ++j)
        psi += int_like(2, like) / int_like(2 * j - 1, like);
    return psi;
}

namespace detail {

inline void require_positive(double x, const char* what)
{
    if (!(x > 0))
        throw std::domain_error(std::string(what) + ": argument must be positive");
}

inline constexpr long double long_double_series_limit = 4.0L;

inline long extra_bits_for(double x) { return static_cast<long>(std::ceil(x * 1.4426950408889634)) + 16; }

inline long double tgamma_of(long double x) { return std::tgamma(x); }
inline Real tgamma_of(const Real& x) { return tgamma(x); }

} // namespace detail

/// Ascending series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)) for any real nu > -1.
/// With `alternating` false the same series gives I_nu.
template <class R>
R bessel_series(const R& nu_in, const R& x_in, bool alternating)
{
    using std::log;
    using std::exp;
    detail::require_positive(static_cast<double>(to_ld(x_in)), "bessel_series");
    // Terms peak near e^x before cancelling down to J_nu(x).
    if constexpr (std::is_same_v<R, long double>) {
        if (alternating && x_in > detail::long_double_series_limit)
            return bessel_series(Real(nu_in, 128), Real(x_in, 128), true).to_long_double();
    }
    const long extra = alternating ? detail::extra_bits_for(static_cast<double>(to_ld(x_in))) : 16;
    const R x = widen(x_in, extra);
    const R nu = widen(nu_in, extra);
    const R half = x / 2;
    const R half_sq = half * half;
    R term = exp(nu * log(half)) / detail::tgamma_of(nu + int_like(1, x));
    R sum = term;
    const R eps = epsilon_like(x);
    int small = 0;
    for (long k = 1; k < 100000; ++k) {
        term *= half_sq;
        term /= int_like(k, x) * (nu + int_like(k, x));
        if (alternating)
            term = -term;
        sum += term;
        using std::abs;
        if (abs(term) <= eps * abs(sum)) {
            if (++small == 3)
                return narrow_to(sum, x_in);
        } else {
            small = 0;
        }
    }
    throw std::runtime_error("bessel_series did not converge");
}

/// J_{3/2}(x) = sqrt(2/(pi x)) (sin x / x - cos x); ascending series below x = 1.
template <class R>
R bessel_j_3_2(const R& x)
{
    using std::sqrt;
    using std::sin;
    using std::cos;
    detail::require_positive(static_cast<double>(to_ld(x)), "bessel_j_3_2");
    if (x < 1.0)
        return bessel_series(make_like(1.5L, x), x, true);
    const R xw = widen(x, 16);
    R v = sqrt(int_like(2, xw) / (pi_like(xw) * xw)) * (sin(xw) / xw - cos(xw));
    return narrow_to(v, x);
}

/// I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x); ascending series below x = 1.
template <class R>
R bessel_i_3_2(const R& x)
{
    using std::sqrt;
    using std::sinh;
    using std::cosh;
    detail::require_positive(static_cast<double>(to_ld(x)), "bessel_i_3_2");
    if (x < 1.0)
        return bessel_series(make_like(1.5L, x), x, false);
    const R xw = widen(x, 16);
    R v = sqrt(int_like(2, xw) / (pi_like(xw) * xw)) * (cosh(xw) - sinh(xw) / xw);
    return narrow_to(v, x);
}

/// J_{twice_nu/2}(x) for half-integer order >= 1/2 by upward recurrence from
/// J_{1/2}, J_{3/2}; falls back to the ascending series when the order exceeds x.
template <class R>
R bessel_j_half(int twice_nu, const R& x)
{
    using std::sqrt;
    using std::sin;
    if (twice_nu < 1 || twice_nu % 2 == 0)
        throw std::invalid_argument("bessel_j_half: order must be a positive half-integer");
    detail::require_positive(static_cast<double>(to_ld(x)), "bessel_j_half");
    if (twice_nu == 3)
        return bessel_j_3_2(x);
    if (twice_nu > 3 && static_cast<double>(to_ld(x)) < twice_nu)
        return bessel_series(make_like(twice_nu / 2.0L, x), x, true);
    const R xw = widen(x, 32);
    R prev = sqrt(int_like(2, xw) / (pi_like(xw) * xw)) * sin(xw); // J_{1/2}
    if (twice_nu == 1)
        return narrow_to(prev, x);
    R cur = bessel_j_3_2(xw);
    for (int t = 3; t < twice_nu; t += 2) {
        R next = int_like(t, xw) / xw * cur - prev; // J_{nu+1} = (2 nu / x) J_nu - J_{nu-1}
        prev = cur;
        cur = next;
    }
    return narrow_to(cur, x);
}

/// I_{twice_nu/2}(x) for half-integer order >= 1/2, same strategy as bessel_j_half.
template <class R>
R bessel_i_half(int twice_nu, const R& x)
{
    using std::sqrt;
    using std::sinh;
    if (twice_nu < 1 || twice_nu % 2 == 0)
        throw std::invalid_argument("bessel_i_half: order must be a positive half-integer");
    detail::require_positive(static_cast<double>(to_ld(x)), "bessel_i_half");
    if (twice_nu == 3)
        return bessel_i_3_2(x);
    if (twice_nu > 3 && static_cast<double>(to_ld(x)) < twice_nu)
        return bessel_series(make_like(twice_nu / 2.0L, x), x, false);
    const R xw = widen(x, 32);
    R prev = sqrt(int_like(2, xw) / (pi_like(xw) * xw)) * sinh(xw); // I_{1/2}
    if (twice_nu == 1)
        return narrow_to(prev, x);
    R cur = bessel_i_3_2(xw);
    for (int t = 3; t < twice_nu; t += 2) {
        R next = prev - int_like(t, xw) / xw * cur; // I_{nu+1} = I_{nu-1} - (2 nu / x) I_nu
        prev = cur;
        cur = next;
    }
    return narrow_to(cur, x);
}

/// d/dnu J_nu(x) at nu = 3/2, by differentiating the ascending series termwise:
///   J_nu(x) log(x/2) - sum_k (-1)^k psi(nu+k+1) (x/2)^{nu+2k} / (k! Gamma(nu+k+1)).
/// The s-derivative of J_{2s-1} at s = 5/4 is twice this.
template <class R>
R dj_dorder_3_2(const R& x_in)
{
    using std::log;
    using std::sqrt;
    using std::abs;
    detail::require_positive(static_cast<double>(to_ld(x_in)), "dj_dorder_3_2");
    if constexpr (std::is_same_v<R, long double>) {
        // The series cancels from about e^x down to O(1); beyond x = 4 that eats long double.
        if (x_in > detail::long_double_series_limit)
            return dj_dorder_3_2(Real(x_in, 128)).to_long_double();
    }
    const R x = widen(x_in, detail::extra_bits_for(static_cast<double>(to_ld(x_in))));
    const R half = x / 2;
    const R half_sq = half * half;
    const R log_half = log(half);
    // k = 0: (x/2)^{3/2} / Gamma(5/2), Gamma(5/2) = 3 sqrt(pi) / 4.
    R term = half * sqrt(half) * int_like(4, x) / (int_like(3, x) * sqrt(pi_like(x)));
    R psi = digamma_half(2, x); // psi(5/2)
    R sum = term * (log_half - psi);
    const R eps = epsilon_like(x);
    int small = 0;
    for (long k = 1; k < 100000; ++k) {
        // Gamma(k + 5/2) = (k + 3/2) Gamma(k + 3/2)
        term *= half_sq;
        term /= int_like(k, x) * (int_like(2 * k + 3, x) / 2);
        term = -term;
        psi += int_like(2, x) / int_like(2 * k + 3, x); // psi(k + 5/2) = psi(k + 3/2) + 1/(k + 3/2)
        R contrib = term * (log_half - psi);
        sum += contrib;
        if (abs(contrib) <= eps * abs(sum)) {
            if (++small == 3)
                return narrow_to(sum, x_in);
        } else {
            small = 0;
        }
    }
    throw std::runtime_error("dj_dorder_3_2 did not converge");
}

} // namespace maass::special
