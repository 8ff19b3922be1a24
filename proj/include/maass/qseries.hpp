#pragma once

// Truncated q-expansions with exact coefficients.
//
// FracQSeries holds sum_n c(n) q^{n/24} over exponent numerators n in one
// residue class mod 24. IntegerQSeries holds ordinary integral-exponent series
// such as j, j' and Delta. Both carry an exclusive truncation order: every
// coefficient below it is known, nothing at or above it is.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace maass {

class IntegerQSeries {
public:
    IntegerQSeries() = default;
    /// coeffs[i] is the coefficient of q^{min_exponent + i}; valid for exponents < order.
    IntegerQSeries(int64_t min_exponent, int64_t order, std::vector<mpz_class> coeffs);

    int64_t min_exponent() const { return min_; }
    int64_t order() const { return order_; }
    /// Coefficient of q^e; zero below the support, throws std::out_of_range at or past the order.
    mpz_class coeff(int64_t e) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntegerQSeries truncated(int64_t order) const;
    /// -q d/dq applied termwise.
    IntegerQSeries theta_negated() const;
    /// Multiplicative inverse; the leading coefficient must be +-1.
    IntegerQSeries inverse() const;
    /// This series plus the constant k.
    IntegerQSeries plus_constant(const mpz_class& k) const;

    friend IntegerQSeries operator*(const IntegerQSeries& a, const IntegerQSeries& b);
    friend bool operator==(const IntegerQSeries&, const IntegerQSeries&) = default;

private:
    int64_t min_ = 0;
    int64_t order_ = 0;
    std::vector<mpz_class> c_;
};

class FracQSeries {
public:
    FracQSeries() = default;
    /// coeffs[i] is the coefficient of q^{(lead + 24 i)/24}; valid for numerators < order.
    FracQSeries(int64_t lead, int64_t order, std::vector<mpq_class> coeffs);
    /// Integral exponents e become numerators 24 e (residue 0).
    static FracQSeries from_integer(const IntegerQSeries& s);
    /// The zero series of a residue class, valid below `order`.
    static FracQSeries zero(int residue, int64_t order);

    /// Class of the exponent numerators mod 24, in [0, 24).
    int residue() const;
    /// Start of the stored support (the coefficient there may be zero).
    int64_t lead() const { return lead_; }
    /// Exclusive bound on valid exponent numerators.
    int64_t order() const { return order_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    /// Coefficient of q^{n/24}. Zero below the support or off the residue class;
    /// throws std::out_of_range at or past the order.
    mpq_class coeff(int64_t n) const;
    /// Smallest numerator with a nonzero coefficient, or order() for the zero series.
    int64_t valuation() const;
    bool is_zero() const { return valuation() >= order_; }
    bool is_integral() const;

    /// Same series with a lower order; throws std::invalid_argument if `order` exceeds order().
    FracQSeries truncated(int64_t order) const;

    FracQSeries& operator+=(const FracQSeries& o);
    FracQSeries& operator-=(const FracQSeries& o);
    FracQSeries& operator*=(const mpq_class& k);
    friend FracQSeries operator+(FracQSeries a, const FracQSeries& b) { return a += b; }
    friend FracQSeries operator-(FracQSeries a, const FracQSeries& b) { return a -= b; }
    friend FracQSeries operator*(FracQSeries a, const mpq_class& k) { return a *= k; }
    friend FracQSeries operator*(const mpq_class& k, FracQSeries a) { return a *= k; }

    /// Exact Cauchy product; the order is min(order_a + lead_b, order_b + lead_a).
    /// Throws std::domain_error if that leaves no valid coefficient.
    friend FracQSeries multiply(const FracQSeries& a, const FracQSeries& b);
    friend FracQSeries operator*(const FracQSeries& a, const FracQSeries& b) { return multiply(a, b); }

    /// Series equality on the common valid range (both must share a residue class).
    bool agrees_with(const FracQSeries& o) const;
    friend bool operator==(const FracQSeries& a, const FracQSeries& b);

    /// {"residue": r, "order": o, "terms": [{"n": n, "c": "p/q"}, ...]} with nonzero terms only.
    std::string to_json() const;
    static FracQSeries from_json(const std::string& text);

private:
    int64_t lead_ = 0;
    int64_t order_ = 0;
    std::vector<mpq_class> c_;

    void align_to(int64_t lead, int64_t order);
};

/// p(0), ..., p(n) by Euler's pentagonal-number recurrence.
std::vector<mpz_class> partition_numbers(int64_t n);

/// eta(z) = q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}, valid through numerator 24 N + 1.
FracQSeries eta(int64_t n_terms);
/// eta^{-1} = sum p(n) q^{n - 1/24}, valid through numerator 24 N - 1.
FracQSeries eta_inverse(int64_t n);

/// E4 = 1 + 240 sum sigma_3(n) q^n, valid for exponents < order.
IntegerQSeries eisenstein_e4(int64_t order);
/// Delta = q prod (1 - q^n)^24, valid for exponents < order.
IntegerQSeries discriminant(int64_t order);
/// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ..., valid for exponents < order.
IntegerQSeries j_invariant(int64_t order);
/// j' = -q dj/dq = q^{-1} - 196884 q - ..., valid for exponents < order.
IntegerQSeries j_prime(int64_t order);

} // namespace maass
