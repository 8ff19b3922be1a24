#pragma once

// Coefficient series of the Maass-Poincare series at s = 5/4:
//
//     L_{m,n}(5/4) = sum_c K(m',n';c)/c * J_{3/2} or I_{3/2} (pi sqrt|mn| / 6c),
//     cal L_{m,n}  = sum_c K(m',n';c)/c * 2 (d/dnu) J_nu (pi sqrt(mn) / 6c) at nu = 3/2,
//
// the resulting coefficients of h_m, and Rademacher's series for p(n).
//
// The sums over c carry no error bound, so every value comes with empirical
// diagnostics (SeriesValue). Several series can share one sweep over c: the
// residue system, Dedekind data and phase table of each c are built once.

#include "maass/multiplier.hpp"
#include "maass/real.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace maass {

struct SeriesConfig {
    int64_t c_max = 4096;
    PrecisionContext precision{};
    /// Convergence threshold on the tail estimate.
    double tol = 1e-6;

    /// Throws std::invalid_argument for c_max < 1 or tol <= 0.
    void validate() const;
};

struct SeriesValue {
    Real value;
    int64_t c_max = 0;
    /// max(10 x largest of the last 10 block sums, |S(C) - S(C/2)|), blocks of C/100.
    double tail_estimate = 0;
    bool converged = false;
    /// When both indices are squares the partial sums carry a 1/c tail; this is the
    /// least-squares limit of S(c) = S + A/c (+ B log c / c for derivative series)
    /// over [C/4, C]. Equal to `value` otherwise.
    Real extrapolated;
    /// Contributions of c in [1, 10), [10, 100), ..., the last decade ending at C.
    std::vector<double> decade_contributions;
    /// The trailing decade windows (C/1000, C/100], (C/100, C/10], (C/10, C] shrink in size.
    bool monotone_decay = false;
};

enum class SeriesKernel { bessel_j, bessel_i, order_derivative };

/// One series: prefactor * sum_c K(m',n';c)/c * kernel(argument / c).
struct SeriesRequest {
    int64_t m_prime;
    int64_t n_prime;
    SeriesKernel kernel;
    /// The kernel is evaluated at pi sqrt(radicand) / (6c).
    int64_t radicand;
    /// Overall factor applied to the sum (and to the diagnostics).
    std::optional<Real> prefactor;
};

std::vector<SeriesValue> sum_kloosterman_series(const std::vector<SeriesRequest>& requests, const SeriesConfig& cfg);

/// Throws std::invalid_argument unless m = 1 mod 24 (m != 0 is implied).
void require_index(int64_t m);

/// The request behind L_{m,n}(5/4) (derivative = false) or cal L_{m,n}, for
/// batching unrelated series into one sweep.
SeriesRequest L_request(int64_t m, int64_t n, bool derivative);

/// L_{m,n}(5/4) for m, n = 1 mod 24.
SeriesValue L_value(int64_t m, int64_t n, const SeriesConfig& cfg);
/// cal L_{m,n} for m, n > 0.
SeriesValue L_deriv(int64_t m, int64_t n, const SeriesConfig& cfg);

struct IndexPair {
    int64_t m, n;
};
std::vector<SeriesValue> L_values(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg);
std::vector<SeriesValue> L_derivs(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg);

/// One coefficient re + i im of a q-expansion with the series it came from.
struct Coefficient {
    int64_t n;
    Real re;
    Real im;
    std::optional<SeriesValue> series;
    bool converged() const { return !series || series->converged; }
};

/// Expansion of h_m: holo[k] multiplies q^{n/24}; nonholo[k] multiplies
/// beta(n y) q^{-n/24}. For m > 0 the first nonholo entry is the exact term
/// i beta(-m y) q^{m/24}, stored with n = -m.
struct MaassFormExpansion {
    int64_t m;
    std::vector<Coefficient> holo;
    std::vector<Coefficient> nonholo;
    bool converged() const;
};

/// h_m from the analytic series with N positive-exponent holomorphic (and, for
/// m > 0, N nonholomorphic) coefficients.
MaassFormExpansion h_expansion(int64_t m, int64_t n_terms, const SeriesConfig& cfg);

/// p_m^+(n) for m, n > 0 (real part; the n = m term also has imaginary part -(4/3) sqrt(pi)).
Coefficient p_plus(int64_t m, int64_t n, const SeriesConfig& cfg);
/// Batch of p_m^+(n) sharing one sweep over c.
std::vector<Coefficient> p_plus_batch(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg);
/// p_m^-(n) for m > 0 and n > 0, n = 23 mod 24: the coefficient of beta(n y) q^{-n/24}.
std::vector<Coefficient> p_minus_batch(int64_t m, const std::vector<int64_t>& ns, const SeriesConfig& cfg);

/// One coefficient of h_m: p_m^+(n) for m, n > 0; p_m^-(-n) for m > 0 > n (the
/// coefficient of beta(|n| y) q^{n/24}); -2 pi |n/m|^{3/4} L_{m,n} for m < 0 < n.
Coefficient h_coefficient(int64_t m, int64_t n, const SeriesConfig& cfg);

/// Lehmer's bound on the Rademacher remainder after N terms (n >= 2).
double lehmer_tail_bound(int64_t n, int64_t terms);

struct RademacherResult {
    int64_t n;
    Real value;
    mpz_class rounded;
    int64_t c_max;
    /// Bound on the omitted tail: Lehmer's for n >= 2, the heuristic estimate for n = 1.
    double tail_bound;
    /// 0.5 - |value - rounded| - tail_bound; positive means the rounding is certified.
    double margin;
    bool certified;
};

/// p(n) from Rademacher's series. Uses the smallest c_max <= cfg.c_max whose Lehmer
/// bound leaves room to certify the rounding.
RademacherResult rademacher_p(int64_t n, const SeriesConfig& cfg);

/// p(n) by the pentagonal-number recurrence.
mpz_class partition_oracle(int64_t n);

} // namespace maass
