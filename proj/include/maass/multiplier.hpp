#pragma once

// Dedekind sums, the eta multiplier and the eta-twisted Kloosterman sums
//
//     K(m', n'; c) = sum_{d mod c, (d,c)=1} e^{pi i s(d,c)} e((dbar m' + d n') / c).
//
// Each term is a 24c-th root of unity, so the sums are handled through exact
// integer phase numerators k with e(k / 24c); floating point only enters when
// the cosines are finally summed.

#include "maass/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace maass {

struct UnimodularMatrix {
    mpz_class a, b, c, d;

    /// Throws std::invalid_argument unless ad - bc = 1.
    UnimodularMatrix(mpz_class a, mpz_class b, mpz_class c, mpz_class d);

    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    UnimodularMatrix operator-() const { return {-a, -b, -c, -d}; }
    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

    static UnimodularMatrix translation(long n = 1) { return {1, n, 0, 1}; }
    static UnimodularMatrix inversion() { return {0, -1, 1, 0}; }
    static UnimodularMatrix minus_identity() { return {-1, 0, 0, -1}; }
};

/// e(arg) = exp(2 pi i arg) with the exact argument kept reduced into [0, 1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    explicit RootOfUnity(mpq_class arg);

    const mpq_class& arg() const { return arg_; }
    RootOfUnity operator*(const RootOfUnity& o) const { return RootOfUnity(arg_ + o.arg_); }
    RootOfUnity conj() const { return RootOfUnity(-arg_); }
    friend bool operator==(const RootOfUnity& x, const RootOfUnity& y) { return x.arg_ == y.arg_; }

    Real real(mpfr_prec_t bits) const;
    Real imag(mpfr_prec_t bits) const;

private:
    mpq_class arg_{0};
};

/// s(d, c) by the reciprocity law; O(log c) steps. Requires c >= 1, gcd(d, c) = 1.
mpq_class dedekind_sum(const mpz_class& d, const mpz_class& c);

/// One extended-Euclid pass over (c, d): the inverse of d mod c and 12 c s(d, c),
/// which is always an integer. Empty if gcd(d, c) != 1. Requires 1 <= c < 2^31.
struct DedekindData {
    int64_t inverse;   // in [0, c)
    int64_t twelve_cs; // 12 c s(d, c)
};
std::optional<DedekindData> dedekind_euclid(int64_t d, int64_t c);

/// Multiplier of eta: eta(gz) = eps(g) (cz + d)^{1/2} eta(z), principal branch.
RootOfUnity eta_multiplier(const UnimodularMatrix& g);

struct KloostermanContext {
    int64_t m_prime = 0;
    int64_t n_prime = 0;
    int64_t c = 1;

    /// Throws std::invalid_argument for c < 1.
    KloostermanContext(int64_t m_prime, int64_t n_prime, int64_t c);
    /// Context for the indices m = 24 m' + 1, n = 24 n' + 1.
    static KloostermanContext from_indices(int64_t m, int64_t n, int64_t c);
};

/// Phase numerators k (one per reduced residue d, ascending d) with term e(k / 24c).
std::vector<int64_t> kloosterman_phases(const KloostermanContext& ctx);

struct ComplexValue {
    Real re;
    Real im;
};

/// Full complex sum over every reduced residue at working precision.
ComplexValue kloosterman_complex(const KloostermanContext& ctx, const PrecisionContext& prec);

/// K(m', n'; c) as a real number. Throws std::logic_error if the imaginary part
/// exceeds prec.tol(): the sum is real, so that indicates an arithmetic fault.
Real kloosterman(const KloostermanContext& ctx, const PrecisionContext& prec);

// ---------------------------------------------------------------------------
// Bulk evaluation used by the coefficient series.

/// Residue d in [1, c/2] coprime to c, with its Dedekind data. The residue c - d
/// contributes the complex conjugate term, so K is twice the real part over
/// this half system (the self-paired d = 1 at c = 2 counts once).
struct HalfResidue {
    int64_t d;
    int64_t inverse;
    /// 12 c s(d, c) reduced into [0, 24c).
    int64_t phase0;
};

/// Fills `out` with the half residue system of c (c == 1 gives the single d = 0).
void half_residue_system(int64_t c, std::vector<HalfResidue>& out);

/// Division by a fixed divisor below 2^32 through a precomputed reciprocal,
/// for numerators below 2^63.
class FastDivisor {
public:
    explicit FastDivisor(uint64_t d) : d_(d), m_(~uint64_t(0) / d) {}
    uint64_t divisor() const { return d_; }
    uint64_t quotient(uint64_t a) const
    {
        uint64_t q = static_cast<uint64_t>((static_cast<unsigned __int128>(a) * m_) >> 64);
        while (a - q * d_ >= d_)
            ++q;
        return q;
    }
    uint64_t remainder(uint64_t a) const { return a - quotient(a) * d_; }

private:
    uint64_t d_, m_;
};

/// cos(2 pi k / 24c) via a two-level table: cos(a + b) from coarse and fine
/// angle tables of size ~sqrt(24c), so a lookup is two multiplications.
template <class R>
class PhaseTable {
public:
    PhaseTable(int64_t c, const R& like) : n_(24 * c), step_(1), step_div_(1)
    {
        while (step_ * step_ < n_)
            ++step_;
        step_div_ = FastDivisor(static_cast<uint64_t>(step_));
        fill(fine_cos_, fine_sin_, step_, 1, like);
        fill(coarse_cos_, coarse_sin_, n_ / step_ + 1, step_, like);
    }

    int64_t modulus() const { return n_; }

    /// cos(2 pi k / 24c) for 0 <= k < 24c.
    R cos_at(int64_t k) const
    {
        const int64_t hi = static_cast<int64_t>(step_div_.quotient(static_cast<uint64_t>(k)));
        const int64_t lo = k - hi * step_;
        return coarse_cos_[hi] * fine_cos_[lo] - coarse_sin_[hi] * fine_sin_[lo];
    }

private:
    int64_t n_;
    int64_t step_;
    FastDivisor step_div_;
    std::vector<R> fine_cos_, fine_sin_, coarse_cos_, coarse_sin_;

    // Angles 2 pi j stride / n for j < count: rotation, re-seeded exactly every 32 steps.
    void fill(std::vector<R>& cs, std::vector<R>& sn, int64_t count, int64_t stride, long double) const
    {
        const long double base = 2 * pi_like(0.0L) * static_cast<long double>(stride) / static_cast<long double>(n_);
        long double rs, rc;
        sincosl(base, &rs, &rc);
        long double c = 1, s = 0;
        cs.resize(count);
        sn.resize(count);
        for (int64_t j = 0; j < count; ++j) {
            if (j % 32 == 0)
                sincosl(base * static_cast<long double>(j), &s, &c);
            cs[j] = c;
            sn[j] = s;
            const long double nc = c * rc - s * rs;
            s = s * rc + c * rs;
            c = nc;
        }
    }

    // MPFR: one cos/sin pair, then repeated rotation with guard bits for the
    // linear error growth.
    void fill(std::vector<Real>& cs, std::vector<Real>& sn, int64_t count, int64_t stride, const Real& like) const
    {
        const mpfr_prec_t bits = like.prec() + 24;
        const Real angle = 2 * Real::pi(bits) * Real(stride, bits) / Real(n_, bits);
        const Real rc = cos(angle), rs = sin(angle);
        Real c(1L, bits), s(0L, bits);
        for (int64_t j = 0; j < count; ++j) {
            cs.push_back(c.with_prec(like.prec()));
            sn.push_back(s.with_prec(like.prec()));
            Real nc = c * rc - s * rs;
            s = s * rc + c * rs;
            c = std::move(nc);
        }
    }
};

/// Phase numerator in [0, 24c) of residue `r`, given m' and n' already reduced into [0, c).
inline int64_t phase_numerator(const HalfResidue& r, const FastDivisor& c, int64_t m_reduced, int64_t n_reduced)
{
    const int64_t cc = static_cast<int64_t>(c.divisor());
    const int64_t lin = static_cast<int64_t>(c.remainder(static_cast<uint64_t>(r.inverse * m_reduced + r.d * n_reduced)));
    const int64_t k = r.phase0 + 24 * lin;
    return k >= 24 * cc ? k - 24 * cc : k;
}

inline int64_t reduce_mod(int64_t x, int64_t c)
{
    const int64_t r = x % c;
    return r < 0 ? r + c : r;
}

/// K(m', n'; c) from a half residue system and the phase table of the same c.
template <class R>
R kloosterman_from_half(std::span<const HalfResidue> half, int64_t c, int64_t m_prime,
                        int64_t n_prime, const PhaseTable<R>& table)
{
    const int64_t mr = reduce_mod(m_prime, c), nr = reduce_mod(n_prime, c);
    const FastDivisor fc(static_cast<uint64_t>(c));
    R sum = make_like(0.0L, table.cos_at(0));
    R twice = make_like(0.0L, sum);
    for (const auto& r : half) {
        if (2 * r.d == c || c == 1)
            sum += table.cos_at(phase_numerator(r, fc, mr, nr));
        else
            twice += table.cos_at(phase_numerator(r, fc, mr, nr));
    }
    return sum + 2 * twice;
}

} // namespace maass
