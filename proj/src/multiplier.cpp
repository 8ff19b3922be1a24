#include "maass/multiplier.hpp"

#include <stdexcept>
#include <string>

namespace maass {

UnimodularMatrix::UnimodularMatrix(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_))
{
    if (a * d - b * c != 1)
        throw std::invalid_argument("matrix is not in SL2(Z)");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const
{
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

RootOfUnity::RootOfUnity(mpq_class arg) : arg_(std::move(arg))
{
    arg_.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), arg_.get_num_mpz_t(), arg_.get_den_mpz_t());
    arg_ -= fl;
}

Real RootOfUnity::real(mpfr_prec_t bits) const
{
    Real t = 2 * Real::pi(bits + 8) * Real(arg_, bits + 8);
    return cos(t).with_prec(bits);
}

Real RootOfUnity::imag(mpfr_prec_t bits) const
{
    Real t = 2 * Real::pi(bits + 8) * Real(arg_, bits + 8);
    return sin(t).with_prec(bits);
}

mpq_class dedekind_sum(const mpz_class& d_in, const mpz_class& c_in)
{
    if (c_in < 1)
        throw std::invalid_argument("dedekind_sum: c must be positive");
    mpz_class c = c_in;
    mpz_class d;
    mpz_fdiv_r(d.get_mpz_t(), d_in.get_mpz_t(), c.get_mpz_t());

    // s(d, c) + s(c, d) = (d/c + c/d + 1/(dc)) / 12 - 1/4 and s(c, d) = s(c mod d, d).
    mpq_class acc = 0;
    int sign = 1;
    while (d != 0) {
        mpq_class term(d * d + c * c + 1, 12 * d * c);
        term.canonicalize();
        term -= mpq_class(1, 4);
        if (sign > 0)
            acc += term;
        else
            acc -= term;
        mpz_class r = c % d;
        c = d;
        d = r;
        sign = -sign;
    }
    if (c != 1)
        throw std::invalid_argument("dedekind_sum: arguments are not coprime");
    return acc;
}

std::optional<DedekindData> dedekind_euclid(int64_t d, int64_t c)
{
    if (c < 1 || c >= (int64_t(1) << 31))
        throw std::invalid_argument("dedekind_euclid: c out of range");
    d %= c;
    if (d < 0)
        d += c;
    if (c == 1)
        return DedekindData{0, 0};
    if (d == 0)
        return std::nullopt;

    // 12 c s(d, c) = c (a_1 - a_2 + ... +- a_t - 1 - 2[t odd]) + d + dbar, where a_i are
    // the partial quotients of c/d and dbar in [1, c) is the inverse of d.
    int64_t r0 = c, r1 = d;
    int64_t t0 = 0, t1 = 1;
    int64_t alt = 0;
    int sign = 1;
    int steps = 0;
    while (r1 != 0) {
        const int64_t q = r0 / r1;
        const int64_t r2 = r0 - q * r1;
        const int64_t t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
        alt += sign * q;
        sign = -sign;
        ++steps;
    }
    if (r0 != 1)
        return std::nullopt;
    int64_t inv = t0 % c;
    if (inv < 0)
        inv += c;
    const int64_t correction = (steps % 2 == 1) ? 3 : 1;
    return DedekindData{inv, c * (alt - correction) + d + inv};
}

RootOfUnity eta_multiplier(const UnimodularMatrix& g)
{
    if (g.c > 0) {
        mpq_class arg(g.a + g.d - 3 * g.c, 24 * g.c);
        arg.canonicalize();
        return RootOfUnity(arg - dedekind_sum(g.d, g.c) / 2);
    }
    if (g.c == 0) {
        // g = T^b gives e(b/24); g = -T^{-b} gives e(-b/24) / sqrt(-1) = e(-b/24 - 1/4).
        if (g.a == 1)
            return RootOfUnity(mpq_class(g.b, 24));
        return RootOfUnity(mpq_class(-g.b, 24) - mpq_class(1, 4));
    }
    // For c < 0, (cz + d)^{1/2} = -i (-cz - d)^{1/2} on the upper half-plane.
    return eta_multiplier(-g) * RootOfUnity(mpq_class(1, 4));
}

KloostermanContext::KloostermanContext(int64_t m, int64_t n, int64_t c_) : m_prime(m), n_prime(n), c(c_)
{
    if (c < 1)
        throw std::invalid_argument("Kloosterman modulus must be positive, got " + std::to_string(c));
}

KloostermanContext KloostermanContext::from_indices(int64_t m, int64_t n, int64_t c)
{
    auto shifted = [](int64_t x) {
        int64_t r = (x - 1) % 24;
        if (r != 0)
            throw std::invalid_argument("index " + std::to_string(x) + " is not 1 mod 24");
        return (x - 1) / 24;
    };
    return KloostermanContext(shifted(m), shifted(n), c);
}

std::vector<int64_t> kloosterman_phases(const KloostermanContext& ctx)
{
    const int64_t c = ctx.c;
    std::vector<int64_t> out;
    for (int64_t d = 0; d < c; ++d) {
        auto dd = dedekind_euclid(d, c);
        if (!dd)
            continue;
        HalfResidue r{d, dd->inverse, reduce_mod(dd->twelve_cs, 24 * c)};
        out.push_back(phase_numerator(r, FastDivisor(static_cast<uint64_t>(c)), reduce_mod(ctx.m_prime, c), reduce_mod(ctx.n_prime, c)));
    }
    return out;
}

ComplexValue kloosterman_complex(const KloostermanContext& ctx, const PrecisionContext& prec)
{
    const mpfr_prec_t bits = prec.bits();
    Real re(bits), im(bits);
    const mpz_class modulus = 24 * mpz_class(static_cast<long>(ctx.c));
    for (int64_t k : kloosterman_phases(ctx)) {
        RootOfUnity z(mpq_class(mpz_class(static_cast<long>(k)), modulus));
        re += z.real(bits);
        im += z.imag(bits);
    }
    return {re, im};
}

Real kloosterman(const KloostermanContext& ctx, const PrecisionContext& prec)
{
    ComplexValue v = kloosterman_complex(ctx, prec);
    if (abs(v.im) > prec.tol())
        throw std::logic_error("Kloosterman sum has imaginary part " + v.im.str(6));
    return v.re;
}

void half_residue_system(int64_t c, std::vector<HalfResidue>& out)
{
    out.clear();
    if (c == 1) {
        out.push_back({0, 0, 0});
        return;
    }
    if (c >= (int64_t(1) << 31))
        throw std::invalid_argument("half_residue_system: c out of range");
    const uint32_t uc = static_cast<uint32_t>(c);
    const uint32_t top = uc / 2;
    const int64_t n24 = 24 * c;

    // slot[d].d == 0 marks a residue not (yet) known to be coprime and filled.
    thread_local std::vector<HalfResidue> slot;
    thread_local std::vector<uint8_t> skip;
    slot.assign(top + 1, HalfResidue{0, 0, 0});
    skip.assign(top + 1, 0);
    uint32_t rest = uc;
    for (uint32_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        for (uint32_t k = p; k <= top; k += p)
            skip[k] = 1;
    }
    if (rest > 1)
        for (uint32_t k = rest; k <= top; k += rest)
            skip[k] = 1;

    // One Euclid pass per pair {d, partner}: s(dbar, c) = s(d, c) and s(c - x, c) = -s(x, c),
    // so the partner of d in [1, c/2] (dbar or c - dbar) needs no pass of its own.
    for (uint32_t d = 1; d <= top; ++d) {
        if (skip[d])
            continue;
        uint32_t r0 = uc, r1 = d;
        int64_t t0 = 0, t1 = 1, alt = 0;
        bool plus = true;
        while (r1 != 0) {
            const uint32_t q = r0 / r1;
            const uint32_t r2 = r0 - q * r1;
            const int64_t t2 = t0 - static_cast<int64_t>(q) * t1;
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
            alt += plus ? q : -static_cast<int64_t>(q);
            plus = !plus;
        }
        const int64_t inv = t0 < 0 ? t0 + c : t0;
        const int64_t correction = plus ? 1 : 3; // an odd number of steps leaves plus == false
        const int64_t twelve_cs = c * (alt - correction) + d + inv;
        slot[d] = {d, inv, reduce_mod(twelve_cs, n24)};
        const bool low = 2 * inv <= c;
        const uint32_t partner = static_cast<uint32_t>(low ? inv : c - inv);
        if (partner > d) {
            slot[partner] = low ? HalfResidue{partner, d, reduce_mod(twelve_cs, n24)}
                                : HalfResidue{partner, c - d, reduce_mod(-twelve_cs, n24)};
            skip[partner] = 1;
        }
    }
    for (uint32_t d = 1; d <= top; ++d)
        if (slot[d].d != 0)
            out.push_back(slot[d]);
}

} // namespace maass
