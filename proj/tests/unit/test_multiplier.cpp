#include "doctest.h"

#include "maass/multiplier.hpp"

#include <numeric>
#include <random>

using namespace maass;

namespace {

// Sawtooth ((x)) for rational x.
mpq_class sawtooth(const mpq_class& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class frac = x - fl;
    if (frac == 0)
        return 0;
    return frac - mpq_class(1, 2);
}

mpq_class dedekind_direct(long d, long c)
{
    mpq_class s = 0;
    for (long r = 1; r < c; ++r)
        s += sawtooth(mpq_class(r, c)) * sawtooth(mpq_class(d * r, c));
    return s;
}

struct Cx {
    Real re, im;
};

Cx mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

Cx cx_exp_2pi_i(const Cx& z, mpfr_prec_t bits)
{
    // e^{2 pi i z} = e^{-2 pi y} (cos 2 pi x + i sin 2 pi x)
    Real two_pi = 2 * Real::pi(bits);
    Real r = exp(-(two_pi * z.im));
    return {r * cos(two_pi * z.re), r * sin(two_pi * z.re)};
}

// eta(z) = q^{1/24} prod (1 - q^n), summed until |q^n| drops below 2^-bits.
Cx eta(const Cx& z, mpfr_prec_t bits)
{
    Cx q = cx_exp_2pi_i(z, bits);
    Cx lead = cx_exp_2pi_i({z.re / 24, z.im / 24}, bits);
    Cx qn = q;
    Cx prod{Real(1L, bits), Real(0L, bits)};
    Real eps = epsilon_like(Real(bits));
    while (true) {
        prod = mul(prod, {Real(1L, bits) - qn.re, -qn.im});
        if (sqrt(qn.re * qn.re + qn.im * qn.im) < eps.to_double() * 1e-3)
            break;
        qn = mul(qn, q);
    }
    return mul(lead, prod);
}

Cx mobius(const UnimodularMatrix& g, const Cx& z, mpfr_prec_t bits)
{
    Real a(g.a, bits), b(g.b, bits), c(g.c, bits), d(g.d, bits);
    Cx num{a * z.re + b, a * z.im};
    Cx den{c * z.re + d, c * z.im};
    Real n2 = den.re * den.re + den.im * den.im;
    return {(num.re * den.re + num.im * den.im) / n2, (num.im * den.re - num.re * den.im) / n2};
}

// Principal square root.
Cx csqrt(const Cx& w)
{
    Real mod = sqrt(w.re * w.re + w.im * w.im);
    Real re = sqrt((mod + w.re) / 2);
    Real im = sqrt((mod - w.re) / 2);
    if (w.im.sign() < 0)
        im = -im;
    return {re, im};
}

} // namespace

TEST_CASE("dedekind sum: small values")
{
    CHECK(dedekind_sum(5, 1) == 0);
    CHECK(dedekind_sum(-7, 1) == 0);
    CHECK(dedekind_sum(1, 3) == mpq_class(1, 18));
    CHECK_THROWS_AS(dedekind_sum(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(dedekind_sum(1, 0), std::invalid_argument);
}

TEST_CASE("dedekind sum: reciprocity route equals direct sum for c <= 200")
{
    for (long c = 1; c <= 200; ++c) {
        for (long d = 0; d < c; ++d) {
            if (std::gcd(d, c) != 1)
                continue;
            mpq_class direct = dedekind_direct(d, c);
            REQUIRE(dedekind_sum(d, c) == direct);
            auto fast = dedekind_euclid(d, c);
            REQUIRE(fast.has_value());
            REQUIRE(mpq_class(fast->twelve_cs) == 12 * c * direct);
            REQUIRE((d * fast->inverse - 1) % c == 0);
        }
    }
}

TEST_CASE("dedekind sum: oddness and inverse symmetry")
{
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 50) {
        long c = std::uniform_int_distribution<long>(2, 100000)(rng);
        long d = std::uniform_int_distribution<long>(1, c - 1)(rng);
        if (std::gcd(d, c) != 1)
            continue;
        CHECK(dedekind_sum(-d, c) == -dedekind_sum(d, c));
        auto e = dedekind_euclid(d, c);
        CHECK(dedekind_sum(e->inverse, c) == dedekind_sum(d, c));
        ++checked;
    }
    CHECK_FALSE(dedekind_euclid(6, 9).has_value());
}

TEST_CASE("unimodular matrix rejects determinant != 1")
{
    CHECK_THROWS_AS(UnimodularMatrix(1, 1, 1, 1), std::invalid_argument);
    CHECK(UnimodularMatrix::inversion() * UnimodularMatrix::inversion() == UnimodularMatrix::minus_identity());
}

TEST_CASE("eta multiplier: generators")
{
    CHECK(eta_multiplier(UnimodularMatrix::translation()) == RootOfUnity(mpq_class(1, 24)));
    CHECK(eta_multiplier(UnimodularMatrix::minus_identity()) == RootOfUnity(mpq_class(-1, 4)));
    CHECK(eta_multiplier(UnimodularMatrix::inversion()) == RootOfUnity(mpq_class(-1, 8)));
}

TEST_CASE("eta multiplier: cocycle identity holds numerically")
{
    const mpfr_prec_t bits = PrecisionContext(40).bits();
    const UnimodularMatrix S = UnimodularMatrix::inversion();
    const UnimodularMatrix T = UnimodularMatrix::translation();
    const UnimodularMatrix Tinv = UnimodularMatrix::translation(-1);
    const UnimodularMatrix gens[] = {S, T, Tinv, UnimodularMatrix::minus_identity()};

    std::mt19937 rng(11);
    const Cx z{Real(0.125, bits), Real(1.0, bits)};
    const Cx eta_z = eta(z, bits);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 40; ++trial) {
        UnimodularMatrix g = T;
        int len = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int i = 0; i < len; ++i)
            g = g * gens[std::uniform_int_distribution<int>(0, 3)(rng)];
        if (abs(g.c) > 3 || abs(g.d) > 4)
            continue;
        Cx w = mobius(g, z, bits);
        Cx lhs = eta(w, bits);
        Cx factor{Real(g.c, bits) * z.re + Real(g.d, bits), Real(g.c, bits) * z.im};
        RootOfUnity eps = eta_multiplier(g);
        Cx rhs = mul(mul({eps.real(bits), eps.imag(bits)}, csqrt(factor)), eta_z);
        CAPTURE(g.a.get_str());
        CAPTURE(g.b.get_str());
        CAPTURE(g.c.get_str());
        CAPTURE(g.d.get_str());
        CHECK(abs(lhs.re - rhs.re).to_double() < 1e-20);
        CHECK(abs(lhs.im - rhs.im).to_double() < 1e-20);
        ++tested;
    }
    CHECK(tested >= 20);
}

TEST_CASE("kloosterman: c = 1 gives 1")
{
    PrecisionContext p(30);
    for (long m : {0L, 3L, -5L})
        CHECK(kloosterman(KloostermanContext(m, 7, 1), p).to_double() == doctest::Approx(1.0));
    CHECK_THROWS_AS(KloostermanContext(0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(KloostermanContext::from_indices(2, 1, 1), std::invalid_argument);
}

TEST_CASE("kloosterman: real, symmetric, and half system agrees with full sum")
{
    PrecisionContext p(30);
    std::mt19937_64 rng(3);
    std::vector<HalfResidue> half;
    for (int i = 0; i < 100; ++i) {
        long c = std::uniform_int_distribution<long>(1, 500)(rng);
        long mp = std::uniform_int_distribution<long>(-40, 40)(rng);
        long np = std::uniform_int_distribution<long>(-40, 40)(rng);
        ComplexValue v = kloosterman_complex(KloostermanContext(mp, np, c), p);
        CHECK(abs(v.im).to_double() < 1e-25);
        Real swapped = kloosterman(KloostermanContext(np, mp, c), p);
        CHECK(abs(v.re - swapped).to_double() < 1e-25);

        half_residue_system(c, half);
        PhaseTable<Real> table(c, Real(p.bits()));
        Real fromhalf = kloosterman_from_half<Real>(half, c, mp, np, table);
        CHECK(abs(v.re - fromhalf).to_double() < 1e-25);
        PhaseTable<long double> ltable(c, 0.0L);
        long double ld = kloosterman_from_half<long double>(half, c, mp, np, ltable);
        CHECK(std::abs(ld - v.re.to_long_double()) < 1e-14L);
    }
}

TEST_CASE("half residue system matches the reference Euclid pass")
{
    std::vector<HalfResidue> half;
    for (long c = 1; c <= 400; ++c) {
        half_residue_system(c, half);
        size_t expected = 0;
        for (long d = (c == 1 ? 0 : 1); 2 * d <= c || (c == 1 && d == 0); ++d) {
            auto e = dedekind_euclid(d, c);
            if (!e)
                continue;
            REQUIRE(expected < half.size());
            const HalfResidue& r = half[expected++];
            CHECK(r.d == d);
            CHECK(r.inverse == e->inverse);
            CHECK(r.phase0 == reduce_mod(e->twelve_cs, 24 * c));
            if (c == 1)
                break;
        }
        CHECK(half.size() == expected);
    }
}

TEST_CASE("fast divisor agrees with hardware division")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20000; ++i) {
        const uint64_t d = std::uniform_int_distribution<uint64_t>(1, (uint64_t(1) << 32) - 1)(rng);
        const uint64_t a = std::uniform_int_distribution<uint64_t>(0, (uint64_t(1) << 63) - 1)(rng);
        FastDivisor f(d);
        REQUIRE(f.quotient(a) == a / d);
        REQUIRE(f.remainder(a) == a % d);
    }
    FastDivisor one(1);
    CHECK(one.quotient(12345) == 12345);
}
