#include "maass/hecke.hpp"

#include <stdexcept>
#include <string>

namespace maass {

namespace {

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

void require_hecke_prime(int64_t ell)
{
    if (ell < 5 || !is_prime(ell))
        throw std::invalid_argument("Hecke operator needs a prime l >= 5, got " + std::to_string(ell));
}

mpq_class power(int64_t base, int e)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(std::abs(e)));
    return e >= 0 ? mpq_class(p) : mpq_class(1, p);
}

// c(n) = f(l^2 n) + w_mid (sign n / l) f(n) + w_low f(n / l^2), with sign = -3 or 3.
FracQSeries apply_hecke(const FracQSeries& f, int64_t ell, int expected_residue, int sign, const mpq_class& w_mid,
                        const mpq_class& w_low)
{
    require_hecke_prime(ell);
    if (f.residue() != expected_residue)
        throw std::invalid_argument("Hecke operator: series has residue " + std::to_string(f.residue()) +
                                    ", expected " + std::to_string(expected_residue));
    const int64_t l2 = ell * ell;
    // n is valid when l^2 n < order(f); l^2 = 1 mod 24 keeps the residue class.
    const int64_t order = floor_div(f.order() - 1, l2) + 1;
    const int64_t lead = f.lead() < 0 ? l2 * f.lead() : expected_residue;
    std::vector<mpq_class> c;
    for (int64_t n = lead; n < order; n += 24) {
        mpq_class v = f.coeff(l2 * n);
        const mpq_class a = f.coeff(n);
        if (a != 0)
            v += w_mid * legendre(mpz_class(sign) * n, ell) * a;
        if (n % l2 == 0)
            v += w_low * f.coeff(n / l2);
        c.push_back(std::move(v));
    }
    return FracQSeries(lead, order, std::move(c));
}

int64_t basis_lead(BasisKind kind, int64_t m) { return kind == BasisKind::g ? -m : m; }

} // namespace

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

int legendre(const mpz_class& a, int64_t ell)
{
    if (ell < 3 || !is_prime(ell))
        throw std::invalid_argument("legendre needs an odd prime, got " + std::to_string(ell));
    const mpz_class p = static_cast<long>(ell);
    mpz_class r;
    mpz_class base;
    mpz_mod(base.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (base == 0)
        return 0;
    const mpz_class e = (p - 1) / 2;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

FracQSeries hecke_minus_half(const FracQSeries& f, int64_t ell)
{
    return apply_hecke(f, ell, 23, -3, power(ell, -2), power(ell, -3));
}

FracQSeries hecke_five_half_holo(const FracQSeries& f, int64_t ell)
{
    return apply_hecke(f, ell, 1, 3, power(ell, 1), power(ell, 3));
}

HeckeDecomposition decompose(const FracQSeries& f, const BasisFamily& family)
{
    HeckeDecomposition d;
    d.kind = family.kind();
    FracQSeries rem = f;
    for (const auto& b : family.members())
        if (b.series.order() < rem.order())
            rem = rem.truncated(b.series.order());
    for (int64_t n = rem.lead(); n < 0 && n < rem.order(); n += 24) {
        const mpq_class c = rem.coeff(n);
        if (c == 0)
            continue;
        const int64_t m = d.kind == BasisKind::g ? -n : n;
        const BasisMember& b = family.member(m);
        rem -= b.series.truncated(rem.order()) * c;
        d.components[m] = c;
    }
    d.remainder = std::move(rem);
    return d;
}

HeckeDecomposition hecke_image(BasisKind kind, int64_t m, int64_t ell, int64_t terms)
{
    require_basis_index(kind, m);
    require_hecke_prime(ell);
    if (terms < 1)
        throw std::invalid_argument("hecke_image needs at least one coefficient");
    const int64_t l2 = ell * ell;
    // The image is valid below 24 terms once the input is valid through l^2 (24 terms - 1).
    const int64_t input_terms = (l2 * (24 * terms - 1) + 24) / 24;
    const FracQSeries f = BasisFamily(kind, levels_for(kind, m), input_terms).members().back().series;
    const FracQSeries image =
        (kind == BasisKind::g ? hecke_minus_half(f, ell) : hecke_five_half_holo(f, ell)).truncated(24 * terms);

    const int64_t deepest = std::min(basis_lead(kind, m), l2 * basis_lead(kind, m));
    const BasisFamily family(kind, levels_for(kind, kind == BasisKind::g ? -deepest : deepest), terms);
    HeckeDecomposition d = decompose(image, family);
    d.ell = ell;
    d.input_m = m;
    return d;
}

std::map<int64_t, mpq_class> expected_hecke_components(BasisKind kind, int64_t m, int64_t ell)
{
    require_basis_index(kind, m);
    require_hecke_prime(ell);
    const int chi = legendre(mpz_class(3) * m, ell);
    std::map<int64_t, mpq_class> out;
    out[ell * ell * m] = kind == BasisKind::g ? power(ell, -3) : power(ell, 3);
    if (chi != 0)
        out[m] = chi * (kind == BasisKind::g ? power(ell, -2) : power(ell, 1));
    // The leading term also reaches exponent m / l^2 through f(l^2 n).
    if (m % (ell * ell) == 0)
        out[m / (ell * ell)] = 1;
    return out;
}

} // namespace maass
