#include "maass/basis.hpp"

#include <stdexcept>
#include <string>

namespace maass {

namespace {

int64_t level_of(BasisKind kind, int64_t m) { return kind == BasisKind::g ? (m - 1) / 24 : (-m - 23) / 24; }

std::vector<mpq_class> poly_times_j_minus(const std::vector<mpq_class>& p,
                                          const std::vector<std::pair<mpq_class, const std::vector<mpq_class>*>>& sub)
{
    std::vector<mpq_class> r(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i)
        r[i + 1] += p[i];
    for (const auto& [c, q] : sub)
        for (size_t i = 0; i < q->size(); ++i)
            r[i] -= c * (*q)[i];
    return r;
}

} // namespace

void require_basis_index(BasisKind kind, int64_t m)
{
    const bool residue_ok = ((m - 1) % 24) == 0;
    const bool sign_ok = kind == BasisKind::g ? m > 0 : m < 0;
    if (!residue_ok || !sign_ok)
        throw std::invalid_argument(std::string("invalid basis index m = ") + std::to_string(m) +
                                    (kind == BasisKind::g ? " (need m > 0, m = 1 mod 24)"
                                                          : " (need m < 0, m = 1 mod 24)"));
}

int levels_for(BasisKind kind, int64_t m)
{
    require_basis_index(kind, m);
    return static_cast<int>(level_of(kind, m)) + 1;
}

BasisFamily::BasisFamily(BasisKind kind, int levels, int64_t positive_terms)
    : kind_(kind), terms_(positive_terms)
{
    if (levels < 1 || positive_terms < 0)
        throw std::invalid_argument("BasisFamily: need at least one level and N >= 0");

    // Multiplying by j costs one term of precision per level, so the seed carries
    // one extra term per level above it.
    const int64_t target = 24 * positive_terms;
    const int64_t seed_order = target + 24 * (levels - 1);
    // j must cover the seed's range shifted by the most negative member.
    const IntegerQSeries j = j_invariant(seed_order / 24 + levels + 2);
    const FracQSeries jf = FracQSeries::from_integer(j);

    FracQSeries seed;
    if (kind == BasisKind::g) {
        seed = eta_inverse(seed_order / 24);
    } else {
        const int64_t eta_terms = seed_order / 24 + 2;
        seed = multiply(eta(eta_terms), FracQSeries::from_integer(j.theta_negated())).truncated(seed_order);
    }
    members_.push_back({kind == BasisKind::g ? 1 : -23, seed, {mpq_class(1)}});

    for (int k = 1; k < levels; ++k) {
        const BasisMember& prev = members_.back();
        FracQSeries next = multiply(prev.series, jf).truncated(prev.series.order() - 24);
        std::vector<std::pair<mpq_class, const std::vector<mpq_class>*>> sub;
        // Earlier members have no principal part beyond their leading term, so each
        // coefficient to clear is read off directly.
        for (const BasisMember& b : members_) {
            const int64_t lead = kind == BasisKind::g ? -b.m : b.m;
            const mpq_class c = next.coeff(lead);
            if (c == 0)
                continue;
            next -= b.series * c;
            sub.emplace_back(c, &b.polynomial);
        }
        const int64_t m = kind == BasisKind::g ? 1 + 24 * k : -23 - 24 * k;
        auto poly = poly_times_j_minus(prev.polynomial, sub);
        members_.push_back({m, std::move(next), std::move(poly)});
    }
    for (BasisMember& b : members_) {
        b.series = b.series.truncated(target);
        if (!b.series.is_integral())
            throw std::logic_error("basis member " + std::to_string(b.m) + " has a non-integral coefficient");
    }
}

bool BasisFamily::contains(int64_t m) const
{
    for (const auto& b : members_)
        if (b.m == m)
            return true;
    return false;
}

const BasisMember& BasisFamily::member(int64_t m) const
{
    for (const auto& b : members_)
        if (b.m == m)
            return b;
    throw std::out_of_range("basis family has no member " + std::to_string(m));
}

FracQSeries basis_g(int64_t m, int64_t n)
{
    const int levels = levels_for(BasisKind::g, m);
    return BasisFamily(BasisKind::g, levels, n).members().back().series;
}

FracQSeries basis_h_neg(int64_t m, int64_t n)
{
    const int levels = levels_for(BasisKind::h, m);
    return BasisFamily(BasisKind::h, levels, n).members().back().series;
}

} // namespace maass
