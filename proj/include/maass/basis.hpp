#pragma once

// The weakly holomorphic bases
//
//     g_m = q^{-m/24} + O(q^{23/24})   (m > 0, weight -1/2),
//     h_m = q^{m/24} + O(q^{1/24})     (m < 0, weight 5/2),
//
// built as eta^{-1} P(j) and eta j' P(j) with monic P. Each new member is the
// previous one times j with the principal part cleared by earlier members, so
// a family is constructed in increasing |m| and every member is kept.

#include "maass/qseries.hpp"

#include <cstdint>
#include <vector>

namespace maass {

enum class BasisKind { g, h };

struct BasisMember {
    int64_t m;
    FracQSeries series;
    /// Coefficients of P in increasing degree: series = seed * P(j).
    std::vector<mpq_class> polynomial;
};

class BasisFamily {
public:
    /// Members with |m| = 1 + 24k (g) or 23 + 24k (h), for k = 0..levels-1, each
    /// valid through its first `positive_terms` positive-exponent coefficients.
    BasisFamily(BasisKind kind, int levels, int64_t positive_terms);

    BasisKind kind() const { return kind_; }
    int64_t positive_terms() const { return terms_; }
    const std::vector<BasisMember>& members() const { return members_; }
    /// Member with index m; throws std::out_of_range if m is not in the family.
    const BasisMember& member(int64_t m) const;
    bool contains(int64_t m) const;

private:
    BasisKind kind_;
    int64_t terms_;
    std::vector<BasisMember> members_;
};

/// Number of levels needed so a family of `kind` contains index m.
int levels_for(BasisKind kind, int64_t m);

/// g_m for m > 0, m = 1 mod 24, through numerator 24 N - 1 (N positive coefficients).
FracQSeries basis_g(int64_t m, int64_t n);
/// h_m for m < 0, m = 1 mod 24, with N positive coefficients.
FracQSeries basis_h_neg(int64_t m, int64_t n);

/// Throws std::invalid_argument unless m = 1 mod 24 with the sign the kind requires.
void require_basis_index(BasisKind kind, int64_t m);

} // namespace maass
