#pragma once

// Hecke operators T(l^2) on the weight -1/2 and weight 5/2 grids:
//
//     weight -1/2:  a(l^2 n) + l^{-2} (-3n/l) a(n) + l^{-3} a(n/l^2)
//     weight  5/2:  b(l^2 n) + l      (3n/l)  b(n) + l^3    b(n/l^2)
//
// and the decomposition of an image back into basis members by its principal part.

#include "maass/basis.hpp"
#include "maass/qseries.hpp"

#include <cstdint>
#include <map>

namespace maass {

bool is_prime(int64_t n);

/// Legendre symbol (a/l) by Euler's criterion a^{(l-1)/2} mod l.
/// Throws std::invalid_argument unless l is an odd prime.
int legendre(const mpz_class& a, int64_t ell);

/// T(l^2) in weight -1/2 applied to a series of residue 23. The result is valid
/// for every n with l^2 n below the input's order.
/// Throws std::invalid_argument for l < 5, composite l, or the wrong residue.
FracQSeries hecke_minus_half(const FracQSeries& f, int64_t ell);
/// T(l^2) in weight 5/2 on holomorphic parts (residue 1).
FracQSeries hecke_five_half_holo(const FracQSeries& f, int64_t ell);

struct HeckeDecomposition {
    int64_t ell = 0;
    int64_t input_m = 0;
    BasisKind kind = BasisKind::g;
    /// Basis index -> exact coefficient; only nonzero entries.
    std::map<int64_t, mpq_class> components;
    /// Image minus the recombined components; zero when the decomposition is exact.
    FracQSeries remainder;
    bool exact() const { return remainder.is_zero(); }
};

/// Peel off basis members from the most negative exponent upward.
/// Throws std::out_of_range if the principal part needs a member `family` lacks.
HeckeDecomposition decompose(const FracQSeries& f, const BasisFamily& family);

/// Apply T(l^2) to the basis member m (g_m, or h_m with m < 0) and decompose the
/// image with `terms` positive coefficients.
HeckeDecomposition hecke_image(BasisKind kind, int64_t m, int64_t ell, int64_t terms);

/// The components predicted for that image:
/// g: l^{-3} g_{l^2 m} + (3m/l) l^{-2} g_m;  h: l^3 h_{l^2 m} + (3m/l) l h_m,
/// plus 1 * (member m / l^2) when l^2 divides m.
std::map<int64_t, mpq_class> expected_hecke_components(BasisKind kind, int64_t m, int64_t ell);

} // namespace maass
