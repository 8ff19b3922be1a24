#include "maass/special.hpp"

#include <algorithm>

namespace maass::special {

Real incomplete_gamma_m32(const Real& x_in)
{
    detail::require_positive(x_in.to_double(), "incomplete_gamma_m32");
    // Each downward step cancels roughly a factor x, so carry 2 log2(x) guard bits.
    const double xd = x_in.to_double();
    const long guard = 24 + (xd > 1 ? 2 * static_cast<long>(std::ceil(std::log2(xd))) : 0);
    const Real x = x_in.with_prec(x_in.prec() + guard);
    const Real root = sqrt(x);
    const Real decay = exp(-x);
    const Real g_half = sqrt(Real::pi(x.prec())) * erfc(root);   // Gamma(1/2, x)
    const Real g_m12 = 2 * decay / root - 2 * g_half;              // Gamma(-1/2, x)
    const Real g_m32 = 2 * (decay / (x * root) - g_m12) / 3;      // Gamma(-3/2, x)
    return g_m32.with_prec(x_in.prec());
}

Real beta_gamma(const Real& y)
{
    detail::require_positive(y.to_double(), "beta_gamma");
    const Real x = Real::pi(y.prec() + 8) * y.with_prec(y.prec() + 8) / 6;
    return incomplete_gamma_m32(x).with_prec(y.prec());
}

} // namespace maass::special
