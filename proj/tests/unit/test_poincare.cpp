#include "doctest.h"

#include "maass/basis.hpp"
#include "maass/poincare.hpp"
#include "maass/special.hpp"

#include <cmath>
#include <complex>

using namespace maass;

namespace {

SeriesConfig fast_config(int64_t c_max)
{
    SeriesConfig cfg;
    cfg.c_max = c_max;
    cfg.precision = PrecisionContext(18);
    return cfg;
}

using Cx = std::complex<long double>;
const long double kPi = 3.14159265358979323846264338327950288L;

// i beta(-y) on the principal branch: i (4/3) sqrt(pi) + x^{-3/2} sum x^k / (k! (k - 3/2)), x = pi y / 6.
Cx ibeta_negative(long double y)
{
    const long double x = kPi * y / 6;
    long double s = 0, t = 1;
    for (int k = 0; k < 200; ++k) {
        if (k)
            t *= x / k;
        s += t / (k - 1.5L);
    }
    return {std::pow(x, -1.5L) * s, 4 * std::sqrt(kPi) / 3};
}

// h_1 evaluated from its truncated expansion; holo_sign flips the holomorphic coefficients.
Cx evaluate_h1(const MaassFormExpansion& e, Cx z, int holo_sign)
{
    const long double y = z.imag();
    const Cx two_pi_i(0, 2 * kPi);
    Cx sum = ibeta_negative(y) * std::exp(two_pi_i * z / 24.0L);
    for (const auto& c : e.holo) {
        const long double re = c.series ? c.series->extrapolated.to_long_double() : c.re.to_long_double();
        const Cx coef(holo_sign * re, holo_sign * c.im.to_long_double());
        sum += coef * std::exp(two_pi_i * z * static_cast<long double>(c.n) / 24.0L);
    }
    for (size_t k = 1; k < e.nonholo.size(); ++k) {
        const long double n = static_cast<long double>(e.nonholo[k].n);
        const long double b = special::beta_gamma(Real(n * y, 128)).to_long_double();
        sum += e.nonholo[k].re.to_long_double() * b * std::exp(-two_pi_i * z * n / 24.0L);
    }
    return sum;
}

} // namespace

TEST_CASE("series config validation and index checks")
{
    SeriesConfig cfg;
    cfg.c_max = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.c_max = 10;
    cfg.tol = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(require_index(0), std::invalid_argument);
    CHECK_THROWS_AS(require_index(2), std::invalid_argument);
    CHECK_THROWS_AS(L_deriv(1, -23, fast_config(10)), std::invalid_argument);
}

TEST_CASE("rademacher: certified rounding equals the recurrence for n <= 200")
{
    SeriesConfig cfg;
    cfg.c_max = 4096;
    cfg.precision = PrecisionContext(30);
    const auto oracle = partition_numbers(200);
    for (int64_t n = 1; n <= 200; ++n) {
        CAPTURE(n);
        RademacherResult r = rademacher_p(n, cfg);
        REQUIRE(r.certified);
        REQUIRE(r.rounded == oracle[n]);
        REQUIRE(r.margin > 0);
    }
    CHECK(partition_oracle(0) == 1);
    CHECK(partition_oracle(5) == 7);
    CHECK(partition_oracle(7) == 15);
}

TEST_CASE("rademacher: n = 500 and the Lehmer bound")
{
    SeriesConfig cfg;
    cfg.precision = PrecisionContext(60);
    RademacherResult r = rademacher_p(500, cfg);
    CHECK(r.certified);
    CHECK(r.rounded == partition_oracle(500));
    CHECK(r.c_max < 100);
    CHECK(lehmer_tail_bound(500, r.c_max) < 0.25);
    CHECK(lehmer_tail_bound(500, 10) > lehmer_tail_bound(500, 40));
    CHECK_THROWS_AS(lehmer_tail_bound(1, 5), std::invalid_argument);
}

TEST_CASE("h_-23: analytic coefficients match the exact integers")
{
    const FracQSeries exact = basis_h_neg(-23, 4);
    MaassFormExpansion e = h_expansion(-23, 4, fast_config(4096));
    REQUIRE(e.holo.size() == 5);
    CHECK(e.nonholo.empty());
    CHECK(e.holo[0].re.to_double() == 1.0);
    for (size_t k = 1; k < e.holo.size(); ++k) {
        const double want = exact.coeff(e.holo[k].n).get_d();
        CAPTURE(e.holo[k].n);
        CHECK(std::fabs(e.holo[k].re.to_double() / want - 1) < 1e-6);
    }
}

TEST_CASE("normalization: 2 pi L_{m,m} tends to 1")
{
    const double two_pi = 2 * 3.14159265358979323846;
    for (int64_t m : {1, 25}) {
        SeriesValue s = L_value(m, m, fast_config(8192));
        CAPTURE(m);
        // 1e-4 needs C near 32768 for m = 25; the acceptance run covers that.
        CHECK(std::fabs(two_pi * s.extrapolated.to_double() - 1) < 1e-3);
        CHECK(std::fabs(two_pi * s.extrapolated.to_double() - 1) < std::fabs(two_pi * s.value.to_double() - 1));
        CHECK(s.monotone_decay);
    }
}

TEST_CASE("vanishing: 2 pi L_{m,n} for m != n is within its tail estimate")
{
    const double two_pi = 2 * 3.14159265358979323846;
    const std::vector<IndexPair> pairs{{1, 73}, {1, 97}, {25, 73}, {49, 97}, {73, 97}};
    auto values = L_values(pairs, fast_config(8192));
    for (size_t i = 0; i < pairs.size(); ++i) {
        CAPTURE(pairs[i].m);
        CAPTURE(pairs[i].n);
        const double v = std::fabs(two_pi * values[i].value.to_double());
        CHECK(v < 1e-3);
        CHECK(v < 5 * two_pi * values[i].tail_estimate);
        // Neither index pair is square x square: no 1/c term to fit.
        CHECK(values[i].extrapolated == values[i].value);
    }
}

TEST_CASE("square pairs carry a 1/c tail that the extrapolation removes")
{
    SeriesValue small = L_value(1, 25, fast_config(2048));
    SeriesValue large = L_value(1, 25, fast_config(8192));
    const double raw_small = std::fabs(small.value.to_double());
    const double raw_large = std::fabs(large.value.to_double());
    // Quadrupling C cuts the raw error by about 4.
    CHECK(raw_small / raw_large > 2.5);
    CHECK(raw_small / raw_large < 6);
    CHECK(std::fabs(large.extrapolated.to_double()) < raw_large / 10);
}

TEST_CASE("symmetry: n^{3/2} p_n^+(m) = m^{3/2} p_m^+(n)")
{
    auto c = p_plus_batch({{1, 25}, {25, 1}, {25, 49}, {49, 25}}, fast_config(2048));
    for (int i = 0; i < 4; i += 2) {
        const double m = static_cast<double>(c[i + 1].n), n = static_cast<double>(c[i].n);
        const double lhs = std::pow(n, 1.5) * c[i + 1].re.to_double();
        const double rhs = std::pow(m, 1.5) * c[i].re.to_double();
        CHECK(std::fabs(lhs / rhs - 1) < 1e-12);
    }
}

TEST_CASE("p_1^+: n = m carries -(4/3) sqrt(pi) i, others are real")
{
    auto c = p_plus_batch({{1, 1}, {1, 25}}, fast_config(256));
    CHECK(c[0].im.to_double() == doctest::Approx(-4.0 / 3.0 * std::sqrt(3.14159265358979323846)));
    CHECK(c[1].im.is_zero());
}

TEST_CASE("h_1: nonholomorphic coefficients follow the partition numbers")
{
    MaassFormExpansion e = h_expansion(1, 3, fast_config(4096));
    REQUIRE(e.nonholo.size() == 4);
    CHECK(e.nonholo[0].n == -1);
    CHECK(e.nonholo[0].im.to_double() == 1.0);
    // -p^-(n) (1/n)^{3/2} = p((n + 1)/24): 1, 2, 3.
    const long parts[] = {1, 2, 3};
    for (int k = 1; k <= 3; ++k) {
        const double n = static_cast<double>(e.nonholo[k].n);
        const double scaled = -e.nonholo[k].re.to_double() / std::pow(n, 1.5);
        CHECK(std::fabs(scaled / parts[k - 1] - 1) < 1e-6);
    }
}

TEST_CASE("long double and MPFR sweeps agree")
{
    SeriesConfig hi;
    hi.c_max = 300;
    hi.precision = PrecisionContext(30);
    SeriesValue a = L_deriv(1, 49, fast_config(300));
    SeriesValue b = L_deriv(1, 49, hi);
    CHECK(std::fabs(a.value.to_double() - b.value.to_double()) < 1e-14);
    SeriesValue c = L_value(1, -47, fast_config(300));
    SeriesValue d = L_value(1, -47, hi);
    CHECK(std::fabs(c.value.to_double() - d.value.to_double()) < 1e-14);
}

TEST_CASE("h_1 transforms as a weight 5/2 form under z -> -1/z")
{
    MaassFormExpansion e = h_expansion(1, 24, fast_config(4096));
    for (long double theta : {1.0L, 1.2L, 1.4L}) {
        CAPTURE(static_cast<double>(theta));
        const Cx z = std::polar(1.0L, theta);
        const Cx factor = std::exp(Cx(0, -2 * kPi / 8)) * std::pow(z, 2.5L);
        const long double ours = std::abs(evaluate_h1(e, -1.0L / z, 1) - factor * evaluate_h1(e, z, 1));
        const long double flipped = std::abs(evaluate_h1(e, -1.0L / z, -1) - factor * evaluate_h1(e, z, -1));
        CHECK(ours < 1e-3L);
        CHECK(flipped > 1.0L);
    }
}
