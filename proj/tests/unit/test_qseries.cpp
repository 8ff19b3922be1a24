#include "doctest.h"

#include "maass/basis.hpp"
#include "maass/qseries.hpp"

#include <random>

using namespace maass;

namespace {

// Partition counts by the coin-change recurrence over part sizes.
std::vector<mpz_class> partitions_by_parts(int n)
{
    std::vector<mpz_class> p(n + 1);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int k = part; k <= n; ++k)
            p[k] += p[k - part];
    return p;
}

IntegerQSeries eisenstein_e6(int64_t order)
{
    std::vector<mpz_class> c(order);
    c[0] = 1;
    for (int64_t d = 1; d < order; ++d) {
        mpz_class d5;
        mpz_ui_pow_ui(d5.get_mpz_t(), d, 5);
        for (int64_t n = d; n < order; n += d)
            c[n] -= 504 * d5;
    }
    return IntegerQSeries(0, order, c);
}

std::vector<mpz_class> ints(std::initializer_list<const char*> xs)
{
    std::vector<mpz_class> out;
    for (auto x : xs)
        out.emplace_back(x);
    return out;
}

void check_positive_coeffs(const FracQSeries& s, const std::vector<mpz_class>& expect)
{
    int64_t n = s.residue();
    for (const auto& e : expect) {
        CAPTURE(n);
        CHECK(s.coeff(n) == e);
        n += 24;
    }
}

} // namespace

TEST_CASE("eta inverse carries the partition numbers")
{
    const auto oracle = partitions_by_parts(100);
    FracQSeries e8 = eta_inverse(8);
    const long first[] = {1, 1, 2, 3, 5, 7, 11, 15};
    for (int i = 0; i < 8; ++i)
        CHECK(e8.coeff(-1 + 24 * i) == first[i]);
    CHECK(e8.order() == 24 * 8);

    FracQSeries e0 = eta_inverse(0);
    CHECK(e0.coeff(-1) == 1);
    CHECK_THROWS_AS(e0.coeff(23), std::out_of_range);

    FracQSeries e100 = eta_inverse(100);
    CHECK(e100.coeff(24 * 100 - 1) == oracle[100]);
    CHECK(partition_numbers(100) == oracle);
    CHECK_THROWS_AS(eta_inverse(-1), std::invalid_argument);
}

TEST_CASE("eta times its inverse is 1")
{
    for (int64_t n : {0, 1, 5, 40}) {
        FracQSeries one = multiply(eta(n + 1), eta_inverse(n));
        CHECK(one.residue() == 0);
        CHECK(one.order() >= 24 * n);
        CHECK(one.coeff(0) == 1);
        for (int64_t k = 24; k < one.order(); k += 24)
            CHECK(one.coeff(k) == 0);
    }
}

TEST_CASE("j and j' expansions")
{
    IntegerQSeries j = j_invariant(30);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.coeff(3) == 864299970);
    CHECK(j.coeff(4) == mpz_class("20245856256"));
    CHECK_THROWS_AS(j.coeff(30), std::out_of_range);

    // E4^3 = j Delta and E6^2 = (j - 1728) Delta.
    IntegerQSeries delta = discriminant(31);
    IntegerQSeries e4 = eisenstein_e4(30);
    CHECK((j * delta) == (e4 * e4 * e4));
    IntegerQSeries e6 = eisenstein_e6(30);
    CHECK((j.plus_constant(-1728) * delta) == (e6 * e6));
    CHECK(delta.coeff(1) == 1);
    CHECK(delta.coeff(2) == -24);
    CHECK(delta.coeff(3) == 252);

    IntegerQSeries jp = j_prime(10);
    CHECK(jp.coeff(-1) == 1);
    CHECK(jp.coeff(0) == 0);
    CHECK(jp.coeff(1) == -196884);
    CHECK(jp.coeff(2) == -2 * 21493760);

    FracQSeries h = multiply(eta(10), FracQSeries::from_integer(j_prime(12)));
    CHECK(h.coeff(-23) == 1);
    CHECK(h.coeff(1) == -1);
    CHECK(h.coeff(25) == -196885);
}

TEST_CASE("multiply matches a schoolbook oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> val(-1000000, 1000000);
    for (int trial = 0; trial < 10; ++trial) {
        const int64_t la = -1 - 24 * (trial % 3), lb = 24 * (trial % 2) - 23;
        const int na = 8 + trial, nb = 5 + 2 * trial;
        std::vector<mpq_class> a(na), b(nb);
        for (auto& x : a)
            x = val(rng);
        for (auto& x : b)
            x = val(rng);
        FracQSeries fa(la, la + 24 * na, a), fb(lb, lb + 24 * nb, b);
        FracQSeries prod = multiply(fa, fb);
        CHECK(prod.order() == std::min(fa.order() + lb, fb.order() + la));
        CHECK(prod.residue() == ((la + lb) % 24 + 24) % 24);
        for (int64_t n = la + lb; n < prod.order(); n += 24) {
            mpq_class expect = 0;
            for (int i = 0; i < na; ++i)
                for (int k = 0; k < nb; ++k)
                    if (la + lb + 24 * (i + k) == n)
                        expect += a[i] * b[k];
            REQUIRE(prod.coeff(n) == expect);
        }
    }
    // The second factor is only known at its leading term: nothing of the product is valid.
    CHECK_THROWS_AS(multiply(FracQSeries(0, 1, {1}), FracQSeries(0, 1, {1}).truncated(0)), std::domain_error);
}

TEST_CASE("series sums respect residue and order")
{
    FracQSeries a(-1, 48, {1, 2});
    FracQSeries b(23, 100, {5, 6, 7, 8, 9});
    FracQSeries s = a + b;
    CHECK(s.order() == 48);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(23) == 7);
    CHECK_THROWS_AS(a + FracQSeries(1, 48, {1}), std::invalid_argument);
    CHECK_THROWS_AS(a.truncated(49), std::invalid_argument);
}

TEST_CASE("basis g reproduces the published expansions")
{
    FracQSeries g25 = basis_g(25, 3);
    CHECK(g25.coeff(-25) == 1);
    CHECK(g25.coeff(-1) == 0);
    check_positive_coeffs(g25, ints({"196885", "21690645", "886187500"}));

    FracQSeries g49 = basis_g(49, 3);
    check_positive_coeffs(g49, ints({"42790636", "40513206272", "8543738297129"}));

    CHECK(basis_g(1, 30) == eta_inverse(30));
    CHECK_THROWS_AS(basis_g(13, 3), std::invalid_argument);
    CHECK_THROWS_AS(basis_g(-23, 3), std::invalid_argument);
}

TEST_CASE("basis h for m < 0 reproduces the published expansions")
{
    FracQSeries h23 = basis_h_neg(-23, 4);
    CHECK(h23.coeff(-23) == 1);
    check_positive_coeffs(h23, ints({"-1", "-196885", "-42790636", "-2549715506"}));

    check_positive_coeffs(basis_h_neg(-47, 3), ints({"-2", "-21690645", "-40513206272"}));
    check_positive_coeffs(basis_h_neg(-71, 3), ints({"-3", "-886187500", "-8543738297129"}));
    CHECK_THROWS_AS(basis_h_neg(1, 3), std::invalid_argument);
}

TEST_CASE("elimination recovers the monic polynomials in j")
{
    BasisFamily g(BasisKind::g, 3, 4);
    CHECK(g.member(25).polynomial == std::vector<mpq_class>{-745, 1});
    CHECK(g.member(49).polynomial == std::vector<mpq_class>{160511, -1489, 1});

    BasisFamily h(BasisKind::h, 3, 4);
    CHECK(h.member(-47).polynomial == std::vector<mpq_class>{-743, 1});
    CHECK(h.member(-71).polynomial == std::vector<mpq_class>{355910, -1487, 1});
    CHECK_THROWS_AS(h.member(-95), std::out_of_range);

    // Recompute g_49 directly from its polynomial.
    FracQSeries jf = FracQSeries::from_integer(j_invariant(12));
    FracQSeries pj = jf * jf + jf * mpq_class(-1489) + FracQSeries(0, jf.order(), {160511});
    FracQSeries direct = eta_inverse(12) * pj;
    for (int64_t n = -49; n < 24 * 4; n += 24)
        CHECK(direct.coeff(n) == g.member(49).series.coeff(n));
}

TEST_CASE("basis construction is stable in N and integral")
{
    BasisFamily small(BasisKind::g, 4, 5);
    BasisFamily large(BasisKind::g, 4, 12);
    BasisFamily hs(BasisKind::h, 4, 5);
    BasisFamily hl(BasisKind::h, 4, 12);
    for (int k = 0; k < 4; ++k) {
        CHECK(small.members()[k].series.agrees_with(large.members()[k].series));
        CHECK(hs.members()[k].series.agrees_with(hl.members()[k].series));
        CHECK(large.members()[k].series.is_integral());
        CHECK(hl.members()[k].series.is_integral());
    }
}

TEST_CASE("grid duality on the exact bases")
{
    const int levels = 5;
    BasisFamily g(BasisKind::g, levels, levels + 1);
    BasisFamily h(BasisKind::h, levels, levels + 1);
    for (const auto& gk : g.members()) {
        for (const auto& hj : h.members()) {
            const int64_t k = gk.m, jj = -hj.m;
            CAPTURE(k);
            CAPTURE(jj);
            CHECK(hj.series.coeff(k) == -gk.series.coeff(jj));
        }
    }
}

TEST_CASE("series JSON round-trips")
{
    FracQSeries g25 = basis_g(25, 6);
    const std::string text = g25.to_json();
    CHECK(text.find("\"196885\"") != std::string::npos);
    FracQSeries back = FracQSeries::from_json(text);
    CHECK(back == g25);
    CHECK(back.to_json() == text);

    FracQSeries frac(1, 49, {mpq_class(1, 3), mpq_class(-5, 7)});
    CHECK(FracQSeries::from_json(frac.to_json()).to_json() == frac.to_json());
    CHECK_THROWS(FracQSeries::from_json(R"({"residue": 1, "order": 30, "terms": [{"n": 2, "c": "1"}]})"));
}
