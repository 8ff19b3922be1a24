#include "maass/poincare.hpp"

#include "maass/qseries.hpp"
#include "maass/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace maass {

void SeriesConfig::validate() const
{
    if (c_max < 1)
        throw std::invalid_argument("c_max must be at least 1");
    if (!(tol > 0))
        throw std::invalid_argument("tolerance must be positive");
}

void require_index(int64_t m)
{
    if (((m - 1) % 24) != 0)
        throw std::invalid_argument("index " + std::to_string(m) + " is not 1 mod 24");
}

bool MaassFormExpansion::converged() const
{
    auto ok = [](const Coefficient& c) { return c.converged(); };
    return std::all_of(holo.begin(), holo.end(), ok) && std::all_of(nonholo.begin(), nonholo.end(), ok);
}

namespace {

template <class R>
R zero_like(const R& like)
{
    return make_like(0.0L, like);
}

// Neumaier's compensated sum.
template <class R>
struct CompensatedSum {
    R sum, comp;
    explicit CompensatedSum(const R& like) : sum(zero_like(like)), comp(zero_like(like)) {}
    void add(const R& v)
    {
        using std::abs;
        R t = sum + v;
        if (abs(sum) >= abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    R total() const { return sum + comp; }
};

template <class R>
R kernel_at(SeriesKernel kernel, const R& x)
{
    switch (kernel) {
    case SeriesKernel::bessel_j:
        return special::bessel_j_3_2(x);
    case SeriesKernel::bessel_i:
        return special::bessel_i_3_2(x);
    case SeriesKernel::order_derivative:
        return 2 * special::dj_dorder_3_2(x);
    }
    throw std::logic_error("unknown kernel");
}

// Solves the small dense system a x = b in place (partial pivoting).
template <size_t N>
std::array<long double, N> solve(std::array<std::array<long double, N>, N> a, std::array<long double, N> b)
{
    for (size_t col = 0; col < N; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < N; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col]))
                piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < N; ++r) {
            const long double f = a[r][col] / a[col][col];
            for (size_t k = col; k < N; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::array<long double, N> x{};
    for (size_t i = N; i-- > 0;) {
        long double s = b[i];
        for (size_t k = i + 1; k < N; ++k)
            s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

// Least-squares limit of the partial sums over c in [C/4, C].
template <size_t N>
long double extrapolate(const std::vector<long double>& partial, int64_t c_max)
{
    const int64_t lo = std::max<int64_t>(1, c_max / 4);
    if (c_max - lo < 8)
        return partial[c_max];
    std::array<std::array<long double, N>, N> ata{};
    std::array<long double, N> atb{};
    // Centre the data so the constant column stays well conditioned.
    const long double ref = partial[c_max];
    for (int64_t c = lo; c <= c_max; ++c) {
        const long double inv = static_cast<long double>(c_max) / static_cast<long double>(c);
        std::array<long double, N> row{};
        row[0] = 1;
        if constexpr (N > 1)
            row[1] = inv;
        if constexpr (N > 2)
            row[2] = inv * std::log(static_cast<long double>(c));
        for (size_t i = 0; i < N; ++i) {
            for (size_t k = 0; k < N; ++k)
                ata[i][k] += row[i] * row[k];
            atb[i] += row[i] * (partial[c] - ref);
        }
    }
    return solve<N>(ata, atb)[0] + ref;
}

bool is_square(int64_t x)
{
    if (x < 0)
        return false;
    int64_t r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(x))));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r * r == x;
}

// The exceptional eigenvalue 3/16 (the form eta(24z) y^{1/4}) gives partial sums
// S(c) = S + A/c + ... when both indices are squares; otherwise the tail decays
// faster and a fitted 1/c term would only model noise.
bool has_exceptional_tail(const SeriesRequest& r)
{
    return is_square(24 * r.m_prime + 1) && is_square(24 * r.n_prime + 1);
}

SeriesValue diagnose(const std::vector<long double>& partial, int64_t c_max, const Real& value,
                     long double scale, SeriesKernel kernel, bool exceptional, double tol)
{
    SeriesValue out;
    out.value = value;
    out.c_max = c_max;
    const long double s = std::fabs(scale);
    auto sum_range = [&](int64_t lo, int64_t hi) { // c in (lo, hi]
        return static_cast<double>((partial[hi] - partial[lo]) * s);
    };

    double tail = std::fabs(sum_range(c_max / 2, c_max));
    const int64_t block = std::max<int64_t>(1, c_max / 100);
    for (int b = 0; b < 10; ++b) {
        const int64_t hi = c_max - b * block;
        const int64_t lo = std::max<int64_t>(0, hi - block);
        if (hi <= 0)
            break;
        tail = std::max(tail, 10 * std::fabs(sum_range(lo, hi)));
    }
    out.tail_estimate = tail;

    for (int64_t lo = 1; lo <= c_max; lo *= 10)
        out.decade_contributions.push_back(
            static_cast<double>((partial[std::min(lo * 10 - 1, c_max)] - partial[lo - 1]) * scale));

    if (c_max >= 1000) {
        const double w1 = std::fabs(sum_range(c_max / 1000, c_max / 100));
        const double w2 = std::fabs(sum_range(c_max / 100, c_max / 10));
        const double w3 = std::fabs(sum_range(c_max / 10, c_max));
        out.monotone_decay = w1 > w2 && w2 > w3;
    }
    out.converged = out.tail_estimate < tol && out.monotone_decay;

    if (!exceptional) {
        out.extrapolated = value;
        return out;
    }
    const long double ex = kernel == SeriesKernel::order_derivative ? extrapolate<3>(partial, c_max)
                                                                    : extrapolate<2>(partial, c_max);
    out.extrapolated = Real(ex * scale, value.prec());
    return out;
}

template <class R>
std::vector<SeriesValue> run_series(const std::vector<SeriesRequest>& reqs, const SeriesConfig& cfg, const R& like)
{
    const int64_t C = cfg.c_max;
    const mpfr_prec_t bits = cfg.precision.bits();
    const Real pi = Real::pi(bits + 16);

    std::vector<R> numer;           // pi sqrt(radicand) / 6
    std::vector<CompensatedSum<R>> sums;
    std::vector<std::vector<long double>> partial(reqs.size(), std::vector<long double>(C + 1, 0.0L));
    for (const auto& r : reqs) {
        if (r.radicand <= 0)
            throw std::invalid_argument("series argument radicand must be positive");
        Real a = pi * sqrt(Real(r.radicand, bits + 16)) / 6;
        if constexpr (std::is_same_v<R, long double>)
            numer.push_back(a.to_long_double());
        else
            numer.push_back(a.with_prec(like.prec()));
        sums.emplace_back(like);
    }

    std::vector<HalfResidue> half;
    for (int64_t c = 1; c <= C; ++c) {
        half_residue_system(c, half);
        const PhaseTable<R> table(c, like);
        const R cr = int_like(c, like);
        for (size_t i = 0; i < reqs.size(); ++i) {
            const R k = kloosterman_from_half<R>(half, c, reqs[i].m_prime, reqs[i].n_prime, table);
            const R w = kernel_at(reqs[i].kernel, numer[i] / cr) / cr;
            sums[i].add(k * w);
            partial[i][c] = to_ld(sums[i].total());
        }
    }

    std::vector<SeriesValue> out;
    for (size_t i = 0; i < reqs.size(); ++i) {
        Real value(bits);
        if constexpr (std::is_same_v<R, long double>)
            value = Real(sums[i].total(), bits);
        else
            value = sums[i].total().with_prec(bits);
        long double scale = 1;
        if (reqs[i].prefactor) {
            value *= *reqs[i].prefactor;
            scale = reqs[i].prefactor->to_long_double();
        }
        out.push_back(diagnose(partial[i], C, value, scale, reqs[i].kernel, has_exceptional_tail(reqs[i]), cfg.tol));
    }
    return out;
}

} // namespace

std::vector<SeriesValue> sum_kloosterman_series(const std::vector<SeriesRequest>& requests, const SeriesConfig& cfg)
{
    cfg.validate();
    if (cfg.precision.fits_long_double())
        return run_series<long double>(requests, cfg, 0.0L);
    return run_series<Real>(requests, cfg, Real(cfg.precision.bits()));
}

SeriesRequest L_request(int64_t m, int64_t n, bool derivative)
{
    require_index(m);
    require_index(n);
    if (derivative && (m <= 0 || n <= 0))
        throw std::invalid_argument("the order-derivative series needs m, n > 0");
    const SeriesKernel k = derivative ? SeriesKernel::order_derivative
                                      : (m > 0) == (n > 0) ? SeriesKernel::bessel_j : SeriesKernel::bessel_i;
    return {(m - 1) / 24, (n - 1) / 24, k, std::abs(m * n), std::nullopt};
}

std::vector<SeriesValue> L_values(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg)
{
    std::vector<SeriesRequest> reqs;
    for (const auto& p : pairs)
        reqs.push_back(L_request(p.m, p.n, false));
    return sum_kloosterman_series(reqs, cfg);
}

std::vector<SeriesValue> L_derivs(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg)
{
    std::vector<SeriesRequest> reqs;
    for (const auto& p : pairs)
        reqs.push_back(L_request(p.m, p.n, true));
    return sum_kloosterman_series(reqs, cfg);
}

SeriesValue L_value(int64_t m, int64_t n, const SeriesConfig& cfg) { return L_values({{m, n}}, cfg).front(); }

SeriesValue L_deriv(int64_t m, int64_t n, const SeriesConfig& cfg) { return L_derivs({{m, n}}, cfg).front(); }

namespace {

// |n/m|^{3/4} at the given precision.
Real ratio_34(int64_t n, int64_t m, mpfr_prec_t bits)
{
    Real r = Real(std::abs(n), bits) / Real(std::abs(m), bits);
    return sqrt(r) * sqrt(sqrt(r));
}

Coefficient scaled(int64_t n, const Real& factor, SeriesValue s)
{
    Coefficient c{n, Real(factor.prec()), Real(0L, factor.prec()), std::nullopt};
    c.re = factor * s.value;
    s.value = c.re;
    s.extrapolated = factor * s.extrapolated;
    s.tail_estimate *= std::fabs(factor.to_double());
    for (auto& x : s.decade_contributions)
        x *= factor.to_double();
    c.series = std::move(s);
    return c;
}

} // namespace

std::vector<Coefficient> p_plus_batch(const std::vector<IndexPair>& pairs, const SeriesConfig& cfg)
{
    const mpfr_prec_t bits = cfg.precision.bits();
    for (const auto& p : pairs)
        if (p.m <= 0 || p.n <= 0)
            throw std::invalid_argument("p_plus needs m, n > 0");
    // Each coefficient's tail must meet tol after the scaling, so run the sums with
    // a tolerance divided by the largest factor.
    const Real c0 = -8 * sqrt(Real::pi(bits)) / 3;
    std::vector<Real> factors;
    double worst = 1;
    for (const auto& p : pairs) {
        factors.push_back(c0 * ratio_34(p.n, p.m, bits));
        worst = std::max(worst, std::fabs(factors.back().to_double()));
    }
    SeriesConfig inner = cfg;
    inner.tol = cfg.tol / worst;
    auto values = L_derivs(pairs, inner);
    std::vector<Coefficient> out;
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto s = values[i];
        Coefficient c = scaled(pairs[i].n, factors[i], std::move(s));
        c.series->converged = c.series->tail_estimate < cfg.tol && c.series->monotone_decay;
        if (pairs[i].m == pairs[i].n)
            c.im = -4 * sqrt(Real::pi(bits)) / 3;
        out.push_back(std::move(c));
    }
    return out;
}

Coefficient p_plus(int64_t m, int64_t n, const SeriesConfig& cfg) { return p_plus_batch({{m, n}}, cfg).front(); }

namespace {

// -2 pi |n/m|^{3/4} L_{m,n}(5/4) for each n, one shared sweep.
std::vector<Coefficient> bessel_coefficients(int64_t m, const std::vector<int64_t>& ns, const SeriesConfig& cfg)
{
    const mpfr_prec_t bits = cfg.precision.bits();
    std::vector<Real> factors;
    std::vector<IndexPair> pairs;
    double worst = 1;
    for (int64_t n : ns) {
        pairs.push_back({m, n});
        factors.push_back(-2 * Real::pi(bits) * ratio_34(n, m, bits));
        worst = std::max(worst, std::fabs(factors.back().to_double()));
    }
    SeriesConfig inner = cfg;
    inner.tol = cfg.tol / worst;
    auto values = L_values(pairs, inner);
    std::vector<Coefficient> out;
    for (size_t i = 0; i < ns.size(); ++i) {
        Coefficient c = scaled(ns[i], factors[i], std::move(values[i]));
        c.series->converged = c.series->tail_estimate < cfg.tol && c.series->monotone_decay;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

std::vector<Coefficient> p_minus_batch(int64_t m, const std::vector<int64_t>& ns, const SeriesConfig& cfg)
{
    if (m <= 0)
        throw std::invalid_argument("p_minus needs m > 0");
    std::vector<int64_t> neg;
    for (int64_t n : ns) {
        if (n <= 0)
            throw std::invalid_argument("p_minus needs n > 0");
        neg.push_back(-n);
    }
    auto out = bessel_coefficients(m, neg, cfg);
    for (size_t i = 0; i < ns.size(); ++i)
        out[i].n = ns[i];
    return out;
}

MaassFormExpansion h_expansion(int64_t m, int64_t n_terms, const SeriesConfig& cfg)
{
    require_index(m);
    if (n_terms < 1)
        throw std::invalid_argument("h_expansion needs at least one coefficient");
    const mpfr_prec_t bits = cfg.precision.bits();
    MaassFormExpansion e{m, {}, {}};
    std::vector<int64_t> pos;
    for (int64_t k = 0; k < n_terms; ++k)
        pos.push_back(1 + 24 * k);

    if (m < 0) {
        e.holo.push_back({m, Real(1L, bits), Real(0L, bits), std::nullopt});
        for (auto& c : bessel_coefficients(m, pos, cfg))
            e.holo.push_back(std::move(c));
        return e;
    }

    std::vector<IndexPair> pairs;
    for (int64_t n : pos)
        pairs.push_back({m, n});
    for (auto& c : p_plus_batch(pairs, cfg))
        e.holo.push_back(std::move(c));

    e.nonholo.push_back({-m, Real(0L, bits), Real(1L, bits), std::nullopt});
    std::vector<int64_t> ns;
    for (int64_t k = 0; k < n_terms; ++k)
        ns.push_back(23 + 24 * k);
    for (auto& c : p_minus_batch(m, ns, cfg))
        e.nonholo.push_back(std::move(c));
    return e;
}

Coefficient h_coefficient(int64_t m, int64_t n, const SeriesConfig& cfg)
{
    require_index(m);
    require_index(n);
    if (m > 0 && n > 0)
        return p_plus(m, n, cfg);
    if (m > 0)
        return p_minus_batch(m, {-n}, cfg).front();
    if (n > 0)
        return bessel_coefficients(m, {n}, cfg).front();
    throw std::invalid_argument("h_m with m < 0 has no coefficient at n < 0 besides q^{m/24}");
}

double lehmer_tail_bound(int64_t n, int64_t terms)
{
    if (n < 2 || terms < 1)
        throw std::invalid_argument("Lehmer's bound needs n >= 2 and N >= 1");
    const double pi = 3.14159265358979323846;
    const double nn = static_cast<double>(n), big_n = static_cast<double>(terms);
    return 44 * pi * pi / (225 * std::sqrt(3.0)) / std::sqrt(big_n) +
           pi * std::sqrt(2.0) / 75 * std::sqrt(big_n / (nn - 1)) * std::sinh(pi / big_n * std::sqrt(2 * nn / 3));
}

RademacherResult rademacher_p(int64_t n, const SeriesConfig& cfg)
{
    if (n < 1)
        throw std::invalid_argument("rademacher_p needs n >= 1");
    cfg.validate();
    const mpfr_prec_t bits = cfg.precision.bits();

    // Term c of Rademacher's series is (1/(pi sqrt 2)) K(0,-n;c) sqrt(c) d/dn[sinh(a sqrt(u))/sqrt(u)]
    // with a = (pi/c) sqrt(2/3), u = n - 1/24. Writing x = a sqrt(u), the derivative is
    // (x cosh x - sinh x) / (2 u^{3/2}) = sqrt(pi/2) x^{3/2} I_{3/2}(x) / (2 u^{3/2}), so the
    // series is a constant times sum K/c I_{3/2}(pi sqrt(24n - 1) / 6c), with
    // constant (pi sqrt(2/3))^{3/2} u^{-3/4} / (4 sqrt(pi)).
    const Real pi = Real::pi(bits + 16);
    const Real u = Real(24 * n - 1, bits + 16) / 24;
    const Real a0 = pi * sqrt(Real(2L, bits + 16) / 3);
    const Real pref = a0 * sqrt(a0) / (sqrt(u) * sqrt(sqrt(u)) * 4 * sqrt(pi));

    int64_t terms = cfg.c_max;
    if (n >= 2) {
        terms = 1;
        while (terms < cfg.c_max && lehmer_tail_bound(n, terms) > 0.25)
            ++terms;
    }
    SeriesConfig run = cfg;
    run.c_max = terms;
    SeriesRequest req{0, -n, SeriesKernel::bessel_i, 24 * n - 1, pref.with_prec(bits)};
    SeriesValue s = sum_kloosterman_series({req}, run).front();

    RademacherResult r{n, s.value, s.value.round(), terms, 0, 0, false};
    r.tail_bound = n >= 2 ? lehmer_tail_bound(n, terms) : s.tail_estimate;
    r.margin = 0.5 - std::fabs((s.value - Real(r.rounded, bits)).to_double()) - r.tail_bound;
    r.certified = r.margin > 0;
    return r;
}

mpz_class partition_oracle(int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("partition_oracle needs n >= 0");
    return partition_numbers(n).back();
}

} // namespace maass
