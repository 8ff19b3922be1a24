#include "maass/qseries.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace maass {

namespace {

int64_t floor_mod24(int64_t n)
{
    int64_t r = n % 24;
    return r < 0 ? r + 24 : r;
}

} // namespace

// ---------------------------------------------------------------------------
// IntegerQSeries

IntegerQSeries::IntegerQSeries(int64_t min_exponent, int64_t order, std::vector<mpz_class> coeffs)
    : min_(min_exponent), order_(order), c_(std::move(coeffs))
{
    if (order_ < min_)
        throw std::invalid_argument("IntegerQSeries: order below support");
    c_.resize(static_cast<size_t>(order_ - min_));
}

mpz_class IntegerQSeries::coeff(int64_t e) const
{
    if (e >= order_)
        throw std::out_of_range("IntegerQSeries: exponent " + std::to_string(e) + " past order");
    if (e < min_)
        return 0;
    return c_[static_cast<size_t>(e - min_)];
}

IntegerQSeries IntegerQSeries::truncated(int64_t order) const
{
    if (order > order_)
        throw std::invalid_argument("IntegerQSeries: cannot extend past the valid order");
    std::vector<mpz_class> c(c_.begin(), c_.begin() + std::max<int64_t>(0, order - min_));
    return IntegerQSeries(min_, std::max(order, min_), std::move(c));
}

IntegerQSeries IntegerQSeries::theta_negated() const
{
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        c[i] = -(min_ + static_cast<int64_t>(i)) * c_[i];
    return IntegerQSeries(min_, order_, std::move(c));
}

IntegerQSeries IntegerQSeries::plus_constant(const mpz_class& k) const
{
    if (0 >= order_)
        throw std::out_of_range("IntegerQSeries: constant term past order");
    IntegerQSeries r = *this;
    if (min_ > 0) {
        std::vector<mpz_class> c(static_cast<size_t>(order_));
        std::copy(c_.begin(), c_.end(), c.begin() + min_);
        r = IntegerQSeries(0, order_, std::move(c));
    }
    r.c_[static_cast<size_t>(-r.min_)] += k;
    return r;
}

IntegerQSeries IntegerQSeries::inverse() const
{
    if (c_.empty() || (c_[0] != 1 && c_[0] != -1))
        throw std::domain_error("IntegerQSeries: inverse needs a unit leading coefficient");
    const size_t len = c_.size();
    std::vector<mpz_class> r(len);
    const mpz_class& u = c_[0];
    r[0] = u;
    for (size_t i = 1; i < len; ++i) {
        mpz_class acc = 0;
        for (size_t k = 1; k <= i; ++k)
            acc += c_[k] * r[i - k];
        r[i] = -acc * u;
    }
    // 1/(q^a f) = q^{-a} / f, valid for len terms.
    return IntegerQSeries(-min_, -min_ + static_cast<int64_t>(len), std::move(r));
}

IntegerQSeries operator*(const IntegerQSeries& a, const IntegerQSeries& b)
{
    const int64_t lead = a.min_ + b.min_;
    const int64_t order = std::min(a.order_ + b.min_, b.order_ + a.min_);
    if (order <= lead)
        throw std::domain_error("IntegerQSeries: product has no valid coefficients");
    const size_t len = static_cast<size_t>(order - lead);
    std::vector<mpz_class> c(len);
    for (size_t i = 0; i < a.c_.size() && i < len; ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t k = 0; k < b.c_.size() && i + k < len; ++k)
            c[i + k] += a.c_[i] * b.c_[k];
    }
    return IntegerQSeries(lead, order, std::move(c));
}

// ---------------------------------------------------------------------------
// FracQSeries

FracQSeries::FracQSeries(int64_t lead, int64_t order, std::vector<mpq_class> coeffs)
    : lead_(lead), order_(order), c_(std::move(coeffs))
{
    if (order_ < lead_)
        order_ = lead_;
    c_.resize(static_cast<size_t>((order_ - lead_ + 23) / 24));
}

FracQSeries FracQSeries::from_integer(const IntegerQSeries& s)
{
    std::vector<mpq_class> c(s.coeffs().begin(), s.coeffs().end());
    return FracQSeries(24 * s.min_exponent(), 24 * (s.order() - 1) + 1, std::move(c));
}

FracQSeries FracQSeries::zero(int residue, int64_t order)
{
    int64_t lead = order - 1 - floor_mod24(order - 1 - residue);
    return FracQSeries(lead, order, {});
}

int FracQSeries::residue() const { return static_cast<int>(floor_mod24(lead_)); }

mpq_class FracQSeries::coeff(int64_t n) const
{
    if (n >= order_)
        throw std::out_of_range("FracQSeries: numerator " + std::to_string(n) + " past order " +
                                std::to_string(order_));
    if (n < lead_ || floor_mod24(n - lead_) != 0)
        return 0;
    return c_[static_cast<size_t>((n - lead_) / 24)];
}

int64_t FracQSeries::valuation() const
{
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            return lead_ + 24 * static_cast<int64_t>(i);
    return order_;
}

bool FracQSeries::is_integral() const
{
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

FracQSeries FracQSeries::truncated(int64_t order) const
{
    if (order > order_)
        throw std::invalid_argument("FracQSeries: cannot extend past the valid order");
    FracQSeries r = *this;
    r.order_ = std::max(order, lead_);
    r.c_.resize(static_cast<size_t>((r.order_ - lead_ + 23) / 24));
    return r;
}

void FracQSeries::align_to(int64_t lead, int64_t order)
{
    // Extend the support down to `lead` (zeros) and cut the order to `order`.
    if (lead < lead_) {
        std::vector<mpq_class> c(static_cast<size_t>((lead_ - lead) / 24));
        c.insert(c.end(), c_.begin(), c_.end());
        c_ = std::move(c);
        lead_ = lead;
    }
    order_ = std::max(std::min(order_, order), lead_);
    c_.resize(static_cast<size_t>((order_ - lead_ + 23) / 24));
}

FracQSeries& FracQSeries::operator+=(const FracQSeries& o)
{
    if (residue() != o.residue())
        throw std::invalid_argument("FracQSeries: residue mismatch in sum");
    align_to(std::min(lead_, o.lead_), std::min(order_, o.order_));
    for (size_t i = 0; i < o.c_.size(); ++i) {
        int64_t n = o.lead_ + 24 * static_cast<int64_t>(i);
        if (n >= order_)
            break;
        c_[static_cast<size_t>((n - lead_) / 24)] += o.c_[i];
    }
    return *this;
}

FracQSeries& FracQSeries::operator-=(const FracQSeries& o)
{
    FracQSeries neg = o;
    neg *= mpq_class(-1);
    return *this += neg;
}

FracQSeries& FracQSeries::operator*=(const mpq_class& k)
{
    for (auto& x : c_)
        x *= k;
    return *this;
}

FracQSeries multiply(const FracQSeries& a, const FracQSeries& b)
{
    const int64_t lead = a.lead_ + b.lead_;
    const int64_t order = std::min(a.order_ + b.lead_, b.order_ + a.lead_);
    if (order <= lead)
        throw std::domain_error("FracQSeries: product has no valid coefficients");
    FracQSeries r(lead, order, {});
    const size_t len = r.c_.size();
    for (size_t i = 0; i < a.c_.size() && i < len; ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t k = 0; k < b.c_.size() && i + k < len; ++k)
            r.c_[i + k] += a.c_[i] * b.c_[k];
    }
    return r;
}

bool FracQSeries::agrees_with(const FracQSeries& o) const
{
    if (residue() != o.residue())
        return false;
    const int64_t top = std::min(order_, o.order_);
    for (int64_t n = std::min(lead_, o.lead_); n < top; n += 24)
        if (coeff(n) != o.coeff(n))
            return false;
    return true;
}

bool operator==(const FracQSeries& a, const FracQSeries& b)
{
    return a.order_ == b.order_ && a.agrees_with(b);
}

std::string FracQSeries::to_json() const
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        terms.push_back({{"n", lead_ + 24 * static_cast<int64_t>(i)}, {"c", c_[i].get_str()}});
    }
    nlohmann::ordered_json j;
    j["residue"] = residue();
    j["order"] = order_;
    j["terms"] = std::move(terms);
    return j.dump();
}

FracQSeries FracQSeries::from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    const int residue = j.at("residue").get<int>();
    const int64_t order = j.at("order").get<int64_t>();
    FracQSeries r = zero(residue, order);
    for (const auto& t : j.at("terms")) {
        const int64_t n = t.at("n").get<int64_t>();
        if (floor_mod24(n - residue) != 0 || n >= order)
            throw std::invalid_argument("FracQSeries JSON: term outside residue class or order");
        mpq_class c(t.at("c").get<std::string>());
        c.canonicalize();
        r.align_to(std::min(r.lead_, n), order);
        r.c_[static_cast<size_t>((n - r.lead_) / 24)] = c;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Named series

std::vector<mpz_class> partition_numbers(int64_t n)
{
    std::vector<mpz_class> p(static_cast<size_t>(std::max<int64_t>(n, 0) + 1));
    p[0] = 1;
    for (int64_t k = 1; k <= n; ++k) {
        mpz_class acc = 0;
        for (int64_t i = 1;; ++i) {
            const int64_t g1 = i * (3 * i - 1) / 2;
            if (g1 > k)
                break;
            const bool plus = (i % 2) == 1;
            const mpz_class& a = p[static_cast<size_t>(k - g1)];
            plus ? acc += a : acc -= a;
            const int64_t g2 = i * (3 * i + 1) / 2;
            if (g2 <= k) {
                const mpz_class& b = p[static_cast<size_t>(k - g2)];
                plus ? acc += b : acc -= b;
            }
        }
        p[static_cast<size_t>(k)] = acc;
    }
    return p;
}

namespace {

// prod_{n>=1} (1 - q^n) for exponents < order.
IntegerQSeries euler_product(int64_t order)
{
    std::vector<mpz_class> c(static_cast<size_t>(order));
    for (int64_t k = 0;; ++k) {
        const int sign = (k % 2 == 0) ? 1 : -1;
        const int64_t g1 = k * (3 * k - 1) / 2;
        const int64_t g2 = k * (3 * k + 1) / 2;
        if (g1 >= order && g2 >= order)
            break;
        if (g1 < order)
            c[static_cast<size_t>(g1)] += sign;
        if (k > 0 && g2 < order)
            c[static_cast<size_t>(g2)] += sign;
    }
    return IntegerQSeries(0, order, std::move(c));
}

} // namespace

FracQSeries eta(int64_t n_terms)
{
    const IntegerQSeries e = euler_product(n_terms + 1);
    std::vector<mpq_class> c(e.coeffs().begin(), e.coeffs().end());
    return FracQSeries(1, 24 * n_terms + 2, std::move(c));
}

FracQSeries eta_inverse(int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("eta_inverse: N must be non-negative");
    const auto p = partition_numbers(n);
    std::vector<mpq_class> c(p.begin(), p.end());
    return FracQSeries(-1, 24 * n, std::move(c));
}

IntegerQSeries eisenstein_e4(int64_t order)
{
    std::vector<mpz_class> c(static_cast<size_t>(std::max<int64_t>(order, 0)));
    if (order > 0)
        c[0] = 1;
    for (int64_t d = 1; d < order; ++d) {
        const mpz_class d3 = mpz_class(d) * d * d * 240;
        for (int64_t n = d; n < order; n += d)
            c[static_cast<size_t>(n)] += d3;
    }
    return IntegerQSeries(0, std::max<int64_t>(order, 0), std::move(c));
}

IntegerQSeries discriminant(int64_t order)
{
    // q * P^24 with P the Euler product, by repeated squaring.
    const int64_t len = std::max<int64_t>(order - 1, 1);
    IntegerQSeries p = euler_product(len);
    IntegerQSeries p2 = p * p;
    IntegerQSeries p4 = p2 * p2;
    IntegerQSeries p8 = p4 * p4;
    IntegerQSeries p16 = p8 * p8;
    IntegerQSeries p24 = p16 * p8;
    return IntegerQSeries(1, len + 1, p24.coeffs());
}

IntegerQSeries j_invariant(int64_t order)
{
    // E4^3 / Delta: Delta has leading exponent 1, so E4 is needed through order + 1.
    const int64_t len = std::max<int64_t>(order + 1, 1);
    IntegerQSeries e4 = eisenstein_e4(len);
    IntegerQSeries e4_cubed = e4 * e4 * e4;
    IntegerQSeries inv = discriminant(len + 1).inverse();
    return (e4_cubed * inv).truncated(order);
}

IntegerQSeries j_prime(int64_t order) { return j_invariant(order).theta_negated(); }

} // namespace maass
