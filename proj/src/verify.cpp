#include "maass/verify.hpp"

#include "maass/hecke.hpp"

#include <cmath>
#include <stdexcept>

namespace maass {

namespace {

std::string kind_name(BasisKind k) { return k == BasisKind::g ? "g" : "h"; }

Report components_json(const std::map<int64_t, mpq_class>& c)
{
    Report out = Report::object();
    for (const auto& [m, v] : c)
        out[std::to_string(m)] = v.get_str();
    return out;
}

Real relative_error(const Real& a, const Real& b)
{
    Real denom = abs(b);
    if (denom.is_zero())
        return abs(a - b);
    return abs(a - b) / denom;
}

Real three_halves(int64_t x, mpfr_prec_t bits)
{
    Real r(x, bits);
    return r * sqrt(r);
}

} // namespace

Report series_json(const SeriesValue& s, int digits)
{
    Report r;
    r["value"] = s.value.str(digits);
    r["extrapolated"] = s.extrapolated.str(digits);
    r["c_max"] = s.c_max;
    r["tail_estimate"] = s.tail_estimate;
    r["converged"] = s.converged;
    r["monotone_decay"] = s.monotone_decay;
    r["decade_contributions"] = s.decade_contributions;
    return r;
}

Report coefficient_json(const Coefficient& c, int digits)
{
    Report r;
    r["n"] = c.n;
    r["re"] = c.re.str(digits);
    r["im"] = c.im.str(digits);
    r["converged"] = c.converged();
    if (c.series)
        r["series"] = series_json(*c.series, digits);
    return r;
}

Report verify_hecke(BasisKind kind, int64_t m, int64_t ell, int64_t terms)
{
    const HeckeDecomposition d = hecke_image(kind, m, ell, terms);
    const auto expected = expected_hecke_components(kind, m, ell);
    Report r;
    r["check"] = "hecke";
    r["parameters"] = {{"kind", kind_name(kind)}, {"m", m}, {"ell", ell}, {"terms", terms}};
    r["exact"] = true;
    r["components"] = components_json(d.components);
    r["expected"] = components_json(expected);
    r["remainder_zero"] = d.exact();
    r["pass"] = d.exact() && d.components == expected;
    return r;
}

Report verify_hecke_numeric(int64_t m, int64_t n, int64_t ell, const SeriesConfig& cfg, double tol)
{
    if (ell < 5 || !is_prime(ell))
        throw std::invalid_argument("verify hecke needs a prime l >= 5");
    const int64_t l2 = ell * ell;
    const auto c = p_plus_batch({{m, l2 * n}, {l2 * m, n}}, cfg);
    const mpfr_prec_t bits = cfg.precision.bits();
    const int digits = cfg.precision.digits;
    const Real lhs = c[0].series->extrapolated;
    const Real rhs = Real(ell * l2, bits) * c[1].series->extrapolated;
    const Real rel = relative_error(lhs, rhs);
    Report r;
    r["check"] = "hecke";
    r["parameters"] = {{"m", m}, {"n", n}, {"ell", ell}, {"c_max", cfg.c_max}, {"tol", tol}};
    r["lhs"] = lhs.str(digits);
    r["rhs"] = rhs.str(digits);
    r["lhs_raw"] = c[0].re.str(digits);
    r["rhs_raw"] = (Real(ell * l2, bits) * c[1].re).str(digits);
    r["max_abs_error"] = abs(lhs - rhs).to_double();
    r["max_rel_error"] = rel.to_double();
    r["series"] = {coefficient_json(c[0], digits), coefficient_json(c[1], digits)};
    r["pass"] = rel.to_double() < tol;
    return r;
}

Report verify_duality(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("verify duality needs a grid of at least 1 x 1");
    // h_{-j} needs k up to 1 + 24 (cols - 1): cols positive terms; g_k needs j: rows terms.
    const BasisFamily h(BasisKind::h, rows, cols);
    const BasisFamily g(BasisKind::g, cols, rows);
    Report matrix = Report::array();
    Report violations = Report::array();
    for (int a = 0; a < rows; ++a) {
        const int64_t j = 23 + 24 * a;
        Report row = Report::array();
        for (int b = 0; b < cols; ++b) {
            const int64_t k = 1 + 24 * b;
            const mpq_class lhs = h.member(-j).series.coeff(k);
            const mpq_class rhs = -g.member(k).series.coeff(j);
            row.push_back(lhs == rhs);
            if (lhs != rhs)
                violations.push_back({{"j", j}, {"k", k}, {"h", lhs.get_str()}, {"minus_g", rhs.get_str()}});
        }
        matrix.push_back(std::move(row));
    }
    Report r;
    r["check"] = "duality";
    r["parameters"] = {{"rows", rows}, {"cols", cols}};
    r["exact"] = true;
    r["matrix"] = std::move(matrix);
    r["violations"] = violations;
    r["pass"] = violations.empty();
    return r;
}

Report verify_symmetry(int64_t m, int64_t n, const SeriesConfig& cfg, double tol)
{
    if (m == n)
        throw std::invalid_argument("verify symmetry needs m != n");
    const auto c = p_plus_batch({{n, m}, {m, n}}, cfg);
    const mpfr_prec_t bits = cfg.precision.bits();
    const int digits = cfg.precision.digits;
    const Real lhs = three_halves(n, bits) * c[0].series->extrapolated;
    const Real rhs = three_halves(m, bits) * c[1].series->extrapolated;
    const Real rel = relative_error(lhs, rhs);
    Report r;
    r["check"] = "symmetry";
    r["parameters"] = {{"m", m}, {"n", n}, {"c_max", cfg.c_max}, {"tol", tol}};
    r["lhs"] = lhs.str(digits);
    r["rhs"] = rhs.str(digits);
    r["max_abs_error"] = abs(lhs - rhs).to_double();
    r["max_rel_error"] = rel.to_double();
    r["series"] = {coefficient_json(c[0], digits), coefficient_json(c[1], digits)};
    r["pass"] = rel.to_double() < tol;
    return r;
}

Report verify_vanishing(int64_t m, int64_t n, const SeriesConfig& cfg, double tol)
{
    if (m <= 0 || n <= 0)
        throw std::invalid_argument("verify vanishing needs m, n > 0");
    const SeriesValue s = L_value(m, n, cfg);
    const mpfr_prec_t bits = cfg.precision.bits();
    const int digits = cfg.precision.digits;
    const Real two_pi = 2 * Real::pi(bits);
    const Real target(m == n ? 1L : 0L, bits);
    const Real estimate = two_pi * s.extrapolated;
    const Real raw = two_pi * s.value;
    const double err = abs(estimate - target).to_double();
    Report r;
    r["check"] = "vanishing";
    r["parameters"] = {{"m", m}, {"n", n}, {"c_max", cfg.c_max}, {"tol", tol}};
    r["target"] = m == n ? 1 : 0;
    r["two_pi_L"] = estimate.str(digits);
    r["two_pi_L_raw"] = raw.str(digits);
    r["max_abs_error"] = err;
    r["raw_abs_error"] = abs(raw - target).to_double();
    r["series"] = series_json(s, digits);
    r["pass"] = err < tol && s.monotone_decay;
    return r;
}

Report verify_xi(int64_t m, int count, const SeriesConfig& cfg, double tol)
{
    require_basis_index(BasisKind::g, m);
    if (count < 1)
        throw std::invalid_argument("verify xi needs at least one coefficient");
    std::vector<int64_t> ns;
    for (int k = 0; k < count; ++k)
        ns.push_back(23 + 24 * k);
    const FracQSeries g = basis_g(m, count);
    const auto c = p_minus_batch(m, ns, cfg);
    const mpfr_prec_t bits = cfg.precision.bits();
    const int digits = cfg.precision.digits;
    Report rows = Report::array();
    double worst_rel = 0, worst_abs = 0;
    for (int k = 0; k < count; ++k) {
        const int64_t n = ns[k];
        // (6/(pi n))^{3/2} / (6/(pi m))^{3/2} = (m/n)^{3/2}
        const Real ratio = Real(m, bits) / Real(n, bits);
        const Real predicted = -c[k].series->extrapolated * ratio * sqrt(ratio);
        const Real exact(g.coeff(n), bits);
        const double rel = relative_error(predicted, exact).to_double();
        worst_rel = std::max(worst_rel, rel);
        worst_abs = std::max(worst_abs, abs(predicted - exact).to_double());
        rows.push_back({{"n", n},
                        {"exact", g.coeff(n).get_str()},
                        {"predicted", predicted.str(digits)},
                        {"rel_error", rel},
                        {"coefficient", coefficient_json(c[k], digits)}});
    }
    Report r;
    r["check"] = "xi";
    r["parameters"] = {{"m", m}, {"count", count}, {"c_max", cfg.c_max}, {"tol", tol}};
    r["rows"] = std::move(rows);
    r["max_abs_error"] = worst_abs;
    r["max_rel_error"] = worst_rel;
    r["pass"] = worst_rel < tol;
    return r;
}

} // namespace maass
