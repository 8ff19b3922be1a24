#include "maass/cli.hpp"

#include "maass/hecke.hpp"
#include "maass/multiplier.hpp"
#include "maass/qseries.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace maass {

namespace {

std::string scalar_text(const Report& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void flatten(const Report& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (v.is_object()) {
        for (const auto& [k, x] : v.items())
            flatten(x, prefix.empty() ? k : prefix + "." + k, out);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        for (size_t i = 0; i < v.size(); ++i)
            flatten(v[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s)
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

// Key of the array rendered as a table, or empty.
std::string table_key(const Report& r)
{
    for (const char* key : {"terms", "rows"}) {
        auto it = r.find(key);
        if (it != r.end() && it->is_array() && !it->empty() && it->front().is_object())
            return key;
    }
    return {};
}

struct Options {
    int64_t terms = 5;
    int64_t c_max = 4096;
    std::optional<int> digits;
    std::string format = "json";
    std::string output;
    bool allow_unconverged = false;
    double series_tol = 1e-6;
    std::optional<double> tol;

    SeriesConfig series() const
    {
        SeriesConfig cfg;
        cfg.c_max = c_max;
        cfg.precision = digits ? PrecisionContext(*digits) : PrecisionContext::from_env();
        cfg.tol = series_tol;
        cfg.validate();
        return cfg;
    }
};

struct Outcome {
    Report report;
    int code = exit_ok;
};

int64_t positive_terms(const Options& o)
{
    if (o.terms < 1)
        throw std::invalid_argument("--terms must be at least 1");
    return o.terms - 1;
}

Report exact_series_report(const std::string& kind, int64_t m, const FracQSeries& s)
{
    Report r;
    r["kind"] = kind;
    r["m"] = m;
    r["route"] = "exact";
    const Report body = Report::parse(s.to_json());
    r["residue"] = body["residue"];
    r["order"] = body["order"];
    r["terms"] = body["terms"];
    return r;
}

Outcome cmd_basis(const std::string& kind, int64_t m, const Options& o)
{
    const int64_t n = positive_terms(o);
    if (kind == "g")
        return {exact_series_report(kind, m, basis_g(m, n))};
    if (m < 0)
        return {exact_series_report(kind, m, basis_h_neg(m, n))};

    const SeriesConfig cfg = o.series();
    const MaassFormExpansion e = h_expansion(m, std::max<int64_t>(n, 1), cfg);
    const int digits = cfg.precision.digits;
    Report terms = Report::array();
    auto add = [&](const char* part, const Coefficient& c) {
        Report t;
        t["part"] = part;
        t["n"] = c.n;
        t["re"] = c.re.str(digits);
        t["im"] = c.im.str(digits);
        t["converged"] = c.converged();
        if (c.series) {
            t["extrapolated"] = c.series->extrapolated.str(digits);
            t["c_max"] = c.series->c_max;
            t["tail_estimate"] = c.series->tail_estimate;
            t["monotone_decay"] = c.series->monotone_decay;
        }
        terms.push_back(std::move(t));
    };
    for (const auto& c : e.holo)
        add("holomorphic", c);
    for (const auto& c : e.nonholo)
        add("nonholomorphic", c);
    Report r;
    r["kind"] = kind;
    r["m"] = m;
    r["route"] = "analytic";
    r["c_max"] = cfg.c_max;
    r["digits"] = digits;
    r["converged"] = e.converged();
    r["terms"] = std::move(terms);
    return {r, e.converged() || o.allow_unconverged ? exit_ok : exit_unconverged};
}

Outcome cmd_partition(int64_t n, const std::string& method, const Options& o)
{
    if (n < 1)
        throw std::invalid_argument("partition needs n >= 1");
    Report r;
    r["n"] = n;
    r["method"] = method;
    if (method == "recurrence") {
        r["p"] = partition_oracle(n).get_str();
        return {r};
    }
    const SeriesConfig cfg = o.series();
    const RademacherResult res = rademacher_p(n, cfg);
    r["p"] = res.rounded.get_str();
    r["value"] = res.value.str(cfg.precision.digits);
    r["c_max"] = res.c_max;
    r["tail_bound"] = res.tail_bound;
    r["margin"] = res.margin;
    r["certified"] = res.certified;
    return {r, res.certified ? exit_ok : exit_unconverged};
}

Outcome cmd_mock_coeff(int64_t m, int64_t n, const Options& o)
{
    const SeriesConfig cfg = o.series();
    const Coefficient c = h_coefficient(m, n, cfg);
    Report r;
    r["m"] = m;
    r["n"] = n;
    r["c_max"] = cfg.c_max;
    r["digits"] = cfg.precision.digits;
    r["coefficient"] = coefficient_json(c, cfg.precision.digits);
    return {r, c.converged() || o.allow_unconverged ? exit_ok : exit_unconverged};
}

Outcome cmd_kloosterman(int64_t m, int64_t n, int64_t c, const Options& o)
{
    const SeriesConfig cfg = o.series();
    const KloostermanContext ctx = KloostermanContext::from_indices(m, n, c);
    Report r;
    r["m"] = m;
    r["n"] = n;
    r["c"] = c;
    r["m_prime"] = ctx.m_prime;
    r["n_prime"] = ctx.n_prime;
    r["value"] = kloosterman(ctx, cfg.precision).str(cfg.precision.digits);
    return {r};
}

Outcome verified(Report r) { return {r, r["pass"].get<bool>() ? exit_ok : exit_failed}; }

} // namespace

std::string render(const Report& r, OutputFormat f)
{
    if (f == OutputFormat::json)
        return r.dump(2) + "\n";
    std::ostringstream os;
    const std::string key = table_key(r);
    Report rest = r;
    if (!key.empty())
        rest.erase(key);
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(rest, "", flat);
    if (f == OutputFormat::pretty) {
        size_t width = 0;
        for (const auto& [k, v] : flat)
            width = std::max(width, k.size());
        for (const auto& [k, v] : flat)
            os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
    } else {
        os << "key,value\n";
        for (const auto& [k, v] : flat)
            os << csv_field(k) << "," << csv_field(v) << "\n";
    }
    if (key.empty())
        return os.str();

    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    std::vector<std::string> header;
    for (const auto& row : r[key]) {
        rows.emplace_back();
        flatten(row, "", rows.back());
        for (const auto& [k, v] : rows.back())
            if (std::find(header.begin(), header.end(), k) == header.end())
                header.push_back(k);
    }
    auto cell = [](const std::vector<std::pair<std::string, std::string>>& row, const std::string& key) {
        for (const auto& [k, v] : row)
            if (k == key)
                return v;
        return std::string();
    };
    os << "\n";
    if (f == OutputFormat::csv) {
        for (size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << csv_field(header[i]);
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < header.size(); ++i)
                os << (i ? "," : "") << csv_field(cell(row, header[i]));
            os << "\n";
        }
        return os.str();
    }
    std::vector<size_t> width(header.size());
    for (size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto& row : rows)
            width[i] = std::max(width[i], cell(row, header[i]).size());
    }
    for (size_t i = 0; i < header.size(); ++i)
        os << (i ? "  " : "") << std::string(width[i] - header[i].size(), ' ') << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < header.size(); ++i) {
            const std::string v = cell(row, header[i]);
            os << (i ? "  " : "") << std::string(width[i] - v.size(), ' ') << v;
        }
        os << "\n";
    }
    return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Harmonic Maass forms of weight 5/2 and the weight -1/2 grid"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("--terms", o.terms, "Number of terms including the leading one")->capture_default_str();
    app.add_option("--cmax", o.c_max, "Truncation of the sums over c")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--digits", o.digits, "Working precision in decimal digits (default: MAASS_DIGITS or 50)")
        ->check(CLI::Range(15, 100000));
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("-o,--output", o.output, "Write to a file instead of standard output");
    app.add_flag("--allow-unconverged", o.allow_unconverged, "Exit 0 even if a series tail exceeds the threshold");
    app.add_option("--series-tol", o.series_tol, "Tail threshold for a series to count as converged")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "Tolerance of a numeric verification")->check(CLI::PositiveNumber);

    int64_t m = 0, n = 0, c = 1, ell = 5, xi_m = 1;
    int rows = 4, cols = 4, count = 3;
    std::string kind = "g", method = "rademacher", hecke_kind = "h";

    auto* basis = app.add_subcommand("basis", "q-expansion of g_m or h_m");
    basis->add_option("kind", kind, "g or h")->required()->check(CLI::IsMember({"g", "h"}));
    basis->add_option("--m", m, "Basis index")->required();

    auto* partition = app.add_subcommand("partition", "p(n) by Rademacher's series or the recurrence");
    partition->add_option("--n", n)->required();
    partition->add_option("--method", method)
        ->check(CLI::IsMember({"rademacher", "recurrence"}))
        ->capture_default_str();

    auto* mock = app.add_subcommand("mock-coeff", "One coefficient of h_m");
    mock->add_option("--m", m)->required();
    mock->add_option("--n", n)->required();

    auto* kl = app.add_subcommand("kloosterman", "K(m', n'; c) for indices m = 24m' + 1, n = 24n' + 1");
    kl->add_option("--m", m)->required();
    kl->add_option("--n", n)->required();
    kl->add_option("--c", c)->required();

    auto* verify = app.add_subcommand("verify", "Check an identity; exit 0 iff it holds");
    verify->require_subcommand(1);
    auto* v_hecke = verify->add_subcommand("hecke", "Hecke relation (exact for g and h with m < 0)");
    v_hecke->add_option("--kind", hecke_kind)->check(CLI::IsMember({"g", "h"}))->capture_default_str();
    v_hecke->add_option("--ell", ell)->capture_default_str();
    v_hecke->add_option("--m", m)->required();
    v_hecke->add_option("--n", n, "Second index for the numeric route (h, m > 0)");
    auto* v_dual = verify->add_subcommand("duality", "Grid duality between h_{-j} and g_k");
    v_dual->add_option("--rows", rows)->capture_default_str();
    v_dual->add_option("--cols", cols)->capture_default_str();
    auto* v_sym = verify->add_subcommand("symmetry", "n^{3/2} p_n^+(m) = m^{3/2} p_m^+(n)");
    v_sym->add_option("--m", m)->required();
    v_sym->add_option("--n", n)->required();
    auto* v_van = verify->add_subcommand("vanishing", "2 pi L_{m,n}(5/4) = [m = n]");
    v_van->add_option("--m", m)->required();
    v_van->add_option("--n", n)->required();
    auto* v_xi = verify->add_subcommand("xi", "Nonholomorphic coefficients of h_m against g_m");
    v_xi->add_option("--m", xi_m)->capture_default_str();
    v_xi->add_option("--count", count)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return exit_ok;
        }
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    Outcome result;
    try {
        if (*basis) {
            result = cmd_basis(kind, m, o);
        } else if (*partition) {
            result = cmd_partition(n, method, o);
        } else if (*mock) {
            result = cmd_mock_coeff(m, n, o);
        } else if (*kl) {
            result = cmd_kloosterman(m, n, c, o);
        } else if (*v_hecke) {
            if (hecke_kind == "h" && m > 0) {
                if (n <= 0)
                    throw std::invalid_argument("verify hecke for m > 0 needs --n");
                result = verified(verify_hecke_numeric(m, n, ell, o.series(), o.tol.value_or(1e-3)));
            } else {
                result = verified(verify_hecke(hecke_kind == "g" ? BasisKind::g : BasisKind::h, m, ell,
                                               positive_terms(o)));
            }
        } else if (*v_dual) {
            result = verified(verify_duality(rows, cols));
        } else if (*v_sym) {
            result = verified(verify_symmetry(m, n, o.series(), o.tol.value_or(1e-4)));
        } else if (*v_van) {
            result = verified(verify_vanishing(m, n, o.series(), o.tol.value_or(1e-4)));
        } else if (*v_xi) {
            result = verified(verify_xi(xi_m, count, o.series(), o.tol.value_or(1e-6)));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    const OutputFormat fmt = o.format == "csv"      ? OutputFormat::csv
                             : o.format == "pretty" ? OutputFormat::pretty
                                                    : OutputFormat::json;
    const std::string text = render(result.report, fmt);
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output);
        if (!f) {
            err << "error: cannot write " << o.output << "\n";
            return exit_usage;
        }
        f << text;
    }
    return result.code;
}

} // namespace maass
