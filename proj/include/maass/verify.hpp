#pragma once

// Checks of the exact and analytic identities, each returning a JSON report
//
//     {"check": ..., "parameters": {...}, "exact": true | "max_abs_error": x, ..., "pass": bool}
//
// Numeric checks judge the `extrapolated` estimate of each series (equal to the
// raw partial sum unless both indices are squares) and also report the raw value.

#include "maass/basis.hpp"
#include "maass/poincare.hpp"

#include <json.hpp>

#include <cstdint>

namespace maass {

using Report = nlohmann::ordered_json;

/// Diagnostics of one series with values printed to `digits` significant digits.
Report series_json(const SeriesValue& s, int digits);
Report coefficient_json(const Coefficient& c, int digits);

/// Exact Hecke relation for g_m (kind g) or h_m with m < 0 (kind h), `terms` coefficients.
Report verify_hecke(BasisKind kind, int64_t m, int64_t ell, int64_t terms);
/// p_m^+(l^2 n) against l^3 p_{l^2 m}^+(n), relative.
Report verify_hecke_numeric(int64_t m, int64_t n, int64_t ell, const SeriesConfig& cfg, double tol);
/// coefficient(h_{-j}, q^{k/24}) = -coefficient(g_k, q^{j/24}) for the first `rows`
/// values of j = 23 mod 24 and `cols` values of k = 1 mod 24.
Report verify_duality(int rows, int cols);
/// n^{3/2} p_n^+(m) against m^{3/2} p_m^+(n), relative.
Report verify_symmetry(int64_t m, int64_t n, const SeriesConfig& cfg, double tol);
/// 2 pi L_{m,n}(5/4) against 1 (m = n) or 0; also requires monotone decay.
Report verify_vanishing(int64_t m, int64_t n, const SeriesConfig& cfg, double tol);
/// -p_m^-(n) (m/n)^{3/2} against the exact coefficient of g_m at q^{n/24} for the
/// first `count` n = 23 mod 24, relative.
Report verify_xi(int64_t m, int count, const SeriesConfig& cfg, double tol);

} // namespace maass
