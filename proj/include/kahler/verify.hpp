#pragma once

/// @file verify.hpp
/// @brief Check suites: residual statements evaluated at seeded sample points.
///
/// Each suite returns one CheckReport per sub-check, named "<suite>.<check>".
/// Residuals are relative: max |lhs − rhs| / max(1, max |terms|).

#include <cstdint>
#include <string>
#include <vector>

#include "kahler/ansatz.hpp"
#include "kahler/geomkit.hpp"
#include "kahler/model.hpp"
#include "kahler/report.hpp"
#include "kahler/symfunc.hpp"

namespace kahler {

struct SuiteOptions {
    int samples = 20;
    std::uint64_t seed = 1;
    Diff diff{};
    double first_order = 1e-8;
    double second_order = 1e-4;
};

using SuiteResult = std::vector<CheckReport>;

/// dω, Nijenhuis, ∇J, ω = g(J·,·), J² = −1.
SuiteResult kahler_suite(const MetricModel& M, const SuiteOptions& o);

/// ∇φ against the hamiltonian equation, orthogonality of the dξ_j, momentum polynomial.
SuiteResult hamiltonian_suite(const MetricModel& M, const SuiteOptions& o);

/// K_r = J grad σ_r Killing, Poisson-commuting p(t), rigidity of ⟨K_r, K_s⟩.
SuiteResult symmetry_suite(const MetricModel& M, const SuiteOptions& o);

/// dd^c H = ω, dd^c u_r = 0, dd^c Φ = φ + σ₁ω, dd^c κ = ρ, the ξ-coordinate
/// Laplacian for ξ₁, ξ₁², κ, and the explicit scalar curvature.
SuiteResult potential_suite(const MetricModel& M, const SuiteOptions& o);

/// ψ = φ − ½σω: twistor equation, trace relation, dψ and δψ relations, Killing tensor.
SuiteResult conformal_killing_suite(const MetricModel& M, const SuiteOptions& o);

/// Data for the characteristic polynomial check on Bochner-flat instances.
struct CharpolyData {
    double c_m2 = 0.0, c_m1 = 0.0;
    double root_sum = 0.0;  ///< Σ of distinct constant roots
    RPoly F;                ///< expected characteristic polynomial
    double spread_tol = 1e-4, match_tol = 1e-3;
};

/// (nablaphi), (nablaK), (du), [ρ,φ] = 0 and optionally F_c.
SuiteResult jet_suite(const MetricModel& M, const SuiteOptions& o, const CharpolyData* cp = nullptr);

/// On constant holomorphic sectional curvature with s ≠ 0:
/// φ = (m/2s) dd^c τ + τω with τ = σ/m − Δσ/(2s).
CheckReport bijection_check(const MetricModel& M, const SuiteOptions& o, double tol = 1e-4);

/// Σ_r (σ₁σ_r − σ_{r+1}) du_r closed on a toric model.
CheckReport orthotoric_detector(const MetricModel& M, const SuiteOptions& o, double tol = 1e-8);

/// Numeric Scal against Σ_ξ Scal_ξ/p_nc(ξ) − Σ_j F_j''/(Δ_j p_c(ξ_j)).
CheckReport explicit_scal_check(const MetricModel& M, const SuiteOptions& o, double tol = 1e-4);

/// Per-sample Scal values (for spread checks).
std::vector<double> scal_samples(const MetricModel& M, const SuiteOptions& o);

/// Runs a named suite ("kahler", "hamiltonian", "symmetry", "potential",
/// "conformal_killing", "jet"). Throws ConfigError for unknown names.
SuiteResult run_suite(const std::string& name, const MetricModel& M, const SuiteOptions& o);

bool suite_passed(const SuiteResult& r);

// ---------------------------------------------------------------------------
// Pointwise helpers shared with classify.

/// Coefficients of p(t) = (−1)^m pf(φ − tω), degree-descending, from power sums of
/// the eigenvalues of −J∘φ (valid at any scalar level).
template <class T>
Vec<T> momentum_coefficients(const Mat<T>& phi, const Mat<T>& g, const Mat<T>& J) {
    const int n = g.rows, m = n / 2;
    Mat<T> B = J * endo_of(phi, inverse(g));
    for (auto& v : B.a) v = -v;
    Vec<T> p(static_cast<size_t>(m + 1)), e(static_cast<size_t>(m + 1));
    Mat<T> P = B;
    for (int k = 1; k <= m; ++k) {
        T tr = T(0.0);
        for (int i = 0; i < n; ++i) tr += P(i, i);
        p[static_cast<size_t>(k)] = 0.5 * tr;
        if (k < m) P = P * B;
    }
    e[0] = T(1.0);
    for (int k = 1; k <= m; ++k) {
        T s = T(0.0);
        for (int i = 1; i <= k; ++i) s += ((i % 2 == 1) ? 1.0 : -1.0) * e[static_cast<size_t>(k - i)] * p[static_cast<size_t>(i)];
        e[static_cast<size_t>(k)] = s / static_cast<double>(k);
    }
    Vec<T> c(static_cast<size_t>(m + 1));
    for (int k = 0; k <= m; ++k) c[static_cast<size_t>(k)] = ((k % 2 == 0) ? 1.0 : -1.0) * e[static_cast<size_t>(k)];
    return c;
}

/// σ = ⟨φ, ω⟩.
template <class T>
T trace_form(const Mat<T>& phi, const Mat<T>& omega, const Mat<T>& g) {
    return inner2(phi, omega, inverse(g));
}

/// Relative residual of a difference against reference magnitudes.
double rel_residual(double diff, double scale);

}  // namespace kahler
