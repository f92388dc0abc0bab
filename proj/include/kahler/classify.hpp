#pragma once

/// @file classify.hpp
/// @brief Extremal, weakly Bochner-flat, Bochner-flat and conformally Einstein
/// instances of the explicit ansatz, with checks of their curvature identities.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "kahler/ansatz.hpp"
#include "kahler/poly.hpp"
#include "kahler/verify.hpp"

namespace kahler {

/// csc, ke and chsc are the sub-cases a₀ = 0, b₋₁ = 0 and c₋₂ = 0.
enum class ClassKind { extremal, csc, wbf, ke, bf, chsc, conf_einstein };

ClassKind class_kind_from_string(const std::string& s);
std::string to_string(ClassKind k);

/// extremal, wbf or bf for the sub-cases; conf_einstein maps to itself.
ClassKind base_kind(ClassKind k);

struct ClassSpec {
    ClassKind kind = ClassKind::extremal;
    /// Leading first: a_0..a_ňm, b_{-1}..b_ℓ, c_{-2}..c_m̂, or (a₊, a₋, c, p, q).
    std::vector<double> coeffs;
    /// Integration constants, degree-descending: extremal {k1, k0} with
    /// F = ∬F'' + k1 t + k0; wbf {k0}. Empty selects them by a positivity search.
    std::vector<double> integration;
    /// m, ell, domains and constant roots (value, mult, factor chart). F is ignored;
    /// factor curvatures are set from the class. conf_einstein uses m and domains[0].
    SpectrumSpec spectrum;
};

/// Expected coefficient count for the kind and spectrum skeleton.
int class_coefficient_count(const ClassSpec& cs);

struct ClassF {
    RPoly F;
    /// Scalar curvature of each signed factor g_ξ (for conf_einstein, of the base).
    std::vector<double> factor_targets;
    std::vector<double> integration;
};

/// The polynomial fixed by the class before integration: F'' (extremal), F' (wbf) or F (bf),
/// from coefficients and distinct constant roots with multiplicities.
template <class S>
Poly<S> class_polynomial(ClassKind kind, const std::vector<S>& coeffs, const std::vector<S>& roots,
                         const std::vector<int>& mults);

/// Reads the coefficients back from that polynomial by exact division. Throws
/// InexactDivision when it does not have the required factor, ConfigError when its
/// degree is too large for the kind.
template <class S>
std::vector<S> class_coefficients(ClassKind kind, const Poly<S>& P, const std::vector<S>& roots,
                                  const std::vector<int>& mults, int ell);

/// F, the factor targets and the integration constants used.
ClassF make_class_F(const ClassSpec& cs);

/// Spectrum with F set and each factor calibrated to its target.
SpectrumSpec class_spectrum(const ClassSpec& cs, const ClassF& cf);

/// Builds the model for a class spec (build_general, or build_calabi for conf_einstein).
ModelPtr build_class(const ClassSpec& cs);

/// Coefficients of F read as another (weaker) class: bf → wbf → extremal.
ClassSpec reinterpret(const ClassSpec& cs, const ClassF& cf, ClassKind target);

/// Explicit scalar curvature, Scal = −(a₀σ̌₁ + a₁), J grad Scal Killing; for a₀ = 0 also
/// the Scal spread across samples.
SuiteResult check_extremal(const MetricModel& M, const ClassSpec& cs, const SuiteOptions& o, double spread_tol = 1e-5);

/// ρ = −½(b₋₁(φ + σ₁ω) + b₀ω) and ∇_Xρ̃ = ½(ds∧JX − d^cs∧X); for b₋₁ = 0 also ρ̃ ∝ ω.
SuiteResult check_wbf(const MetricModel& M, const ClassSpec& cs, const SuiteOptions& o);

/// Bochner norm and the characteristic polynomial; ρ̃ ∝ ω when c₋₂ = 0; vanishing
/// curvature when c₋₂ = c₋₁ = 0.
SuiteResult check_bf(const MetricModel& M, const ClassSpec& cs, const ClassF& cf, const SuiteOptions& o);

/// Traceless Ricci of (qz + p)^{-2} g.
CheckReport conformal_einstein_check(const MetricModel& M, double p, double q, const SuiteOptions& o);

struct ConfEinsteinResult {
    ModelPtr model;
    ClassF F;
    CheckReport report;
};

/// Builds the Calabi-type instance with base Ricci form c·ω₀ and checks it.
ConfEinsteinResult conf_einstein(int m, double p, double q, double a_plus, double a_minus, double c, Interval z,
                                 const SuiteOptions& o, double r_max = 0.5);

/// Runs the check matching cs.kind.
SuiteResult check_class(const MetricModel& M, const ClassSpec& cs, const ClassF& cf, const SuiteOptions& o);

/// ρ̃ − (⟨ρ̃, ω⟩/m) ω relative to ρ̃, at samples.
CheckReport rho_tilde_proportional(const MetricModel& M, const SuiteOptions& o, const std::string& name);

}  // namespace kahler
