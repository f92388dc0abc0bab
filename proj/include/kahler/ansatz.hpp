#pragma once

/// @file ansatz.hpp
/// @brief Builders for explicit Kähler models: space-form factors,
/// orthotoric, general order-ℓ, Calabi-type and toric-from-dual-potential.
///
/// Chart layout of the order-ℓ models: x = (ξ_1..ξ_ℓ, t_1..t_ℓ, w-blocks),
/// one block of 2m_ξ real coordinates per constant root, ordered (x1, y1, x2, y2, ...).
/// On each block J∂x = ∂y and J∂y = −∂x.

#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "kahler/geomkit.hpp"
#include "kahler/model.hpp"
#include "kahler/poly.hpp"

namespace kahler {

// ---------------------------------------------------------------------------
// Space-form factors.

/// Local complex space form with potential f(w) = scale·|w|² (k = 0) or
/// (scale/k)·log(1 + k|w|²). Curvature constants are measured, not assumed.
struct SpaceForm {
    int mdim = 1;
    double k = 0.0;
    double scale = 1.0;
    double r_max = 0.5;  ///< chart is the cube |w_i| ≤ r_max
    double scal = 0.0;       ///< measured scalar curvature at w = 0
    double einstein = 0.0;   ///< measured Ric = λ g constant at w = 0
    double hol = 0.0;        ///< measured holomorphic sectional curvature at w = 0

    /// f, ∂f, ∂²f at the block w (length 2·mdim).
    template <class T>
    void jet(const T* w, T& f, Vec<T>& grad, Mat<T>& hess) const {
        using std::log;
        const int n = 2 * mdim;
        T s = T(0.0);
        for (int i = 0; i < n; ++i) s += w[i] * w[i];
        T f1, f2;
        if (k == 0.0) {
            f = scale * s;
            f1 = T(scale);
            f2 = T(0.0);
        } else {
            T q = 1.0 + k * s;
            f = (scale / k) * log(q);
            f1 = scale / q;
            f2 = -scale * k / (q * q);
        }
        grad.assign(static_cast<size_t>(n), T(0.0));
        hess = Mat<T>(n);
        for (int a = 0; a < n; ++a) {
            grad[static_cast<size_t>(a)] = 2.0 * f1 * w[a];
            for (int b = 0; b < n; ++b) hess(a, b) = 4.0 * f2 * w[a] * w[b];
            hess(a, a) += 2.0 * f1;
        }
    }
};

/// Standard complex structure on R^{2d}: J(y_i, x_i) = 1, J(x_i, y_i) = −1.
Mat<double> standard_j(int d);

/// Builds the factor and measures its curvature at w = 0.
/// Throws DomainTooLarge if 1 + k|w|² ≤ 0.05 somewhere on the chart.
SpaceForm space_form_factor(int m_xi, double k, double scale, double r_max = 0.5);

/// The factor (unsigned metric dd^c f) as a standalone model on its chart.
ModelPtr space_form_model(const SpaceForm& sf);

/// Rescales so that the measured scalar curvature of sign·g_f equals target.
/// Secant iteration on scale; flat factors require target = 0.
SpaceForm calibrate_scal(SpaceForm sf, int sign, double target);

// ---------------------------------------------------------------------------
// Spectrum data.

struct Interval {
    double lo = 0.0, hi = 0.0;
    double mid() const { return 0.5 * (lo + hi); }
};

struct ConstantRootSpec {
    double value = 0.0;
    int mult = 1;
    int sign = 0;  ///< orientation of g_ξ; 0 derives it from p_nc
    SpaceForm factor;
};

struct SpectrumSpec {
    int m = 0, ell = 0;
    std::vector<Interval> domains;
    std::vector<ConstantRootSpec> roots;
    std::vector<RPoly> F;  ///< one per domain, or a single shared entry
    double t_extent = 1.0; ///< fibre coordinates range over [−t_extent, t_extent]
};

/// Structural checks (dimension count, disjointness, F count). Throws ConfigError.
void validate_spectrum(const SpectrumSpec& spec);

RPoly p_c_of(const SpectrumSpec& spec);

/// Signs each factor by p_nc and checks positivity of F_j. Throws SignMismatch, PositivityViolation.
SpectrumSpec resolve_signs(SpectrumSpec spec);

// ---------------------------------------------------------------------------
// Quadrature.

/// ∫_a^b q(t) dt by adaptive Gauss–Kronrod, absolute tolerance 1e-12.
double integrate(const std::function<double(double)>& q, double a, double b);

/// Antiderivative I(x) = ∫_a^x q at any dual level: the value part comes from
/// quadrature, each tangent from q at the next level down.
template <class T, class Q>
T antiderivative(const Q& q, double a, const T& x) {
    if constexpr (std::is_same_v<T, double>) {
        return integrate([&](double t) { return q(t); }, a, x);
    } else {
        return T(antiderivative(q, a, x.v), q(x.v) * x.d);
    }
}

/// p_c(t) t^e / F(t).
struct RationalIntegrand {
    const RPoly* pc;
    int e;
    const RPoly* F;
    template <class T>
    T operator()(const T& t) const { return (*pc)(t) * ipow_s(t, e) / (*F)(t); }
};

// ---------------------------------------------------------------------------
// Builders.

/// Orthotoric model on (ξ_1..ξ_m, t_1..t_m). Throws PositivityViolation.
ModelPtr build_orthotoric(int m, const std::vector<RPoly>& theta, const std::vector<Interval>& domains,
                          double t_extent = 1.0);

/// Order-ℓ model with constant roots. Requires ℓ ≥ 1.
ModelPtr build_general(const SpectrumSpec& spec);

struct CalabiSpec {
    int m = 2;
    RPoly F;
    SpaceForm base;  ///< complex dimension m − 1
    Interval z;
    double t_extent = 1.0;
};

/// Calabi-type model on (z, t, w). Throws PositivityViolation.
ModelPtr build_calabi(const CalabiSpec& spec);

/// The equivalent order-1 spectrum: constant root 0 of multiplicity m − 1 with
/// reversed factor orientation (f_ξ = −f₀).
SpectrumSpec calabi_as_spectrum(const CalabiSpec& spec);

/// Dual Calabi data z ↦ 1/z with F̃(z̃) = z̃^{2m} F(1/z̃) on the image interval.
CalabiSpec calabi_dual(const CalabiSpec& spec);

/// Dual potential G(σ) built from orthotoric data, with root recovery ξ(σ).
struct OrthotoricG {
    int m = 0;
    std::vector<RPoly> theta;
    std::vector<Interval> domains;
    /// Adds eps·σ_1^4 to G (detector negative control).
    double quartic = 0.0;

    template <class T>
    Vec<T> xi(const Vec<T>& sigma) const;
    template <class T>
    T operator()(const Vec<T>& sigma) const;
};

/// Toric model on (σ_1..σ_m, t_1..t_m) from the dual potential G. Exposes u_r = ∂G/∂σ_r,
/// H = Σ σ_r u_r − G and the recovered ξ_j. Throws PositivityViolation if the
/// Hessian of G is not positive definite at the box centre image.
ModelPtr build_toric_from_G(const OrthotoricG& G, double t_extent = 1.0);

/// σ(ξ) for the toric chart.
Vec<double> sigma_of_xi(const Vec<double>& xi);

// ---------------------------------------------------------------------------
// Residual probes that need builder internals.

/// max_r |dθ_r − Σ_ξ (−1)^r ξ^{ℓ−r} ω_ξ| at x.
double connection_form_residual(const SpectrumSpec& spec, const Vec<double>& x, const Diff& diff);

/// max_r |dd^c H_r − Σ_ξ (−1)^r ξ^{ℓ−r} ω_ξ| at x, r = −2..ℓ.
double base_potential_residual(const SpectrumSpec& spec, const Vec<double>& x, const Diff& diff);

}  // namespace kahler
