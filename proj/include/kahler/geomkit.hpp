#pragma once

/// @file geomkit.hpp
/// @brief Chart tensor calculus: partial derivatives, exterior calculus,
/// Levi-Civita connection, curvature, Pfaffian and the Kähler curvature
/// decomposition.
///
/// Index conventions (all components in coordinates x^a):
///   Γ(k,i,j)      = Γ^k_{ij}
///   riem(a,b,c,d) = R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} − Γ^a_{de} Γ^e_{cb}
///   rm(a,b,c,d)   = g_{ae} R^e_{bcd}
///   J(a,b)        = J^a_b, so ω_{ab} = J^c_a g_{cb}
///   (α∧β)_{ab}    = α_a β_b − α_b β_a
///   (dψ)_{abc}    = ∂_a ψ_{bc} + ∂_b ψ_{ca} + ∂_c ψ_{ab}
///   (d^c f)_b     = −∂_e f J^e_b
///   ⟨α,β⟩         = ½ α_{ab} β^{ab}
///   Δf            = −g^{ab} ∇_a ∇_b f

#include <functional>
#include <utility>
#include <vector>

#include "kahler/errors.hpp"
#include "kahler/mat.hpp"
#include "kahler/model.hpp"
#include "kahler/poly.hpp"

namespace kahler {

/// The curvature convention used for imported formulas differs from the
/// stored one by this global sign. Ricci and the curvature operator apply it.
constexpr int kPaperCurvatureSign = -1;

enum class Backend { dual, fd };

struct Diff {
    Backend backend = Backend::dual;
    double h = 1e-3;  ///< fd step
};

// ---------------------------------------------------------------------------
// Primal and tangent extraction, linear combination.

template <class T>
T primal(const Dual<T>& x) { return x.v; }
template <class T>
T tangent(const Dual<T>& x) { return x.d; }
template <class T>
Vec<T> primal(const Vec<Dual<T>>& v) {
    Vec<T> r;
    r.reserve(v.size());
    for (const auto& e : v) r.push_back(e.v);
    return r;
}
template <class T>
Vec<T> tangent(const Vec<Dual<T>>& v) {
    Vec<T> r;
    r.reserve(v.size());
    for (const auto& e : v) r.push_back(e.d);
    return r;
}
template <class T>
Mat<T> primal(const Mat<Dual<T>>& m) {
    Mat<T> r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].v;
    return r;
}
template <class T>
Mat<T> tangent(const Mat<Dual<T>>& m) {
    Mat<T> r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].d;
    return r;
}
template <class T>
Tensor<T> primal(const Tensor<Dual<T>>& m) {
    Tensor<T> r(m.n, m.rank);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].v;
    return r;
}
template <class T>
Tensor<T> tangent(const Tensor<Dual<T>>& m) {
    Tensor<T> r(m.n, m.rank);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].d;
    return r;
}

template <class T>
void axpy(T& acc, double c, const T& x) { acc = acc + c * x; }
template <class T>
void axpy(Vec<T>& acc, double c, const Vec<T>& x) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + c * x[i];
}
template <class T>
void axpy(Mat<T>& acc, double c, const Mat<T>& x) { axpy(acc.a, c, x.a); }
template <class T>
void axpy(Tensor<T>& acc, double c, const Tensor<T>& x) { axpy(acc.a, c, x.a); }

template <class T>
void scale_by(T& x, double c) { x = c * x; }
template <class T>
void scale_by(Vec<T>& x, double c) {
    for (auto& e : x) e = c * e;
}
template <class T>
void scale_by(Mat<T>& x, double c) { scale_by(x.a, c); }
template <class T>
void scale_by(Tensor<T>& x, double c) { scale_by(x.a, c); }

template <class R>
struct Partials {
    R value;
    std::vector<R> d;  ///< d[i] = ∂_i of the result
};

/// All first partials of f at x. f must accept Vec<T> and Vec<Dual<T>>.
/// The fd backend uses the 4th-order central stencil with step diff.h.
template <class T, class F>
auto partials(const F& f, const Vec<T>& x, const Diff& diff) -> Partials<decltype(f(x))> {
    using R = decltype(f(x));
    const size_t n = x.size();
    Partials<R> out;
    out.d.reserve(n);
    if (diff.backend == Backend::dual) {
        Vec<Dual<T>> y(n);
        for (size_t k = 0; k < n; ++k) y[k] = Dual<T>(x[k]);
        for (size_t i = 0; i < n; ++i) {
            y[i].d = T(1.0);
            auto r = f(y);
            if (i == 0) out.value = primal(r);
            out.d.push_back(tangent(r));
            y[i].d = T(0.0);
        }
        if (n == 0) out.value = f(x);
    } else {
        const double h = diff.h;
        out.value = f(x);
        for (size_t i = 0; i < n; ++i) {
            Vec<T> y = x;
            y[i] = x[i] - 2.0 * h;
            R acc = f(y);
            y[i] = x[i] + 2.0 * h;
            axpy(acc, -1.0, f(y));
            y[i] = x[i] + h;
            axpy(acc, 8.0, f(y));
            y[i] = x[i] - h;
            axpy(acc, -8.0, f(y));
            scale_by(acc, 1.0 / (12.0 * h));
            out.d.push_back(std::move(acc));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Algebra.

template <class T>
Mat<T> wedge(const Vec<T>& a, const Vec<T>& b) {
    const int n = static_cast<int>(a.size());
    Mat<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] - a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)];
    return r;
}

/// (d^c f)_b = −Σ_e ∂_e f J^e_b.
template <class T>
Vec<T> dc_of(const Vec<T>& df, const Mat<T>& J) {
    const int n = J.rows;
    Vec<T> r(static_cast<size_t>(n), T(0.0));
    for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) r[static_cast<size_t>(b)] -= df[static_cast<size_t>(e)] * J(e, b);
    return r;
}

/// Raise both indices: ψ^{ab} = g^{ac} ψ_{cd} g^{db}.
template <class T>
Mat<T> raise2(const Mat<T>& psi, const Mat<T>& ginv) { return ginv * psi * ginv; }

template <class T>
T inner2(const Mat<T>& a, const Mat<T>& b, const Mat<T>& ginv) {
    Mat<T> bu = raise2(b, ginv);
    T s = T(0.0);
    for (size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * bu.a[i];
    return 0.5 * s;
}

/// Endomorphism A with ψ(X,Y) = g(AX,Y): A^c_a = g^{cb} ψ_{ab}.
template <class T>
Mat<T> endo_of(const Mat<T>& psi, const Mat<T>& ginv) { return ginv * transpose(psi); }

/// 2-form ψ_{ab} = A^c_a g_{cb}.
template <class T>
Mat<T> form_of(const Mat<T>& A, const Mat<T>& g) { return transpose(A) * g; }

template <class T>
Vec<T> raise1(const Vec<T>& a, const Mat<T>& ginv) { return ginv * a; }

// ---------------------------------------------------------------------------
// Exterior calculus.

template <class T, class F>
Vec<T> exterior_d0(const F& f, const Vec<T>& x, const Diff& diff) {
    return partials(f, x, diff).d;
}

template <class T, class F>
Mat<T> exterior_d1(const F& f, const Vec<T>& x, const Diff& diff) {
    auto P = partials(f, x, diff);
    const int n = static_cast<int>(x.size());
    Mat<T> r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r(a, b) = P.d[static_cast<size_t>(a)][static_cast<size_t>(b)] - P.d[static_cast<size_t>(b)][static_cast<size_t>(a)];
    return r;
}

template <class T, class F>
Tensor<T> exterior_d2(const F& f, const Vec<T>& x, const Diff& diff) {
    auto P = partials(f, x, diff);
    const int n = static_cast<int>(x.size());
    Tensor<T> r(n, 3);
    auto& d = P.d;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                r(a, b, c) = d[static_cast<size_t>(a)](b, c) + d[static_cast<size_t>(b)](c, a) + d[static_cast<size_t>(c)](a, b);
    return r;
}

template <class T, class F>
Tensor<T> exterior_d3(const F& f, const Vec<T>& x, const Diff& diff) {
    auto P = partials(f, x, diff);
    const int n = static_cast<int>(x.size());
    Tensor<T> r(n, 4);
    auto& d = P.d;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e)
                    r(a, b, c, e) = d[static_cast<size_t>(a)](b, c, e) - d[static_cast<size_t>(b)](a, c, e) +
                                    d[static_cast<size_t>(c)](a, b, e) - d[static_cast<size_t>(e)](a, b, c);
    return r;
}

/// Gradient and Hessian (coordinate second partials) of a scalar function.
template <class T>
struct ScalarJet {
    T value{};
    Vec<T> grad;
    Mat<T> hess;
};

template <class T, class F>
ScalarJet<T> scalar_jet(const F& f, const Vec<T>& x, const Diff& diff) {
    auto grad = [&](const auto& y) { return partials(f, y, diff).d; };
    auto P = partials(grad, x, diff);
    const int n = static_cast<int>(x.size());
    ScalarJet<T> j;
    j.grad = P.value;
    j.hess = Mat<T>(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) j.hess(a, b) = P.d[static_cast<size_t>(a)][static_cast<size_t>(b)];
    j.value = f(x);
    return j;
}

/// dd^c f with J supplied as a function of the point.
template <class T, class F, class JF>
Mat<T> ddc(const F& f, const JF& jf, const Vec<T>& x, const Diff& diff) {
    auto dcf = [&](const auto& y) { return dc_of(partials(f, y, diff).d, jf(y)); };
    return exterior_d1(dcf, x, diff);
}

/// N^a_{bc} of an endomorphism field.
template <class T, class JF>
Tensor<T> nijenhuis(const JF& jf, const Vec<T>& x, const Diff& diff) {
    auto P = partials(jf, x, diff);
    const Mat<T>& J = P.value;
    const int n = J.rows;
    Tensor<T> N(n, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                T s = T(0.0);
                for (int d = 0; d < n; ++d) {
                    s += J(d, b) * P.d[static_cast<size_t>(d)](a, c) - J(d, c) * P.d[static_cast<size_t>(d)](a, b);
                    s -= J(a, d) * (P.d[static_cast<size_t>(b)](d, c) - P.d[static_cast<size_t>(c)](d, b));
                }
                N(a, b, c) = s;
            }
    return N;
}

// ---------------------------------------------------------------------------
// Connection and curvature.

/// Γ^k_{ij} from g^{-1} and the coordinate derivatives of g.
template <class T>
Tensor<T> christoffel_from(const Mat<T>& ginv, const std::vector<Mat<T>>& dg) {
    const int n = ginv.rows;
    Tensor<T> G(n, 3);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                T lower = 0.5 * (dg[static_cast<size_t>(i)](j, l) + dg[static_cast<size_t>(j)](i, l) - dg[static_cast<size_t>(l)](i, j));
                for (int k = 0; k < n; ++k) {
                    G(k, i, j) += ginv(k, l) * lower;
                }
            }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) G(k, i, j) = G(k, j, i);
    return G;
}

template <class T, class GF>
Tensor<T> christoffel(const GF& gf, const Vec<T>& x, const Diff& diff) {
    auto P = partials(gf, x, diff);
    return christoffel_from(inverse(P.value), P.d);
}

/// Γ and its coordinate derivatives.
template <class T>
struct ConnectionJet {
    Tensor<T> gamma;
    std::vector<Tensor<T>> dgamma;
};

template <class T, class GF>
ConnectionJet<T> connection_jet(const GF& gf, const Vec<T>& x, const Diff& diff) {
    auto gam = [&](const auto& y) { return christoffel(gf, y, diff); };
    auto P = partials(gam, x, diff);
    return {std::move(P.value), std::move(P.d)};
}

template <class T>
Tensor<T> riemann_from(const ConnectionJet<T>& cj) {
    const Tensor<T>& G = cj.gamma;
    const int n = G.n;
    Tensor<T> R(n, 4);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    T s = cj.dgamma[static_cast<size_t>(c)](a, d, b) - cj.dgamma[static_cast<size_t>(d)](a, c, b);
                    for (int e = 0; e < n; ++e) s += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
                    R(a, b, c, d) = s;
                    R(a, b, d, c) = -s;
                }
    return R;
}

template <class T, class GF>
Tensor<T> riemann_up(const GF& gf, const Vec<T>& x, const Diff& diff) {
    return riemann_from(connection_jet(gf, x, diff));
}

template <class T>
Tensor<T> lower_first(const Tensor<T>& R, const Mat<T>& g) {
    const int n = R.n;
    Tensor<T> L(n, 4);
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e) {
            const T& gae = g(a, e);
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) L(a, b, c, d) += gae * R(e, b, c, d);
        }
    return L;
}

template <class T>
struct CurvatureBundle {
    int m = 0;
    Mat<T> g, ginv, J, omega;
    Tensor<T> gamma;
    Tensor<T> riem;  ///< R^a_{bcd}
    Tensor<T> rm;    ///< R_{abcd}
    Mat<T> ric, rho, rho_tilde;
    T scal{}, s{};
};

/// Curvature from a metric function and the J, ω supplied at x.
template <class T, class GF>
CurvatureBundle<T> curvature_from(const GF& gf, const Mat<T>& J, const Mat<T>& omega, const Vec<T>& x, const Diff& diff) {
    CurvatureBundle<T> B;
    const int n = static_cast<int>(x.size());
    B.m = n / 2;
    auto cj = connection_jet(gf, x, diff);
    B.g = gf(x);
    B.ginv = inverse(B.g);
    B.J = J;
    B.omega = omega;
    B.gamma = cj.gamma;
    B.riem = riemann_from(cj);
    B.rm = lower_first(B.riem, B.g);
    B.ric = Mat<T>(n);
    // Ric(X,Y) = tr(Z -> R_{X,Z} Y) in the imported convention.
    for (int x1 = 0; x1 < n; ++x1)
        for (int y1 = 0; y1 < n; ++y1) {
            T s = T(0.0);
            for (int a = 0; a < n; ++a) s += B.riem(a, y1, x1, a);
            B.ric(x1, y1) = static_cast<double>(kPaperCurvatureSign) * s;
        }
    B.scal = T(0.0);
    for (size_t i = 0; i < B.ric.a.size(); ++i) B.scal += B.ginv.a[i] * B.ric.a[i];
    B.rho = Mat<T>(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) B.rho(a, b) += J(c, a) * B.ric(c, b);
    B.s = B.scal / (2.0 * (B.m + 1));
    B.rho_tilde = B.rho - scaled(B.s, B.omega);
    return B;
}

inline auto metric_of(const MetricModel& M) {
    return [&M](const auto& y) { return eval_fields(M, y, kMetric).g; };
}
inline auto complex_structure_of(const MetricModel& M) {
    return [&M](const auto& y) { return eval_fields(M, y, kMetric).J; };
}
inline auto kahler_form_of(const MetricModel& M) {
    return [&M](const auto& y) { return eval_fields(M, y, kMetric).omega; };
}

template <class T>
CurvatureBundle<T> curvature_bundle(const MetricModel& M, const Vec<T>& x, const Diff& diff) {
    Fields<T> f = eval_fields(M, x, kMetric);
    return curvature_from(metric_of(M), f.J, f.omega, x, diff);
}

/// R(ψ)_{ab} = −½ kSign R_{abcd} ψ^{cd}.
template <class T>
Mat<T> curvature_operator(const CurvatureBundle<T>& B, const Mat<T>& psi) {
    Mat<T> up = raise2(psi, B.ginv);
    const int n = psi.rows;
    Mat<T> r(n);
    const double c = -0.5 * kPaperCurvatureSign;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T s = T(0.0);
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) s += B.rm(a, b, p, q) * up(p, q);
            r(a, b) = c * s;
        }
    return r;
}

/// ∇_a ψ_{bc}.
template <class T>
Tensor<T> cov_deriv_2form(const Mat<T>& psi, const std::vector<Mat<T>>& dpsi, const Tensor<T>& G) {
    const int n = psi.rows;
    Tensor<T> r(n, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                T s = dpsi[static_cast<size_t>(a)](b, c);
                for (int k = 0; k < n; ++k) s -= G(k, a, b) * psi(k, c) + G(k, a, c) * psi(b, k);
                r(a, b, c) = s;
            }
    return r;
}

/// ∇_a A^b_c for an endomorphism field.
template <class T>
Tensor<T> cov_deriv_endo(const Mat<T>& A, const std::vector<Mat<T>>& dA, const Tensor<T>& G) {
    const int n = A.rows;
    Tensor<T> r(n, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                T s = dA[static_cast<size_t>(a)](b, c);
                for (int d = 0; d < n; ++d) s += G(b, a, d) * A(d, c) - G(d, a, c) * A(b, d);
                r(a, b, c) = s;
            }
    return r;
}

/// (∇K)(a, b) = ∇_a K^b.
template <class T>
Mat<T> cov_deriv_vector(const Vec<T>& K, const std::vector<Vec<T>>& dK, const Tensor<T>& G) {
    const int n = static_cast<int>(K.size());
    Mat<T> r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T s = dK[static_cast<size_t>(a)][static_cast<size_t>(b)];
            for (int c = 0; c < n; ++c) s += G(b, a, c) * K[static_cast<size_t>(c)];
            r(a, b) = s;
        }
    return r;
}

/// (L_K g)_{mn} = K^l ∂_l g_{mn} + g_{ln} ∂_m K^l + g_{ml} ∂_n K^l.
template <class T>
Mat<T> lie_derivative_metric(const Vec<T>& K, const std::vector<Vec<T>>& dK, const Mat<T>& g,
                             const std::vector<Mat<T>>& dg) {
    const int n = g.rows;
    Mat<T> r(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T s = T(0.0);
            for (int l = 0; l < n; ++l)
                s += K[static_cast<size_t>(l)] * dg[static_cast<size_t>(l)](a, b) + g(l, b) * dK[static_cast<size_t>(a)][static_cast<size_t>(l)] +
                     g(a, l) * dK[static_cast<size_t>(b)][static_cast<size_t>(l)];
            r(a, b) = s;
        }
    return r;
}

/// Δf = −g^{ab}(∂_a∂_b f − Γ^c_{ab} ∂_c f).
template <class T>
T laplacian_from(const ScalarJet<T>& j, const Mat<T>& ginv, const Tensor<T>& G) {
    const int n = ginv.rows;
    T s = T(0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T h = j.hess(a, b);
            for (int c = 0; c < n; ++c) h -= G(c, a, b) * j.grad[static_cast<size_t>(c)];
            s += ginv(a, b) * h;
        }
    return -s;
}

template <class T, class F, class GF>
T laplacian(const F& f, const GF& gf, const Vec<T>& x, const Diff& diff) {
    auto P = partials(gf, x, diff);
    Mat<T> ginv = inverse(P.value);
    return laplacian_from(scalar_jet(f, x, diff), ginv, christoffel_from(ginv, P.d));
}

// ---------------------------------------------------------------------------
// Double-precision algebra at a point.

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
double pfaffian_raw(const Mat<double>& a);

/// Pfaffian of ψ in a g-orthonormal frame oriented so that pf ω = +1.
double pfaffian(const Mat<double>& psi, const Mat<double>& g, const Mat<double>& omega);

/// Coefficients of (−1)^m pf(φ − tω), interpolated at t = 0..m.
RPoly momentum_polynomial(const Mat<double>& phi, const Mat<double>& g, const Mat<double>& omega);

struct KahlerDecomposition {
    /// Operators on 2-forms in an orthonormal basis e^i∧e^j (i<j) of a g-orthonormal frame.
    Mat<double> curvature, scalar_part, ric0_part, bochner;
    double bochner_norm = 0.0;  ///< Frobenius norm of bochner
};

/// Throws DimensionTooSmall when m < 2.
KahlerDecomposition kahler_decompose(const CurvatureBundle<double>& B);

/// Σ_a W(e_a, ·, e_a, ·) for the Bochner part, as an n×n matrix in the orthonormal frame.
Mat<double> bochner_ricci_contraction(const CurvatureBundle<double>& B, const KahlerDecomposition& K);

}  // namespace kahler
