#include "kahler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace kahler {

double rel_residual(double diff, double scale) { return diff / std::max(1.0, scale); }

bool suite_passed(const SuiteResult& r) { return all_passed(r); }

namespace {

template <class C>
double max_abs_of(const C& c) {
    double w = 0.0;
    for (double v : c) w = std::max(w, std::abs(v));
    return w;
}
double max_abs_t(const Tensor<double>& t) { return max_abs_of(t.a); }

using Residuals = std::vector<double>;
using PointFn = std::function<Residuals(const Vec<double>&, std::size_t)>;

/// Evaluates fn at every point; fn returns one residual per named sub-check.
/// An Error raised at a sample records NaN for every sub-check at that sample.
SuiteResult sampled(const std::vector<std::string>& names, const std::vector<double>& tols,
                    const std::vector<Vec<double>>& pts, std::uint64_t seed, const PointFn& fn) {
    std::vector<Residuals> per(names.size());
    std::vector<std::string> notes(names.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Residuals r;
        std::string err;
        try {
            r = fn(pts[i], i);
        } catch (const Error& e) {
            err = e.what();
        }
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (err.empty() && k < r.size()) {
                per[k].push_back(r[k]);
            } else {
                per[k].push_back(std::numeric_limits<double>::quiet_NaN());
                if (notes[k].empty()) notes[k] = err.empty() ? "no residual produced" : err;
            }
        }
    }
    SuiteResult out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        auto rep = make_report(names[k], per[k], tols[k], seed);
        rep.note = notes[k];
        out.push_back(rep);
    }
    return out;
}

// Field accessors at any scalar level.

auto sigma_fn(const MetricModel& M) {
    return [&M](const auto& y) {
        auto f = eval_fields(M, y, kMetric | kPhi);
        return trace_form(f.phi, f.omega, f.g);
    };
}

auto phi_fn(const MetricModel& M) {
    return [&M](const auto& y) { return eval_fields(M, y, kPhi).phi; };
}

/// J grad f as a function of the point.
template <class F>
auto hamiltonian_field(const MetricModel& M, F f, Diff diff) {
    return [&M, f, diff](const auto& y) {
        auto P = partials(f, y, diff);
        auto fl = eval_fields(M, y, kMetric);
        return fl.J * (inverse(fl.g) * P.d);
    };
}

template <class F>
auto laplacian_fn(const MetricModel& M, F f, Diff diff) {
    return [&M, f, diff](const auto& y) { return laplacian(f, metric_of(M), y, diff); };
}

Mat<double> wedge_flat(const Vec<double>& a, const Vec<double>& b) { return wedge(a, b); }

Vec<double> row(const Mat<double>& g, int a) {
    Vec<double> r(static_cast<size_t>(g.cols));
    for (int b = 0; b < g.cols; ++b) r[static_cast<size_t>(b)] = g(a, b);
    return r;
}

Vec<double> flat(const Mat<double>& g, const Vec<double>& v) { return g * v; }

/// Column a of J as a vector: J∂_a.
Vec<double> jcol(const Mat<double>& J, int a) {
    Vec<double> r(static_cast<size_t>(J.rows));
    for (int b = 0; b < J.rows; ++b) r[static_cast<size_t>(b)] = J(b, a);
    return r;
}

/// (ω∧γ)_{abc} = ω_ab γ_c + ω_bc γ_a + ω_ca γ_b.
Tensor<double> wedge21(const Mat<double>& w, const Vec<double>& g) {
    const int n = w.rows;
    Tensor<double> t(n, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                t(a, b, c) = w(a, b) * g[static_cast<size_t>(c)] + w(b, c) * g[static_cast<size_t>(a)] +
                             w(c, a) * g[static_cast<size_t>(b)];
    return t;
}

bool xi_chart(const ModelInfo& I) { return I.kind == "general" || I.kind == "orthotoric" || I.kind == "calabi"; }

/// Non-ξ coordinates redrawn uniformly in the shrunk box.
Vec<double> redraw_fibre(const MetricModel& M, const Vec<double>& x, std::mt19937_64& rng) {
    const Box b = M.info().box.shrunk(0.05);
    Vec<double> y = x;
    for (int i = M.info().ell; i < b.dim(); ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        y[static_cast<size_t>(i)] = b.lo[static_cast<size_t>(i)] + (b.hi[static_cast<size_t>(i)] - b.lo[static_cast<size_t>(i)]) * u;
    }
    return y;
}

void require_phi(const MetricModel& M, const char* suite) {
    if (!M.info().has_phi) throw ConfigError(std::string(suite) + " suite needs a model with a hamiltonian 2-form");
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteResult kahler_suite(const MetricModel& M, const SuiteOptions& o) {
    auto pts = sample_points(M, o.samples, o.seed);
    const double t1 = o.first_order;
    return sampled({"kahler.compatibility", "kahler.j_squared", "kahler.d_omega", "kahler.nijenhuis", "kahler.nabla_j"},
                   {t1, t1, t1, t1, t1}, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
                       auto f = eval_fields(M, x, kMetric);
                       const int n = f.g.rows;
                       const double gs = max_abs(f.g);
                       Residuals r;
                       r.push_back(rel_residual(max_abs(transpose(f.J) * f.g - f.omega), gs));
                       r.push_back(max_abs(f.J * f.J + Mat<double>::identity(n)));
                       r.push_back(rel_residual(max_abs_t(exterior_d2(kahler_form_of(M), x, o.diff)), gs));
                       r.push_back(rel_residual(max_abs_t(nijenhuis(complex_structure_of(M), x, o.diff)), max_abs(f.J)));
                       auto dJ = partials(complex_structure_of(M), x, o.diff);
                       auto G = christoffel(metric_of(M), x, o.diff);
                       r.push_back(rel_residual(max_abs_t(cov_deriv_endo(f.J, dJ.d, G)), max_abs(f.J)));
                       return r;
                   });
}

SuiteResult hamiltonian_suite(const MetricModel& M, const SuiteOptions& o) {
    require_phi(M, "hamiltonian");
    auto pts = sample_points(M, o.samples, o.seed);
    const double t1 = o.first_order;
    return sampled({"hamiltonian.ham", "hamiltonian.orthogonality", "hamiltonian.momentum_polynomial"}, {t1, t1, t1}, pts,
                   o.seed, [&](const Vec<double>& x, std::size_t) {
                       auto f = eval_fields(M, x, kMetric | kPhi);
                       const int n = f.g.rows, m = n / 2;
                       const Mat<double> ginv = inverse(f.g);
                       auto G = christoffel(metric_of(M), x, o.diff);
                       auto dphi = partials(phi_fn(M), x, o.diff);
                       auto nphi = cov_deriv_2form(f.phi, dphi.d, G);
                       Vec<double> ds = partials(sigma_fn(M), x, o.diff).d;
                       Vec<double> dcs = dc_of(ds, f.J);
                       double worst = 0.0;
                       for (int a = 0; a < n; ++a) {
                           Vec<double> X = row(f.g, a);
                           Vec<double> JX = flat(f.g, jcol(f.J, a));
                           Mat<double> rhs = scaled(0.5, wedge_flat(ds, JX) - wedge_flat(dcs, X));
                           for (int b = 0; b < n; ++b)
                               for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(nphi(a, b, c) - rhs(b, c)));
                       }
                       Residuals r;
                       r.push_back(rel_residual(worst, max_abs_t(nphi)));
                       // Orthogonality of the dξ_j.
                       auto dxi = partials([&M](const auto& y) { return eval_fields(M, y, 0u).xi; }, x, o.diff);
                       const int l = static_cast<int>(f.xi.size());
                       double orth = 0.0;
                       for (int i = 0; i < l; ++i)
                           for (int j = i + 1; j < l; ++j) {
                               auto gij = [&](int p, int q) {
                                   double s = 0.0;
                                   for (int a = 0; a < n; ++a)
                                       for (int b = 0; b < n; ++b)
                                           s += ginv(a, b) * dxi.d[static_cast<size_t>(a)][static_cast<size_t>(p)] *
                                                dxi.d[static_cast<size_t>(b)][static_cast<size_t>(q)];
                                   return s;
                               };
                               orth = std::max(orth, std::abs(gij(i, j)) / std::sqrt(gij(i, i) * gij(j, j)));
                           }
                       r.push_back(orth);
                       // Momentum polynomial against ∏(t − ξ_j) p_c(t).
                       RPoly p = momentum_polynomial(f.phi, f.g, f.omega);
                       RPoly expect = M.info().p_c;
                       for (double xi : f.xi) expect = expect * RPoly({1.0, -xi});
                       double cw = 0.0, cs = 0.0;
                       for (int k = 0; k <= m; ++k) {
                           cw = std::max(cw, std::abs(p.coeff(k) - expect.coeff(k)));
                           cs = std::max(cs, std::abs(expect.coeff(k)));
                       }
                       r.push_back(rel_residual(cw, cs));
                       return r;
                   });
}

SuiteResult symmetry_suite(const MetricModel& M, const SuiteOptions& o) {
    auto pts = sample_points(M, o.samples, o.seed);
    const int l = M.info().ell;
    const double t1 = o.first_order;
    std::vector<std::string> names = {"symmetry.killing", "symmetry.poisson", "symmetry.rigidity"};
    return sampled(names, {t1, t1, t1}, pts, o.seed, [&](const Vec<double>& x, std::size_t idx) {
        auto f = eval_fields(M, x, kMetric);
        const int n = f.g.rows;
        auto G = christoffel(metric_of(M), x, o.diff);
        (void)G;
        auto dg = partials(metric_of(M), x, o.diff);
        Residuals r(3, 0.0);
        // K_r = J grad σ_r.
        auto kgram = [&](const Vec<double>& y) {
            std::vector<Vec<double>> K;
            for (int s = 1; s <= l; ++s)
                K.push_back(hamiltonian_field(M, [&M, s](const auto& z) { return eval_fields(M, z, 0u).sigma[static_cast<size_t>(s)]; }, o.diff)(y));
            auto g = eval_fields(M, y, kMetric).g;
            Mat<double> gram(l);
            for (int a = 0; a < l; ++a)
                for (int b = 0; b < l; ++b) {
                    Vec<double> gk = g * K[static_cast<size_t>(b)];
                    double s = 0.0;
                    for (int i = 0; i < n; ++i) s += K[static_cast<size_t>(a)][static_cast<size_t>(i)] * gk[static_cast<size_t>(i)];
                    gram(a, b) = s;
                }
            return gram;
        };
        for (int s = 1; s <= l; ++s) {
            auto Kf = hamiltonian_field(M, [&M, s](const auto& z) { return eval_fields(M, z, 0u).sigma[static_cast<size_t>(s)]; }, o.diff);
            auto dK = partials(Kf, x, o.diff);
            Mat<double> L = lie_derivative_metric(dK.value, dK.d, f.g, dg.d);
            r[0] = std::max(r[0], rel_residual(max_abs(L), max_abs(f.g) * max_abs_of(dK.value)));
        }
        // Poisson brackets of p(s), p(t) at seeded (s, t).
        if (M.info().has_phi) {
            auto coef = [&M](const auto& y) {
                auto fl = eval_fields(M, y, kMetric | kPhi);
                return momentum_coefficients(fl.phi, fl.g, fl.J);
            };
            auto P = partials(coef, x, o.diff);
            const Mat<double> ginv = inverse(f.g);
            const int m = n / 2;
            std::mt19937_64 rng(o.seed * 1000003ull + idx);
            std::uniform_real_distribution<double> U(-2.0, 2.0);
            auto Kt = [&](double t) {
                Vec<double> dp(static_cast<size_t>(n), 0.0);
                for (int k = 0; k <= m; ++k)
                    for (int a = 0; a < n; ++a) dp[static_cast<size_t>(a)] += std::pow(t, m - k) * P.d[static_cast<size_t>(a)][static_cast<size_t>(k)];
                return Vec<double>(f.J * (ginv * dp));
            };
            for (int trial = 0; trial < 3; ++trial) {
                const double s = U(rng), t = U(rng);
                Vec<double> Ks = Kt(s), Ktt = Kt(t);
                Vec<double> JKs = f.J * Ks;
                Vec<double> gK = f.g * Ktt;
                double br = 0.0, ns = 0.0, nt = 0.0;
                for (int i = 0; i < n; ++i) br += JKs[static_cast<size_t>(i)] * gK[static_cast<size_t>(i)];
                Vec<double> gs = f.g * Ks;
                for (int i = 0; i < n; ++i) {
                    ns += Ks[static_cast<size_t>(i)] * gs[static_cast<size_t>(i)];
                    nt += Ktt[static_cast<size_t>(i)] * gK[static_cast<size_t>(i)];
                }
                r[1] = std::max(r[1], rel_residual(std::abs(br), std::sqrt(std::abs(ns * nt))));
            }
        }
        // Rigidity: ⟨K_r, K_s⟩ depends on the momentum coordinates only.
        if (l > 0) {
            std::mt19937_64 rng(o.seed * 7919ull + idx);
            Vec<double> y = redraw_fibre(M, x, rng);
            Mat<double> a = kgram(x), b = kgram(y);
            r[2] = rel_residual(max_abs(a - b), max_abs(a));
        }
        return r;
    });
}

SuiteResult potential_suite(const MetricModel& M, const SuiteOptions& o) {
    const ModelInfo& I = M.info();
    if (!I.has_potentials || !I.has_phi) throw ConfigError("potential suite needs a model with potentials and φ");
    auto pts = sample_points(M, o.samples, o.seed);
    const double t2 = o.second_order;
    const int l = I.ell;
    const bool lap = xi_chart(I) && static_cast<int>(I.F.size()) == l;
    std::vector<std::string> names = {"potential.ddc_H", "potential.ddc_u", "potential.ddc_Phi", "potential.ddc_u_minus2",
                                      "potential.ddc_kappa"};
    if (lap) {
        names.push_back("potential.laplacian_xi1");
        names.push_back("potential.laplacian_xi1_sq");
        names.push_back("potential.laplacian_kappa");
    }
    std::vector<double> tols(names.size(), t2);
    auto jf = complex_structure_of(M);
    SuiteResult out = sampled(names, tols, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
        auto f = eval_fields(M, x, kMetric | kPhi | kPotentials);
        const int n = f.g.rows;
        const double ws = max_abs(f.omega);
        Residuals r;
        auto pot = [&M](auto sel) {
            return [&M, sel](const auto& y) { return sel(eval_fields(M, y, kPotentials)); };
        };
        auto ddcH = ddc(pot([](const auto& fl) { return fl.H; }), jf, x, o.diff);
        r.push_back(rel_residual(max_abs(ddcH - f.omega), ws));
        double du = 0.0;
        for (int s = 1; s <= l; ++s) {
            auto d = ddc(pot([s](const auto& fl) { return fl.u_at(s); }), jf, x, o.diff);
            du = std::max(du, rel_residual(max_abs(d), ws));
        }
        r.push_back(du);
        auto ddcPhi = ddc(pot([](const auto& fl) { return fl.Phi; }), jf, x, o.diff);
        const double s1 = f.sigma.size() > 1 ? f.sigma[1] : 0.0;
        const double s2 = f.sigma.size() > 2 ? f.sigma[2] : 0.0;
        Mat<double> expect = f.phi + scaled(s1, f.omega);
        r.push_back(rel_residual(max_abs(ddcPhi - expect), max_abs(expect)));
        // dd^c u_{−2} = J∘φ² − σ₁φ − (σ₁² − σ₂)ω, φ² composed as endomorphisms.
        auto ddcU2 = ddc(pot([](const auto& fl) { return fl.u_at(-2); }), jf, x, o.diff);
        const Mat<double> ginv = inverse(f.g);
        Mat<double> A = endo_of(f.phi, ginv);
        Mat<double> e2 = form_of(Mat<double>(f.J * A * A), f.g) - scaled(s1, f.phi) - scaled(s1 * s1 - s2, f.omega);
        r.push_back(rel_residual(max_abs(ddcU2 - e2), max_abs(e2)));
        auto B = curvature_bundle(M, x, o.diff);
        auto ddck = ddc(pot([](const auto& fl) { return fl.kappa; }), jf, x, o.diff);
        r.push_back(rel_residual(max_abs(ddck - B.rho), max_abs(B.rho)));
        if (lap) {
            Vec<double> pc(static_cast<size_t>(l)), D(static_cast<size_t>(l));
            for (int j = 0; j < l; ++j) {
                pc[static_cast<size_t>(j)] = I.p_c(f.xi[static_cast<size_t>(j)]);
                D[static_cast<size_t>(j)] = vandermonde_delta(f.xi, static_cast<size_t>(j));
            }
            double hk = 0.0;  // Δ_h κ from the measured factor curvature
            for (const auto& rt : I.roots) {
                double pnc = 1.0;
                for (double xi : f.xi) pnc *= rt.value - xi;
                hk += -0.5 * rt.scal / pnc;
            }
            auto two_way = [&](auto fn, double lap_h) {
                const double direct = laplacian(fn, metric_of(M), x, o.diff);
                auto jet = scalar_jet(fn, x, o.diff);
                double formula = lap_h;
                for (int j = 0; j < l; ++j) {
                    const RPoly& F = I.F[static_cast<size_t>(j)];
                    const double xi = f.xi[static_cast<size_t>(j)];
                    const double inner = F.derivative()(xi) * jet.grad[static_cast<size_t>(j)] + F(xi) * jet.hess(j, j);
                    formula -= inner / (D[static_cast<size_t>(j)] * pc[static_cast<size_t>(j)]);
                }
                return rel_residual(std::abs(direct - formula), std::abs(direct));
            };
            r.push_back(two_way([&M](const auto& y) { return eval_fields(M, y, 0u).xi[0]; }, 0.0));
            r.push_back(two_way([&M](const auto& y) {
                auto v = eval_fields(M, y, 0u).xi[0];
                return v * v;
            }, 0.0));
            r.push_back(two_way(pot([](const auto& fl) { return fl.kappa; }), hk));
        }
        (void)n;
        return r;
    });
    if (lap || I.kind == "toric") out.push_back(explicit_scal_check(M, o, t2));
    return out;
}

SuiteResult conformal_killing_suite(const MetricModel& M, const SuiteOptions& o) {
    require_phi(M, "conformal_killing");
    if (M.info().m < 2) throw DimensionTooSmall("conformal Killing suite needs m >= 2");
    auto pts = sample_points(M, o.samples, o.seed);
    const double t1 = o.first_order;
    auto psi_fn = [&M](const auto& y) {
        auto f = eval_fields(M, y, kMetric | kPhi);
        auto s = trace_form(f.phi, f.omega, f.g);
        return f.phi - scaled(0.5 * s, f.omega);
    };
    auto trpsi_fn = [&M, psi_fn](const auto& y) {
        auto f = eval_fields(M, y, kMetric);
        return trace_form(psi_fn(y), f.omega, f.g);
    };
    auto S_fn = [&M](const auto& y) {
        auto f = eval_fields(M, y, kMetric | kPhi);
        auto s = trace_form(f.phi, f.omega, f.g);
        auto A = endo_of(f.phi - scaled(s, f.omega), inverse(f.g));
        return form_of(f.J * A, f.g);
    };
    return sampled({"conformal_killing.twistor", "conformal_killing.trace", "conformal_killing.d_psi",
                    "conformal_killing.delta_psi", "conformal_killing.killing_tensor"},
                   {t1, t1, t1, t1, t1}, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
                       auto f = eval_fields(M, x, kMetric | kPhi);
                       const int n = f.g.rows, m = n / 2;
                       const Mat<double> ginv = inverse(f.g);
                       auto G = christoffel(metric_of(M), x, o.diff);
                       auto P = partials(psi_fn, x, o.diff);
                       const Mat<double>& psi = P.value;
                       auto npsi = cov_deriv_2form(psi, P.d, G);
                       Vec<double> alpha(static_cast<size_t>(n), 0.0);  // −δψ = Σ ι_{e_i} ∇_{e_i} ψ
                       for (int c = 0; c < n; ++c)
                           for (int a = 0; a < n; ++a)
                               for (int b = 0; b < n; ++b) alpha[static_cast<size_t>(c)] += ginv(a, b) * npsi(a, b, c);
                       auto beta = exterior_d2(psi_fn, x, o.diff);
                       Residuals r;
                       double tw = 0.0;
                       for (int a = 0; a < n; ++a)
                           for (int b = 0; b < n; ++b)
                               for (int c = 0; c < n; ++c) {
                                   const double rhs = (f.g(a, b) * alpha[static_cast<size_t>(c)] - f.g(a, c) * alpha[static_cast<size_t>(b)]) / (n - 1) +
                                                      beta(a, b, c) / 3.0;
                                   tw = std::max(tw, std::abs(npsi(a, b, c) - rhs));
                               }
                       r.push_back(rel_residual(tw, max_abs_t(npsi)));
                       const double trphi = trace_form(f.phi, f.omega, f.g);
                       const double trpsi = trace_form(psi, f.omega, f.g);
                       r.push_back(rel_residual(std::abs(trpsi - (1.0 - m / 2.0) * trphi), std::abs(trphi)));
                       // Jδψ with δψ = −α.
                       Vec<double> delta(static_cast<size_t>(n));
                       for (int i = 0; i < n; ++i) delta[static_cast<size_t>(i)] = -alpha[static_cast<size_t>(i)];
                       Vec<double> jdelta = dc_of(delta, f.J);
                       auto rhs3 = wedge21(f.omega, jdelta);
                       double dp = 0.0;
                       for (size_t i = 0; i < beta.a.size(); ++i) dp = std::max(dp, std::abs(beta.a[i] + 3.0 / (n - 1) * rhs3.a[i]));
                       r.push_back(rel_residual(dp, max_abs_t(beta)));
                       Vec<double> dtr = partials(trpsi_fn, x, o.diff).d;
                       double dl = 0.0, ds = 0.0;
                       for (int i = 0; i < n; ++i) {
                           dl = std::max(dl, std::abs((m - 2) * jdelta[static_cast<size_t>(i)] + (2 * m - 1) * dtr[static_cast<size_t>(i)]));
                           ds = std::max(ds, std::abs((2 * m - 1) * dtr[static_cast<size_t>(i)]));
                       }
                       r.push_back(rel_residual(dl, ds));
                       auto PS = partials(S_fn, x, o.diff);
                       auto nS = cov_deriv_2form(PS.value, PS.d, G);
                       double ks = 0.0;
                       for (int a = 0; a < n; ++a)
                           for (int b = 0; b < n; ++b)
                               for (int c = 0; c < n; ++c) ks = std::max(ks, std::abs(nS(a, b, c) + nS(b, c, a) + nS(c, a, b)));
                       r.push_back(rel_residual(ks, max_abs_t(nS)));
                       return r;
                   });
}

SuiteResult jet_suite(const MetricModel& M, const SuiteOptions& o, const CharpolyData* cp) {
    require_phi(M, "jet");
    auto pts = sample_points(M, o.samples, o.seed);
    const double t1 = o.first_order, t2 = o.second_order;
    const int m = M.info().m, n = 2 * m;
    auto sig = sigma_fn(M);
    auto Kf = hamiltonian_field(M, sig, o.diff);
    auto u_fn = [&M, sig, d = o.diff](const auto& y) { return 0.5 * laplacian(sig, metric_of(M), y, d); };
    std::vector<std::vector<double>> fc_coeffs;
    SuiteResult out = sampled({"jet.nabla_phi", "jet.nabla_K", "jet.du", "jet.rho_phi_commutator"}, {t1, t2, t2, t2}, pts, o.seed,
                              [&](const Vec<double>& x, std::size_t) {
        auto f = eval_fields(M, x, kMetric | kPhi);
        const Mat<double> ginv = inverse(f.g);
        auto G = christoffel(metric_of(M), x, o.diff);
        auto dphi = partials(phi_fn(M), x, o.diff);
        auto nphi = cov_deriv_2form(f.phi, dphi.d, G);
        auto dK = partials(Kf, x, o.diff);
        const Vec<double>& K = dK.value;
        Vec<double> Kb = f.g * K;
        Vec<double> JKb = f.g * Vec<double>(f.J * K);
        Residuals r;
        double w = 0.0;
        for (int a = 0; a < n; ++a) {
            Mat<double> rhs = scaled(-0.5, wedge_flat(Kb, row(f.g, a)) + wedge_flat(JKb, flat(f.g, jcol(f.J, a))));
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) w = std::max(w, std::abs(nphi(a, b, c) - rhs(b, c)));
        }
        r.push_back(rel_residual(w, max_abs_t(nphi)));
        // ∇K as the endomorphism X ↦ ∇_X K.
        Mat<double> E = transpose(cov_deriv_vector(K, dK.d, G));
        auto B = curvature_bundle(M, x, o.diff);
        const double u = u_fn(x);
        Mat<double> Ar = endo_of(B.rho, ginv), Ap = endo_of(f.phi, ginv);
        Mat<double> Rphi = endo_of(curvature_operator(B, f.phi), ginv);
        Mat<double> corr = scaled(2.0 * u, f.J) - f.J * (Ar * Ap + Ap * Ar) - scaled(2.0, Rphi);
        Mat<double> lhs = E + scaled(1.0 / (2.0 * m), corr);
        r.push_back(rel_residual(max_abs(lhs), max_abs(E)));
        Vec<double> du = partials(u_fn, x, o.diff).d;
        double wd = 0.0, sd = 0.0;
        for (int b = 0; b < n; ++b) {
            double rk = 0.0;
            for (int a = 0; a < n; ++a) rk += K[static_cast<size_t>(a)] * B.rho(a, b);
            wd = std::max(wd, std::abs(du[static_cast<size_t>(b)] + rk));
            sd = std::max(sd, std::abs(rk));
        }
        r.push_back(rel_residual(wd, sd));
        r.push_back(rel_residual(max_abs(Ar * Ap - Ap * Ar), max_abs(Ar) * max_abs(Ap)));
        if (cp) {
            // F_c(t) = (τ₀t² + τ₁t + τ₂) p(t) − ⟨K, K(t)⟩.
            const double sigma = sig(x);
            const double s1 = f.sigma.size() > 1 ? f.sigma[1] : 0.0;
            const double tau0 = cp->c_m2;
            const double tau1 = cp->c_m2 * (s1 - cp->root_sum) + cp->c_m1;
            const double a = -0.5 * tau0, b = -0.5 * tau1 - a * sigma;
            const double pp = inner2(f.phi, f.phi, ginv);
            const double tau2 = (2.0 / m) * (a * (sigma * sigma + pp) + b * sigma - u);
            auto coef = [&M](const auto& y) {
                auto fl = eval_fields(M, y, kMetric | kPhi);
                return momentum_coefficients(fl.phi, fl.g, fl.J);
            };
            auto P = partials(coef, x, o.diff);
            std::vector<double> kk(static_cast<size_t>(m + 1), 0.0);
            for (int k = 0; k <= m; ++k) {
                Vec<double> dp(static_cast<size_t>(n));
                for (int c = 0; c < n; ++c) dp[static_cast<size_t>(c)] = P.d[static_cast<size_t>(c)][static_cast<size_t>(k)];
                Vec<double> Kk = f.J * (ginv * dp);
                Vec<double> gK = f.g * Kk;
                for (int c = 0; c < n; ++c) kk[static_cast<size_t>(k)] += K[static_cast<size_t>(c)] * gK[static_cast<size_t>(c)];
            }
            RPoly Fc = RPoly({tau0, tau1, tau2}) * RPoly(P.value) - RPoly(kk);
            std::vector<double> c(static_cast<size_t>(m + 3));
            for (int k = 0; k <= m + 2; ++k) c[static_cast<size_t>(k)] = Fc.coeff(k);
            fc_coeffs.push_back(c);
        }
        return r;
    });
    if (cp) {
        const size_t nc = static_cast<size_t>(m + 3);
        std::vector<double> spread(nc, 0.0), match;
        for (size_t k = 0; k < nc && !fc_coeffs.empty(); ++k) {
            double lo = INFINITY, hi = -INFINITY;
            for (const auto& c : fc_coeffs) {
                lo = std::min(lo, c[k]);
                hi = std::max(hi, c[k]);
            }
            spread[k] = hi - lo;
        }
        for (const auto& c : fc_coeffs) {
            double w = 0.0;
            for (size_t k = 0; k < nc; ++k) w = std::max(w, std::abs(c[k] - cp->F.coeff(static_cast<int>(k))));
            match.push_back(w);
        }
        if (fc_coeffs.size() < pts.size()) {
            spread.push_back(NAN);
            match.push_back(NAN);
        }
        auto rs = make_report("jet.charpoly_spread", spread, cp->spread_tol, o.seed);
        rs.note = "details are per-coefficient spreads across samples";
        out.push_back(rs);
        out.push_back(make_report("jet.charpoly_match", match, cp->match_tol, o.seed));
    }
    return out;
}

CheckReport bijection_check(const MetricModel& M, const SuiteOptions& o, double tol) {
    require_phi(M, "bijection");
    auto pts = sample_points(M, o.samples, o.seed);
    const int m = M.info().m;
    auto sig = sigma_fn(M);
    return sampled({"bijection"}, {tol}, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
        auto f = eval_fields(M, x, kMetric | kPhi);
        auto B = curvature_bundle(M, x, o.diff);
        const double s = B.s;
        if (std::abs(s) < 1e-12) throw Error("bijection check needs nonzero scalar curvature");
        auto tau = [&M, sig, s, m, d = o.diff](const auto& y) {
            return sig(y) / static_cast<double>(m) - laplacian(sig, metric_of(M), y, d) / (2.0 * s);
        };
        auto dd = ddc(tau, complex_structure_of(M), x, o.diff);
        Mat<double> rhs = scaled(m / (2.0 * s), dd) + scaled(tau(x), f.omega);
        return Residuals{rel_residual(max_abs(f.phi - rhs), max_abs(f.phi))};
    })[0];
}

CheckReport orthotoric_detector(const MetricModel& M, const SuiteOptions& o, double tol) {
    if (M.info().kind.rfind("toric", 0) != 0) throw ConfigError("orthotoric detector needs a toric model");
    auto pts = sample_points(M, o.samples, o.seed);
    const int m = M.info().m;
    auto alpha = [&M, m, d = o.diff](const auto& y) {
        auto du = partials([&M](const auto& z) { return eval_fields(M, z, kPotentials).u; }, y, d);
        auto fl = eval_fields(M, y, 0u);
        using T = std::decay_t<decltype(y[0])>;
        const size_t n = y.size();
        Vec<T> a(n, T(0.0));
        for (int r = 1; r <= m; ++r) {
            T next = (r < m) ? fl.sigma[static_cast<size_t>(r + 1)] : T(0.0);
            T c = fl.sigma[1] * fl.sigma[static_cast<size_t>(r)] - next;
            for (size_t b = 0; b < n; ++b) a[b] += c * du.d[b][static_cast<size_t>(r + 2)];
        }
        return a;
    };
    return sampled({"orthotoric_detector"}, {tol}, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
        auto a = alpha(x);
        auto da = exterior_d1(alpha, x, o.diff);
        return Residuals{rel_residual(max_abs(da), max_abs_of(a))};
    })[0];
}

namespace {

double scal_formula(const MetricModel& M, const Fields<double>& f) {
    const ModelInfo& I = M.info();
    const int l = static_cast<int>(f.xi.size());
    if (static_cast<int>(I.F.size()) != l) throw ConfigError("explicit scalar curvature needs one F per non-constant root");
    double s = 0.0;
    for (const auto& rt : I.roots) {
        double pnc = 1.0;
        for (double xi : f.xi) pnc *= rt.value - xi;
        s += rt.scal / pnc;
    }
    for (int j = 0; j < l; ++j) {
        const double xi = f.xi[static_cast<size_t>(j)];
        s -= I.F[static_cast<size_t>(j)].derivative().derivative()(xi) /
             (vandermonde_delta(f.xi, static_cast<size_t>(j)) * I.p_c(xi));
    }
    return s;
}

}  // namespace

CheckReport explicit_scal_check(const MetricModel& M, const SuiteOptions& o, double tol) {
    auto pts = sample_points(M, o.samples, o.seed);
    return sampled({"potential.explicit_scal"}, {tol}, pts, o.seed, [&](const Vec<double>& x, std::size_t) {
        auto f = eval_fields(M, x, 0u);
        auto B = curvature_bundle(M, x, o.diff);
        return Residuals{rel_residual(std::abs(B.scal - scal_formula(M, f)), std::abs(B.scal))};
    })[0];
}

std::vector<double> scal_samples(const MetricModel& M, const SuiteOptions& o) {
    std::vector<double> out;
    for (const auto& x : sample_points(M, o.samples, o.seed)) out.push_back(curvature_bundle(M, x, o.diff).scal);
    return out;
}

SuiteResult run_suite(const std::string& name, const MetricModel& M, const SuiteOptions& o) {
    if (name == "kahler") return kahler_suite(M, o);
    if (name == "hamiltonian") return hamiltonian_suite(M, o);
    if (name == "symmetry") return symmetry_suite(M, o);
    if (name == "potential") return potential_suite(M, o);
    if (name == "conformal_killing") return conformal_killing_suite(M, o);
    if (name == "jet") return jet_suite(M, o);
    throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace kahler
