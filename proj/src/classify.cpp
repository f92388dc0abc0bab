#include "kahler/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kahler {

ClassKind class_kind_from_string(const std::string& s) {
    if (s == "extremal") return ClassKind::extremal;
    if (s == "csc") return ClassKind::csc;
    if (s == "wbf") return ClassKind::wbf;
    if (s == "ke") return ClassKind::ke;
    if (s == "bf") return ClassKind::bf;
    if (s == "chsc") return ClassKind::chsc;
    if (s == "conf_einstein") return ClassKind::conf_einstein;
    throw ConfigError("unknown class kind '" + s + "'");
}

std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::extremal: return "extremal";
        case ClassKind::csc: return "csc";
        case ClassKind::wbf: return "wbf";
        case ClassKind::ke: return "ke";
        case ClassKind::bf: return "bf";
        case ClassKind::chsc: return "chsc";
        case ClassKind::conf_einstein: return "conf_einstein";
    }
    return "?";
}

ClassKind base_kind(ClassKind k) {
    switch (k) {
        case ClassKind::csc: return ClassKind::extremal;
        case ClassKind::ke: return ClassKind::wbf;
        case ClassKind::chsc: return ClassKind::bf;
        default: return k;
    }
}

namespace {

/// Exponent shift on each constant root: p̌_c, p_c, p̂_c.
int mult_shift(ClassKind k) {
    switch (base_kind(k)) {
        case ClassKind::extremal: return -1;
        case ClassKind::wbf: return 0;
        case ClassKind::bf: return 1;
        default: throw ConfigError("no class polynomial for kind " + to_string(k));
    }
}

/// Degree of Σ coeff_r t^{deg − r}: ňm, ℓ + 1, m̂ + 2.
int coeff_degree(ClassKind k, int ell, int nroots) {
    switch (base_kind(k)) {
        case ClassKind::extremal: return ell + nroots;
        case ClassKind::wbf: return ell + 1;
        case ClassKind::bf: return ell - nroots + 2;
        default: throw ConfigError("no class polynomial for kind " + to_string(k));
    }
}

template <class S>
Poly<S> root_factor(ClassKind kind, const std::vector<S>& roots, const std::vector<int>& mults) {
    std::vector<S> r;
    std::vector<int> e;
    for (size_t i = 0; i < roots.size(); ++i)
        if (mults[i] + mult_shift(kind) > 0) {
            r.push_back(roots[i]);
            e.push_back(mults[i] + mult_shift(kind));
        }
    return from_roots(r, e);
}

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

std::vector<double> root_values(const SpectrumSpec& s) {
    std::vector<double> v;
    for (const auto& r : s.roots) v.push_back(r.value);
    return v;
}
std::vector<int> root_mults(const SpectrumSpec& s) {
    std::vector<int> v;
    for (const auto& r : s.roots) v.push_back(r.mult);
    return v;
}

/// Sign F must have on domain j: that of p_c Δ_j.
double required_sign(const SpectrumSpec& s, const RPoly& pc, int j) {
    const double t = s.domains[static_cast<size_t>(j)].mid();
    double d = pc(t);
    for (int k = 0; k < s.ell; ++k)
        if (k != j) d *= t - s.domains[static_cast<size_t>(k)].mid();
    return sgn(d);
}

struct ConstantWindow {
    double lo = -INFINITY, hi = INFINITY;
    int lo_dom = -1, hi_dom = -1;
    bool feasible() const { return lo < hi; }
    double pick() const {
        if (std::isinf(hi)) return lo + 0.5 * (1.0 + std::abs(lo));
        if (std::isinf(lo)) return hi - 0.5 * (1.0 + std::abs(hi));
        return 0.5 * (lo + hi);
    }
};

/// Range of k0 for which P + k0 has the required sign on every domain.
ConstantWindow constant_window(const SpectrumSpec& s, const RPoly& pc, const RPoly& P) {
    ConstantWindow w;
    for (int j = 0; j < s.ell; ++j) {
        const auto& d = s.domains[static_cast<size_t>(j)];
        double mn = INFINITY, mx = -INFINITY;
        const int N = 2000;
        for (int i = 0; i <= N; ++i) {
            const double v = P(d.lo + (d.hi - d.lo) * i / N);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        if (required_sign(s, pc, j) > 0) {
            if (-mn > w.lo) w.lo = -mn, w.lo_dom = j;
        } else {
            if (-mx < w.hi) w.hi = -mx, w.hi_dom = j;
        }
    }
    return w;
}

[[noreturn]] void no_constant(const SpectrumSpec& s, const ConstantWindow& w) {
    const auto& a = s.domains[static_cast<size_t>(w.lo_dom)];
    const auto& b = s.domains[static_cast<size_t>(w.hi_dom)];
    std::ostringstream os;
    os << "no integration constant makes F of the required sign on both (" << a.lo << ", " << a.hi << ") and ("
       << b.lo << ", " << b.hi << ")";
    throw PositivityViolation(os.str());
}

/// k0 with P + k0 of the required sign on every domain.
double positivity_constant(const SpectrumSpec& s, const RPoly& P) {
    auto w = constant_window(s, p_c_of(s), P);
    if (!w.feasible()) no_constant(s, w);
    return w.pick();
}

/// {k1, k0} for P + k1 t + k0: k1 = 0 when that works, otherwise the smallest slope
/// on a geometric ladder that admits some k0.
std::vector<double> positivity_constants2(const SpectrumSpec& s, const RPoly& P) {
    const RPoly pc = p_c_of(s);
    auto w0 = constant_window(s, pc, P);
    if (w0.feasible()) return {0.0, w0.pick()};
    double scale = 1.0;
    for (const auto& d : s.domains) scale = std::max({scale, std::abs(P(d.lo)), std::abs(P(d.hi))});
    double best_k1 = 0.0, best_width = -1.0;
    ConstantWindow best;
    for (int i = -6; i <= 12 && best_width < 0.0; ++i)
        for (double sg : {1.0, -1.0}) {
            const double k1 = sg * scale * std::ldexp(1.0, i);
            auto w = constant_window(s, pc, P + RPoly({k1, 0.0}));
            if (!w.feasible()) continue;
            const double width = (std::isinf(w.lo) || std::isinf(w.hi)) ? INFINITY : w.hi - w.lo;
            if (width > best_width) best_width = width, best_k1 = k1, best = w;
        }
    if (best_width < 0.0) no_constant(s, w0);
    return {best_k1, best.pick()};
}

/// Signed Scal target for each constant root.
std::vector<double> factor_targets(ClassKind kind, const RPoly& Q, const SpectrumSpec& s) {
    std::vector<double> out;
    for (const auto& r : s.roots) {
        double prod = 1.0;
        for (const auto& e : s.roots)
            if (&e != &r) prod *= r.value - e.value;
        const double q = Q(r.value);
        switch (base_kind(kind)) {
            case ClassKind::extremal: out.push_back(-q / prod); break;
            case ClassKind::wbf: out.push_back(-r.mult * q); break;
            case ClassKind::bf: out.push_back(-r.mult * (r.mult + 1) * q * prod); break;
            default: break;
        }
    }
    return out;
}

/// Space form of complex dimension d with sign·Scal = target.
SpaceForm calibrated_factor(int d, int sign, double target, double r_max) {
    if (std::abs(target) < 1e-14) return space_form_factor(d, 0.0, 1.0, r_max);
    // Hyperbolic charts keep 1 + k|w|² ≥ 1/2.
    const double k = target * sign > 0 ? 1.0 : -std::min(1.0, 0.25 / (d * r_max * r_max));
    return calibrate_scal(space_form_factor(d, k, 1.0, r_max), sign, target);
}

struct CeData {
    int m;
    double ap, am, c, p, q;
};

CeData ce_data(const ClassSpec& cs) {
    if (cs.coeffs.size() != 5) throw ConfigError("conf_einstein needs coefficients (a_plus, a_minus, c, p, q)");
    return {cs.spectrum.m, cs.coeffs[0], cs.coeffs[1], cs.coeffs[2], cs.coeffs[3], cs.coeffs[4]};
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

RPoly conf_einstein_F(const CeData& d) {
    const int m = d.m;
    std::vector<double> c(static_cast<size_t>(2 * m + 1), 0.0);  // ascending
    for (int j = 1; j <= m; ++j) {
        const double w = static_cast<double>(j) / m * binom(2 * m, m + j);
        c[static_cast<size_t>(m + j)] += w * d.ap * std::pow(d.p, m - j) * std::pow(d.q, j - 1);
        c[static_cast<size_t>(m - j)] -= w * d.am * std::pow(d.p, j - 1) * std::pow(d.q, m - j);
    }
    c[static_cast<size_t>(m)] += 2.0 * d.c / m;
    std::reverse(c.begin(), c.end());
    return RPoly(c);
}

CalabiSpec ce_calabi(const CeData& d, const Interval& z, double r_max) {
    if (d.m < 2) throw ConfigError("conf_einstein needs m >= 2");
    if (!(z.lo > 0.0) || !(z.hi > z.lo)) throw ConfigError("conf_einstein needs a z-interval inside (0, inf)");
    const double a = d.q * z.lo + d.p, b = d.q * z.hi + d.p;
    if (!(a * b > 0.0)) throw ConfigError("conformal factor qz + p vanishes on the z-interval");
    CalabiSpec c;
    c.m = d.m;
    c.F = conf_einstein_F(d);
    c.z = z;
    // ρ₀ = c ω₀ on a base of complex dimension m − 1.
    c.base = calibrated_factor(d.m - 1, 1, 2.0 * (d.m - 1) * d.c, r_max);
    return c;
}

double max_abs_m(const Mat<double>& m) { return max_abs(m); }

}  // namespace

template <class S>
Poly<S> class_polynomial(ClassKind kind, const std::vector<S>& coeffs, const std::vector<S>& roots,
                         const std::vector<int>& mults) {
    return root_factor(kind, roots, mults) * Poly<S>(coeffs);
}

template <class S>
std::vector<S> class_coefficients(ClassKind kind, const Poly<S>& P, const std::vector<S>& roots,
                                  const std::vector<int>& mults, int ell) {
    Poly<S> q = divide_exact(P, root_factor(kind, roots, mults));
    const int deg = coeff_degree(kind, ell, static_cast<int>(roots.size()));
    if (q.degree() > deg) throw ConfigError("polynomial degree too large for the class");
    std::vector<S> out(static_cast<size_t>(deg + 1), S(0));
    for (int k = 0; k <= deg; ++k) out[static_cast<size_t>(deg - k)] = q.coeff(k);
    return out;
}

template Poly<double> class_polynomial(ClassKind, const std::vector<double>&, const std::vector<double>&,
                                       const std::vector<int>&);
template Poly<mpq_class> class_polynomial(ClassKind, const std::vector<mpq_class>&, const std::vector<mpq_class>&,
                                          const std::vector<int>&);
template std::vector<double> class_coefficients(ClassKind, const Poly<double>&, const std::vector<double>&,
                                                const std::vector<int>&, int);
template std::vector<mpq_class> class_coefficients(ClassKind, const Poly<mpq_class>&, const std::vector<mpq_class>&,
                                                   const std::vector<int>&, int);

int class_coefficient_count(const ClassSpec& cs) {
    if (cs.kind == ClassKind::conf_einstein) return 5;
    return coeff_degree(cs.kind, cs.spectrum.ell, static_cast<int>(cs.spectrum.roots.size())) + 1;
}

ClassF make_class_F(const ClassSpec& cs) {
    ClassF out;
    if (cs.kind == ClassKind::conf_einstein) {
        CeData d = ce_data(cs);
        out.F = conf_einstein_F(d);
        out.factor_targets = {2.0 * (d.m - 1) * d.c};
        return out;
    }
    SpectrumSpec s = cs.spectrum;
    s.F = {RPoly::constant(1.0)};
    validate_spectrum(s);
    const int want = class_coefficient_count(cs);
    if (static_cast<int>(cs.coeffs.size()) != want) {
        std::ostringstream os;
        os << to_string(cs.kind) << " needs " << want << " coefficients, got " << cs.coeffs.size();
        throw ConfigError(os.str());
    }
    if (cs.kind != base_kind(cs.kind) && cs.coeffs[0] != 0.0)
        throw ConfigError(to_string(cs.kind) + " requires the leading coefficient to be zero");
    const RPoly Q(cs.coeffs);
    const RPoly base = class_polynomial(cs.kind, cs.coeffs, root_values(s), root_mults(s));
    const ClassKind bk = base_kind(cs.kind);
    RPoly P;
    size_t nconst = 0;
    if (bk == ClassKind::extremal) {
        P = base.antiderivative().antiderivative();
        nconst = 2;
    } else if (bk == ClassKind::wbf) {
        P = base.antiderivative();
        nconst = 1;
    } else {
        P = base;
    }
    if (!cs.integration.empty() && cs.integration.size() != nconst) {
        std::ostringstream os;
        os << to_string(cs.kind) << " takes " << nconst << " integration constants, got " << cs.integration.size();
        throw ConfigError(os.str());
    }
    if (nconst == 2) {
        out.integration = cs.integration.empty() ? positivity_constants2(s, P) : cs.integration;
        out.F = P + RPoly({out.integration[0], out.integration[1]});
        if (out.F.degree() > s.m + 2) throw Error("extremal F exceeds degree m + 2");
    } else if (nconst == 1) {
        out.integration = cs.integration.empty() ? std::vector<double>{positivity_constant(s, P)} : cs.integration;
        out.F = P + RPoly::constant(out.integration[0]);
    } else {
        out.F = P;
    }
    out.factor_targets = factor_targets(cs.kind, Q, s);
    s.F = {out.F};
    resolve_signs(s);  // positivity on every domain
    return out;
}

SpectrumSpec class_spectrum(const ClassSpec& cs, const ClassF& cf) {
    if (cs.kind == ClassKind::conf_einstein) throw ConfigError("conf_einstein builds a Calabi-type model, not a spectrum");
    SpectrumSpec s = cs.spectrum;
    s.F = {cf.F};
    for (auto& r : s.roots) r.factor = space_form_factor(r.mult, 0.0, 1.0, r.factor.r_max);
    s = resolve_signs(s);
    for (size_t i = 0; i < s.roots.size(); ++i) {
        auto& r = s.roots[i];
        r.factor = calibrated_factor(r.mult, r.sign, cf.factor_targets[i], r.factor.r_max);
    }
    return s;
}

ModelPtr build_class(const ClassSpec& cs) {
    ClassF cf = make_class_F(cs);
    if (cs.kind == ClassKind::conf_einstein) {
        if (cs.spectrum.domains.empty()) throw ConfigError("conf_einstein needs a z-interval");
        return build_calabi(ce_calabi(ce_data(cs), cs.spectrum.domains[0], 0.5));
    }
    return build_general(class_spectrum(cs, cf));
}

ClassSpec reinterpret(const ClassSpec& cs, const ClassF& cf, ClassKind target) {
    ClassSpec out = cs;
    out.kind = target;
    out.integration.clear();
    const auto rv = root_values(cs.spectrum);
    const auto rm = root_mults(cs.spectrum);
    RPoly P = cf.F;
    switch (base_kind(target)) {
        case ClassKind::extremal:
            P = P.derivative().derivative();
            out.integration = {cf.F.coeff(1), cf.F.coeff(0)};
            break;
        case ClassKind::wbf:
            P = P.derivative();
            out.integration = {cf.F.coeff(0)};
            break;
        case ClassKind::bf: break;
        default: throw ConfigError("cannot reinterpret as " + to_string(target));
    }
    out.coeffs = class_coefficients(target, P, rv, rm, cs.spectrum.ell);
    return out;
}

// ---------------------------------------------------------------------------

CheckReport rho_tilde_proportional(const MetricModel& M, const SuiteOptions& o, const std::string& name) {
    std::vector<double> res;
    std::string note;
    const int m = M.info().m;
    for (const auto& x : sample_points(M, o.samples, o.seed)) {
        try {
            auto B = curvature_bundle(M, x, o.diff);
            const double lam = inner2(B.rho_tilde, B.omega, B.ginv) / m;
            res.push_back(rel_residual(max_abs_m(B.rho_tilde - scaled(lam, B.omega)), max_abs_m(B.rho_tilde)));
        } catch (const Error& e) {
            res.push_back(NAN);
            if (note.empty()) note = e.what();
        }
    }
    auto r = make_report(name, res, o.second_order, o.seed);
    r.note = note;
    return r;
}

namespace {

template <class Fn>
CheckReport pointwise(const MetricModel& M, const SuiteOptions& o, const std::string& name, double tol, Fn fn) {
    std::vector<double> res;
    std::string note;
    for (const auto& x : sample_points(M, o.samples, o.seed)) {
        try {
            res.push_back(fn(x));
        } catch (const Error& e) {
            res.push_back(NAN);
            if (note.empty()) note = e.what();
        }
    }
    auto r = make_report(name, res, tol, o.seed);
    r.note = note;
    return r;
}

void require_general(const MetricModel& M, const char* what) {
    if (!M.info().has_phi || M.info().kind.rfind("general", 0) != 0)
        throw ConfigError(std::string(what) + " needs a model from the general builder");
}

}  // namespace

SuiteResult check_extremal(const MetricModel& M, const ClassSpec& cs, const SuiteOptions& o, double spread_tol) {
    require_general(M, "check_extremal");
    if (base_kind(cs.kind) != ClassKind::extremal) throw ConfigError("check_extremal needs extremal coefficients");
    const double a0 = cs.coeffs.at(0), a1 = cs.coeffs.at(1);
    double root_sum = 0.0;
    for (const auto& r : cs.spectrum.roots) root_sum += r.value;
    const double t2 = o.second_order;
    SuiteResult out;
    auto ex = explicit_scal_check(M, o, t2);
    ex.name = "extremal.explicit_scal";
    out.push_back(ex);
    out.push_back(pointwise(M, o, "extremal.scal_affine", t2, [&](const Vec<double>& x) {
        auto f = eval_fields(M, x, 0u);
        const double scal = curvature_bundle(M, x, o.diff).scal;
        const double expect = -(a0 * (f.sigma[1] + root_sum) + a1);
        return rel_residual(std::abs(scal - expect), std::abs(scal));
    }));
    auto scal_fn = [&M, d = o.diff](const auto& y) { return curvature_bundle(M, y, d).scal; };
    auto K_fn = [&M, scal_fn, d = o.diff](const auto& y) {
        auto P = partials(scal_fn, y, d);
        auto fl = eval_fields(M, y, kMetric);
        return fl.J * (inverse(fl.g) * P.d);
    };
    out.push_back(pointwise(M, o, "extremal.killing", t2, [&](const Vec<double>& x) {
        auto dK = partials(K_fn, x, o.diff);
        auto dg = partials(metric_of(M), x, o.diff);
        const Mat<double> g = eval_fields(M, x, kMetric).g;
        const Mat<double> L = lie_derivative_metric(dK.value, dK.d, g, dg.d);
        double kmax = 0.0;
        for (double v : dK.value) kmax = std::max(kmax, std::abs(v));
        return rel_residual(max_abs(L), kmax * max_abs(g));
    }));
    if (a0 == 0.0) {
        auto v = scal_samples(M, o);
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        out.push_back(make_report("extremal.scal_spread", {*hi - *lo}, spread_tol, o.seed));
    }
    return out;
}

SuiteResult check_wbf(const MetricModel& M, const ClassSpec& cs, const SuiteOptions& o) {
    require_general(M, "check_wbf");
    if (base_kind(cs.kind) != ClassKind::wbf) throw ConfigError("check_wbf needs wbf coefficients");
    const double bm1 = cs.coeffs.at(0), b0 = cs.coeffs.at(1);
    const double t2 = o.second_order;
    SuiteResult out;
    out.push_back(pointwise(M, o, "wbf.ricci_form", t2, [&](const Vec<double>& x) {
        auto f = eval_fields(M, x, kMetric | kPhi);
        auto B = curvature_bundle(M, x, o.diff);
        Mat<double> rhs = scaled(-0.5, scaled(bm1, f.phi + scaled(f.sigma[1], f.omega)) + scaled(b0, f.omega));
        return rel_residual(max_abs(B.rho - rhs), max_abs(B.rho));
    }));
    auto rt_fn = [&M, d = o.diff](const auto& y) { return curvature_bundle(M, y, d).rho_tilde; };
    auto s_fn = [&M, d = o.diff](const auto& y) { return curvature_bundle(M, y, d).s; };
    out.push_back(pointwise(M, o, "wbf.weak_einstein", t2, [&](const Vec<double>& x) {
        auto f = eval_fields(M, x, kMetric);
        const int n = f.g.rows;
        auto G = christoffel(metric_of(M), x, o.diff);
        auto P = partials(rt_fn, x, o.diff);
        auto nr = cov_deriv_2form(P.value, P.d, G);
        Vec<double> ds = partials(s_fn, x, o.diff).d;
        Vec<double> dcs = dc_of(ds, f.J);
        double w = 0.0;
        for (int a = 0; a < n; ++a) {
            Vec<double> X(static_cast<size_t>(n)), JX(static_cast<size_t>(n)), jc(static_cast<size_t>(n));
            for (int b = 0; b < n; ++b) {
                X[static_cast<size_t>(b)] = f.g(a, b);
                jc[static_cast<size_t>(b)] = f.J(b, a);
            }
            JX = f.g * jc;
            Mat<double> rhs = scaled(0.5, wedge(ds, JX) - wedge(dcs, X));
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) w = std::max(w, std::abs(nr(a, b, c) - rhs(b, c)));
        }
        double scale = 0.0;
        for (double v : nr.a) scale = std::max(scale, std::abs(v));
        return rel_residual(w, scale);
    }));
    if (bm1 == 0.0) out.push_back(rho_tilde_proportional(M, o, "wbf.kahler_einstein"));
    return out;
}

SuiteResult check_bf(const MetricModel& M, const ClassSpec& cs, const ClassF& cf, const SuiteOptions& o) {
    require_general(M, "check_bf");
    if (base_kind(cs.kind) != ClassKind::bf) throw ConfigError("check_bf needs bf coefficients");
    const double t2 = o.second_order;
    SuiteResult out;
    out.push_back(pointwise(M, o, "bf.bochner", t2, [&](const Vec<double>& x) {
        auto B = curvature_bundle(M, x, o.diff);
        auto K = kahler_decompose(B);
        return K.bochner_norm;
    }));
    CharpolyData cp;
    cp.c_m2 = cs.coeffs.at(0);
    cp.c_m1 = cs.coeffs.at(1);
    for (const auto& r : cs.spectrum.roots) cp.root_sum += r.value;
    cp.F = cf.F;
    for (auto& r : jet_suite(M, o, &cp)) out.push_back(r);
    if (cp.c_m2 == 0.0) out.push_back(rho_tilde_proportional(M, o, "bf.chsc"));
    if (cp.c_m2 == 0.0 && cp.c_m1 == 0.0)
        out.push_back(pointwise(M, o, "bf.flat", t2, [&](const Vec<double>& x) {
            auto B = curvature_bundle(M, x, o.diff);
            double w = 0.0;
            for (double v : B.rm.a) w = std::max(w, std::abs(v));
            return w;
        }));
    return out;
}

CheckReport conformal_einstein_check(const MetricModel& M, double p, double q, const SuiteOptions& o) {
    auto gt = [&M, p, q](const auto& y) {
        auto g = eval_fields(M, y, kMetric).g;
        auto tau = q * y[0] + p;
        auto w = 1.0 / (tau * tau);
        for (auto& v : g.a) v = w * v;
        return g;
    };
    return pointwise(M, o, "conf_einstein.traceless_ricci", o.second_order, [&](const Vec<double>& x) {
        auto f = eval_fields(M, x, kMetric);
        auto B = curvature_from(gt, f.J, f.omega, x, o.diff);
        const int n = B.g.rows;
        Mat<double> r0 = B.ric - scaled(B.scal / n, B.g);
        return rel_residual(max_abs(r0), max_abs(B.ric));
    });
}

ConfEinsteinResult conf_einstein(int m, double p, double q, double a_plus, double a_minus, double c, Interval z,
                                 const SuiteOptions& o, double r_max) {
    CeData d{m, a_plus, a_minus, c, p, q};
    CalabiSpec spec = ce_calabi(d, z, r_max);
    ConfEinsteinResult out;
    out.model = build_calabi(spec);
    out.F.F = spec.F;
    out.F.factor_targets = {2.0 * (m - 1) * c};
    out.report = conformal_einstein_check(*out.model, p, q, o);
    return out;
}

SuiteResult check_class(const MetricModel& M, const ClassSpec& cs, const ClassF& cf, const SuiteOptions& o) {
    switch (base_kind(cs.kind)) {
        case ClassKind::extremal: return check_extremal(M, cs, o);
        case ClassKind::wbf: return check_wbf(M, cs, o);
        case ClassKind::bf: return check_bf(M, cs, cf, o);
        case ClassKind::conf_einstein: {
            CeData d = ce_data(cs);
            return {conformal_einstein_check(M, d.p, d.q, o)};
        }
        default: break;
    }
    throw ConfigError("unknown class kind");
}

}  // namespace kahler
