#include "kahler/ansatz.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <sstream>

#include "kahler/symfunc.hpp"

namespace kahler {

Mat<double> standard_j(int d) {
    Mat<double> J(2 * d);
    for (int i = 0; i < d; ++i) {
        J(2 * i + 1, 2 * i) = 1.0;
        J(2 * i, 2 * i + 1) = -1.0;
    }
    return J;
}

double integrate(const std::function<double(double)>& q, double a, double b) {
    if (a == b) return 0.0;
    double err = 0.0;
    double r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(q, a, b, 15, 1e-12, &err);
    if (!(err <= 1e-12 + 1e-12 * std::abs(r))) {
        std::ostringstream os;
        os << "quadrature did not converge on [" << a << ", " << b << "], error estimate " << err;
        throw Error(os.str());
    }
    return r;
}

namespace {

template <class T>
T absval(const T& x) { return value(x) < 0.0 ? -x : x; }

double sgn_pow(int r) { return (r % 2 == 0) ? 1.0 : -1.0; }

template <class T>
Vec<T> unit_vec(int n, int i) {
    Vec<T> v(static_cast<size_t>(n), T(0.0));
    v[static_cast<size_t>(i)] = T(1.0);
    return v;
}

template <class T>
void add_scaled(Vec<T>& acc, const T& c, const Vec<T>& v) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

template <class T>
void add_outer(Mat<T>& g, const T& c, const Vec<T>& a) {
    const int n = g.rows;
    for (int i = 0; i < n; ++i) {
        T ci = c * a[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) g(i, j) += ci * a[static_cast<size_t>(j)];
    }
}

template <class T>
void add_block(Mat<T>& M, int off, const T& c, const Mat<T>& B) {
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) M(off + i, off + j) += c * B(i, j);
}

/// Forms of a space-form factor at one chart block.
template <class T>
struct FactorForms {
    T f{};
    Vec<T> df, dcf;   // block-local
    Mat<T> omega, g;  // dd^c f and ω(·, J·)
    T logdet{};
};

template <class T>
FactorForms<T> factor_forms(const SpaceForm& sf, const T* w, const Mat<double>& J0, bool with_logdet) {
    using std::log;
    FactorForms<T> F;
    Mat<T> hess;
    sf.jet(w, F.f, F.df, hess);
    const int n = 2 * sf.mdim;
    F.dcf.assign(static_cast<size_t>(n), T(0.0));
    for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e)
            if (J0(e, b) != 0.0) F.dcf[static_cast<size_t>(b)] -= F.df[static_cast<size_t>(e)] * J0(e, b);
    F.omega = Mat<T>(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T s = T(0.0);
            for (int e = 0; e < n; ++e) {
                if (J0(e, b) != 0.0) s -= hess(a, e) * J0(e, b);
                if (J0(e, a) != 0.0) s += hess(b, e) * J0(e, a);
            }
            F.omega(a, b) = s;
        }
    F.g = Mat<T>(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (J0(c, b) != 0.0) F.g(a, b) += F.omega(a, c) * J0(c, b);
    if (with_logdet) F.logdet = log(absval(det(F.g)));
    return F;
}

template <class T>
Mat<T> j_from_forms(const Mat<T>& Jf) {
    Mat<T> J(Jf.rows);
    for (size_t i = 0; i < Jf.a.size(); ++i) J.a[i] = -Jf.a[i];
    return J;
}

// ---------------------------------------------------------------------------

class FactorModel : public ModelBase<FactorModel> {
public:
    explicit FactorModel(const SpaceForm& sf) : sf_(sf), J0_(standard_j(sf.mdim)) {
        info_.kind = "space_form";
        info_.m = sf.mdim;
        info_.ell = 0;
        const int n = 2 * sf.mdim;
        info_.box.lo.assign(static_cast<size_t>(n), -sf.r_max);
        info_.box.hi.assign(static_cast<size_t>(n), sf.r_max);
        info_.has_potentials = true;
    }
    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        f.sigma = {T(1.0)};
        if (!(need & (kMetric | kPotentials))) return;
        auto F = factor_forms(sf_, x.data(), J0_, (need & kPotentials) != 0);
        if (need & kMetric) {
            f.g = F.g;
            f.omega = F.omega;
            f.J = Mat<T>(J0_.rows);
            for (size_t i = 0; i < J0_.a.size(); ++i) f.J.a[i] = T(J0_.a[i]);
        }
        if (need & kPotentials) {
            f.H = F.f;
            f.kappa = -0.25 * F.logdet;
        }
    }

private:
    SpaceForm sf_;
    Mat<double> J0_;
};

void measure(SpaceForm& sf) {
    FactorModel M(sf);
    Vec<double> origin(static_cast<size_t>(2 * sf.mdim), 0.0);
    auto B = curvature_bundle(M, origin, Diff{});
    sf.scal = B.scal;
    sf.einstein = B.scal / (2.0 * sf.mdim);
    const double num = B.rm(0, 1, 0, 1);
    const double den = B.g(0, 0) * B.g(1, 1) - B.g(0, 1) * B.g(0, 1);
    sf.hol = num / den;
}

}  // namespace

SpaceForm space_form_factor(int m_xi, double k, double scale, double r_max) {
    if (m_xi < 1) throw ConfigError("space form factor needs complex dimension at least 1");
    if (!(scale > 0.0)) throw ConfigError("space form scale must be positive");
    if (!(r_max > 0.0)) throw ConfigError("space form chart radius must be positive");
    const double s_max = 2.0 * m_xi * r_max * r_max;
    if (k < 0.0 && 1.0 + k * s_max <= 0.05) {
        std::ostringstream os;
        os << "space form potential degenerates on the chart: 1 + k|w|^2 = " << 1.0 + k * s_max;
        throw DomainTooLarge(os.str());
    }
    SpaceForm sf;
    sf.mdim = m_xi;
    sf.k = k;
    sf.scale = scale;
    sf.r_max = r_max;
    measure(sf);
    return sf;
}

ModelPtr space_form_model(const SpaceForm& sf) { return std::make_shared<FactorModel>(sf); }

SpaceForm calibrate_scal(SpaceForm sf, int sign, double target) {
    auto resid = [&](double scale) {
        SpaceForm t = sf;
        t.scale = scale;
        measure(t);
        return sign * t.scal - target;
    };
    if (sf.k == 0.0 || target == 0.0) {
        if (std::abs(resid(sf.scale)) > 1e-8) throw BuildError("a flat factor cannot meet a nonzero scalar curvature target");
        return sf;
    }
    // Scal scales like 1/scale, so the multiplicative update converges at once up to
    // measurement error; it is iterated until the residual is within tolerance.
    double s1 = sf.scale, r1 = resid(s1);
    for (int it = 0; it < 60 && std::abs(r1) > 1e-8 * std::max(1.0, std::abs(target)); ++it) {
        const double ratio = (r1 + target) / target;
        if (!(ratio > 0.0)) throw SignMismatch("factor curvature sign cannot meet the scalar curvature target");
        s1 *= ratio;
        r1 = resid(s1);
    }
    if (std::abs(r1) > 1e-8 * std::max(1.0, std::abs(target))) throw BuildError("factor calibration did not converge");
    sf.scale = s1;
    measure(sf);
    return sf;
}

// ---------------------------------------------------------------------------

void validate_spectrum(const SpectrumSpec& s) {
    std::ostringstream os;
    if (s.m < 1) throw ConfigError("m must be at least 1");
    if (s.ell < 1 || s.ell > s.m) throw ConfigError("ell must satisfy 1 <= ell <= m (ell = 0 products are not built)");
    if (static_cast<int>(s.domains.size()) != s.ell) throw ConfigError("need exactly ell nonconstant domains");
    int total = s.ell;
    for (const auto& r : s.roots) {
        if (r.mult < 1) throw ConfigError("constant root multiplicity must be positive");
        if (r.factor.mdim != r.mult) throw ConfigError("factor complex dimension must equal the root multiplicity");
        if (r.sign != 0 && r.sign != 1 && r.sign != -1) throw ConfigError("factor sign must be -1, 0 or 1");
        total += r.mult;
    }
    if (total != s.m) {
        os << "multiplicities plus ell give " << total << ", expected m = " << s.m;
        throw ConfigError(os.str());
    }
    for (const auto& d : s.domains)
        if (!(d.lo < d.hi)) {
            os << "empty interval (" << d.lo << ", " << d.hi << ")";
            throw ConfigError(os.str());
        }
    for (size_t i = 0; i < s.domains.size(); ++i)
        for (size_t j = i + 1; j < s.domains.size(); ++j) {
            const auto &a = s.domains[i], &b = s.domains[j];
            if (a.lo < b.hi && b.lo < a.hi) {
                os << "intervals (" << a.lo << ", " << a.hi << ") and (" << b.lo << ", " << b.hi << ") overlap";
                throw ConfigError(os.str());
            }
        }
    for (size_t i = 0; i < s.roots.size(); ++i) {
        for (const auto& d : s.domains)
            if (s.roots[i].value > d.lo && s.roots[i].value < d.hi) {
                os << "constant root " << s.roots[i].value << " lies inside (" << d.lo << ", " << d.hi << ")";
                throw ConfigError(os.str());
            }
        for (size_t j = i + 1; j < s.roots.size(); ++j)
            if (s.roots[i].value == s.roots[j].value) throw ConfigError("constant roots must be distinct");
    }
    if (!(s.F.size() == 1 || static_cast<int>(s.F.size()) == s.ell))
        throw ConfigError("F must be given once (shared) or once per domain");
    if (!(s.t_extent > 0.0)) throw ConfigError("t_extent must be positive");
}

RPoly p_c_of(const SpectrumSpec& s) {
    std::vector<double> v;
    std::vector<int> mu;
    for (const auto& r : s.roots) {
        v.push_back(r.value);
        mu.push_back(r.mult);
    }
    return from_roots(v, mu);
}

SpectrumSpec resolve_signs(SpectrumSpec s) {
    validate_spectrum(s);
    if (s.F.size() == 1 && s.ell > 1) s.F.assign(static_cast<size_t>(s.ell), s.F[0]);
    for (auto& r : s.roots) {
        double pnc = 1.0;
        for (const auto& d : s.domains) pnc *= r.value - d.mid();
        const int want = pnc > 0 ? 1 : -1;
        if (r.sign == 0) r.sign = want;
        if (r.sign != want) {
            std::ostringstream os;
            os << "factor at constant root " << r.value << " has sign " << r.sign << " but p_nc there has sign " << want;
            throw SignMismatch(os.str());
        }
    }
    const RPoly pc = p_c_of(s);
    for (int j = 0; j < s.ell; ++j) {
        const auto& d = s.domains[static_cast<size_t>(j)];
        const int N = 400;
        for (int i = 0; i < N; ++i) {
            const double t = d.lo + (d.hi - d.lo) * (i + 0.5) / N;
            double delta = 1.0;
            for (int k = 0; k < s.ell; ++k)
                if (k != j) delta *= t - s.domains[static_cast<size_t>(k)].mid();
            const double Fv = s.F[static_cast<size_t>(j)](t);
            if (!(Fv * pc(t) * delta > 0.0)) {
                std::ostringstream os;
                os << "F_" << j + 1 << " p_c Delta_" << j + 1 << " is not positive on (" << d.lo << ", " << d.hi
                   << "), first failure at t = " << t;
                throw PositivityViolation(os.str());
            }
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

namespace {

class OrthotoricModel : public ModelBase<OrthotoricModel> {
public:
    OrthotoricModel(int m, std::vector<RPoly> theta, std::vector<Interval> domains, double t_extent)
        : m_(m), theta_(std::move(theta)), dom_(std::move(domains)) {
        info_.kind = "orthotoric";
        info_.m = m;
        info_.ell = m;
        for (int j = 0; j < m; ++j) {
            info_.box.lo.push_back(dom_[static_cast<size_t>(j)].lo);
            info_.box.hi.push_back(dom_[static_cast<size_t>(j)].hi);
        }
        for (int r = 0; r < m; ++r) {
            info_.box.lo.push_back(-t_extent);
            info_.box.hi.push_back(t_extent);
        }
        info_.F = theta_;
        info_.has_phi = true;
        info_.has_potentials = true;
    }

    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        using std::log;
        const int m = m_, n = 2 * m;
        Vec<T> xi(x.begin(), x.begin() + m);
        f.xi = xi;
        f.sigma.resize(static_cast<size_t>(m + 1));
        for (int r = 0; r <= m; ++r) f.sigma[static_cast<size_t>(r)] = elem_sym(xi, r);
        if (!need) return;
        std::vector<Vec<T>> sh(static_cast<size_t>(m));
        Vec<T> th(static_cast<size_t>(m)), D(static_cast<size_t>(m));
        std::vector<Vec<T>> eta(static_cast<size_t>(m), Vec<T>(static_cast<size_t>(n), T(0.0)));
        for (int j = 0; j < m; ++j) {
            const size_t J = static_cast<size_t>(j);
            th[J] = theta_[J](xi[J]);
            D[J] = vandermonde_delta(xi, J);
            for (int r = 1; r <= m; ++r) {
                sh[J].push_back(elem_sym_hat(xi, r - 1, J));
                eta[J][static_cast<size_t>(m + r - 1)] = sh[J].back();
            }
        }
        if (need & kMetric) {
            f.g = Mat<T>(n);
            f.omega = Mat<T>(n);
            Mat<T> Jf(n);
            for (int j = 0; j < m; ++j) {
                const size_t J = static_cast<size_t>(j);
                f.g(j, j) += D[J] / th[J];
                add_outer(f.g, th[J] / D[J], eta[J]);
                f.omega = f.omega + wedge(unit_vec<T>(n, j), eta[J]);
                for (int c = 0; c < n; ++c) Jf(j, c) = th[J] / D[J] * eta[J][static_cast<size_t>(c)];
            }
            for (int r = 1; r <= m; ++r)
                for (int j = 0; j < m; ++j)
                    Jf(m + r - 1, j) = sgn_pow(r) * ipow_s(xi[static_cast<size_t>(j)], m - r) / th[static_cast<size_t>(j)];
            f.J = j_from_forms(Jf);
        }
        if (need & kPhi) {
            f.phi = Mat<T>(n);
            for (int j = 0; j < m; ++j) f.phi = f.phi + scaled(xi[static_cast<size_t>(j)], wedge(unit_vec<T>(n, j), eta[static_cast<size_t>(j)]));
        }
        if (need & kPotentials) {
            static const RPoly one = RPoly::constant(1.0);
            f.u.assign(static_cast<size_t>(m + 3), T(0.0));
            for (int r = -2; r <= m; ++r) {
                T s = T(0.0);
                for (int j = 0; j < m; ++j) {
                    const auto& d = dom_[static_cast<size_t>(j)];
                    s += antiderivative(RationalIntegrand{&one, m - r, &theta_[static_cast<size_t>(j)]}, d.mid(), xi[static_cast<size_t>(j)]);
                }
                f.u[static_cast<size_t>(r + 2)] = -sgn_pow(r) * s;
            }
            f.H = -f.u_at(0);
            f.Phi = f.u_at(-1);
            f.G = T(0.0);
            for (int r = 0; r <= m; ++r) f.G += f.sigma[static_cast<size_t>(r)] * f.u_at(r);
            f.kappa = T(0.0);
            for (int j = 0; j < m; ++j) f.kappa -= 0.5 * log(absval(th[static_cast<size_t>(j)]));
        }
    }

private:
    int m_;
    std::vector<RPoly> theta_;
    std::vector<Interval> dom_;
};

// ---------------------------------------------------------------------------

class GeneralModel : public ModelBase<GeneralModel> {
public:
    explicit GeneralModel(SpectrumSpec spec) : s_(resolve_signs(std::move(spec))), pc_(p_c_of(s_)) {
        info_.kind = "general";
        info_.m = s_.m;
        info_.ell = s_.ell;
        const int l = s_.ell;
        for (int j = 0; j < l; ++j) {
            info_.box.lo.push_back(s_.domains[static_cast<size_t>(j)].lo);
            info_.box.hi.push_back(s_.domains[static_cast<size_t>(j)].hi);
        }
        for (int r = 0; r < l; ++r) {
            info_.box.lo.push_back(-s_.t_extent);
            info_.box.hi.push_back(s_.t_extent);
        }
        int off = 2 * l;
        for (const auto& r : s_.roots) {
            off_.push_back(off);
            J0_.push_back(standard_j(r.mult));
            for (int i = 0; i < 2 * r.mult; ++i) {
                info_.box.lo.push_back(-r.factor.r_max);
                info_.box.hi.push_back(r.factor.r_max);
            }
            off += 2 * r.mult;
            info_.roots.push_back({r.value, r.mult, r.sign, r.sign * r.factor.scal});
        }
        info_.p_c = pc_;
        info_.F = s_.F;
        info_.has_phi = true;
        info_.has_potentials = true;
    }

    template <class T>
    struct Parts {
        Vec<T> xi;
        std::vector<Vec<T>> sh;  // σ_{r}(ξ̂_j), r = 0..ℓ−1
        Vec<T> pc, F, D, pp, pnc;
        std::vector<FactorForms<T>> ff;
        std::vector<Vec<T>> theta, eta, dfk, dcfk;  // full-length
    };

    template <class T>
    Parts<T> parts(const Vec<T>& x, bool with_logdet) const {
        const int l = s_.ell, n = 2 * s_.m;
        Parts<T> P;
        P.xi.assign(x.begin(), x.begin() + l);
        for (int j = 0; j < l; ++j) {
            const size_t J = static_cast<size_t>(j);
            Vec<T> row;
            for (int r = 0; r < l; ++r) row.push_back(elem_sym_hat(P.xi, r, J));
            P.sh.push_back(row);
            P.pc.push_back(pc_(P.xi[J]));
            P.F.push_back(s_.F[J](P.xi[J]));
            P.D.push_back(vandermonde_delta(P.xi, J));
            P.pp.push_back(P.pc[J] * P.D[J]);
        }
        for (size_t k = 0; k < s_.roots.size(); ++k) {
            const auto& r = s_.roots[k];
            T pnc = T(1.0);
            for (int j = 0; j < l; ++j) pnc = pnc * (r.value - P.xi[static_cast<size_t>(j)]);
            P.pnc.push_back(pnc);
            P.ff.push_back(factor_forms(r.factor, x.data() + off_[k], J0_[k], with_logdet));
            Vec<T> df(static_cast<size_t>(n), T(0.0)), dcf(static_cast<size_t>(n), T(0.0));
            for (int a = 0; a < 2 * r.mult; ++a) {
                df[static_cast<size_t>(off_[k] + a)] = static_cast<double>(r.sign) * P.ff[k].df[static_cast<size_t>(a)];
                dcf[static_cast<size_t>(off_[k] + a)] = static_cast<double>(r.sign) * P.ff[k].dcf[static_cast<size_t>(a)];
            }
            P.dfk.push_back(df);
            P.dcfk.push_back(dcf);
        }
        for (int r = 1; r <= l; ++r) {
            Vec<T> th = unit_vec<T>(n, l + r - 1);
            for (size_t k = 0; k < s_.roots.size(); ++k)
                add_scaled(th, T(sgn_pow(r) * std::pow(s_.roots[k].value, l - r)), P.dcfk[k]);
            P.theta.push_back(th);
        }
        for (int j = 0; j < l; ++j) {
            Vec<T> e(static_cast<size_t>(n), T(0.0));
            for (int r = 1; r <= l; ++r) add_scaled(e, P.sh[static_cast<size_t>(j)][static_cast<size_t>(r - 1)], P.theta[static_cast<size_t>(r - 1)]);
            P.eta.push_back(e);
        }
        return P;
    }

    /// Σ_ξ (−1)^r ξ^{ℓ−r} ω_ξ with ω_ξ = ε dd^c f.
    template <class T>
    Mat<T> Omega_r(const Vec<T>& x, int r) const {
        const int l = s_.ell, n = 2 * s_.m;
        Mat<T> O(n);
        for (size_t k = 0; k < s_.roots.size(); ++k) {
            auto F = factor_forms(s_.roots[k].factor, x.data() + off_[k], J0_[k], false);
            add_block(O, off_[k], T(sgn_pow(r) * std::pow(s_.roots[k].value, l - r) * s_.roots[k].sign), F.omega);
        }
        return O;
    }

    template <class T>
    T H_r(const Vec<T>& x, int r) const {
        const int l = s_.ell;
        T s = T(0.0);
        for (size_t k = 0; k < s_.roots.size(); ++k) {
            Vec<T> grad;
            Mat<T> hess;
            T f;
            s_.roots[k].factor.jet(x.data() + off_[k], f, grad, hess);
            s += (sgn_pow(r) * std::pow(s_.roots[k].value, l - r) * s_.roots[k].sign) * f;
        }
        return s;
    }

    template <class T>
    std::vector<Vec<T>> theta(const Vec<T>& x) const { return parts(x, false).theta; }

    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        using std::log;
        const int l = s_.ell, n = 2 * s_.m;
        Vec<T> xi(x.begin(), x.begin() + l);
        f.xi = xi;
        f.sigma.resize(static_cast<size_t>(l + 1));
        for (int r = 0; r <= l; ++r) f.sigma[static_cast<size_t>(r)] = elem_sym(xi, r);
        if (!need) return;
        Parts<T> P = parts(x, (need & kPotentials) != 0);
        const size_t nroots = s_.roots.size();
        if (need & kMetric) {
            f.g = Mat<T>(n);
            f.omega = Mat<T>(n);
            Mat<T> Jf(n);
            for (size_t k = 0; k < nroots; ++k) {
                const T c = static_cast<double>(s_.roots[k].sign) * P.pnc[k];
                add_block(f.g, off_[k], c, P.ff[k].g);
                add_block(f.omega, off_[k], c, P.ff[k].omega);
                const Mat<double>& J0 = J0_[k];
                for (int a = 0; a < J0.rows; ++a)
                    for (int b = 0; b < J0.cols; ++b) Jf(off_[k] + a, off_[k] + b) = T(-J0(a, b));
            }
            for (int j = 0; j < l; ++j) {
                const size_t J = static_cast<size_t>(j);
                f.g(j, j) += P.pp[J] / P.F[J];
                add_outer(f.g, P.F[J] / P.pp[J], P.eta[J]);
                for (int c = 0; c < n; ++c) Jf(j, c) = P.F[J] / P.pp[J] * P.eta[J][static_cast<size_t>(c)];
            }
            for (int r = 1; r <= l; ++r) {
                Vec<T> ds(static_cast<size_t>(n), T(0.0));
                for (int j = 0; j < l; ++j) ds[static_cast<size_t>(j)] = P.sh[static_cast<size_t>(j)][static_cast<size_t>(r - 1)];
                f.omega = f.omega + wedge(ds, P.theta[static_cast<size_t>(r - 1)]);
                Vec<T> row(static_cast<size_t>(n), T(0.0));
                for (int j = 0; j < l; ++j)
                    row[static_cast<size_t>(j)] = sgn_pow(r) * P.pc[static_cast<size_t>(j)] / P.F[static_cast<size_t>(j)] * ipow_s(xi[static_cast<size_t>(j)], l - r);
                for (size_t k = 0; k < nroots; ++k)
                    add_scaled(row, T(sgn_pow(r) * std::pow(s_.roots[k].value, l - r)), P.dfk[k]);
                for (int c = 0; c < n; ++c) Jf(l + r - 1, c) = row[static_cast<size_t>(c)];
            }
            f.J = j_from_forms(Jf);
        }
        if (need & kPhi) {
            f.phi = Mat<T>(n);
            for (size_t k = 0; k < nroots; ++k)
                add_block(f.phi, off_[k], (s_.roots[k].value * s_.roots[k].sign) * P.pnc[k], P.ff[k].omega);
            for (int j = 0; j < l; ++j)
                f.phi = f.phi + scaled(xi[static_cast<size_t>(j)], wedge(unit_vec<T>(n, j), P.eta[static_cast<size_t>(j)]));
        }
        if (need & kPotentials) {
            f.u.assign(static_cast<size_t>(l + 3), T(0.0));
            for (int r = -2; r <= l; ++r) {
                T Hr = T(0.0);
                for (size_t k = 0; k < nroots; ++k)
                    Hr += (sgn_pow(r) * std::pow(s_.roots[k].value, l - r) * s_.roots[k].sign) * P.ff[k].f;
                T I = T(0.0);
                for (int j = 0; j < l; ++j) {
                    const size_t J = static_cast<size_t>(j);
                    I += antiderivative(RationalIntegrand{&pc_, l - r, &s_.F[J]}, s_.domains[J].mid(), xi[J]);
                }
                f.u[static_cast<size_t>(r + 2)] = -Hr - sgn_pow(r) * I;
            }
            f.H = -f.u_at(0);
            f.Phi = f.u_at(-1);
            f.G = T(0.0);
            for (int r = 0; r <= l; ++r) f.G += f.sigma[static_cast<size_t>(r)] * f.u_at(r);
            f.kappa = T(0.0);
            for (size_t k = 0; k < nroots; ++k) f.kappa -= 0.25 * P.ff[k].logdet;
            for (int j = 0; j < l; ++j) f.kappa -= 0.5 * log(absval(P.F[static_cast<size_t>(j)]));
        }
    }

    const SpectrumSpec& spec() const { return s_; }

private:
    SpectrumSpec s_;
    RPoly pc_;
    std::vector<int> off_;
    std::vector<Mat<double>> J0_;
};

// ---------------------------------------------------------------------------

class CalabiModel : public ModelBase<CalabiModel> {
public:
    explicit CalabiModel(CalabiSpec s) : s_(std::move(s)), J0_(standard_j(std::max(s_.m - 1, 1))) {
        info_.kind = "calabi";
        info_.m = s_.m;
        info_.ell = 1;
        info_.box.lo = {s_.z.lo, -s_.t_extent};
        info_.box.hi = {s_.z.hi, s_.t_extent};
        for (int i = 0; i < 2 * (s_.m - 1); ++i) {
            info_.box.lo.push_back(-s_.base.r_max);
            info_.box.hi.push_back(s_.base.r_max);
        }
        info_.p_c = RPoly::monomial(1.0, s_.m - 1);
        info_.F = {s_.F};
        if (s_.m > 1) info_.roots.push_back({0.0, s_.m - 1, -1, -s_.base.scal});
        info_.has_phi = true;
        info_.has_potentials = true;
    }

    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        using std::log;
        const int m = s_.m, n = 2 * m;
        const T& z = x[0];
        f.xi = {z};
        f.sigma = {T(1.0), z};
        if (!need) return;
        FactorForms<T> B;
        Vec<T> dcf(static_cast<size_t>(n), T(0.0)), df(static_cast<size_t>(n), T(0.0));
        if (m > 1) {
            B = factor_forms(s_.base, x.data() + 2, J0_, (need & kPotentials) != 0);
            for (int a = 0; a < 2 * (m - 1); ++a) {
                dcf[static_cast<size_t>(2 + a)] = B.dcf[static_cast<size_t>(a)];
                df[static_cast<size_t>(2 + a)] = B.df[static_cast<size_t>(a)];
            }
        }
        Vec<T> theta = unit_vec<T>(n, 1);
        add_scaled(theta, T(1.0), dcf);
        const T Fz = s_.F(z);
        const T zm = ipow_s(z, m - 1);
        if (need & kMetric) {
            f.g = Mat<T>(n);
            f.omega = Mat<T>(n);
            Mat<T> Jf(n);
            if (m > 1) {
                add_block(f.g, 2, z, B.g);
                add_block(f.omega, 2, z, B.omega);
                for (int a = 0; a < J0_.rows; ++a)
                    for (int b = 0; b < J0_.cols; ++b) Jf(2 + a, 2 + b) = T(-J0_(a, b));
            }
            f.g(0, 0) += zm / Fz;
            add_outer(f.g, Fz / zm, theta);
            f.omega = f.omega + wedge(unit_vec<T>(n, 0), theta);
            for (int c = 0; c < n; ++c) Jf(0, c) = Fz / zm * theta[static_cast<size_t>(c)];
            Vec<T> row = df;
            row[0] += -zm / Fz;
            for (int c = 0; c < n; ++c) Jf(1, c) = row[static_cast<size_t>(c)];
            f.J = j_from_forms(Jf);
        }
        if (need & kPhi) f.phi = scaled(z, wedge(unit_vec<T>(n, 0), theta));
        if (need & kPotentials) {
            const RPoly pc = RPoly::monomial(1.0, m - 1);
            auto I = [&](int e) { return antiderivative(RationalIntegrand{&pc, e, &s_.F}, s_.z.mid(), z); };
            const T f0 = (m > 1) ? B.f : T(0.0);
            f.u.assign(4, T(0.0));
            f.u[0] = -I(3);       // u_{-2}
            f.u[1] = I(2);        // u_{-1}
            f.u[2] = -I(1);       // u_0
            f.u[3] = -f0 + I(0);  // u_1
            f.H = -f.u[2];
            f.Phi = f.u[1];
            f.G = f.u[2] + z * f.u[3];
            f.kappa = -0.5 * log(absval(Fz));
            if (m > 1) f.kappa -= 0.25 * B.logdet;
        }
    }

private:
    CalabiSpec s_;
    Mat<double> J0_;
};

// ---------------------------------------------------------------------------

double root_in(const std::vector<double>& sigma, int m, const Interval& d) {
    auto p = [&](double t) {
        double s = 0.0;
        for (int r = 0; r <= m; ++r) s += sgn_pow(r) * (r == 0 ? 1.0 : sigma[static_cast<size_t>(r - 1)]) * std::pow(t, m - r);
        return s;
    };
    double a = d.lo, b = d.hi, pa = p(a), pb = p(b);
    if (pa == 0.0) return a;
    if (pb == 0.0) return b;
    if ((pa > 0) == (pb > 0)) throw EvaluationOutsideDomain("no momentum root in its interval for this sigma");
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        double c = 0.5 * (a + b), pcv = p(c);
        if (pcv == 0.0) return c;
        if ((pcv > 0) == (pa > 0)) {
            a = c;
            pa = pcv;
        } else {
            b = c;
        }
    }
    return 0.5 * (a + b);
}

template <class T>
struct XiSolver {
    static Vec<T> solve(const OrthotoricG& G, const Vec<T>& sigma) {
        using Inner = decltype(sigma[0].v);
        Vec<std::decay_t<Inner>> sv;
        for (const auto& s : sigma) sv.push_back(s.v);
        auto inner = XiSolver<std::decay_t<Inner>>::solve(G, sv);
        const int m = G.m;
        Vec<T> out;
        for (int j = 0; j < m; ++j) {
            const auto& x = inner[static_cast<size_t>(j)];
            auto D = vandermonde_delta(inner, static_cast<size_t>(j));
            std::decay_t<Inner> num = std::decay_t<Inner>(0.0);
            for (int r = 1; r <= m; ++r) num += sgn_pow(r) * sigma[static_cast<size_t>(r - 1)].d * ipow_s(x, m - r);
            out.push_back(T(x, -num / D));
        }
        return out;
    }
};

template <>
struct XiSolver<double> {
    static Vec<double> solve(const OrthotoricG& G, const Vec<double>& sigma) {
        Vec<double> out;
        for (int j = 0; j < G.m; ++j) out.push_back(root_in(sigma, G.m, G.domains[static_cast<size_t>(j)]));
        return out;
    }
};

}  // namespace

template <class T>
Vec<T> OrthotoricG::xi(const Vec<T>& sigma) const {
    return XiSolver<T>::solve(*this, sigma);
}

template <class T>
T OrthotoricG::operator()(const Vec<T>& sigma) const {
    static const RPoly one = RPoly::constant(1.0);
    Vec<T> x = xi(sigma);
    T G = T(0.0);
    for (int j = 0; j < m; ++j) {
        const size_t J = static_cast<size_t>(j);
        for (int r = 0; r <= m; ++r) {
            T I = antiderivative(RationalIntegrand{&one, m - r, &theta[J]}, domains[J].mid(), x[J]);
            T sr = (r == 0) ? T(1.0) : sigma[static_cast<size_t>(r - 1)];
            G -= sgn_pow(r) * sr * I;
        }
    }
    if (quartic != 0.0) G += quartic * ipow_s(sigma[0], 4);
    return G;
}

template Vec<D0> OrthotoricG::xi(const Vec<D0>&) const;
template Vec<D1> OrthotoricG::xi(const Vec<D1>&) const;
template Vec<D2> OrthotoricG::xi(const Vec<D2>&) const;
template D0 OrthotoricG::operator()(const Vec<D0>&) const;
template D1 OrthotoricG::operator()(const Vec<D1>&) const;
template D2 OrthotoricG::operator()(const Vec<D2>&) const;

namespace {

class ToricModel : public ModelBase<ToricModel> {
public:
    ToricModel(OrthotoricG G, double t_extent) : G_(std::move(G)) {
        const int m = G_.m;
        info_.kind = "toric";
        info_.m = m;
        info_.ell = m;
        // σ is multilinear in ξ, so its range over the ξ-box is attained at vertices.
        Vec<double> lo(static_cast<size_t>(m), INFINITY), hi(static_cast<size_t>(m), -INFINITY);
        for (int mask = 0; mask < (1 << m); ++mask) {
            Vec<double> xi;
            for (int j = 0; j < m; ++j) {
                const auto& d = G_.domains[static_cast<size_t>(j)];
                xi.push_back((mask >> j) & 1 ? d.hi : d.lo);
            }
            Vec<double> s = sigma_of_xi(xi);
            for (int r = 0; r < m; ++r) {
                lo[static_cast<size_t>(r)] = std::min(lo[static_cast<size_t>(r)], s[static_cast<size_t>(r)]);
                hi[static_cast<size_t>(r)] = std::max(hi[static_cast<size_t>(r)], s[static_cast<size_t>(r)]);
            }
        }
        info_.box.lo = lo;
        info_.box.hi = hi;
        for (int r = 0; r < m; ++r) {
            info_.box.lo.push_back(-t_extent);
            info_.box.hi.push_back(t_extent);
        }
        info_.F = G_.theta;
        Vec<double> mid;
        for (const auto& d : G_.domains) mid.push_back(d.mid());
        Vec<double> s0 = sigma_of_xi(mid);
        auto gfun = [this](const auto& s) { return G_(s); };
        auto jet = scalar_jet(gfun, s0, Diff{});
        try {
            cholesky(jet.hess);
        } catch (const SingularMetric&) {
            throw PositivityViolation("Hessian of G is not positive definite at the domain centre");
        }
    }

    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        const int m = G_.m, n = 2 * m;
        Vec<T> sigma(x.begin(), x.begin() + m);
        f.xi = G_.xi(sigma);
        f.sigma = {T(1.0)};
        for (const auto& s : sigma) f.sigma.push_back(s);
        if (!need) return;
        auto gfun = [this](const auto& s) { return G_(s); };
        ScalarJet<T> jet = scalar_jet(gfun, sigma, Diff{});
        if (need & kMetric) {
            Mat<T> Hm = inverse(jet.hess);
            f.g = Mat<T>(n);
            f.omega = Mat<T>(n);
            Mat<T> Jf(n);
            for (int r = 0; r < m; ++r) {
                f.omega(r, m + r) = T(1.0);
                f.omega(m + r, r) = T(-1.0);
                for (int s = 0; s < m; ++s) {
                    f.g(r, s) = jet.hess(r, s);
                    f.g(m + r, m + s) = Hm(r, s);
                    Jf(r, m + s) = Hm(r, s);
                    Jf(m + r, s) = -jet.hess(r, s);
                }
            }
            f.J = j_from_forms(Jf);
        }
        if (need & kPotentials) {
            f.u.assign(static_cast<size_t>(m + 3), T(0.0));
            f.G = jet.value;
            f.H = -jet.value;
            for (int r = 1; r <= m; ++r) {
                f.u[static_cast<size_t>(r + 2)] = jet.grad[static_cast<size_t>(r - 1)];
                f.H += sigma[static_cast<size_t>(r - 1)] * jet.grad[static_cast<size_t>(r - 1)];
            }
            f.u[2] = -f.H;
        }
    }

private:
    OrthotoricG G_;
};

}  // namespace

Vec<double> sigma_of_xi(const Vec<double>& xi) {
    Vec<double> s;
    for (int r = 1; r <= static_cast<int>(xi.size()); ++r) s.push_back(elem_sym(xi, r));
    return s;
}

ModelPtr build_orthotoric(int m, const std::vector<RPoly>& theta, const std::vector<Interval>& domains, double t_extent) {
    SpectrumSpec s;
    s.m = m;
    s.ell = m;
    s.domains = domains;
    s.F = theta;
    s.t_extent = t_extent;
    s = resolve_signs(s);
    return std::make_shared<OrthotoricModel>(m, s.F, s.domains, t_extent);
}

ModelPtr build_general(const SpectrumSpec& spec) { return std::make_shared<GeneralModel>(spec); }

SpectrumSpec calabi_as_spectrum(const CalabiSpec& c) {
    SpectrumSpec s;
    s.m = c.m;
    s.ell = 1;
    s.domains = {c.z};
    s.F = {c.F};
    s.t_extent = c.t_extent;
    if (c.m > 1) s.roots.push_back({0.0, c.m - 1, -1, c.base});
    return s;
}

ModelPtr build_calabi(const CalabiSpec& spec) {
    if (spec.m < 1) throw ConfigError("Calabi model needs m >= 1");
    if (spec.m > 1 && spec.base.mdim != spec.m - 1) throw ConfigError("Calabi base must have complex dimension m - 1");
    if (!(spec.z.lo < spec.z.hi) || (spec.z.lo < 0.0 && spec.z.hi > 0.0)) throw ConfigError("Calabi z-interval must be nonempty and avoid 0");
    const int N = 400;
    for (int i = 0; i < N; ++i) {
        const double z = spec.z.lo + (spec.z.hi - spec.z.lo) * (i + 0.5) / N;
        if (!(spec.F(z) / std::pow(z, spec.m - 1) > 0.0) || !(z > 0.0)) {
            std::ostringstream os;
            os << "F(z)/z^(m-1) is not positive on (" << spec.z.lo << ", " << spec.z.hi << ") at z = " << z;
            throw PositivityViolation(os.str());
        }
    }
    return std::make_shared<CalabiModel>(spec);
}

CalabiSpec calabi_dual(const CalabiSpec& c) {
    const int deg = c.F.degree();
    if (deg > 2 * c.m) throw ConfigError("conformal dual needs deg F <= 2m");
    std::vector<double> v(static_cast<size_t>(2 * c.m + 1), 0.0);
    // coefficient of z̃^{2m−i} is the coefficient of z^i
    for (int i = 0; i <= deg; ++i) v[static_cast<size_t>(i)] = c.F.coeff(i);
    CalabiSpec d = c;
    d.F = RPoly(v);
    if (!(c.z.lo > 0.0)) throw ConfigError("conformal dual needs z > 0");
    d.z = {1.0 / c.z.hi, 1.0 / c.z.lo};
    return d;
}

ModelPtr build_toric_from_G(const OrthotoricG& G, double t_extent) { return std::make_shared<ToricModel>(G, t_extent); }

double connection_form_residual(const SpectrumSpec& spec, const Vec<double>& x, const Diff& diff) {
    GeneralModel M(spec);
    double worst = 0.0;
    for (int r = 1; r <= spec.ell; ++r) {
        auto th = [&](const auto& y) { return M.theta(y)[static_cast<size_t>(r - 1)]; };
        Mat<double> dth = exterior_d1(th, x, diff);
        worst = std::max(worst, max_abs(dth - M.Omega_r(x, r)));
    }
    return worst;
}

double base_potential_residual(const SpectrumSpec& spec, const Vec<double>& x, const Diff& diff) {
    GeneralModel M(spec);
    auto jf = [&](const auto& y) { return eval_fields(M, y, kMetric).J; };
    double worst = 0.0;
    for (int r = -2; r <= spec.ell; ++r) {
        auto h = [&](const auto& y) { return M.H_r(y, r); };
        worst = std::max(worst, max_abs(ddc(h, jf, x, diff) - M.Omega_r(x, r)));
    }
    return worst;
}

}  // namespace kahler
