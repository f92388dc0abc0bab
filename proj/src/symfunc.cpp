#include "kahler/symfunc.hpp"

#include <sstream>

#include "kahler/poly.hpp"

namespace kahler {

namespace {

[[noreturn]] void violation(const char* identity, int r, int s, int k, int i, const mpq_class& lhs,
                            const mpq_class& rhs) {
    std::ostringstream os;
    os << identity << " fails at (r=" << r << ", s=" << s << ", k=" << k << ", i=" << i
       << "): lhs=" << lhs.get_str() << " rhs=" << rhs.get_str();
    throw IdentityViolation(os.str());
}

mpq_class sign_pow(int e) { return (e % 2 == 0) ? mpq_class(1) : mpq_class(-1); }

}  // namespace

void require_distinct(const std::vector<mpq_class>& xs) {
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j]) throw Error("variable set entries must be pairwise distinct");
}

VandermondePair vandermonde(const std::vector<mpq_class>& xs) {
    require_distinct(xs);
    const int m = static_cast<int>(xs.size());
    if (m < 1) throw Error("vandermonde: need at least one variable");
    VandermondePair out;
    out.V.assign(static_cast<size_t>(m), std::vector<mpq_class>(static_cast<size_t>(m)));
    out.W = out.V;
    for (int r = 1; r <= m; ++r)
        for (int j = 0; j < m; ++j) {
            out.V[static_cast<size_t>(r - 1)][static_cast<size_t>(j)] = sign_pow(r - 1) * ipow(xs[static_cast<size_t>(j)], m - r);
            out.W[static_cast<size_t>(j)][static_cast<size_t>(r - 1)] =
                elem_sym_hat(xs, r - 1, static_cast<size_t>(j)) / vandermonde_delta(xs, static_cast<size_t>(j));
        }
    return out;
}

mpq_class exact_det(QMatrix a) {
    const size_t n = a.size();
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            mpq_class f = a[r][c] / a[c][c];
            if (f == 0) continue;
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

CheckReport identity_suite(const std::vector<mpq_class>& xs, int max_k, const IdentityOptions& opts) {
    if (max_k < 0) throw Error("identity_suite: max_k must be nonnegative");
    const int m = static_cast<int>(xs.size());
    auto [V, W] = vandermonde(xs);
    if (opts.corrupt_w) W[0][0] = -W[0][0];
    auto at = [](const auto& v, int i) -> const auto& { return v[static_cast<size_t>(i)]; };

    std::vector<double> res;
    auto record = [&](const char* id, const mpq_class& lhs, const mpq_class& rhs, int r, int s, int k, int i) {
        mpq_class d = abs(lhs - rhs);
        if (d != 0) violation(id, r, s, k, i, lhs, rhs);
        res.push_back(d.get_d());
    };

    // det V and (det V)^2 against the products of differences.
    mpq_class detV = exact_det(V);
    mpq_class prod_lt = 1, prod_delta = 1;
    for (int i = 0; i < m; ++i) {
        prod_delta *= vandermonde_delta(xs, static_cast<size_t>(i));
        for (int j = i + 1; j < m; ++j) prod_lt *= at(xs, i) - at(xs, j);
    }
    const mpq_class sgn = sign_pow(m * (m - 1) / 2);
    record("det", detV, sgn * prod_lt, 0, 0, 0, 0);
    record("detdelta", detV * detV, sgn * prod_delta, 0, 0, 0, 0);

    // W is a two-sided inverse of V.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            mpq_class wv = 0, vw = 0;
            for (int c = 0; c < m; ++c) {
                wv += at(W, a)[static_cast<size_t>(c)] * at(V, c)[static_cast<size_t>(b)];
                vw += at(V, a)[static_cast<size_t>(c)] * at(W, c)[static_cast<size_t>(b)];
            }
            const mpq_class delta = (a == b) ? 1 : 0;
            record("W*V=Id", wv, delta, a + 1, b + 1, 0, 0);
            record("V*W=Id", vw, delta, a + 1, b + 1, 0, 0);
        }

    // Vandermonde identity and its r = 1 case.
    for (int r = 1; r <= m; ++r)
        for (int s = 1; s <= m; ++s) {
            mpq_class lhs = 0;
            for (int j = 0; j < m; ++j)
                lhs += sign_pow(s - 1) * ipow(at(xs, j), m - s) * at(W, j)[static_cast<size_t>(r - 1)];
            record("id", lhs, (r == s) ? 1 : 0, r, s, 0, 0);
        }
    for (int s = 1; s <= m; ++s) {
        mpq_class lhs = 0;
        for (int j = 0; j < m; ++j) lhs += ipow(at(xs, j), m - s) / vandermonde_delta(xs, static_cast<size_t>(j));
        record("id0", lhs, (s == 1) ? 1 : 0, 1, s, 0, 0);
    }

    // Complete symmetric functions.
    for (int p = 0; p <= max_k; ++p) {
        mpq_class lhs = 0;
        for (int j = 0; j < m; ++j) lhs += ipow(at(xs, j), m - 1 + p) / vandermonde_delta(xs, static_cast<size_t>(j));
        record("id1", lhs, complete_sym(xs, p), 0, 0, p, 0);
    }

    // Shifted sums against alternating h·σ sums.
    for (int k = 0; k <= max_k; ++k)
        for (int r = 1; r <= m; ++r) {
            mpq_class lhs = 0, rhs = 0;
            for (int j = 0; j < m; ++j)
                lhs += ipow(at(xs, j), m + k) * elem_sym_hat(xs, r - 1, static_cast<size_t>(j)) /
                       vandermonde_delta(xs, static_cast<size_t>(j));
            for (int s = 0; s <= k; ++s) rhs += sign_pow(s) * complete_sym(xs, k - s) * elem_sym(xs, r + s);
            record("id2", lhs, rhs, r, 0, k, 0);
        }

    // ∂/∂ξ_i of the shifted sum, differentiating each term as a rational function of ξ_i.
    for (int i = 0; i < m; ++i) {
        std::vector<QPoly> xp;
        for (int j = 0; j < m; ++j) xp.push_back(j == i ? QPoly::identity() : QPoly(at(xs, j)));
        for (int k = 0; k <= max_k; ++k)
            for (int r = 1; r <= m; ++r) {
                mpq_class lhs = 0;
                for (int j = 0; j < m; ++j) {
                    QPoly num = ipow(at(xp, j), m + k) * elem_sym_hat(xp, r - 1, static_cast<size_t>(j));
                    QPoly den = vandermonde_delta(xp, static_cast<size_t>(j));
                    const mpq_class& x = at(xs, i);
                    mpq_class dv = den(x);
                    lhs += (num.derivative()(x) * dv - num(x) * den.derivative()(x)) / (dv * dv);
                }
                mpq_class rhs = 0;
                for (int s = 0; s <= k; ++s) rhs += complete_sym(xs, k - s) * ipow(at(xs, i), s);
                rhs *= elem_sym_hat(xs, r - 1, static_cast<size_t>(i));
                record("dxi", lhs, rhs, r, 0, k, i + 1);
            }
    }

    CheckReport rep = make_report("identities", std::move(res), 0.0);
    rep.samples = 1;
    return rep;
}

}  // namespace kahler
