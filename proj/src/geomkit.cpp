#include "kahler/geomkit.hpp"

#include <cmath>

namespace kahler {

namespace {

double pf_rec(const Mat<double>& a, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int i0 = idx[0];
    double s = 0.0;
    for (size_t k = 1; k < idx.size(); ++k) {
        const int j = idx[k];
        if (a(i0, j) == 0.0) continue;
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (size_t t = 1; t < idx.size(); ++t)
            if (t != k) rest.push_back(idx[t]);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        s += sign * a(i0, j) * pf_rec(a, rest);
    }
    return s;
}

// Components of a covariant 2-tensor in the frame e_i = columns of L^{-T}.
Mat<double> to_frame(const Mat<double>& t, const Mat<double>& Linv) { return Linv * t * transpose(Linv); }

double ip(const Mat<double>& a, const Mat<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * b.a[i];
    return 0.5 * s;
}

}  // namespace

double pfaffian_raw(const Mat<double>& a) {
    if (a.rows % 2 != 0) throw Error("pfaffian: odd dimension");
    std::vector<int> idx(static_cast<size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i) idx[static_cast<size_t>(i)] = i;
    return pf_rec(a, idx);
}

double pfaffian(const Mat<double>& psi, const Mat<double>& g, const Mat<double>& omega) {
    Mat<double> Linv = inverse(cholesky(g));
    double orient = pfaffian_raw(to_frame(omega, Linv));
    if (orient == 0.0) throw SingularMetric("pfaffian: ω is degenerate");
    return (orient > 0 ? 1.0 : -1.0) * pfaffian_raw(to_frame(psi, Linv));
}

RPoly momentum_polynomial(const Mat<double>& phi, const Mat<double>& g, const Mat<double>& omega) {
    const int m = g.rows / 2;
    Mat<double> A(m + 1);
    Vec<double> v(static_cast<size_t>(m + 1));
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k <= m; ++k) {
        const double t = static_cast<double>(k);
        for (int j = 0; j <= m; ++j) A(k, j) = std::pow(t, m - j);
        v[static_cast<size_t>(k)] = sgn * pfaffian(phi - scaled(t, omega), g, omega);
    }
    return RPoly(inverse(A) * v);
}

KahlerDecomposition kahler_decompose(const CurvatureBundle<double>& B) {
    const int n = B.g.rows;
    const int m = n / 2;
    if (m < 2) throw DimensionTooSmall("kahler_decompose requires complex dimension at least 2");
    const Mat<double> L = cholesky(B.g);
    const Mat<double> Linv = inverse(L);
    const Mat<double> E = transpose(Linv);  // frame vectors as columns

    // Frame components.
    Tensor<double> R(n, 4);
    {
        Tensor<double> t1(n, 4), t2(n, 4);
        // Contract one index at a time.
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double s = 0.0;
                        for (int a = 0; a < n; ++a) s += E(a, i) * B.rm(a, b, c, d);
                        t1(i, b, c, d) = s;
                    }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double s = 0.0;
                        for (int b = 0; b < n; ++b) s += E(b, j) * t1(i, b, c, d);
                        t2(i, j, c, d) = s;
                    }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int d = 0; d < n; ++d) {
                        double s = 0.0;
                        for (int c = 0; c < n; ++c) s += E(c, k) * t2(i, j, c, d);
                        t1(i, j, k, d) = s;
                    }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double s = 0.0;
                        for (int d = 0; d < n; ++d) s += E(d, l) * t1(i, j, k, d);
                        R(i, j, k, l) = s;
                    }
    }
    const Mat<double> Jf = transpose(L) * B.J * E;
    const Mat<double> om = to_frame(B.omega, Linv);
    const Mat<double> ric = to_frame(B.ric, Linv);
    const Mat<double> rho = to_frame(B.rho, Linv);
    const double scal = B.scal;
    const Mat<double> I = Mat<double>::identity(n);
    const Mat<double> ric0 = ric - scaled(scal / (2.0 * m), I);
    const Mat<double> rho0 = rho - scaled(scal / (2.0 * m), om);

    const double c = -0.5 * kPaperCurvatureSign;
    auto Rop = [&](const Mat<double>& psi) {
        Mat<double> r(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double s = 0.0;
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) s += R(a, b, p, q) * psi(p, q);
                r(a, b) = c * s;
            }
        return r;
    };
    auto P = [&](const Mat<double>& psi) { return scaled(0.5, psi + transpose(Jf) * psi * Jf); };
    auto Sop = [&](const Mat<double>& psi) {
        return scaled(scal / (2.0 * m * (m + 1)), P(psi) + scaled(ip(om, psi), om));
    };
    auto Zop = [&](const Mat<double>& psi) {
        Mat<double> pp = P(psi);
        Mat<double> anti = ric0 * pp + pp * ric0;
        return scaled(1.0 / (m + 2), anti + scaled(ip(rho0, psi), om) + scaled(ip(om, psi), rho0));
    };

    const int N = n * (n - 1) / 2;
    KahlerDecomposition K;
    K.curvature = Mat<double>(N);
    K.scalar_part = Mat<double>(N);
    K.ric0_part = Mat<double>(N);
    K.bochner = Mat<double>(N);
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) basis.emplace_back(i, j);
    for (int L2 = 0; L2 < N; ++L2) {
        Mat<double> e(n);
        e(basis[static_cast<size_t>(L2)].first, basis[static_cast<size_t>(L2)].second) = 1.0;
        e(basis[static_cast<size_t>(L2)].second, basis[static_cast<size_t>(L2)].first) = -1.0;
        Mat<double> r = Rop(e), s = Sop(e), z = Zop(e);
        for (int K2 = 0; K2 < N; ++K2) {
            const auto [i, j] = basis[static_cast<size_t>(K2)];
            K.curvature(K2, L2) = r(i, j);
            K.scalar_part(K2, L2) = s(i, j);
            K.ric0_part(K2, L2) = z(i, j);
            K.bochner(K2, L2) = r(i, j) - s(i, j) - z(i, j);
        }
    }
    double fro = 0.0;
    for (double x : K.bochner.a) fro += x * x;
    K.bochner_norm = std::sqrt(fro);
    return K;
}

Mat<double> bochner_ricci_contraction(const CurvatureBundle<double>& B, const KahlerDecomposition& K) {
    const int n = B.g.rows;
    std::vector<std::vector<int>> index(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) index[static_cast<size_t>(i)][static_cast<size_t>(j)] = k++;
    // W_{abcd} with W(ψ)_{ab} = ½ W_{abcd} ψ_{cd}.
    auto W = [&](int a, int b, int c, int d) -> double {
        if (a == b || c == d) return 0.0;
        double s = 1.0;
        if (a > b) { std::swap(a, b); s = -s; }
        if (c > d) { std::swap(c, d); s = -s; }
        return s * K.bochner(index[static_cast<size_t>(a)][static_cast<size_t>(b)], index[static_cast<size_t>(c)][static_cast<size_t>(d)]);
    };
    Mat<double> r(n);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            double s = 0.0;
            for (int a = 0; a < n; ++a) s += W(a, b, a, d);
            r(b, d) = s;
        }
    return r;
}

}  // namespace kahler
