#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gen.hpp"
#include "kahler/geomkit.hpp"

using namespace kahler;

namespace {

// Surface of constant curvature c: g = λ I, λ = 4/(1 + c r²)², with J∂x = ∂y.
// Products of such surfaces give hand-checkable Kähler metrics.
struct SurfaceProduct {
    std::vector<double> c;

    template <class T>
    Mat<T> g(const Vec<T>& x) const {
        const int n = 2 * static_cast<int>(c.size());
        Mat<T> m(n);
        for (size_t i = 0; i < c.size(); ++i) {
            const T& a = x[2 * i];
            const T& b = x[2 * i + 1];
            T q = 1.0 + c[i] * (a * a + b * b);
            T lam = 4.0 / (q * q);
            m(static_cast<int>(2 * i), static_cast<int>(2 * i)) = lam;
            m(static_cast<int>(2 * i + 1), static_cast<int>(2 * i + 1)) = lam;
        }
        return m;
    }
    Mat<double> J() const {
        const int n = 2 * static_cast<int>(c.size());
        Mat<double> j(n);
        for (int i = 0; i < n / 2; ++i) {
            j(2 * i + 1, 2 * i) = 1.0;
            j(2 * i, 2 * i + 1) = -1.0;
        }
        return j;
    }
    Mat<double> omega(const Vec<double>& x) const {
        Mat<double> G = g(x), j = J();
        const int n = G.rows;
        Mat<double> w(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int k = 0; k < n; ++k) w(a, b) += j(k, a) * G(k, b);
        return w;
    }
    CurvatureBundle<double> bundle(const Vec<double>& x, const Diff& d = Diff{}) const {
        auto gf = [this](const auto& y) { return g(y); };
        return curvature_from(gf, J(), omega(x), x, d);
    }
};

}  // namespace

TEST_CASE("dual and finite-difference partials agree") {
    auto f = [](const auto& y) { return y[0] * y[0] * y[1] + sin(y[1]) * exp(y[0]); };
    Vec<double> x{0.3, -0.7};
    auto a = partials(f, x, Diff{Backend::dual});
    auto b = partials(f, x, Diff{Backend::fd, 1e-3});
    // Hand derivative.
    const double dx = 2 * 0.3 * -0.7 + std::sin(-0.7) * std::exp(0.3);
    const double dy = 0.09 + std::cos(-0.7) * std::exp(0.3);
    CHECK(a.d[0] == doctest::Approx(dx).epsilon(1e-14));
    CHECK(a.d[1] == doctest::Approx(dy).epsilon(1e-14));
    CHECK(std::abs(b.d[0] - dx) < 1e-10);
    CHECK(std::abs(b.d[1] - dy) < 1e-10);
}

TEST_CASE("nested duals give the Hessian") {
    auto f = [](const auto& y) { return y[0] * y[0] * y[0] * y[1] + y[1] * y[1]; };
    auto j = scalar_jet(f, Vec<double>{1.5, 2.0}, Diff{});
    CHECK(j.hess(0, 0) == doctest::Approx(6 * 1.5 * 2.0));
    CHECK(j.hess(0, 1) == doctest::Approx(3 * 1.5 * 1.5));
    CHECK(j.hess(1, 0) == doctest::Approx(3 * 1.5 * 1.5));
    CHECK(j.hess(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("d squared vanishes on random 1-forms") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        double c[3];
        for (double& v : c) v = testgen::uniform(rng, -2, 2);
        auto alpha = [&](const auto& y) {
            using T = std::decay_t<decltype(y[0])>;
            Vec<T> a(3);
            a[0] = c[0] * y[1] * y[2] * y[2];
            a[1] = sin(c[1] * y[0]) * y[2];
            a[2] = exp(c[2] * y[1]) * y[0];
            return a;
        };
        Vec<double> x{testgen::uniform(rng, -1, 1), testgen::uniform(rng, -1, 1), testgen::uniform(rng, -1, 1)};
        auto dd = exterior_d2([&](const auto& y) { return exterior_d1(alpha, y, Diff{}); }, x, Diff{});
        double worst = 0;
        for (double v : dd.a) worst = std::max(worst, std::abs(v));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("Christoffel symbols of a conformal surface") {
    SurfaceProduct S{{0.7}};
    Vec<double> x{0.3, -0.4};
    auto G = christoffel([&](const auto& y) { return S.g(y); }, x, Diff{});
    const double q = 1 + 0.7 * (0.09 + 0.16);
    const double ux = -2 * 0.7 * 0.3 / q, uy = -2 * 0.7 * -0.4 / q;
    CHECK(G(0, 0, 0) == doctest::Approx(ux));
    CHECK(G(0, 1, 1) == doctest::Approx(-ux));
    CHECK(G(0, 0, 1) == doctest::Approx(uy));
    CHECK(G(1, 1, 1) == doctest::Approx(uy));
    CHECK(G(1, 0, 0) == doctest::Approx(-uy));
    CHECK(G(1, 0, 1) == doctest::Approx(ux));
}

TEST_CASE("curvature of constant curvature surfaces") {
    for (double c : {1.0, -0.5, 2.0}) {
        SurfaceProduct S{{c}};
        Vec<double> x{0.2, 0.1};
        auto B = S.bundle(x);
        CHECK(B.scal == doctest::Approx(2 * c).epsilon(1e-10));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) CHECK(B.ric(a, b) == doctest::Approx(c * B.g(a, b)).epsilon(1e-10));
        CHECK(max_abs(B.rho - scaled(c, B.omega)) < 1e-10);
        // Curvature operator sends ω to ρ.
        CHECK(max_abs(curvature_operator(B, B.omega) - B.rho) < 1e-10);
    }
}

TEST_CASE("fd backend reproduces the curvature") {
    SurfaceProduct S{{1.0, -1.0}};
    Vec<double> x{0.2, 0.1, -0.1, 0.3};
    auto A = S.bundle(x);
    auto B = S.bundle(x, Diff{Backend::fd, 1e-3});
    CHECK(std::abs(A.scal - B.scal) < 1e-6);
    CHECK(max_abs(A.ric - B.ric) < 1e-6);
}

TEST_CASE("Bochner tensor of surface products") {
    Vec<double> x{0.2, 0.1, -0.1, 0.3};
    // Curvatures c and −c give a Bochner-flat product.
    auto flat = kahler_decompose(SurfaceProduct{{1.0, -1.0}}.bundle(x));
    CHECK(flat.bochner_norm < 1e-9);
    auto B = SurfaceProduct{{1.0, 1.0}}.bundle(x);
    auto K = kahler_decompose(B);
    CHECK(K.bochner_norm > 0.1);
    // The Bochner tensor is totally trace-free.
    CHECK(max_abs(bochner_ricci_contraction(B, K)) < 1e-9);
    // The pieces add up to the curvature operator.
    CHECK(max_abs(K.curvature - K.scalar_part - K.ric0_part - K.bochner) < 1e-12);
    CHECK_THROWS_AS(kahler_decompose(SurfaceProduct{{1.0}}.bundle(Vec<double>{0.1, 0.1})), DimensionTooSmall);
}

TEST_CASE("Laplacian on a conformal surface") {
    SurfaceProduct S{{0.4}};
    auto f = [](const auto& y) { return y[0] * y[0] * y[0] * y[1] + y[1] * y[1]; };
    Vec<double> x{0.5, -0.3};
    const double q = 1 + 0.4 * (0.25 + 0.09);
    const double lam = 4 / (q * q);
    const double expect = -(6 * 0.5 * -0.3 + 2) / lam;
    CHECK(laplacian(f, [&](const auto& y) { return S.g(y); }, x, Diff{}) == doctest::Approx(expect));
}

TEST_CASE("Nijenhuis tensor") {
    SurfaceProduct S{{1.0, 1.0}};
    Mat<double> J0 = S.J();
    auto jc = [&](const auto& y) {
        using T = std::decay_t<decltype(y[0])>;
        Mat<T> j(4);
        for (size_t i = 0; i < J0.a.size(); ++i) j.a[i] = T(J0.a[i]);
        return j;
    };
    Vec<double> x{0.1, 0.2, 0.3, 0.4};
    auto N = nijenhuis(jc, x, Diff{});
    double w = 0;
    for (double v : N.a) w = std::max(w, std::abs(v));
    CHECK(w == 0.0);
    // An almost complex structure that rotates with x0 mixes the two planes and is not integrable.
    auto jr = [&](const auto& y) {
        using T = std::decay_t<decltype(y[0])>;
        T c = cos(y[0]), s = sin(y[0]);
        Mat<T> j(4);
        // J∂0 = c∂1 + s∂3, J∂2 = −s∂1 + c∂3.
        j(1, 0) = c;
        j(3, 0) = s;
        j(1, 2) = -s;
        j(3, 2) = c;
        // J∂1 = −c∂0 + s∂2, J∂3 = −s∂0 − c∂2 (so J² = −1).
        j(0, 1) = -c;
        j(2, 1) = s;
        j(0, 3) = -s;
        j(2, 3) = -c;
        return j;
    };
    auto Jx = jr(x);
    CHECK(max_abs(Jx * Jx + Mat<double>::identity(4)) < 1e-15);
    auto N2 = nijenhuis(jr, x, Diff{});
    w = 0;
    for (double v : N2.a) w = std::max(w, std::abs(v));
    CHECK(w > 0.1);
}

TEST_CASE("Pfaffian") {
    std::mt19937_64 rng(5);
    Mat<double> a(4);
    double v[6];
    for (double& t : v) t = testgen::uniform(rng, -2, 2);
    a(0, 1) = v[0]; a(0, 2) = v[1]; a(0, 3) = v[2];
    a(1, 2) = v[3]; a(1, 3) = v[4]; a(2, 3) = v[5];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) a(i, j) = -a(j, i);
    CHECK(pfaffian_raw(a) == doctest::Approx(v[0] * v[5] - v[1] * v[4] + v[2] * v[3]));
    // pf² = det on random 6×6.
    for (int trial = 0; trial < 5; ++trial) {
        Mat<double> b(6);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                b(i, j) = testgen::uniform(rng, -1, 1);
                b(j, i) = -b(i, j);
            }
        const double p = pfaffian_raw(b);
        CHECK(p * p == doctest::Approx(det(b)).epsilon(1e-10));
    }
}

TEST_CASE("momentum polynomial of a diagonal Hamiltonian 2-form") {
    SurfaceProduct S{{0.0, 0.0, 0.0}};
    Vec<double> x(6, 0.0);
    Mat<double> g = S.g(x), om = S.omega(x);
    const double lam[3] = {0.5, -1.25, 2.0};
    Mat<double> phi(6);
    for (int i = 0; i < 3; ++i) {
        phi(2 * i, 2 * i + 1) = lam[i] * om(2 * i, 2 * i + 1);
        phi(2 * i + 1, 2 * i) = -phi(2 * i, 2 * i + 1);
    }
    RPoly p = momentum_polynomial(phi, g, om);
    RPoly expect = from_roots(std::vector<double>{lam[0], lam[1], lam[2]}, std::vector<int>{1, 1, 1});
    for (int k = 0; k <= 3; ++k) CHECK(p.coeff(k) == doctest::Approx(expect.coeff(k)).epsilon(1e-10));
}
