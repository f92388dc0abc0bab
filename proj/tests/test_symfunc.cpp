#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "kahler/poly.hpp"
#include "kahler/symfunc.hpp"

using namespace kahler;

namespace {

std::vector<mpq_class> qv(std::vector<long> v) {
    std::vector<mpq_class> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

// h_p by brute-force enumeration of monomials.
mpq_class complete_by_enumeration(const std::vector<mpq_class>& xs, int p, size_t start = 0) {
    if (p == 0) return 1;
    mpq_class s = 0;
    for (size_t i = start; i < xs.size(); ++i) s += xs[i] * complete_by_enumeration(xs, p - 1, i);
    return s;
}

}  // namespace

TEST_CASE("elementary symmetric functions") {
    CHECK(elem_sym(qv({2, 3}), 1) == 5);
    CHECK(elem_sym(qv({2, 3}), 0) == 1);
    CHECK(elem_sym(qv({1, 2, 4}), 3) == 8);
    CHECK(elem_sym(qv({1, 2, 4}), 4) == 0);
    CHECK(elem_sym_hat(qv({2, 3}), 1, 0) == 3);
    CHECK(elem_sym_hat(qv({1, 2, 4}), 2, 1) == 4);
    CHECK(2 * elem_sym_hat(qv({2, 3}), 0, 0) == elem_sym(qv({2, 3}), 1) - elem_sym_hat(qv({2, 3}), 1, 0));
}

TEST_CASE("complete symmetric functions") {
    CHECK(complete_sym(qv({1, 2}), 2) == 7);
    CHECK(complete_sym(qv({1, 2}), 0) == 1);
    CHECK(complete_sym(qv({1, 2, 4}), 3) == complete_by_enumeration(qv({1, 2, 4}), 3));
}

TEST_CASE("vandermonde small cases") {
    auto [V, W] = vandermonde(qv({1, 2}));
    CHECK(V == QMatrix{{1, 2}, {-1, -1}});
    CHECK(exact_det(V) == 1);
    CHECK_THROWS_AS(vandermonde(qv({1, 1})), Error);
}

TEST_CASE("identity suite hand examples") {
    // Σ ξ_j/Δ_j for (1,2,4): 1/3 - 1 + 2/3.
    auto xs = qv({1, 2, 4});
    mpq_class s = 0;
    for (size_t j = 0; j < 3; ++j) s += xs[j] / vandermonde_delta(xs, j);
    CHECK(s == 0);
    // Σ ξ_j^3/Δ_j for (1,2) is h_2 = 1 + 2 + 4.
    auto ys = qv({1, 2});
    mpq_class h = 0;
    for (size_t j = 0; j < 2; ++j) h += ipow(ys[j], 3) / vandermonde_delta(ys, j);
    CHECK(h == 7);
    CHECK(complete_sym(ys, 2) == 7);
    // (2,3), k=1, r=1: -8 + 27 = σ1σ1 - σ2.
    auto zs = qv({2, 3});
    mpq_class t = 0;
    for (size_t j = 0; j < 2; ++j) t += ipow(zs[j], 3) * elem_sym_hat(zs, 0, j) / vandermonde_delta(zs, j);
    CHECK(t == 19);
    CHECK(t == elem_sym(zs, 1) * elem_sym(zs, 1) - elem_sym(zs, 2));
    auto rep = identity_suite(xs, 3);
    CHECK(rep.passed);
    CHECK(rep.residual_max == 0.0);
}

TEST_CASE("corrupted W is caught with a witness") {
    try {
        identity_suite(qv({1, 2, 4}), 2, IdentityOptions{true});
        FAIL("expected IdentityViolation");
    } catch (const IdentityViolation& e) {
        CHECK(std::string(e.what()).find("(r=") != std::string::npos);
    }
}

TEST_CASE("property: identity suite passes exactly for random rational sets") {
    std::mt19937_64 rng(2024);
    for (int m = 1; m <= 6; ++m)
        for (int trial = 0; trial < 8; ++trial) {
            auto xs = testgen::distinct_rationals(rng, m);
            CHECK(identity_suite(xs, 3).passed);
        }
}

TEST_CASE("property: from_roots coefficients are signed elementary symmetric functions") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + trial % 6;
        auto xs = testgen::distinct_rationals(rng, m);
        auto p = from_roots(xs, std::vector<int>(static_cast<size_t>(m), 1));
        for (int r = 0; r <= m; ++r) CHECK(p.coeff(m - r) == ((r % 2) ? -1 : 1) * elem_sym(xs, r));
    }
}

TEST_CASE("property: h_p satisfies the Newton-style recurrence") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + trial % 6;
        auto xs = testgen::distinct_rationals(rng, m);
        for (int p = 1; p <= 6; ++p) {
            mpq_class rec = 0;
            for (int i = 1; i <= std::min(p, m); ++i)
                rec += ((i % 2) ? 1 : -1) * elem_sym(xs, i) * complete_sym(xs, p - i);
            CHECK(complete_sym(xs, p) == rec);
        }
    }
}

TEST_CASE("property: hat identity ξ_j σ_{r-1}(ξ̂_j) = σ_r - σ_r(ξ̂_j)") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 1 + trial % 6;
        auto xs = testgen::distinct_rationals(rng, m);
        for (int r = 1; r <= m; ++r)
            for (size_t j = 0; j < xs.size(); ++j)
                CHECK(xs[j] * elem_sym_hat(xs, r - 1, j) == elem_sym(xs, r) - elem_sym_hat(xs, r, j));
    }
}
