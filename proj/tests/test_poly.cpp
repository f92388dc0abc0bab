#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "kahler/poly.hpp"

using namespace kahler;

namespace {

QPoly q(std::vector<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(v);
}

QPoly random_qpoly(std::mt19937_64& rng, int deg) {
    std::vector<mpq_class> v;
    for (int i = 0; i <= deg; ++i) v.push_back(testgen::rational(rng));
    return QPoly(v);
}

}  // namespace

TEST_CASE("zero polynomial normalization") {
    QPoly z(std::vector<mpq_class>{0, 0, 0});
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(q({0, 1, 2}).degree() == 1);
    CHECK((q({1, 2}) - q({1, 2})).degree() == -1);
}

TEST_CASE("from_roots expansions") {
    CHECK(from_roots<mpq_class>({mpq_class(7)}, {1}) == q({1, -7}));
    CHECK(from_roots<mpq_class>({2, 3}, {1, 1}) == q({1, -5, 6}));
    // Binomial oracle: (t-1)^3 coefficients are (-1)^k C(3,k).
    CHECK(from_roots<mpq_class>({1}, {3}) == q({1, -3, 3, -1}));
    CHECK(from_roots<mpq_class>({}, {}) == q({1}));
    CHECK_THROWS_AS(from_roots<mpq_class>({1, 2}, {1}), Error);
}

TEST_CASE("eval_and_derivatives") {
    auto d = eval_and_derivatives(q({1, -5, 6}), mpq_class(2), 1);
    CHECK(d[0] == 0);
    CHECK(d[1] == -1);
    auto c = eval_and_derivatives(q({1, 0, 0, 0}), mpq_class(1), 2);
    CHECK(c == std::vector<mpq_class>{1, 3, 6});
    auto p = from_roots<mpq_class>({1, 2, 4}, {1, 1, 1});
    CHECK(eval_and_derivatives(p, mpq_class(2), 1)[1] == mpq_class(-2));
    auto r = eval_and_derivatives(to_float(p), 2.0, 3);
    CHECK(r[3] == doctest::Approx(6.0));
}

TEST_CASE("arithmetic and exact division") {
    CHECK(q({1, -1}) * q({1, -2}) == q({1, -3, 2}));
    CHECK(divide_exact(q({1, 0, -1}), q({1, -1})) == q({1, 1}));
    auto p = from_roots<mpq_class>({1, 1, 2}, {1, 1, 1});
    auto pc = from_roots<mpq_class>({1}, {2});
    CHECK(divide_exact(p, pc) == q({1, -2}));
    CHECK_THROWS_AS(divide_exact(q({1, 0, 1}), q({1, -1})), InexactDivision);
    CHECK_THROWS_AS(divide_exact(RPoly({1.0, 0.0, 1.0}), RPoly({1.0, -1.0})), InexactDivision);
    auto f = divide_exact(RPoly({1.0, 0.0, -1.0}), RPoly({1.0, -1.0}));
    CHECK(f.coeffs() == std::vector<double>{1.0, 1.0});
}

TEST_CASE("derivative and antiderivative") {
    auto p = q({3, 2, 1});
    CHECK(p.derivative() == q({6, 2}));
    CHECK(p.antiderivative(5).derivative() == p);
    CHECK(p.antiderivative(5).coeff(0) == 5);
}

TEST_CASE("json round trip") {
    auto p = QPoly(std::vector<mpq_class>{mpq_class(1, 3), mpq_class(-2), mpq_class(0)});
    CHECK(qpoly_from_json(to_json(p)) == p);
    RPoly r({1.5, -0.25});
    CHECK(rpoly_from_json(to_json(r)) == r);
    CHECK_THROWS_AS(rpoly_from_json(nlohmann::json("x")), ConfigError);
}

TEST_CASE("property: from_roots vanishes at its roots, derivative is the product of differences") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + trial % 6;
        auto xs = testgen::distinct_rationals(rng, m);
        auto p = from_roots(xs, std::vector<int>(static_cast<size_t>(m), 1));
        CHECK(p.degree() == m);
        CHECK(p.leading() == 1);
        auto dp = p.derivative();
        for (int j = 0; j < m; ++j) {
            CHECK(p(xs[static_cast<size_t>(j)]) == 0);
            mpq_class delta = 1;
            for (int k = 0; k < m; ++k)
                if (k != j) delta *= xs[static_cast<size_t>(j)] - xs[static_cast<size_t>(k)];
            CHECK(dp(xs[static_cast<size_t>(j)]) == delta);
        }
    }
}

TEST_CASE("property: multiplication is commutative and associative") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_qpoly(rng, trial % 4);
        auto b = random_qpoly(rng, (trial + 1) % 5);
        auto c = random_qpoly(rng, (trial + 2) % 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        if (!b.is_zero()) CHECK(divide_exact(a * b, b) == a);
    }
}
