#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gen_spectrum.hpp"
#include "kahler/verify.hpp"

using namespace kahler;

namespace {

RPoly P(std::vector<double> c) { return RPoly(std::move(c)); }

const std::vector<std::string> kSuites = {"kahler", "hamiltonian", "symmetry", "potential", "conformal_killing", "jet"};

ModelPtr orthotoric2() {
    return build_orthotoric(2, {P({-1.0, -0.3, 2.0, 0.0, -1.5}), P({-0.5, 1.0, 0.0, 2.0})}, {{-2.0, -1.0}, {0.5, 1.5}});
}

SuiteOptions quick(int samples = 4, std::uint64_t seed = 3) {
    SuiteOptions o;
    o.samples = samples;
    o.seed = seed;
    return o;
}

std::string failing(const SuiteResult& r) {
    std::string s;
    for (const auto& c : r)
        if (!c.passed) s += c.name + " (" + std::to_string(c.residual_max) + ") ";
    return s;
}

bool any_failed(const SuiteResult& r) {
    for (const auto& c : r)
        if (!c.passed) return true;
    return false;
}

}  // namespace

TEST_CASE("every suite passes on an orthotoric model") {
    auto M = orthotoric2();
    for (const auto& s : kSuites) {
        auto r = run_suite(s, *M, quick());
        INFO(s, ": ", failing(r));
        CHECK(suite_passed(r));
        for (const auto& c : r) CHECK(c.name.rfind(s + ".", 0) == 0);
    }
}

TEST_CASE("suites pass on random spectra (property)") {
    std::mt19937_64 rng(2024);
    const int shapes[][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}};
    for (const auto& sh : shapes) {
        auto spec = testgen::random_spectrum(rng, sh[0], sh[1]);
        auto M = build_general(spec);
        for (const auto& s : kSuites) {
            if (s == "conformal_killing" && sh[0] < 2) continue;
            auto r = run_suite(s, *M, quick(3, rng()));
            INFO("m=", sh[0], " ell=", sh[1], " ", s, ": ", failing(r));
            CHECK(suite_passed(r));
        }
    }
}

TEST_CASE("suites pass on a Calabi-type model") {
    CalabiSpec c;
    c.m = 3;
    c.F = P({1.0, 0.0, 0.5, 0.0, 2.0});
    c.base = space_form_factor(2, 0.4, 1.0);
    c.z = {0.5, 1.5};
    auto M = build_calabi(c);
    for (const auto& s : kSuites) {
        auto r = run_suite(s, *M, quick());
        INFO(s, ": ", failing(r));
        CHECK(suite_passed(r));
    }
}

TEST_CASE("a flipped J entry fails the Kähler suite") {
    auto M = flip_j_entry(orthotoric2(), 0, 2);
    CHECK_FALSE(suite_passed(kahler_suite(*M, quick())));
}

TEST_CASE("every suite fails on a perturbed metric") {
    auto M = metric_bump(orthotoric2(), 0, 0, 1e-2);
    for (const auto& s : kSuites) {
        INFO(s);
        CHECK(any_failed(run_suite(s, *M, quick())));
    }
}

TEST_CASE("suite selection and preconditions") {
    auto M = orthotoric2();
    CHECK_THROWS_AS(run_suite("nope", *M, quick()), ConfigError);
    OrthotoricG G;
    G.m = 2;
    G.theta = {P({-1.0, -0.3, 2.0, 0.0, -1.5}), P({-0.5, 1.0, 0.0, 2.0})};
    G.domains = {{-2.0, -1.0}, {0.5, 1.5}};
    auto T = build_toric_from_G(G);
    CHECK_THROWS_AS(hamiltonian_suite(*T, quick()), ConfigError);
    CHECK_THROWS_AS(orthotoric_detector(*M, quick()), ConfigError);
    auto m1 = build_orthotoric(1, {P({-1.0, 0.0, 1.0})}, {{-1.0, 1.0}});
    CHECK_THROWS_AS(conformal_killing_suite(*m1, quick()), DimensionTooSmall);
}

TEST_CASE("seeded runs are reproducible") {
    auto M = orthotoric2();
    auto a = hamiltonian_suite(*M, quick(5, 9)), b = hamiltonian_suite(*M, quick(5, 9));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].residual_max == b[i].residual_max);
        CHECK(a[i].residual_mean == b[i].residual_mean);
        CHECK(a[i].seed == 9);
        CHECK(a[i].samples == 5);
    }
}

TEST_CASE("NaN residuals fail the report") {
    auto r = make_report("x", {1e-12, std::nan("")}, 1e-8, 1);
    CHECK_FALSE(r.passed);
    CHECK(std::isnan(r.residual_max));
}

TEST_CASE("momentum coefficients agree with the pfaffian polynomial (property)") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        auto spec = testgen::random_spectrum(rng, 3, 1 + static_cast<int>(rng() % 3));
        auto M = build_general(spec);
        for (const auto& x : sample_points(*M, 2, rng())) {
            auto f = eval_fields(*M, x, kMetric | kPhi);
            auto c = momentum_coefficients(f.phi, f.g, f.J);
            RPoly p = momentum_polynomial(f.phi, f.g, f.omega);
            for (int k = 0; k <= 3; ++k) CHECK(c[static_cast<size_t>(3 - k)] == doctest::Approx(p.coeff(k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("orthotoric detector separates orthotoric and perturbed potentials") {
    OrthotoricG G;
    G.m = 2;
    G.theta = {P({-1.0, -0.3, 2.0, 0.0, -1.5}), P({-0.5, 1.0, 0.0, 2.0})};
    G.domains = {{-2.0, -1.0}, {0.5, 1.5}};
    CHECK(orthotoric_detector(*build_toric_from_G(G), quick()).passed);
    G.quartic = 0.05;
    CHECK_FALSE(orthotoric_detector(*build_toric_from_G(G), quick()).passed);
}

TEST_CASE("characteristic polynomial on a Bochner-flat model") {
    SpectrumSpec s;
    s.m = 2;
    s.ell = 2;
    s.domains = {{-0.8, -0.2}, {1.2, 1.8}};
    s.F = {P({-1.0, 0.0, 5.0, 0.0, -4.0})};
    auto M = build_general(s);
    CharpolyData cp;
    cp.c_m2 = -1.0;
    cp.c_m1 = 0.0;
    cp.F = s.F[0];
    auto r = jet_suite(*M, quick(6), &cp);
    INFO(failing(r));
    CHECK(suite_passed(r));
    // Wrong τ data: F_c no longer reproduces F.
    cp.c_m1 = 0.5;
    CHECK_FALSE(suite_passed(jet_suite(*M, quick(6), &cp)));
}

TEST_CASE("hamiltonian 2-forms from Killing potentials on constant holomorphic sectional curvature") {
    SpectrumSpec s;
    s.m = 2;
    s.ell = 2;
    s.domains = {{-0.8, -0.2}, {0.2, 0.8}};
    s.F = {P({-1.0, 0.0, 1.0, 0.0})};  // −t³ + t: CP²
    auto M = build_general(s);
    CHECK(curvature_bundle(*M, sample_points(*M, 1, 1)[0], Diff{}).scal == doctest::Approx(6.0));
    CHECK(bijection_check(*M, quick()).passed);
    // Not of constant holomorphic sectional curvature.
    s.domains = {{-0.8, -0.2}, {1.2, 1.8}};
    s.F = {P({-1.0, 0.0, 5.0, 0.0, -4.0})};
    CHECK_FALSE(bijection_check(*build_general(s), quick()).passed);
}

TEST_CASE("explicit scalar curvature on the sphere and the plane") {
    auto S = build_orthotoric(1, {P({-1.0, 0.0, 1.0})}, {{-1.0, 1.0}});
    for (double v : scal_samples(*S, quick(5))) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(explicit_scal_check(*S, quick()).passed);
    auto F = build_orthotoric(1, {P({2.0, 0.0})}, {{0.5, 2.0}});
    for (double v : scal_samples(*F, quick(5))) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("fd backend agrees with the dual backend on first-order suites") {
    auto M = orthotoric2();
    SuiteOptions o = quick();
    o.diff = Diff{Backend::fd, 1e-3};
    o.first_order = 1e-6;
    auto r = hamiltonian_suite(*M, o);
    INFO(failing(r));
    CHECK(suite_passed(r));
}
