// Acceptance run: one PASS/FAIL line per criterion, thresholds pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gen_spectrum.hpp"
#include "kahler/classify.hpp"
#include "kahler/scenario.hpp"
#include "kahler/verify.hpp"

using namespace kahler;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

/// Accumulates named measurements against thresholds.
struct Ledger {
    Outcome out;
    std::ostringstream os;

    void bound(const std::string& what, double value, double limit) {
        const bool ok = value < limit;  // NaN fails
        out.passed = out.passed && ok;
        if (!ok || os.tellp() < 400) os << what << '=' << value << (ok ? " " : "(!) ");
    }
    void require(const std::string& what, bool ok) {
        out.passed = out.passed && ok;
        if (!ok) os << what << "(!) ";
    }
    Outcome done() {
        out.detail = os.str();
        return out;
    }
};

double residual(const SuiteResult& r, const std::string& name) {
    for (const auto& c : r)
        if (c.name == name) return c.residual_max;
    return std::numeric_limits<double>::quiet_NaN();
}

SuiteOptions opts(int samples, std::uint64_t seed) {
    SuiteOptions o;
    o.samples = samples;
    o.seed = seed;
    return o;
}

RPoly P(std::vector<double> c) { return RPoly(std::move(c)); }

SpectrumSpec skeleton(int m, int ell, std::vector<Interval> d, std::vector<std::pair<double, int>> roots = {}) {
    SpectrumSpec s;
    s.m = m;
    s.ell = ell;
    s.domains = std::move(d);
    for (auto [v, k] : roots) {
        ConstantRootSpec r;
        r.value = v;
        r.mult = k;
        r.factor.mdim = k;
        s.roots.push_back(r);
    }
    return s;
}

const std::vector<Interval> kNear = {{-0.8, -0.2}, {0.2, 0.8}};

/// Generated spectra for criteria 2-4: two per shape.
std::vector<ModelPtr>& generated() {
    static std::vector<ModelPtr> models = [] {
        std::vector<ModelPtr> out;
        std::mt19937_64 rng(20240601);
        const int shapes[][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}};
        for (const auto& sh : shapes)
            for (int rep = 0; rep < 2; ++rep) out.push_back(build_general(testgen::random_spectrum(rng, sh[0], sh[1])));
        return out;
    }();
    return models;
}

ModelPtr orthotoric3() {
    return build_orthotoric(3, {P({0.1, 0.2, 0.0, 1.0}), P({-0.5, -0.3, -1.0}), P({-0.1, 1.0, 0.0, 0.5})},
                            {{-2.0, -1.2}, {-0.6, 0.4}, {1.0, 1.8}});
}

// ---------------------------------------------------------------------------

Outcome c1_identities() {
    Ledger L;
    const auto t0 = std::chrono::steady_clock::now();
    auto run = run_identities(6, 3, 50, 12345);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    L.require("all exact (" + run.witness + ")", run.exit_code == kExitPass);
    L.bound("seconds", secs, 10.0);
    return L.done();
}

Outcome c2_reproduction() {
    Ledger L;
    double ham = 0, killing = 0, poisson = 0, orth = 0;
    for (const auto& M : generated()) {
        auto o = opts(20, 7);
        auto h = hamiltonian_suite(*M, o);
        auto s = symmetry_suite(*M, o);
        ham = std::max(ham, residual(h, "hamiltonian.ham"));
        orth = std::max(orth, residual(h, "hamiltonian.orthogonality"));
        killing = std::max(killing, residual(s, "symmetry.killing"));
        poisson = std::max(poisson, residual(s, "symmetry.poisson"));
    }
    L.require("models>=5", generated().size() >= 5);
    L.bound("ham", ham, 1e-5);
    L.bound("killing", killing, 1e-6);
    L.bound("poisson", poisson, 1e-7);
    L.bound("orthogonality", orth, 1e-8);
    return L.done();
}

Outcome c3_momentum() {
    Ledger L;
    std::vector<ModelPtr> models = generated();
    models.push_back(orthotoric3());
    models.push_back(build_class({ClassKind::bf, {-1.0, 0.0, 5.0, 0.0, -4.0}, {}, skeleton(2, 2, {{-0.8, -0.2}, {1.2, 1.8}})}));
    models.push_back(build_class({ClassKind::wbf, {0.3, 0.2, 0.1, 1.0}, {}, skeleton(3, 2, kNear, {{2.0, 1}})}));
    models.push_back(conf_einstein(2, 1.0, 0.4, 0.3, 0.2, 0.5, {0.8, 1.6}, opts(2, 1)).model);
    double worst = 0;
    for (const auto& M : models)
        worst = std::max(worst, residual(hamiltonian_suite(*M, opts(10, 3)), "hamiltonian.momentum_polynomial"));
    L.bound("models=" + std::to_string(models.size()) + " coeff", worst, 1e-6);
    return L.done();
}

Outcome c4_scal() {
    Ledger L;
    double worst = 0;
    for (const auto& M : generated()) worst = std::max(worst, explicit_scal_check(*M, opts(20, 11)).residual_max);
    L.bound("relative", worst, 1e-4);
    auto S = build_orthotoric(1, {P({-1.0, 0.0, 1.0})}, {{-1.0, 1.0}});
    double sphere = 0;
    for (double v : scal_samples(*S, opts(20, 1))) sphere = std::max(sphere, std::abs(v - 2.0));
    L.bound("sphere|Scal-2|", sphere, 1e-6);
    auto F = build_orthotoric(1, {P({2.0, 0.0})}, {{0.5, 2.0}});
    double flat = 0;
    for (double v : scal_samples(*F, opts(20, 1))) flat = std::max(flat, std::abs(v));
    L.bound("flat|Scal|", flat, 1e-8);
    return L.done();
}

Outcome c5_extremal() {
    Ledger L;
    ClassSpec ex{ClassKind::extremal, {0.5, -1.0, 0.3}, {}, skeleton(2, 2, kNear)};
    L.bound("scal_affine", residual(check_extremal(*build_class(ex), ex, opts(20, 5)), "extremal.scal_affine"), 1e-4);
    ClassSpec csc{ClassKind::csc, {0.0, -1.0, 0.3}, {}, skeleton(2, 2, kNear)};
    auto r = check_extremal(*build_class(csc), csc, opts(20, 5), 1e-5);
    L.bound("a0=0 spread", residual(r, "extremal.scal_spread"), 1e-5);
    return L.done();
}

Outcome c6_wbf() {
    Ledger L;
    ClassSpec w{ClassKind::wbf, {0.3, 0.2, 0.1, 1.0}, {}, skeleton(2, 2, kNear)};
    auto r = check_wbf(*build_class(w), w, opts(20, 5));
    L.bound("ricci_form", residual(r, "wbf.ricci_form"), 1e-4);
    L.bound("weak_einstein", residual(r, "wbf.weak_einstein"), 1e-4);
    ClassSpec ke{ClassKind::ke, {0.0, 0.2, 0.1, 1.0}, {}, skeleton(2, 2, kNear)};
    auto k = check_wbf(*build_class(ke), ke, opts(20, 5));
    L.bound("ke rho~-lambda*omega", residual(k, "wbf.kahler_einstein"), 1e-4);
    return L.done();
}

Outcome c7_bf() {
    Ledger L;
    ClassSpec b{ClassKind::bf, {-1.0, 0.0, 5.0, 0.0, -4.0}, {}, skeleton(2, 2, {{-0.8, -0.2}, {1.2, 1.8}})};
    auto M = build_class(b);
    auto r = check_bf(*M, b, make_class_F(b), opts(10, 5));
    L.bound("bochner", residual(r, "bf.bochner"), 1e-4);
    L.bound("charpoly_spread", residual(r, "jet.charpoly_spread"), 1e-4);
    L.bound("charpoly_match", residual(r, "jet.charpoly_match"), 1e-3);
    return L.done();
}

Outcome c8_conf_einstein() {
    Ledger L;
    auto g = conf_einstein(2, 1.0, 0.4, 0.3, 0.2, 0.5, {0.8, 1.6}, opts(20, 5));
    L.bound("Ric0", g.report.residual_max, 1e-4);
    L.require("samples=20", g.report.samples == 20);
    auto k = conf_einstein(2, 1.0, 0.0, 0.3, 0.2, 0.5, {0.8, 1.6}, opts(20, 5));
    L.bound("q=0 rho~", rho_tilde_proportional(*k.model, opts(20, 5), "ke").residual_max, 1e-4);
    return L.done();
}

Outcome c9_conformal_killing() {
    Ledger L;
    auto r = conformal_killing_suite(*orthotoric3(), opts(20, 9));
    for (const char* n : {"twistor", "d_psi", "delta_psi", "trace", "killing_tensor"})
        L.bound(n, residual(r, std::string("conformal_killing.") + n), 1e-5);
    return L.done();
}

Outcome c10_cross_builder() {
    Ledger L;
    OrthotoricG G;
    G.m = 2;
    G.theta = {P({-1.0, -0.3, 2.0, 0.0, -1.5}), P({-0.5, 1.0, 0.0, 2.0})};
    G.domains = {{-2.0, -1.0}, {0.5, 1.5}};
    auto T = build_toric_from_G(G);
    auto O = build_orthotoric(2, G.theta, G.domains);
    double worst = 0;
    for (const auto& x : sample_points(*O, 20, 4)) {
        Vec<double> xi{x[0], x[1]};
        Vec<double> s = sigma_of_xi(xi);
        Vec<double> y{s[0], s[1], x[2], x[3]};
        // Pull the toric metric back along ξ ↦ σ(ξ).
        Mat<double> Jac = Mat<double>::identity(4);
        Jac(0, 0) = 1;
        Jac(0, 1) = 1;
        Jac(1, 0) = xi[1];
        Jac(1, 1) = xi[0];
        auto gt = eval_fields(*T, y, kMetric).g, go = eval_fields(*O, x, kMetric).g;
        worst = std::max(worst, rel_residual(max_abs(transpose(Jac) * gt * Jac - go), max_abs(go)));
    }
    L.bound("toric-vs-orthotoric", worst, 1e-6);
    L.require("detector passes on orthotoric G", orthotoric_detector(*T, opts(20, 4)).passed);
    G.quartic = 0.05;
    L.require("detector fails on perturbed G", !orthotoric_detector(*build_toric_from_G(G), opts(20, 4)).passed);
    return L.done();
}

Outcome c11_mutation() {
    Ledger L;
    const std::vector<std::string> suites = {"kahler", "hamiltonian", "symmetry", "potential", "conformal_killing", "jet"};
    auto bumped = metric_bump(orthotoric3(), 0, 0, 1e-2);
    for (const auto& s : suites) L.require(s + " fails", !suite_passed(run_suite(s, *bumped, opts(5, 3))));
    ClassSpec b{ClassKind::bf, {-1.0, 0.0, 5.0, 0.0, -4.0}, {}, skeleton(2, 2, {{-0.8, -0.2}, {1.2, 1.8}})};
    auto bb = metric_bump(build_class(b), 0, 0, 1e-2);
    L.require("class fails", !suite_passed(check_class(*bb, b, make_class_F(b), opts(5, 3))));
    if (L.out.passed) L.os << "all " << suites.size() + 1 << " suites fail on the bumped metric";
    return L.done();
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"exact Vandermonde identities, m = 1..6, 50 sets each", c1_identities},
        {"hamiltonian 2-form reproduction on generated spectra", c2_reproduction},
        {"momentum polynomial matches the spectrum", c3_momentum},
        {"explicit scalar curvature formula and anchors", c4_scal},
        {"extremal instances", c5_extremal},
        {"weakly Bochner-flat and Kahler-Einstein instances", c6_wbf},
        {"Bochner-flat instance and characteristic polynomial", c7_bf},
        {"conformally Einstein Calabi-type instance", c8_conf_einstein},
        {"conformal Killing 2-form on an m = 3 orthotoric model", c9_conformal_killing},
        {"cross-builder oracles and orthotoric detector", c10_cross_builder},
        {"mutation guard", c11_mutation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu: %s  %s [%.2fs] %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first, secs,
                    o.detail.c_str());
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
