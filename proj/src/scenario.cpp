#include "kahler/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <openssl/sha.h>

#include "kahler/symfunc.hpp"

namespace kahler {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "' in " + where + ": " + e.what());
    }
}

template <class T>
T get_or(const json& obj, const std::string& key, const T& fallback, const std::string& where) {
    return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

const std::set<std::string> kChecks = {"kahler", "hamiltonian", "symmetry", "potential", "conformal_killing", "jet",
                                       "class"};

SpectrumSpec parse_model(const json& m) {
    const std::string where = "model";
    check_keys(m, {"m", "ell", "nonconstant_domains", "constant_roots", "fibre_extent"}, where);
    SpectrumSpec s;
    s.m = get<int>(m, "m", where);
    s.ell = get<int>(m, "ell", where);
    s.t_extent = get_or<double>(m, "fibre_extent", 1.0, where);
    const json& doms = m.contains("nonconstant_domains") ? m.at("nonconstant_domains") : json::array();
    if (!doms.is_array()) throw ConfigError("model.nonconstant_domains must be an array");
    for (const auto& d : doms) {
        auto v = number_list(d, "model.nonconstant_domains entry");
        if (v.size() != 2) throw ConfigError("each nonconstant domain is [lo, hi]");
        s.domains.push_back({v[0], v[1]});
    }
    if (m.contains("constant_roots")) {
        if (!m.at("constant_roots").is_array()) throw ConfigError("model.constant_roots must be an array");
        for (const auto& r : m.at("constant_roots")) {
            const std::string w = "constant_roots entry";
            check_keys(r, {"value", "multiplicity", "factor"}, w);
            ConstantRootSpec c;
            c.value = get<double>(r, "value", w);
            c.mult = get_or<int>(r, "multiplicity", 1, w);
            json f = r.contains("factor") ? r.at("factor") : json::object();
            check_keys(f, {"k", "scale", "r_max", "sign"}, "factor");
            c.sign = get_or<int>(f, "sign", 0, "factor");
            c.factor.mdim = c.mult;
            c.factor.k = get_or<double>(f, "k", 0.0, "factor");
            c.factor.scale = get_or<double>(f, "scale", 1.0, "factor");
            c.factor.r_max = get_or<double>(f, "r_max", 0.5, "factor");
            if (!(c.factor.scale > 0.0)) throw ConfigError("factor scale must be positive");
            s.roots.push_back(c);
        }
    }
    return s;
}

double param(const json& j, const std::string& key, double fallback, const std::string& where) {
    return get_or<double>(j, key, fallback, where);
}

}  // namespace

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

std::string config_hash(const json& config) {
    const std::string text = config.dump();
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), md);
    std::string hex;
    char buf[3];
    for (unsigned char c : md) {
        std::snprintf(buf, sizeof buf, "%02x", c);
        hex += buf;
    }
    return hex;
}

Scenario parse_scenario(json config, std::optional<std::uint64_t> seed_override) {
    check_keys(config, {"schema", "model", "F", "samples", "diff", "tolerances", "checks"}, "config");
    if (!config.contains("schema") || config.at("schema") != 1) throw ConfigError("config needs \"schema\": 1");
    if (seed_override) config["samples"]["seed"] = *seed_override;
    Scenario s;
    s.spectrum = parse_model(get<json>(config, "model", "config"));

    const json f = get<json>(config, "F", "config");
    check_keys(f, {"mode", "polynomials", "coefficients", "integration"}, "F");
    s.f_mode = get<std::string>(f, "mode", "F");
    if (s.f_mode == "explicit") {
        if (f.contains("coefficients") || f.contains("integration"))
            throw ConfigError("explicit F takes \"polynomials\" only");
        const json& ps = get<json>(f, "polynomials", "F");
        if (!ps.is_array()) throw ConfigError("F.polynomials must be an array");
        for (const auto& p : ps) s.spectrum.F.push_back(RPoly(number_list(p, "F.polynomials entry")));
        validate_spectrum(s.spectrum);
    } else {
        if (f.contains("polynomials")) throw ConfigError("class modes take \"coefficients\", not \"polynomials\"");
        s.class_spec.kind = class_kind_from_string(s.f_mode);
        s.class_spec.coeffs = number_list(get<json>(f, "coefficients", "F"), "F.coefficients");
        if (f.contains("integration")) s.class_spec.integration = number_list(f.at("integration"), "F.integration");
        s.class_spec.spectrum = s.spectrum;
        if (s.class_spec.kind == ClassKind::conf_einstein) {
            if (s.spectrum.ell != 1 || s.spectrum.domains.size() != 1 || !s.spectrum.roots.empty())
                throw ConfigError("conf_einstein takes ell = 1, one z-interval and no constant_roots");
        } else {
            SpectrumSpec probe = s.spectrum;
            probe.F = {RPoly::constant(1.0)};
            validate_spectrum(probe);
        }
    }

    const json samples = config.contains("samples") ? config.at("samples") : json::object();
    check_keys(samples, {"count", "seed"}, "samples");
    s.options.samples = get_or<int>(samples, "count", 20, "samples");
    s.options.seed = get_or<std::uint64_t>(samples, "seed", 1, "samples");
    if (s.options.samples < 1) throw ConfigError("samples.count must be positive");

    const json diff = config.contains("diff") ? config.at("diff") : json::object();
    check_keys(diff, {"backend", "step"}, "diff");
    const std::string backend = get_or<std::string>(diff, "backend", "dual", "diff");
    if (backend == "dual") s.options.diff.backend = Backend::dual;
    else if (backend == "fd") s.options.diff.backend = Backend::fd;
    else throw ConfigError("diff.backend must be \"dual\" or \"fd\"");
    s.options.diff.h = param(diff, "step", s.options.diff.h, "diff");
    if (!(s.options.diff.h > 0.0)) throw ConfigError("diff.step must be positive");

    const json tol = config.contains("tolerances") ? config.at("tolerances") : json::object();
    check_keys(tol, {"first_order", "second_order"}, "tolerances");
    s.options.first_order = param(tol, "first_order", s.options.first_order, "tolerances");
    s.options.second_order = param(tol, "second_order", s.options.second_order, "tolerances");

    const json checks = get<json>(config, "checks", "config");
    if (!checks.is_array() || checks.empty()) throw ConfigError("checks must be a nonempty array");
    for (const auto& c : checks) {
        if (!c.is_string() || !kChecks.count(c.get<std::string>()))
            throw ConfigError("unknown check " + c.dump());
        s.checks.push_back(c.get<std::string>());
    }
    if (s.f_mode == "explicit")
        for (const auto& c : s.checks)
            if (c == "class") throw ConfigError("the \"class\" check needs a class F mode");
    s.config = std::move(config);
    return s;
}

ScenarioResult run_scenario(const Scenario& s) {
    ModelPtr M;
    ClassF cf;
    if (s.f_mode == "explicit") {
        M = build_general(s.spectrum);
        cf.F = s.spectrum.F.front();
    } else {
        cf = make_class_F(s.class_spec);
        M = build_class(s.class_spec);
    }
    json suites = json::array();
    bool ok = true;
    for (const auto& c : s.checks) {
        SuiteResult r = c == "class" ? check_class(*M, s.class_spec, cf, s.options) : run_suite(c, *M, s.options);
        for (const auto& rep : r) {
            suites.push_back(to_json(rep));
            ok = ok && rep.passed;
        }
    }
    // Curvature summary at the same samples.
    std::vector<double> scal;
    double bochner = 0.0;
    for (const auto& x : sample_points(*M, s.options.samples, s.options.seed)) {
        auto B = curvature_bundle(*M, x, s.options.diff);
        scal.push_back(B.scal);
        if (B.m >= 2) bochner = std::max(bochner, kahler_decompose(B).bochner_norm);
    }
    double lo = scal.front(), hi = scal.front(), sum = 0.0;
    for (double v : scal) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    json meas;
    meas["scal"] = {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(scal.size())}};
    if (M->info().m >= 2) meas["bochner_norm_max"] = bochner;

    ScenarioResult out;
    out.report["schema"] = 1;
    out.report["config_hash"] = config_hash(s.config);
    out.report["model"] = {{"kind", M->info().kind}, {"m", M->info().m}, {"ell", M->info().ell}};
    out.report["F"] = to_json(cf.F);
    out.report["measurements"] = meas;
    out.report["suites"] = suites;
    out.report["passed"] = ok;
    out.exit_code = ok ? kExitPass : kExitFail;
    return out;
}

namespace {

void dump_to(std::ostringstream& os, const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ',';
                first = false;
                os << json(k).dump() << ':';
                dump_to(os, v);
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                dump_to(os, j[i]);
            }
            os << ']';
            break;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                os << buf;
            }
            break;
        }
        default: os << j.dump();
    }
}

}  // namespace

std::string dump_report(const json& j) {
    std::ostringstream os;
    dump_to(os, j);
    os << '\n';
    return os.str();
}

IdentityRun run_identities(int max_m, int max_k, int trials, std::uint64_t seed, bool inject_fault) {
    if (max_m < 1 || max_m > 8) throw ConfigError("--max-m must be between 1 and 8");
    if (max_k < 0) throw ConfigError("--max-k must be nonnegative");
    if (trials < 1) throw ConfigError("--trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    IdentityOptions opts;
    opts.corrupt_w = inject_fault;
    IdentityRun out;
    json per_m = json::array();
    bool ok = true;
    for (int m = 1; m <= max_m && ok; ++m) {
        int passed = 0;
        for (int t = 0; t < trials; ++t) {
            std::vector<mpq_class> xs;
            while (static_cast<int>(xs.size()) < m) {
                mpq_class q(num(rng), den(rng));
                q.canonicalize();
                bool dup = false;
                for (const auto& x : xs) dup = dup || x == q;
                if (!dup) xs.push_back(q);
            }
            try {
                identity_suite(xs, max_k, opts);
                ++passed;
            } catch (const IdentityViolation& e) {
                std::ostringstream os;
                os << e.what() << " at xs = (";
                for (size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i].get_str();
                os << ")";
                out.witness = os.str();
                ok = false;
                break;
            }
        }
        per_m.push_back({{"m", m}, {"trials", trials}, {"passed", passed}});
    }
    out.report["schema"] = 1;
    out.report["command"] = "identities";
    out.report["max_m"] = max_m;
    out.report["max_k"] = max_k;
    out.report["seed"] = seed;
    out.report["results"] = per_m;
    out.report["passed"] = ok;
    if (!ok) out.report["witness"] = out.witness;
    out.exit_code = ok ? kExitPass : kExitFail;
    return out;
}

}  // namespace kahler
