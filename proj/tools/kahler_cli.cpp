// Batch scenario runner and exact identity checker.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kahler/scenario.hpp"

namespace {

int emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write '" << out << "'\n";
        return kahler::kExitConfig;
    }
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian 2-form model builder and curvature checker"};
    app.require_subcommand(1);

    std::string config_path, out;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "build a model from a config and run its checks");
    run->add_option("config", config_path, "scenario JSON")->required();
    run->add_option("--out", out, "report path (default stdout)");
    run->add_option("--seed", seed, "override samples.seed");

    int max_m = 6, max_k = 3, trials = 50;
    std::uint64_t id_seed = 1;
    bool inject = false;
    auto* ids = app.add_subcommand("identities", "exact Vandermonde identities on random rationals");
    ids->add_option("--max-m", max_m, "largest variable count (at most 8)")->required();
    ids->add_option("--trials", trials, "random sets per m")->required();
    ids->add_option("--max-k", max_k, "largest power in the power-sum identities");
    ids->add_option("--seed", id_seed, "RNG seed");
    ids->add_flag("--inject-fault", inject, "flip a sign in W")->group("");
    ids->add_option("--out", out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kahler::kExitConfig;
    }

    try {
        if (*run) {
            auto sc = kahler::parse_scenario(kahler::load_config(config_path), seed);
            auto res = kahler::run_scenario(sc);
            if (int rc = emit(kahler::dump_report(res.report), out)) return rc;
            return res.exit_code;
        }
        auto res = kahler::run_identities(max_m, max_k, trials, id_seed, inject);
        if (int rc = emit(kahler::dump_report(res.report), out)) return rc;
        if (res.exit_code != kahler::kExitPass) std::cerr << "identity violation: " << res.witness << '\n';
        return res.exit_code;
    } catch (const kahler::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kahler::kExitConfig;
    } catch (const kahler::BuildError& e) {
        std::cerr << "build error: " << e.what() << '\n';
        return kahler::kExitBuild;
    } catch (const kahler::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kahler::kExitFail;
    }
}
