#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kahler/scenario.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("kahler_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run cli(const std::string& args) {
    const auto out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd =
        std::string(KAHLER_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string config(const std::string& name) { return std::string(KAHLER_CONFIG_DIR) + "/" + name; }

std::string write_config(const std::string& name, const json& j) {
    const auto p = scratch() / name;
    std::ofstream(p) << j.dump(2);
    return p.string();
}

json sphere() { return kahler::load_config(config("sphere.json")); }

}  // namespace

TEST_CASE("bundled sphere config") {
    auto r = cli("run " + config("sphere.json"));
    REQUIRE(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["schema"] == 1);
    CHECK(rep["passed"] == true);
    CHECK(rep["config_hash"].get<std::string>().size() == 64);
    CHECK(rep["measurements"]["scal"]["min"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep["measurements"]["scal"]["max"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_FALSE(rep["suites"].empty());
}

TEST_CASE("bundled Bochner-flat config") {
    const auto out = (scratch() / "bf.json").string();
    auto r = cli("run " + config("bf_m2.json") + " --out " + out);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    auto rep = json::parse(slurp(out));
    CHECK(rep["measurements"]["bochner_norm_max"].get<double>() < 1e-4);
    bool saw_bochner = false;
    for (const auto& s : rep["suites"]) saw_bochner = saw_bochner || s["name"] == "bf.bochner";
    CHECK(saw_bochner);
}

TEST_CASE("reports are byte-identical across runs") {
    auto a = cli("run " + config("bf_m2.json")), b = cli("run " + config("bf_m2.json"));
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // Floats carry 17 significant digits and round-trip exactly.
    auto rep = json::parse(a.out);
    CHECK(json::parse(kahler::dump_report(rep)) == rep);
}

TEST_CASE("seed override changes the hash and the samples") {
    auto a = cli("run " + config("sphere.json")), b = cli("run " + config("sphere.json") + " --seed 5");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    auto ra = json::parse(a.out), rb = json::parse(b.out);
    CHECK(ra["config_hash"] != rb["config_hash"]);
    CHECK(rb["suites"][0]["seed"] == 5);
}

TEST_CASE("config errors exit 2") {
    auto overlap = sphere();
    overlap["model"]["m"] = 2;
    overlap["model"]["ell"] = 2;
    overlap["model"]["nonconstant_domains"] = {{-1.0, 0.5}, {0.0, 1.0}};
    auto r = cli("run " + write_config("overlap.json", overlap));
    CHECK(r.code == 2);
    INFO(r.err);
    CHECK(r.err.find("(-1, 0.5)") != std::string::npos);
    CHECK(r.err.find("(0, 1)") != std::string::npos);

    auto unknown = sphere();
    unknown["samples"]["colour"] = "blue";
    r = cli("run " + write_config("unknown.json", unknown));
    CHECK(r.code == 2);
    CHECK(r.err.find("colour") != std::string::npos);

    auto schema = sphere();
    schema["schema"] = 2;
    CHECK(cli("run " + write_config("schema.json", schema)).code == 2);

    auto check = sphere();
    check["checks"] = {"kahler", "curvature"};
    CHECK(cli("run " + write_config("check.json", check)).code == 2);

    std::ofstream(scratch() / "broken.json") << "{\"schema\": 1,";
    CHECK(cli("run " + (scratch() / "broken.json").string()).code == 2);
    CHECK(cli("run " + (scratch() / "missing.json").string()).code == 2);
    CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("positivity failures exit 3") {
    json c = kahler::load_config(config("bf_m2.json"));
    c["F"] = {{"mode", "wbf"}, {"coefficients", {0.0, 0.0, 0.0, -1.0}}};
    c["model"]["nonconstant_domains"] = {{-0.8, -0.2}, {0.2, 0.8}};
    c["checks"] = {"kahler"};
    auto r = cli("run " + write_config("neg.json", c));
    CHECK(r.code == 3);
    CHECK(r.err.find("(-0.8, -0.2)") != std::string::npos);
}

TEST_CASE("suite failures exit 1 with a complete report") {
    // Pinned below double precision so the report is complete but failing.
    auto c = sphere();
    c["tolerances"] = {{"first_order", 0.0}, {"second_order", 0.0}};
    c["checks"] = {"hamiltonian", "potential"};
    auto r = cli("run " + write_config("strict.json", c));
    CHECK(r.code == 1);
    auto rep = json::parse(r.out);
    CHECK(rep["passed"] == false);
    CHECK(rep["suites"].size() >= 4);
}

TEST_CASE("identities command") {
    auto ok = cli("identities --max-m 6 --trials 50");
    CHECK(ok.code == 0);
    auto rep = json::parse(ok.out);
    CHECK(rep["passed"] == true);
    CHECK(rep["results"].size() == 6);
    auto bad = cli("identities --max-m 3 --trials 5 --inject-fault");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("xs = (") != std::string::npos);
    CHECK(json::parse(bad.out)["witness"].is_string());
    CHECK(cli("identities --max-m 9 --trials 1").code == 2);
}

TEST_CASE("hand case v = (1, 2)") {
    std::vector<mpq_class> v{mpq_class(1), mpq_class(2)};
    CHECK_NOTHROW(kahler::identity_suite(v, 3, {}));
}
