#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(RELSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "relsim_cli_test";
    fs::create_directories(d);
    return d;
}

fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = scratch_dir() / name;
    std::ofstream os(p);
    os << j.dump(2);
    return p;
}

json equality_intensity(double g) {
    return {{"lambda", {{"kind", "reciprocal"}, {"params", {{"a", 0.0}, {"b", g}}}}},
            {"mu", {{"kind", "reciprocal"}, {"params", {{"a", 0.0}, {"b", g}}}}},
            {"gamma", g},
            {"Gamma", g}};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("run") == 1);
    CHECK(run_cli("run /nonexistent/config.json") == 1);
    CHECK(run_cli("validate /nonexistent/config.json") == 1);

    const fs::path bad = scratch_dir() / "bad.json";
    {
        std::ofstream os(bad);
        os << "{ nope";
    }
    CHECK(run_cli("run " + bad.string()) == 1);
}

TEST_CASE("validate checks constraints without producing output") {
    json cfg{{"experiment", "simulate"},
             {"intensity", equality_intensity(3.0)},
             {"horizon", 2.0},
             {"output_dir", (scratch_dir() / "should_not_exist").string()}};
    const fs::path p = write_config("validate_ok.json", cfg);
    CHECK(run_cli("validate " + p.string()) == 0);
    CHECK(!fs::exists(scratch_dir() / "should_not_exist"));

    cfg["experiment"] = "regeneration";
    cfg["K"] = 1.0;
    cfg["K1"] = 3.0;
    const fs::path q = write_config("validate_bad.json", cfg);
    CHECK(run_cli("validate " + q.string()) == 1);
}

TEST_CASE("run produces reports and honors flag overrides") {
    const fs::path out = scratch_dir() / "run_out";
    fs::remove_all(out);
    json cfg{{"experiment", "simulate"},
             {"intensity", equality_intensity(3.0)},
             {"horizon", 5.0},
             {"seed", 4},
             {"output_dir", (scratch_dir() / "ignored").string()}};
    const fs::path p = write_config("run.json", cfg);
    CHECK(run_cli("run " + p.string() + " --seed 12 --out " + out.string()) == 0);
    REQUIRE(fs::exists(out / "simulate_seed12_report.json"));
    REQUIRE(fs::exists(out / "simulate_seed12_path.csv"));
    const json echoed = json::parse(slurp(out / "simulate_seed12_config.json"));
    CHECK(echoed["seed"] == 12);

    // Same invocation reproduces the report byte for byte.
    const std::string body = slurp(out / "simulate_seed12_report.json");
    CHECK(run_cli("run " + p.string() + " --seed 12 --out " + out.string()) == 0);
    CHECK(slurp(out / "simulate_seed12_report.json") == body);
}

TEST_CASE("sampler validation passes for a certified model") {
    const fs::path out = scratch_dir() / "sampler_ok";
    json cfg{{"experiment", "validate-sampler"},
             {"intensity", equality_intensity(3.0)},
             {"deltas", {0.1, 0.5, 1.0}},
             {"reps", 20000},
             {"seed", 8},
             {"output_dir", out.string()}};
    const fs::path p = write_config("sampler_ok.json", cfg);
    CHECK(run_cli("run " + p.string()) == 0);
    const json report = json::parse(slurp(out / "validate-sampler_seed8_report.json"));
    CHECK(report["pass"] == true);
}

TEST_CASE("an understated dominating rate is caught and exits with 2") {
    // Gamma declared as 1 while the true rates are 5: the certificate would
    // reject this, so it only runs with the unchecked escape hatch, and the
    // thinning sampler's proposal rate is then too low to be exact.
    const fs::path out = scratch_dir() / "sampler_bad";
    json intensity{
        {"lambda", {{"kind", "constant"}, {"params", {{"c", 5.0}}}}},
        {"mu", {{"kind", "constant"}, {"params", {{"c", 5.0}}}}},
        {"gamma", 1.0},
        {"Gamma", 1.0},
        {"unchecked", true}};
    json cfg{{"experiment", "validate-sampler"},
             {"intensity", intensity},
             {"deltas", {0.1, 0.5}},
             {"reps", 20000},
             {"seed", 8},
             {"method", "thinning"},
             {"output_dir", out.string()}};
    const fs::path p = write_config("sampler_bad.json", cfg);
    CHECK(run_cli("run " + p.string()) == 2);
}

TEST_CASE("a hitting-time cap that bites exits with 3") {
    const fs::path out = scratch_dir() / "capped";
    json cfg{{"experiment", "hitting-moments"},
             {"intensity", equality_intensity(0.3)},
             {"z0", {{"i", 0}, {"x", 30.0}, {"j", 0}, {"y", 30.0}}},
             {"K", 2.0},
             {"m", 1.0},
             {"p", 1.0},
             {"reps", 200},
             {"time_cap", 20.0},
             {"seed", 5},
             {"output_dir", out.string()}};
    const fs::path p = write_config("capped.json", cfg);
    CHECK(run_cli("run " + p.string()) == 3);
}

TEST_CASE("drift check runs end to end") {
    const fs::path out = scratch_dir() / "drift";
    json cfg{{"experiment", "drift-check"},
             {"intensity", equality_intensity(6.0)},
             {"delta", 0.2},
             {"m", 1.0},
             {"grid_points", 2000},
             {"seed", 2},
             {"output_dir", out.string()}};
    const fs::path p = write_config("drift.json", cfg);
    CHECK(run_cli("run " + p.string()) == 0);
    const json report = json::parse(slurp(out / "drift-check_seed2_report.json"));
    CHECK(report["violations"] == 0);
}
