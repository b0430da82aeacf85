#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "blowup/json_io.hpp"
#include "blowup/point_search.hpp"

namespace fs = std::filesystem;
using blowup::Json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr discarded unless `keep_stderr` is set.
Run run(const std::string& args, bool keep_stderr = false) {
    const std::string cmd = std::string(BLOWUP_CLI_PATH) + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(BLOWUP_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "blowup_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("check exit codes") {
    const Run ok = run("check --config " + data("example1_p3.json"));
    CHECK(ok.status == 0);
    CHECK(ok.out.find("verdict: admissible") != std::string::npos);

    CHECK(run("check --config " + data("p1_m_equals_d.json")).status == 1);
    CHECK(run("check --config " + data("example5_orbits.json")).status == 0);
    CHECK(run("check --config " + data("example6_p1xp2.json")).status == 0);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run("check --config /nonexistent/config.json").status == 2);
    CHECK(run("ledger --n 2 --delta abc").status == 2);
    CHECK(run("ledger --n 2").status == 2);
    CHECK(run("--format xml ledger --n 2 --delta 1/2").status == 2);
    CHECK(run("ode --n 3 --s-max 10").status == 2);
    CHECK(run("--version").status == 0);
}

TEST_CASE("ledger names the failing inequality") {
    const Run r = run("ledger --n 2 --delta 9/10", true);
    CHECK(r.status == 1);
    CHECK(r.out.find("failing inequalities: ii") != std::string::npos);
    CHECK(run("ledger --n 2 --delta 1/2").status == 0);
}

TEST_CASE("JSON envelope") {
    const Run r = run("--format json ledger --n 3 --delta -3/2");
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "ledger");
    CHECK(j["version"] == blowup::kToolVersion);
    CHECK(j["config"]["delta"] == "-3/2");
}

TEST_CASE("paper suite is deterministic and parseable") {
    const std::string args = "--seed 42 --format json paper-suite --criteria 1,2,5,6,8,9";
    const Run a = run(args), b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    const Json& rows = j["rows"];
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        const int c = row["criterion"];
        CHECK(row["status"] == (c == 5 || c == 6 ? "discrepancy-documented" : "pass"));
    }

    const Run csv = run("--format csv paper-suite --criteria 8,9");
    REQUIRE(csv.status == 0);
    std::istringstream lines(csv.out);
    std::string header, line;
    std::getline(lines, header);
    CHECK(header == "criterion,status,name,detail");
    int count = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++count;
    CHECK(count == 2);
}

TEST_CASE("--out writes the report atomically") {
    const fs::path out = scratch("ledger.json");
    fs::remove(out);
    const Run r = run("--format json --out " + out.string() + " ledger --n 4 --delta -7/2");
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(out));
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));
    CHECK(Json::parse(slurp(out))["n"] == 4);
}

TEST_CASE("search output re-checks from its serialized form") {
    const Run r = run("--seed 3 --format json search --n 1 --method cover");
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["manifold"] == Json::array({{{"type", "projective"}, {"n", 1}}}));
    Json cfg = {{"manifold", j["manifold"]}, {"basis", j["basis"]}, {"points", j["points"]}};
    const fs::path path = scratch("roundtrip.json");
    std::ofstream(path) << cfg.dump();
    const Run c = run("--format json check --config " + path.string());
    CHECK(c.status == 0);
    CHECK(Json::parse(c.out)["report"]["verdict"] == "admissible");

    // the same through the library
    const blowup::RunConfig rc = blowup::load_config(path.string());
    CHECK(blowup::check(blowup::config_basis(rc), rc.points).verdict);
}

TEST_CASE("match and ode subcommands") {
    const Run m = run("--format csv match --n 2 --gamma-max 4");
    CHECK(m.status == 0);
    CHECK(m.out.rfind("n,gamma", 0) == 0);
    const Run o = run("--format json ode --n 3 --s-max 1000");
    REQUIRE(o.status == 0);
    const Json j = Json::parse(o.out);
    CHECK(j["lambda"].get<double>() == doctest::Approx(2.3650942707443).epsilon(1e-8));
    CHECK(j["remainder_slope"].get<double>() < -1.8);
    CHECK(run("ode --n 4 --smax 200 --rtol 1e-10").status == 0);
}

TEST_CASE("catalog entries carry a loadable configuration") {
    const Run r = run("--format json catalog --id 5");
    REQUIRE(r.status == 0);
    Json e = Json::parse(r.out)["entries"][0];
    REQUIRE(e["group"].is_object());
    const blowup::RunConfig rc = blowup::parse_config({{"manifold", e["manifold"]}, {"group", e["group"]}, {"points", e["points"]}});
    CHECK(rc.group->size() == e["group"]["generators"].size());
    CHECK(rc.points.size() == e["points"].size());
}
