#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef RECIPGROWTH_CLI_BIN
#include <sys/wait.h>
#endif

#include "json.hpp"
#include "recipgrowth/cli.hpp"
#include "recipgrowth/datasets.hpp"
#include "recipgrowth/report.hpp"

using namespace recipgrowth;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

json out_json(const RunResult& r) { return json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("fit subcommand prints a json report") {
    RunResult r = run({"fit", "--bundled", "world_gdp", "--window", "1000", "1955"});
    REQUIRE(r.exit_code == 0);
    json j = out_json(r);
    CHECK(j["schema_version"] == 1);
    CHECK(j["dataset"] == "world_gdp");
    CHECK(j["fit"]["a0"]["value"].get<double>() > 0.0);
    CHECK(j["fit"]["a1"]["value"].get<double>() < 0.0);
    CHECK(j["fit"]["singularity"]["value"].get<double>() > 1955.0);
    CHECK(j["window"]["t_min"]["value"] == 1000.0);
}

TEST_CASE("fit accepts a csv file and echoes exclusions") {
    auto path = temp_file("recipgrowth_cli_fit.csv", to_csv(load_bundled("world_population")));
    RunResult r = run({"fit", path.string(), "--window", "1000", "1950", "--exclude", "1,1500",
                       "--weighting", "value_pow4"});
    REQUIRE(r.exit_code == 0);
    json j = out_json(r);
    CHECK(j["weighting"] == "value_pow4");
    REQUIRE(j["exclusions"].size() == 2);
    CHECK(j["exclusions"][0]["value"] == 1.0);
    CHECK(j["exclusions"][1]["value"] == 1500.0);
    std::filesystem::remove(path);
}

TEST_CASE("segment subcommand reports breakpoints") {
    RunResult r = run({"segment", "--bundled", "africa_population", "--window", "1000", "1970"});
    REQUIRE(r.exit_code == 0);
    json j = out_json(r);
    REQUIRE(j["segmentation"]["breakpoints"].size() == 1);
    CHECK(j["segmentation"]["breakpoints"][0]["value"] == 1870.0);
    CHECK(j["segmentation"]["segments"].size() == 2);
}

TEST_CASE("diverge subcommand reports direction and onset") {
    RunResult r = run({"diverge", "--bundled", "world_gdp", "--baseline", "1000", "1955", "--z",
                       "1.25"});
    REQUIRE(r.exit_code == 0);
    json j = out_json(r);
    CHECK(j["divergence"]["direction"] == "slower");
    CHECK(j["divergence"]["onset"]["value"] == 1990.0);

    RunResult missing = run({"diverge", "--bundled", "world_gdp"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("--baseline") != std::string::npos);
}

TEST_CASE("classify subcommand ranks model families") {
    RunResult r = run({"classify", "--bundled", "world_gdp", "--window", "1965", "2003"});
    REQUIRE(r.exit_code == 0);
    json j = out_json(r);
    const auto& ranking = j["classification"]["ranking"];
    REQUIRE(ranking.size() >= 2);
    double exp_bic = 0.0, h1_bic = 0.0;
    bool saw_exp = false, saw_h1 = false;
    for (const auto& m : ranking) {
        if (m["model"] == "Exponential") {
            exp_bic = m["bic"]["value"].get<double>();
            saw_exp = true;
        }
        if (m["model"] == "Hyperbolic1") {
            h1_bic = m["bic"]["value"].get<double>();
            saw_h1 = true;
        }
    }
    REQUIRE(saw_exp);
    REQUIRE(saw_h1);
    CHECK(exp_bic < h1_bic);
    bool winner_listed = false;
    for (const auto& m : ranking)
        if (m["model"] == j["classification"]["winner"]) winner_listed = true;
    CHECK(winner_listed);
}

TEST_CASE("case subcommand exits zero on green checks and one on failures") {
    RunResult ok = run({"case", "world_population"});
    CHECK(ok.exit_code == 0);
    CHECK(out_json(ok)["pass"] == true);

    // doubled values push the constants outside their bands
    TimeSeries orig = load_bundled("world_population");
    std::vector<TimePoint> pts;
    for (const auto& p : orig.points()) pts.push_back({p.t, p.value * 2.0});
    auto path = temp_file("recipgrowth_cli_tampered.csv",
                          to_csv(TimeSeries(pts, orig.unit(), orig.label())));
    RunResult bad = run({"case", "world_population", "--dataset", path.string()});
    CHECK(bad.exit_code == 1);
    CHECK(out_json(bad)["pass"] == false);
    std::filesystem::remove(path);

    RunResult unknown = run({"case", "atlantis_gdp"});
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("plot subcommand emits csv and optionally svg") {
    RunResult r = run({"plot", "--bundled", "world_population", "--window", "1000", "1950",
                       "--exclude", "1", "--weighting", "value_pow4"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("t,observed,model\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 200);

    auto svg_path = std::filesystem::temp_directory_path() / "recipgrowth_cli_plot.svg";
    RunResult r2 = run({"plot", "--bundled", "world_gdp", "--window", "1000", "1950", "--svg",
                        svg_path.string()});
    REQUIRE(r2.exit_code == 0);
    std::ifstream f(svg_path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str().rfind("<?xml", 0) == 0);
    std::filesystem::remove(svg_path);

    RunResult seg = run({"plot", "--bundled", "africa_population", "--window", "1000", "1970",
                         "--max-segments", "2"});
    REQUIRE(seg.exit_code == 0);
    CHECK(std::count(seg.out.begin(), seg.out.end(), '\n') >= 200);
}

TEST_CASE("usage and data errors exit with code two") {
    CHECK(run({}).exit_code == 2);                               // no subcommand
    CHECK(run({"transmogrify"}).exit_code == 2);                 // unknown subcommand
    CHECK(run({"fit", "--frobnicate"}).exit_code == 2);          // unknown flag
    CHECK(run({"fit"}).exit_code == 2);                          // no input
    CHECK(run({"fit", "a.csv", "--bundled", "world_gdp"}).exit_code == 2); // two inputs

    RunResult missing = run({"fit", "definitely_missing.csv"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    auto bad_path = temp_file("recipgrowth_cli_bad.csv", "1000,0.5\n1100,-2\n");
    RunResult bad = run({"fit", bad_path.string()});
    CHECK(bad.exit_code == 2);
    CHECK(!bad.err.empty());
    std::filesystem::remove(bad_path);

    RunResult nonsense = run({"fit", "--bundled", "world_gdp", "--weighting", "cubic"});
    CHECK(nonsense.exit_code == 2);
}

TEST_CASE("help is printed on stdout with exit zero") {
    RunResult top = run({"--help"});
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("fit") != std::string::npos);
    CHECK(top.out.find("case") != std::string::npos);
    CHECK(top.err.empty());

    RunResult sub = run({"fit", "--help"});
    CHECK(sub.exit_code == 0);
    CHECK(sub.out.find("--weighting") != std::string::npos);
}

#ifdef RECIPGROWTH_CLI_BIN
TEST_CASE("installed binary behaves like the in-process entry point") {
    namespace fs = std::filesystem;
    auto out_path = fs::temp_directory_path() / "recipgrowth_cli_out.json";
    std::string cmd = std::string("\"") + RECIPGROWTH_CLI_BIN + "\" case world_population > \"" +
                      out_path.string() + "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    std::ifstream f(out_path);
    REQUIRE(f.good());
    json j = json::parse(f);
    CHECK(j["pass"] == true);
    fs::remove(out_path);

    int bad = std::system((std::string("\"") + RECIPGROWTH_CLI_BIN +
                           "\" fit --no-such-flag >/dev/null 2>&1")
                              .c_str());
    REQUIRE(bad != -1);
    CHECK(WEXITSTATUS(bad) == 2);
}
#endif
