#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

// Each test spawns the installed binary like a user would, via the shell,
// checking exit codes and parseable output.

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& tmp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("safs_cli_test_" + std::to_string(static_cast<long>(::getpid())));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

CliResult run_cli(const std::string& args, const std::string& stdin_text = "",
                  const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out = tmp_dir() / ("out" + std::to_string(counter));
    const fs::path err = tmp_dir() / ("err" + std::to_string(counter));
    const fs::path in = tmp_dir() / ("in" + std::to_string(counter));
    ++counter;
    spit(in, stdin_text);

    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                            "\"" SAFS_CLI_PATH "\" " + args + " <" + in.string() + " >" +
                            out.string() + " 2>" + err.string();
    const int rc = std::system(cmd.c_str());

    CliResult r;
    if (rc != -1 && WIFEXITED(rc)) {
        r.code = WEXITSTATUS(rc);
    }
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const std::string kFixtureArgs = std::string("-t ") + SAFS_DATA_DIR "/fixtures/web3tier.json" +
                                 " -r " + SAFS_DATA_DIR "/fixtures/web3tier_requirements.json" +
                                 " -m " + SAFS_DATA_DIR "/fixtures/web3tier_manifests.json";

} // namespace

TEST_CASE("propose prints machine-readable assignments") {
    const CliResult r = run_cli("propose " + kFixtureArgs + " --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("assignments").at("db") == "baremetal.large");
    CHECK(j.at("assignments").at("web_ap") == "container.small");
    REQUIRE(j.at("decisions").is_array());
    CHECK(j.at("decisions").size() == 2);
    CHECK(j.at("decisions").at(0).at("server") == "db");
    CHECK(j.at("decisions").at(0).at("rule_fired") == "perf_baremetal");
}

TEST_CASE("propose prints a readable proposal by default") {
    const CliResult r = run_cli("propose " + kFixtureArgs);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Proposed structure") != std::string::npos);
    CHECK(r.out.find("db: baremetal.large") != std::string::npos);
    CHECK(r.out.find("web_ap: container.small") != std::string::npos);
}

TEST_CASE("propose without manifests fails cleanly when profiles are needed") {
    const std::string args = std::string("-t ") + SAFS_DATA_DIR "/fixtures/web3tier.json" +
                             " -r " + SAFS_DATA_DIR "/fixtures/web3tier_requirements.json";
    const CliResult r = run_cli("propose " + args);
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("run is reproducible for a fixed seed") {
    const fs::path first = tmp_dir() / "report_a.json";
    const fs::path second = tmp_dir() / "report_b.json";
    const CliResult a = run_cli("run " + kFixtureArgs +
                                " --auto-approve --seed 42 --json --out " + first.string());
    REQUIRE(a.code == 0);
    const CliResult b = run_cli("run " + kFixtureArgs +
                                " --auto-approve --seed 42 --json --out " + second.string());
    REQUIRE(b.code == 0);

    const std::string bytes_a = slurp(first);
    CHECK(!bytes_a.empty());
    CHECK(bytes_a == slurp(second));
    CHECK(a.out == b.out);
    // --out writes exactly what stdout carried
    CHECK(a.out == bytes_a);

    const auto j = nlohmann::json::parse(bytes_a);
    CHECK(j.at("tenant") == "default");
    CHECK(j.at("plan").size() == 4);
    CHECK(j.at("results").size() == 4);
    REQUIRE(j.at("verdicts").size() == 2);
    for (const auto& v : j.at("verdicts")) CHECK(v.at("met") == true);

    // a different seed moves the measurements
    const CliResult c = run_cli("run " + kFixtureArgs + " --auto-approve --seed 7 --json");
    REQUIRE(c.code == 0);
    CHECK(c.out != a.out);
}

TEST_CASE("the prompt gates deployment") {
    SUBCASE("declining leaves nothing deployed and exits 3") {
        const CliResult r = run_cli("run " + kFixtureArgs, "n\n");
        CHECK(r.code == 3);
        CHECK(r.out.find("Deploy this structure?") != std::string::npos);
        CHECK(r.out.find("rejected") != std::string::npos);
    }
    SUBCASE("an empty answer defaults to no") {
        const CliResult r = run_cli("run " + kFixtureArgs, "\n");
        CHECK(r.code == 3);
    }
    SUBCASE("EOF counts as no") {
        const CliResult r = run_cli("run " + kFixtureArgs, "");
        CHECK(r.code == 3);
    }
    SUBCASE("accepting proceeds to the report") {
        const CliResult r = run_cli("run " + kFixtureArgs, "y\n");
        CHECK(r.code == 0);
        CHECK(r.out.find("Verification report") != std::string::npos);
        CHECK(r.out.find("met") != std::string::npos);
    }
    SUBCASE("rejection in JSON mode reports the proposal") {
        const CliResult r = run_cli("run " + kFixtureArgs + " --json", "n\n");
        CHECK(r.code == 3);
        // stdout mixes the prompt with the JSON document; the document starts
        // at the first brace
        const auto brace = r.out.find('{');
        REQUIRE(brace != std::string::npos);
        const auto j = nlohmann::json::parse(r.out.substr(brace));
        CHECK(j.at("status") == "rejected");
        CHECK(j.at("proposal").at("assignments").size() == 2);
    }
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("propose").code == 1);                       // missing required options
    CHECK(run_cli("frobnicate").code == 1);                    // unknown subcommand
    CHECK(run_cli("").code == 1);                              // no subcommand
    CHECK(run_cli("run " + kFixtureArgs + " --colocation 0").code == 1);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("run --help").code == 0);
}

TEST_CASE("processing errors exit 2") {
    const CliResult missing = run_cli(
        std::string("propose -t /nonexistent.json -r ") +
        SAFS_DATA_DIR "/fixtures/web3tier_requirements.json");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    const fs::path bad = tmp_dir() / "bad_template.json";
    spit(bad, "{not json");
    const CliResult malformed = run_cli(
        "run -t " + bad.string() + " -r " + SAFS_DATA_DIR
        "/fixtures/web3tier_requirements.json -m " SAFS_DATA_DIR
        "/fixtures/web3tier_manifests.json --auto-approve");
    CHECK(malformed.code == 2);
}

TEST_CASE("verify --dry-run resolves the plan without executing") {
    const CliResult r = run_cli("verify " + kFixtureArgs + " --dry-run --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("proposal"));
    REQUIRE(j.contains("plan"));
    CHECK(!j.contains("results"));
    REQUIRE(j.at("plan").size() == 4);
    for (const auto& item : j.at("plan")) {
        CHECK(!item.at("targets").empty());
    }

    const CliResult text = run_cli("verify " + kFixtureArgs + " --dry-run");
    REQUIRE(text.code == 0);
    CHECK(text.out.find("Test plan (4 items)") != std::string::npos);
    CHECK(text.out.find("TPC-C benchmark test") != std::string::npos);
}

TEST_CASE("verify without --dry-run behaves like an auto-approved run") {
    const CliResult r = run_cli("verify " + kFixtureArgs + " --seed 42 --json");
    REQUIRE(r.code == 0);
    const CliResult same = run_cli("run " + kFixtureArgs + " --auto-approve --seed 42 --json");
    REQUIRE(same.code == 0);
    CHECK(r.out == same.out);
}

TEST_CASE("catalog-validate checks the bundled and custom directories") {
    const CliResult ok = run_cli("catalog-validate --catalog-dir " SAFS_DATA_DIR "/catalog");
    REQUIRE(ok.code == 0);
    CHECK(ok.out.find("valid") != std::string::npos);
    CHECK(ok.out.find("12 software rows") != std::string::npos);

    const CliResult json = run_cli("catalog-validate --json --catalog-dir " SAFS_DATA_DIR
                                   "/catalog");
    REQUIRE(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("software") == 12);
    CHECK(j.at("patterns") == 4);
    CHECK(j.at("testcases") == 4);

    CHECK(run_cli("catalog-validate --catalog-dir /nonexistent").code == 2);
}

TEST_CASE("the catalog directory can come from the environment") {
    const CliResult r =
        run_cli("catalog-validate", "", "SAFS_CATALOG_DIR=" SAFS_DATA_DIR "/catalog");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("valid") != std::string::npos);

    const CliResult bad = run_cli("catalog-validate", "", "SAFS_CATALOG_DIR=/nonexistent");
    CHECK(bad.code == 2);
}

TEST_CASE("stored reports re-render identically") {
    const fs::path stored = tmp_dir() / "stored_report.json";
    REQUIRE(run_cli("run " + kFixtureArgs + " --auto-approve --seed 42 --json --out " +
                    stored.string())
                .code == 0);

    const CliResult text = run_cli("report " + stored.string());
    REQUIRE(text.code == 0);
    CHECK(text.out.find("Verification report") != std::string::npos);
    CHECK(text.out.find("TPC-C benchmark test") != std::string::npos);

    const CliResult json = run_cli("report " + stored.string() + " --json");
    REQUIRE(json.code == 0);
    CHECK(json.out == slurp(stored)); // loss-free round trip

    const fs::path copy = tmp_dir() / "copy.txt";
    REQUIRE(run_cli("report " + stored.string() + " --out " + copy.string()).code == 0);
    CHECK(slurp(copy) == text.out);

    const fs::path bad = tmp_dir() / "bad_report.json";
    spit(bad, "[1, 2]");
    CHECK(run_cli("report " + bad.string()).code == 2);
}

TEST_CASE("deploy provisions a concrete template in the simulator") {
    const fs::path concrete = tmp_dir() / "concrete.json";
    spit(concrete, R"({
      "version": 1,
      "resources": {
        "db": {"kind": "server", "image": "mysql-img", "flavor": "baremetal.large"},
        "web": {"kind": "server", "image": "lamp-img", "flavor": "container.small"}
      },
      "links": [["web", "db"]]
    })");
    const CliResult r = run_cli("deploy -t " + concrete.string() + " --tenant acme --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("tenant") == "acme");
    CHECK(j.at("resources").at("db").at("endpoint") == "10.0.0.1:80");
    CHECK(j.at("resources").at("web").at("server_type") == "container");

    // an abstract template (no flavors) is rejected as input here
    const CliResult abs = run_cli(std::string("deploy -t ") + SAFS_DATA_DIR
                                  "/fixtures/web3tier.json");
    CHECK(abs.code == 2);
}

TEST_CASE("a custom tenant name flows through to the report") {
    const CliResult r =
        run_cli("run " + kFixtureArgs + " --auto-approve --tenant staging --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("tenant") == "staging");
}
