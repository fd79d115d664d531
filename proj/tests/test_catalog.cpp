#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "safs/catalog.hpp"
#include "safs/errors.hpp"

using namespace safs;
namespace fs = std::filesystem;

namespace {

Catalog bundled() { return load_catalog(CatalogPaths::in_dir(SAFS_DATA_DIR "/catalog")); }

std::set<std::set<std::string>> groups(std::initializer_list<std::set<std::string>> sets) {
    return {sets};
}

/// Writes the three catalog files into a fresh temp directory.
struct TempCatalogDir {
    fs::path dir;

    TempCatalogDir(const std::string& software, const std::string& patterns,
                   const std::string& testcases) {
        dir = fs::temp_directory_path() /
              ("safs_catalog_" + std::to_string(reinterpret_cast<uintptr_t>(this)));
        fs::create_directories(dir);
        write("software.json", software);
        write("patterns.json", patterns);
        write("testcases.json", testcases);
    }
    ~TempCatalogDir() { fs::remove_all(dir); }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(dir / name);
        out << content;
    }
};

} // namespace

TEST_CASE("bundled catalog loads with the documented row counts") {
    const Catalog c = bundled();
    CHECK(c.software.size() == 12);
    CHECK(c.patterns.size() == 4);
    CHECK(c.tests.size() == 4);
    for (const auto& p : c.patterns) {
        CHECK(p.pattern == "Web 3-tier");
    }
}

TEST_CASE("exact software resolution") {
    const Catalog c = bundled();
    const auto r = resolve_software(c, "MySQL 5.0");
    REQUIRE(r.has_value());
    CHECK(r->software_group == "MySQL");
    CHECK(r->function_group == "DB");
    CHECK(r->provenance == ResolveProvenance::exact);

    const auto oracle = resolve_software(c, "Oracle11g"); // no space, catalog-verbatim
    REQUIRE(oracle.has_value());
    CHECK(oracle->software_group == "Oracle");
    CHECK(oracle->provenance == ResolveProvenance::exact);
}

TEST_CASE("group-prefix fallback resolves unlisted versions") {
    const Catalog c = bundled();
    const auto r = resolve_software(c, "MySQL 5.6");
    REQUIRE(r.has_value());
    CHECK(r->software_group == "MySQL");
    CHECK(r->function_group == "DB");
    CHECK(r->provenance == ResolveProvenance::prefix);

    const auto windows = resolve_software(c, "Windows Server 2016");
    REQUIRE(windows.has_value());
    CHECK(windows->software_group == "Windows");
    CHECK(windows->function_group == "OS");
    CHECK(windows->provenance == ResolveProvenance::prefix);
}

TEST_CASE("exact match takes precedence over the prefix fallback") {
    // "Apache 2.2" is an exact row even though "Apache" would also prefix-match.
    const auto r = resolve_software(bundled(), "Apache 2.2");
    REQUIRE(r.has_value());
    CHECK(r->provenance == ResolveProvenance::exact);
}

TEST_CASE("unknown software resolves to nothing") {
    CHECK(!resolve_software(bundled(), "Redis 3.0").has_value());
    CHECK(!resolve_software(bundled(), "").has_value());
    // "MySQLx" is not a token-wise prefix of any group
    CHECK(!resolve_software(bundled(), "MySQLx").has_value());
}

TEST_CASE("pattern matching is set-of-sets equality") {
    const Catalog c = bundled();
    CHECK(match_patterns(c, {groups({{"Web", "AP"}, {"DB"}})}) ==
          std::vector<std::string>{"Web 3-tier"});
    CHECK(match_patterns(c, {groups({{"Web"}, {"AP"}, {"DB"}})}) ==
          std::vector<std::string>{"Web 3-tier"});
    CHECK(match_patterns(c, {groups({{"Web"}, {"AP", "DB"}})}) ==
          std::vector<std::string>{"Web 3-tier"});
    CHECK(match_patterns(c, {groups({{"Web", "AP", "DB"}})}) ==
          std::vector<std::string>{"Web 3-tier"});
    // not a defined config: AP alone with Web+DB together
    CHECK(match_patterns(c, {groups({{"Web", "DB"}, {"AP"}})}).empty());
    CHECK(match_patterns(c, {groups({{"DB"}})}).empty());
    CHECK(match_patterns(c, DeploymentConfig{}).empty());
}

TEST_CASE("tests_for_tier returns all and only the attached tests") {
    const Catalog c = bundled();
    const auto db = tests_for_tier(c, TestTier::function_group, "DB");
    REQUIRE(db.size() == 2);
    CHECK(db[0].name == "Table CRUD");
    CHECK(db[0].subject == TestSubject::function);
    CHECK(db[1].name == "character garbling check");
    CHECK(db[1].subject == TestSubject::data);

    const auto mysql = tests_for_tier(c, TestTier::software_group, "MySQL");
    REQUIRE(mysql.size() == 1);
    CHECK(mysql[0].name == "Access by phpMyAdmin");

    const auto tpcc = tests_for_tier(c, TestTier::connection_pattern, "Web 3-tier");
    REQUIRE(tpcc.size() == 1);
    CHECK(tpcc[0].name == "TPC-C benchmark test");
    CHECK(tpcc[0].subject == TestSubject::function);

    CHECK(tests_for_tier(c, TestTier::software, "MySQL 5.0").empty());
    CHECK(tests_for_tier(c, TestTier::function_group, "Web").empty());
}

TEST_CASE("empty catalog files load as an empty valid catalog") {
    const TempCatalogDir tmp("[]", "[]", "[]");
    const Catalog c = load_catalog(CatalogPaths::in_dir(tmp.dir.string()));
    CHECK(c.software.empty());
    CHECK(c.patterns.empty());
    CHECK(c.tests.empty());
}

TEST_CASE("referential violations are rejected at load") {
    SUBCASE("test on unknown tier key") {
        const TempCatalogDir tmp(
            "[]", "[]",
            R"([{"name": "x", "tier": "function_group", "tier_key": "NoSuchDB", "subject": "function"}])");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
    SUBCASE("duplicate software") {
        const TempCatalogDir tmp(
            R"([{"function_group": "DB", "software_group": "MySQL", "software": "MySQL 5.0"},
                {"function_group": "DB", "software_group": "MySQL", "software": "MySQL 5.0"}])",
            "[]", "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
    SUBCASE("software group mapped to two function groups") {
        const TempCatalogDir tmp(
            R"([{"function_group": "DB", "software_group": "MySQL", "software": "MySQL 5.0"},
                {"function_group": "Web", "software_group": "MySQL", "software": "MySQL 4.0"}])",
            "[]", "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
    SUBCASE("duplicate pattern rows") {
        const TempCatalogDir tmp("[]",
                                 R"([{"pattern": "P", "deployment_config": [["Web"]]},
                                     {"pattern": "P", "deployment_config": [["Web"]]}])",
                                 "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
    SUBCASE("empty deployment config") {
        const TempCatalogDir tmp("[]", R"([{"pattern": "P", "deployment_config": []}])", "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
    SUBCASE("empty tier set inside a config") {
        const TempCatalogDir tmp("[]", R"([{"pattern": "P", "deployment_config": [[]]}])", "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), ReferentialError);
    }
}

TEST_CASE("same deployment config under two names matches both, catalog order") {
    Catalog c = make_catalog({},
                             {{"Web 3-tier", {groups({{"Web"}, {"AP"}, {"DB"}})}},
                              {"Classic split", {groups({{"Web"}, {"AP"}, {"DB"}})}}},
                             {});
    CHECK(match_patterns(c, {groups({{"DB"}, {"AP"}, {"Web"}})}) ==
          std::vector<std::string>{"Web 3-tier", "Classic split"});
}

TEST_CASE("malformed files raise FormatError") {
    SUBCASE("not an array") {
        const TempCatalogDir tmp("{}", "[]", "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), FormatError);
    }
    SUBCASE("missing field") {
        const TempCatalogDir tmp(R"([{"function_group": "DB", "software_group": "MySQL"}])", "[]",
                                 "[]");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), FormatError);
    }
    SUBCASE("bad tier enum") {
        const TempCatalogDir tmp(
            "[]", "[]",
            R"([{"name": "x", "tier": "galaxy", "tier_key": "DB", "subject": "function"}])");
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir(tmp.dir.string())), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_catalog(CatalogPaths::in_dir("/nonexistent-dir")), IoError);
    }
}
