#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "safs/analysis.hpp"
#include "safs/catalog.hpp"
#include "safs/errors.hpp"
#include "safs/template.hpp"

using namespace safs;

namespace {

Catalog bundled() { return load_catalog(CatalogPaths::in_dir(SAFS_DATA_DIR "/catalog")); }

AbstractTemplate two_servers(const std::string& image_a, const std::string& image_b) {
    AbstractTemplate t;
    t.resources["a"] = Resource{ResourceKind::server, image_a, {}, {}, {}};
    t.resources["b"] = Resource{ResourceKind::server, image_b, {}, {}, {}};
    return t;
}

std::vector<ImageManifest> lamp_and_mysql() {
    return {
        {"lamp-img", OsKind::normal_linux, {"Apache 2.2", "Tomcat 7.0"}},
        {"mysql-img", OsKind::normal_linux, {"MySQL 5.0"}},
    };
}

DeploymentConfig config(std::initializer_list<std::set<std::string>> sets) {
    DeploymentConfig dc;
    for (const auto& s : sets) {
        dc.groups.insert(s);
    }
    return dc;
}

} // namespace

TEST_CASE("manifests parse and reject duplicates and bad enums") {
    const auto ms = parse_manifests(
        R"([{"image": "x", "os_kind": "non_linux", "software": ["IIS 8.0"]},
            {"image": "y", "os_kind": "normal_linux"}])");
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].os_kind == OsKind::non_linux);
    CHECK(ms[0].software == std::vector<std::string>{"IIS 8.0"});
    CHECK(ms[1].software.empty());

    CHECK_THROWS_AS(parse_manifests(R"([{"image": "x", "os_kind": "normal_linux"},
                                        {"image": "x", "os_kind": "normal_linux"}])"),
                    FormatError);
    CHECK_THROWS_AS(parse_manifests(R"([{"image": "x", "os_kind": "beos"}])"), FormatError);
    CHECK_THROWS_AS(parse_manifests(R"([{"image": "x"}])"), FormatError);
    CHECK_THROWS_AS(parse_manifests(R"({"image": "x"})"), FormatError);
    CHECK_THROWS_AS(parse_manifests("nope"), FormatError);
}

TEST_CASE("analysis resolves manifest software through the catalog") {
    const auto profiles =
        analyze_images(two_servers("lamp-img", "mysql-img"), lamp_and_mysql(), bundled());
    REQUIRE(profiles.size() == 2);

    const InstalledProfile& a = profiles[0];
    CHECK(a.server == "a");
    CHECK(a.os_kind == OsKind::normal_linux);
    REQUIRE(a.resolved.size() == 2);
    CHECK(a.resolved[0].function_group == "Web");
    CHECK(a.resolved[0].software_group == "Apache");
    CHECK(a.resolved[0].provenance == ResolveProvenance::exact);
    CHECK(a.resolved[1].function_group == "AP");
    CHECK(a.resolved[1].software_group == "Tomcat");

    const InstalledProfile& b = profiles[1];
    CHECK(b.server == "b");
    REQUIRE(b.resolved.size() == 1);
    CHECK(b.resolved[0].function_group == "DB");
}

TEST_CASE("profiles come out in server-name order and skip load balancers") {
    AbstractTemplate t = two_servers("lamp-img", "mysql-img");
    t.resources["zlb"] = Resource{ResourceKind::loadbalancer, "", {}, {"a"}, {}};
    const auto profiles = analyze_images(t, lamp_and_mysql(), bundled());
    REQUIRE(profiles.size() == 2);
    CHECK(profiles[0].server == "a");
    CHECK(profiles[1].server == "b");
}

TEST_CASE("empty software list yields an empty resolved list") {
    const auto profiles = analyze_images(two_servers("bare-img", "bare-img"),
                                         {{"bare-img", OsKind::normal_linux, {}}}, bundled());
    CHECK(profiles[0].resolved.empty());
    CHECK(profiles[0].software.empty());
}

TEST_CASE("unknown image without an override is an error") {
    CHECK_THROWS_AS(analyze_images(two_servers("ghost-img", "mysql-img"), lamp_and_mysql(),
                                   bundled()),
                    MissingManifest);
}

TEST_CASE("template software override wins over the manifest") {
    AbstractTemplate t;
    t.resources["a"] = Resource{ResourceKind::server,
                                "lamp-img",
                                std::vector<std::string>{"MySQL 5.0"},
                                {},
                                {}};
    const auto profiles = analyze_images(t, lamp_and_mysql(), bundled());
    REQUIRE(profiles.size() == 1);
    REQUIRE(profiles[0].resolved.size() == 1);
    CHECK(profiles[0].resolved[0].function_group == "DB");
    CHECK(profiles[0].os_kind == OsKind::normal_linux); // manifest still supplies the OS
}

TEST_CASE("override without any manifest leaves os_kind unknown") {
    AbstractTemplate t;
    t.resources["a"] = Resource{ResourceKind::server,
                                "ghost-img",
                                std::vector<std::string>{"MySQL 5.6"},
                                {},
                                {}};
    const auto profiles = analyze_images(t, {}, bundled());
    REQUIRE(profiles.size() == 1);
    CHECK(!profiles[0].os_kind.has_value());
    CHECK(profiles[0].resolved[0].provenance == ResolveProvenance::prefix);
}

TEST_CASE("unknown software is carried with unknown provenance") {
    AbstractTemplate t;
    t.resources["a"] = Resource{ResourceKind::server,
                                "x-img",
                                std::vector<std::string>{"Redis 3.0", "MySQL 5.0"},
                                {},
                                {}};
    const auto profiles =
        analyze_images(t, {{"x-img", OsKind::normal_linux, {}}}, bundled());
    REQUIRE(profiles[0].resolved.size() == 2);
    CHECK(profiles[0].resolved[0].provenance == ResolveProvenance::unknown);
    CHECK(profiles[0].resolved[0].function_group.empty());
    CHECK(profiles[0].resolved[1].provenance == ResolveProvenance::exact);
}

TEST_CASE("deployment config inference") {
    const Catalog c = bundled();
    const TopologyGraph g; // matching keys on software only

    SUBCASE("lamp + mysql server split") {
        const auto profiles =
            analyze_images(two_servers("lamp-img", "mysql-img"), lamp_and_mysql(), c);
        CHECK(infer_deployment_config(g, profiles) == config({{"Web", "AP"}, {"DB"}}));
    }
    SUBCASE("everything on one server") {
        AbstractTemplate t;
        t.resources["one"] = Resource{ResourceKind::server, "all-img", {}, {}, {}};
        const auto profiles = analyze_images(
            t, {{"all-img", OsKind::normal_linux, {"Apache 2.2", "Tomcat 7.0", "MySQL 5.0"}}}, c);
        CHECK(infer_deployment_config(g, profiles) == config({{"Web", "AP", "DB"}}));
    }
    SUBCASE("duplicate inner sets collapse") {
        const auto profiles = analyze_images(
            two_servers("web-img", "web-img"),
            {{"web-img", OsKind::normal_linux, {"Apache 2.2"}}}, c);
        CHECK(infer_deployment_config(g, profiles) == config({{"Web"}}));
    }
    SUBCASE("OS rows and unknown software contribute nothing") {
        const auto profiles = analyze_images(
            two_servers("os-img", "mysql-img"),
            {{"os-img", OsKind::normal_linux, {"RHEL 7.0", "Redis 3.0"}},
             {"mysql-img", OsKind::normal_linux, {"MySQL 5.0"}}},
            c);
        CHECK(infer_deployment_config(g, profiles) == config({{"DB"}}));
    }
    SUBCASE("inference is order-insensitive") {
        auto profiles = analyze_images(two_servers("lamp-img", "mysql-img"), lamp_and_mysql(), c);
        auto flipped = profiles;
        std::reverse(flipped.begin(), flipped.end());
        CHECK(infer_deployment_config(g, profiles) == infer_deployment_config(g, flipped));
    }
}
