#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace safs {

/// Three-tier software taxonomy row: function group > software group > software.
struct SoftwareEntry {
    std::string function_group; // e.g. "DB"
    std::string software_group; // e.g. "MySQL"
    std::string software;       // e.g. "MySQL 5.0"

    bool operator==(const SoftwareEntry&) const = default;
};

/// Per-server grouping of function groups across an environment,
/// e.g. {{Web, AP}, {DB}}. Set semantics: duplicate tiers collapse.
struct DeploymentConfig {
    std::set<std::set<std::string>> groups;

    bool operator==(const DeploymentConfig&) const = default;
};

/// Named multi-tier shape recognized from a deployment config.
struct ConnectionPatternDef {
    std::string pattern;
    DeploymentConfig deployment_config;

    bool operator==(const ConnectionPatternDef&) const = default;
};

/// Which taxonomy tier a test case attaches to.
enum class TestTier { function_group, software_group, software, connection_pattern };

enum class TestSubject { function, data, performance };

std::string to_string(TestTier t);
std::string to_string(TestSubject s);
std::optional<TestTier> test_tier_from_string(std::string_view s);
std::optional<TestSubject> test_subject_from_string(std::string_view s);

struct TestCaseEntry {
    std::string name;
    TestTier tier = TestTier::function_group;
    std::string tier_key;
    TestSubject subject = TestSubject::function;

    bool operator==(const TestCaseEntry&) const = default;
};

struct Catalog {
    std::vector<SoftwareEntry> software;
    std::vector<ConnectionPatternDef> patterns;
    std::vector<TestCaseEntry> tests;
};

/// Locations of the three catalog files.
struct CatalogPaths {
    std::string software;
    std::string patterns;
    std::string testcases;

    /// software.json / patterns.json / testcases.json under one directory.
    static CatalogPaths in_dir(const std::string& dir);
};

// Checks the joint invariants: software unique, software -> group and
// group -> function group functional, pattern rows unique and nonempty,
// every test tier_key resolvable. Throws ReferentialError.
void check_catalog(const Catalog& c);

// Builds a catalog from in-memory rows, running check_catalog.
Catalog make_catalog(std::vector<SoftwareEntry> software,
                     std::vector<ConnectionPatternDef> patterns,
                     std::vector<TestCaseEntry> tests);

// Loads the three JSON array files. Throws IoError, FormatError,
// ReferentialError.
Catalog load_catalog(const CatalogPaths& paths);

enum class ResolveProvenance { exact, prefix, unknown };

std::string to_string(ResolveProvenance p);

struct SoftwareResolution {
    std::string software_group;
    std::string function_group;
    ResolveProvenance provenance = ResolveProvenance::unknown;
};

// Exact software lookup first; otherwise falls back to the software group
// whose name is a whitespace-token prefix of `name` (longest match), so an
// uncataloged version like "MySQL 5.6" still lands in the MySQL group.
// nullopt when neither matches.
std::optional<SoftwareResolution> resolve_software(const Catalog& c, std::string_view name);

// All pattern names whose deployment config equals `dc` (set-of-sets
// equality, insensitive to any ordering).
std::vector<std::string> match_patterns(const Catalog& c, const DeploymentConfig& dc);

// All tests attached to exactly this (tier, key), in catalog order.
std::vector<TestCaseEntry> tests_for_tier(const Catalog& c, TestTier tier, std::string_view key);

} // namespace safs
