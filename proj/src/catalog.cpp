#include "safs/catalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "file_io.hpp"
#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;

std::string to_string(TestTier t) {
    switch (t) {
    case TestTier::function_group: return "function_group";
    case TestTier::software_group: return "software_group";
    case TestTier::software: return "software";
    case TestTier::connection_pattern: return "connection_pattern";
    }
    return "?";
}

std::string to_string(TestSubject s) {
    switch (s) {
    case TestSubject::function: return "function";
    case TestSubject::data: return "data";
    case TestSubject::performance: return "performance";
    }
    return "?";
}

std::optional<TestTier> test_tier_from_string(std::string_view s) {
    if (s == "function_group") return TestTier::function_group;
    if (s == "software_group") return TestTier::software_group;
    if (s == "software") return TestTier::software;
    if (s == "connection_pattern") return TestTier::connection_pattern;
    return std::nullopt;
}

std::optional<TestSubject> test_subject_from_string(std::string_view s) {
    if (s == "function") return TestSubject::function;
    if (s == "data") return TestSubject::data;
    if (s == "performance") return TestSubject::performance;
    return std::nullopt;
}

std::string to_string(ResolveProvenance p) {
    switch (p) {
    case ResolveProvenance::exact: return "exact";
    case ResolveProvenance::prefix: return "prefix";
    case ResolveProvenance::unknown: return "unknown";
    }
    return "?";
}

CatalogPaths CatalogPaths::in_dir(const std::string& dir) {
    return {dir + "/software.json", dir + "/patterns.json", dir + "/testcases.json"};
}

namespace {

std::vector<std::string> split_tokens(std::string_view s) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

json parse_array_file(const std::string& path, const char* what) {
    json doc;
    try {
        doc = json::parse(detail::read_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed ") + what + " file " + path + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw FormatError(std::string(what) + " file " + path + " must be a JSON array");
    }
    return doc;
}

std::string require_string(const json& obj, const char* field, const char* what) {
    if (!obj.contains(field) || !obj[field].is_string()) {
        throw FormatError(std::string(what) + " entry needs a string '" + field + "'");
    }
    return obj[field].get<std::string>();
}

} // namespace

void check_catalog(const Catalog& c) {
    std::map<std::string, const SoftwareEntry*> by_software;
    std::map<std::string, std::string> group_to_function;

    for (const auto& entry : c.software) {
        if (entry.software.empty() || entry.software_group.empty() || entry.function_group.empty()) {
            throw ReferentialError("software entry with empty field: '" + entry.software + "'");
        }
        if (!by_software.emplace(entry.software, &entry).second) {
            throw ReferentialError("duplicate software '" + entry.software + "'");
        }
        auto [it, inserted] = group_to_function.emplace(entry.software_group, entry.function_group);
        if (!inserted && it->second != entry.function_group) {
            throw ReferentialError("software group '" + entry.software_group +
                                   "' mapped to both '" + it->second + "' and '" + entry.function_group + "'");
        }
    }

    std::set<std::pair<std::string, std::set<std::set<std::string>>>> seen_patterns;
    for (const auto& def : c.patterns) {
        if (def.pattern.empty()) {
            throw ReferentialError("pattern with empty name");
        }
        if (def.deployment_config.groups.empty()) {
            throw ReferentialError("pattern '" + def.pattern + "' has an empty deployment config");
        }
        for (const auto& inner : def.deployment_config.groups) {
            if (inner.empty()) {
                throw ReferentialError("pattern '" + def.pattern + "' has an empty tier set");
            }
        }
        if (!seen_patterns.emplace(def.pattern, def.deployment_config.groups).second) {
            throw ReferentialError("duplicate (pattern, deployment config) row for '" + def.pattern + "'");
        }
    }

    std::set<std::string> function_groups;
    std::set<std::string> pattern_names;
    for (const auto& entry : c.software) {
        function_groups.insert(entry.function_group);
    }
    for (const auto& def : c.patterns) {
        pattern_names.insert(def.pattern);
    }

    for (const auto& test : c.tests) {
        bool resolves = false;
        switch (test.tier) {
        case TestTier::function_group:
            resolves = function_groups.contains(test.tier_key);
            break;
        case TestTier::software_group:
            resolves = group_to_function.contains(test.tier_key);
            break;
        case TestTier::software:
            resolves = by_software.contains(test.tier_key);
            break;
        case TestTier::connection_pattern:
            resolves = pattern_names.contains(test.tier_key);
            break;
        }
        if (!resolves) {
            throw ReferentialError("test '" + test.name + "' references unknown " +
                                   to_string(test.tier) + " '" + test.tier_key + "'");
        }
    }
}

Catalog make_catalog(std::vector<SoftwareEntry> software,
                     std::vector<ConnectionPatternDef> patterns,
                     std::vector<TestCaseEntry> tests) {
    Catalog c{std::move(software), std::move(patterns), std::move(tests)};
    check_catalog(c);
    return c;
}

Catalog load_catalog(const CatalogPaths& paths) {
    Catalog c;

    for (const auto& row : parse_array_file(paths.software, "software")) {
        c.software.push_back({require_string(row, "function_group", "software"),
                              require_string(row, "software_group", "software"),
                              require_string(row, "software", "software")});
    }

    for (const auto& row : parse_array_file(paths.patterns, "patterns")) {
        ConnectionPatternDef def;
        def.pattern = require_string(row, "pattern", "pattern");
        if (!row.contains("deployment_config") || !row["deployment_config"].is_array()) {
            throw FormatError("pattern entry needs a 'deployment_config' array of arrays");
        }
        for (const auto& inner : row["deployment_config"]) {
            if (!inner.is_array()) {
                throw FormatError("pattern '" + def.pattern + "': deployment_config must be an array of arrays");
            }
            std::set<std::string> tier;
            for (const auto& group : inner) {
                if (!group.is_string()) {
                    throw FormatError("pattern '" + def.pattern + "': function groups must be strings");
                }
                tier.insert(group.get<std::string>());
            }
            def.deployment_config.groups.insert(std::move(tier));
        }
        c.patterns.push_back(std::move(def));
    }

    for (const auto& row : parse_array_file(paths.testcases, "test case")) {
        TestCaseEntry test;
        test.name = require_string(row, "name", "test case");
        auto tier = test_tier_from_string(require_string(row, "tier", "test case"));
        if (!tier) {
            throw FormatError("test '" + test.name + "' has an unknown tier");
        }
        test.tier = *tier;
        test.tier_key = require_string(row, "tier_key", "test case");
        auto subject = test_subject_from_string(require_string(row, "subject", "test case"));
        if (!subject) {
            throw FormatError("test '" + test.name + "' has an unknown subject");
        }
        test.subject = *subject;
        c.tests.push_back(std::move(test));
    }

    check_catalog(c);
    return c;
}

std::optional<SoftwareResolution> resolve_software(const Catalog& c, std::string_view name) {
    for (const auto& entry : c.software) {
        if (entry.software == name) {
            return SoftwareResolution{entry.software_group, entry.function_group, ResolveProvenance::exact};
        }
    }

    // Group fallback: the group's tokens must be a prefix of the queried
    // name's tokens; the longest such group wins.
    const auto name_tokens = split_tokens(name);
    const SoftwareEntry* best = nullptr;
    std::size_t best_len = 0;
    std::set<std::string> tried;
    for (const auto& entry : c.software) {
        if (!tried.insert(entry.software_group).second) {
            continue;
        }
        const auto group_tokens = split_tokens(entry.software_group);
        if (group_tokens.empty() || group_tokens.size() > name_tokens.size()) {
            continue;
        }
        if (std::equal(group_tokens.begin(), group_tokens.end(), name_tokens.begin()) &&
            group_tokens.size() > best_len) {
            best = &entry;
            best_len = group_tokens.size();
        }
    }
    if (best) {
        return SoftwareResolution{best->software_group, best->function_group, ResolveProvenance::prefix};
    }
    return std::nullopt;
}

std::vector<std::string> match_patterns(const Catalog& c, const DeploymentConfig& dc) {
    std::vector<std::string> names;
    for (const auto& def : c.patterns) {
        if (def.deployment_config == dc &&
            std::find(names.begin(), names.end(), def.pattern) == names.end()) {
            names.push_back(def.pattern);
        }
    }
    return names;
}

std::vector<TestCaseEntry> tests_for_tier(const Catalog& c, TestTier tier, std::string_view key) {
    std::vector<TestCaseEntry> out;
    for (const auto& test : c.tests) {
        if (test.tier == tier && test.tier_key == key) {
            out.push_back(test);
        }
    }
    return out;
}

} // namespace safs
