#include "safs/extractor.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "safs/errors.hpp"

namespace safs {

std::string to_string(PlanScope s) {
    switch (s) {
    case PlanScope::server: return "server";
    case PlanScope::environment: return "environment";
    }
    return "?";
}

namespace {

struct PlanKey {
    std::string test;
    PlanScope scope;
    std::string server;

    bool operator<(const PlanKey& other) const {
        return std::tie(test, scope, server) < std::tie(other.test, other.scope, other.server);
    }
};

} // namespace

TestPlan extract_test_plan(const std::vector<InstalledProfile>& profiles,
                           const std::vector<std::string>& patterns,
                           const Catalog& c) {
    std::vector<PlanItem> server_items;
    std::vector<PlanItem> env_items;
    std::set<PlanKey> seen;

    auto add = [&](std::vector<PlanItem>& bucket, const TestCaseEntry& test, PlanScope scope,
                   const std::string& server, const std::string& source) {
        if (!seen.insert({test.name, scope, server}).second) {
            return;
        }
        PlanItem item;
        item.test = test;
        item.scope = scope;
        item.server = server;
        item.source = source;
        bucket.push_back(std::move(item));
    };

    for (const auto& profile : profiles) {
        for (const auto& r : profile.resolved) {
            if (r.provenance == ResolveProvenance::unknown) {
                continue;
            }
            for (const auto& test : tests_for_tier(c, TestTier::software, r.software)) {
                add(server_items, test, PlanScope::server, profile.server, r.software);
            }
            for (const auto& test : tests_for_tier(c, TestTier::software_group, r.software_group)) {
                add(server_items, test, PlanScope::server, profile.server, r.software);
            }
            for (const auto& test : tests_for_tier(c, TestTier::function_group, r.function_group)) {
                add(server_items, test, PlanScope::server, profile.server, r.software);
            }
        }
    }

    for (const auto& pattern : patterns) {
        for (const auto& test : tests_for_tier(c, TestTier::connection_pattern, pattern)) {
            add(env_items, test, PlanScope::environment, "", pattern);
        }
    }

    std::sort(server_items.begin(), server_items.end(), [](const PlanItem& a, const PlanItem& b) {
        return std::tie(a.server, a.test.name) < std::tie(b.server, b.test.name);
    });
    std::sort(env_items.begin(), env_items.end(),
              [](const PlanItem& a, const PlanItem& b) { return a.test.name < b.test.name; });

    TestPlan plan;
    plan.items = std::move(server_items);
    plan.items.insert(plan.items.end(), std::make_move_iterator(env_items.begin()),
                      std::make_move_iterator(env_items.end()));
    return plan;
}

namespace {

const DeployedResource& deployed_or_throw(const DeployedEnvironment& env, const std::string& name) {
    auto it = env.resources.find(name);
    if (it == env.resources.end()) {
        throw UnresolvedTarget("resource '" + name + "' is not part of the deployed environment");
    }
    if (it->second.endpoint.empty()) {
        throw UnresolvedTarget("resource '" + name + "' has no endpoint");
    }
    return it->second;
}

std::vector<std::string> fronting_balancers(const TopologyGraph& g, const std::string& server) {
    std::vector<std::string> lbs;
    for (const auto& [lb, members] : g.lb_groups) {
        if (std::find(members.begin(), members.end(), server) != members.end()) {
            lbs.push_back(lb);
        }
    }
    return lbs; // map iteration keeps these name-ordered
}

std::vector<std::string> server_nodes(const TopologyGraph& g) {
    std::vector<std::string> servers;
    for (const auto& node : g.nodes) {
        if (!g.lb_groups.count(node)) {
            servers.push_back(node);
        }
    }
    std::sort(servers.begin(), servers.end());
    return servers;
}

bool serves_web_function(const std::vector<InstalledProfile>& profiles, const std::string& server) {
    for (const auto& profile : profiles) {
        if (profile.server != server) {
            continue;
        }
        for (const auto& r : profile.resolved) {
            if (r.provenance != ResolveProvenance::unknown && r.function_group == "Web") {
                return true;
            }
        }
    }
    return false;
}

// Pick where environment-scoped traffic enters: the first load balancer,
// otherwise the first server hosting Web-function software, otherwise
// every server (the test fans out).
std::vector<Target> environment_targets(const TopologyGraph& g,
                                        const DeployedEnvironment& env,
                                        const std::vector<InstalledProfile>& profiles) {
    if (!g.lb_groups.empty()) {
        const std::string& lb = g.lb_groups.begin()->first;
        return {{lb, deployed_or_throw(env, lb).endpoint}};
    }
    const auto servers = server_nodes(g);
    for (const auto& server : servers) {
        if (serves_web_function(profiles, server)) {
            return {{server, deployed_or_throw(env, server).endpoint}};
        }
    }
    std::vector<Target> all;
    for (const auto& server : servers) {
        all.push_back({server, deployed_or_throw(env, server).endpoint});
    }
    return all;
}

} // namespace

TestPlan resolve_test_targets(const TestPlan& plan,
                              const TopologyGraph& g,
                              const DeployedEnvironment& env,
                              const std::vector<InstalledProfile>& profiles) {
    TestPlan resolved = plan;
    for (auto& item : resolved.items) {
        item.targets.clear();
        if (item.scope == PlanScope::server) {
            const auto lbs = fronting_balancers(g, item.server);
            if (lbs.empty()) {
                item.targets.push_back({item.server, deployed_or_throw(env, item.server).endpoint});
            } else {
                for (const auto& lb : lbs) {
                    item.targets.push_back({lb, deployed_or_throw(env, lb).endpoint});
                }
            }
        } else {
            item.targets = environment_targets(g, env, profiles);
        }
    }
    return resolved;
}

} // namespace safs
