#pragma once

#include <string>
#include <vector>

#include "safs/analysis.hpp"
#include "safs/catalog.hpp"
#include "safs/environment.hpp"
#include "safs/template.hpp"

namespace safs {

enum class PlanScope { server, environment };

std::string to_string(PlanScope s);

/// A concrete endpoint a test addresses.
struct Target {
    std::string resource;
    std::string endpoint;

    bool operator==(const Target&) const = default;
};

struct PlanItem {
    TestCaseEntry test;
    PlanScope scope = PlanScope::server;
    std::string server;          // subject server; empty for environment scope
    std::string source;          // software or pattern that pulled the test in
    std::vector<Target> targets; // filled by resolve_test_targets
};

struct TestPlan {
    std::vector<PlanItem> items;
};

// Builds the plan from resolved software and matched patterns. Every resolved
// software item on a server pulls in the tests attached to the software
// itself, its software group and its function group, all targeted at that
// server; every matched pattern pulls in its pattern tests once, with
// environment scope. Duplicates by (test, scope, server) collapse; items come
// out ordered (server items by server then test name, then environment items
// by test name).
TestPlan extract_test_plan(const std::vector<InstalledProfile>& profiles,
                           const std::vector<std::string>& patterns,
                           const Catalog& c);

// Fills in targets. A server-scoped item whose server sits behind a load
// balancer addresses the balancer endpoint instead of the server's own;
// environment-scoped items address the environment entry point: the
// name-ordered first LB when one exists, else the first server profiled with
// a Web function group, else every server. Resolution is recomputed from
// scratch, so it is idempotent. Throws UnresolvedTarget when the plan names a
// resource absent from the environment.
TestPlan resolve_test_targets(const TestPlan& plan,
                              const TopologyGraph& g,
                              const DeployedEnvironment& env,
                              const std::vector<InstalledProfile>& profiles);

} // namespace safs
