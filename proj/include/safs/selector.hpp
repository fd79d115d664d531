#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safs/analysis.hpp"
#include "safs/perfmodel.hpp"
#include "safs/template.hpp"
#include "safs/types.hpp"

namespace safs {

/// Per-server function and performance requirements.
struct ServerRequirements {
    std::string server;
    std::optional<OsKind> os_kind;        // wins over the manifest os_kind
    double required_throughput_index = 0; // same units as capacity_index
    std::optional<double> required_latency_ms;
    Consistency consistency = Consistency::strong;
    int max_replicas = 1; // scale-out allowance, used when consistency is eventual
};

std::vector<ServerRequirements> parse_requirements(std::string_view text);
std::vector<ServerRequirements> load_requirements(const std::string& path);

struct SelectionConfig {
    /// Assumed co-resident instances on a shared host when sizing container
    /// capacity. Values above 4 extrapolate the model and carry a warning.
    int planned_colocation = 1;
    /// Latency bound below which only a dedicated host is considered.
    /// Configuration default, not a measured value; flagged whenever it fires.
    double latency_baremetal_threshold_ms = 10.0;
    // Price order is fixed: container < vm < baremetal.
};

enum class SelectionRule { perf_baremetal, latency_baremetal, os_vm, default_container };

std::string to_string(SelectionRule r);
std::optional<SelectionRule> selection_rule_from_string(std::string_view s);

struct Decision {
    std::string server;
    ServerType chosen = ServerType::container;
    double effective_requirement_index = 0;
    SelectionRule rule_fired = SelectionRule::default_container;
    std::string rationale;
    std::vector<std::string> warnings;
};

// Picks the cheapest type that satisfies the requirements:
//
//   1. effective requirement = required_throughput_index, divided by
//      max_replicas when consistency is eventual (scale-out spreads load);
//   2. baremetal when the effective requirement exceeds the container
//      capacity at the planned colocation, or when the latency bound is
//      tighter than the baremetal threshold (a dedicated host satisfies any
//      OS, so this never conflicts with rule 3);
//   3. otherwise vm when the OS is non-Linux or customized Linux;
//   4. otherwise container.
//
// Throws Unsatisfiable when the effective requirement exceeds even the
// dedicated-host capacity, and MissingRequirement when req.os_kind is unset.
Decision select_server_type(const ServerRequirements& req,
                            const PerformanceModel& m,
                            const SelectionConfig& cfg);

struct Proposal {
    FlavorAssignments assignments;  // server -> "<type>.<size>"
    std::vector<Decision> decisions; // name-sorted
};

// One decision per server; the flavor size bucket comes from the effective
// requirement (<= 1/3 of baseline: small, <= 2/3: medium, else large). Load
// balancers receive no flavor. os_kind falls back from the requirement to the
// server's profile. Throws MissingRequirement (no requirement or no os_kind
// for a server) and Unsatisfiable naming the server.
Proposal propose_structure(const AbstractTemplate& t,
                           const std::vector<ServerRequirements>& reqs,
                           const std::vector<InstalledProfile>& profiles,
                           const PerformanceModel& m,
                           const SelectionConfig& cfg);

} // namespace safs
