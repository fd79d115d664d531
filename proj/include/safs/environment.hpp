#pragma once

#include <map>
#include <optional>
#include <string>

#include "safs/types.hpp"

namespace safs {

/// Isolation unit an IaaS controller provisions into. Never empty.
class Tenant {
public:
    explicit Tenant(std::string id);

    const std::string& id() const { return id_; }

    bool operator==(const Tenant&) const = default;

private:
    std::string id_;
};

enum class ResourceStatus { active, failed };

std::string to_string(ResourceStatus s);

struct DeployedResource {
    std::string endpoint; // "host:port"
    std::optional<ServerType> server_type; // empty for load balancers
    ResourceStatus status = ResourceStatus::active;
};

/// Result of deploying a concrete template: one entry per template resource,
/// endpoints unique.
struct DeployedEnvironment {
    std::string tenant;
    std::map<std::string, DeployedResource> resources;
};

} // namespace safs
