#include "safs/adapters.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <sstream>

namespace safs {

std::string to_string(TestResult::Status s) {
    switch (s) {
    case TestResult::Status::pass: return "pass";
    case TestResult::Status::fail: return "fail";
    case TestResult::Status::error: return "error";
    }
    return "?";
}

SimulatedController::SimulatedController(SimulatedControllerOptions options)
    : options_(std::move(options)) {}

DeployedEnvironment SimulatedController::deploy(const ConcreteTemplate& t, const Tenant& tenant) {
    ++deploy_calls_;

    DeployedEnvironment env;
    env.tenant = tenant.id();

    int host = 1;
    std::vector<std::string> failed;
    for (const auto& [name, r] : t.resources) {
        DeployedResource dr;
        dr.endpoint = "10.0.0." + std::to_string(host++) + ":80";
        if (r.kind == ResourceKind::server) {
            auto flavor = Flavor::parse(r.flavor.value_or(""));
            if (!flavor) {
                throw BadFlavor("resource '" + name + "' has no deployable flavor");
            }
            dr.server_type = flavor->type;
        }
        if (options_.fail_resources.count(name)) {
            dr.status = ResourceStatus::failed;
            failed.push_back(name);
        }
        env.resources.emplace(name, std::move(dr));
    }

    environments_[tenant.id()] = env;

    if (!failed.empty()) {
        std::ostringstream msg;
        msg << "provisioning failed for";
        for (const auto& name : failed) {
            msg << " '" << name << "'";
        }
        throw DeployError(msg.str(), env);
    }
    return env;
}

void SimulatedController::teardown(const Tenant& tenant) { environments_.erase(tenant.id()); }

std::optional<DeployedEnvironment> SimulatedController::status(const Tenant& tenant) {
    auto it = environments_.find(tenant.id());
    if (it == environments_.end()) {
        return std::nullopt;
    }
    return it->second;
}

SimulatedRunner::SimulatedRunner(PerformanceModel model, SimulatedRunnerOptions options)
    : model_(std::move(model)), options_(std::move(options)) {}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

/// Deterministic jitter in [0, 1) from the run seed and the result identity.
double unit_jitter(std::uint64_t seed, const std::string& test, const std::string& target) {
    std::uint64_t h = 14695981039346656037ULL;
    h = fnv1a(h, &seed, sizeof seed);
    h = fnv1a(h, test.data(), test.size());
    h = fnv1a(h, "|", 1);
    h = fnv1a(h, target.data(), target.size());
    return static_cast<double>(h >> 11) / 9007199254740992.0; // 2^53
}

const DeployedResource& resource_or_throw(const DeployedEnvironment& env, const std::string& name) {
    auto it = env.resources.find(name);
    if (it == env.resources.end()) {
        throw RunnerError("resource '" + name + "' is not deployed");
    }
    return it->second;
}

} // namespace

TestResult SimulatedRunner::execute(const PlanItem& item, const DeployedEnvironment& env) {
    if (item.targets.empty()) {
        throw RunnerError("test '" + item.test.name + "' has no resolved targets");
    }
    const Target& entry = item.targets.front();
    if (options_.unreachable_resources.count(entry.resource)) {
        throw RunnerError("target '" + entry.resource + "' is unreachable");
    }
    const DeployedResource& entry_resource = resource_or_throw(env, entry.resource);
    if (entry_resource.status != ResourceStatus::active) {
        throw RunnerError("target '" + entry.resource + "' is not active");
    }

    // Server-scoped items measure the subject server; environment-scoped
    // items are limited by the slowest active server in the environment.
    double base = 0;
    std::string subject;
    if (item.scope == PlanScope::server) {
        const DeployedResource& r = resource_or_throw(env, item.server);
        if (!r.server_type || r.status != ResourceStatus::active) {
            throw RunnerError("server '" + item.server + "' is not an active server");
        }
        base = capacity_index(model_, *r.server_type, 1).value;
        subject = item.server;
    } else {
        base = std::numeric_limits<double>::infinity();
        for (const auto& [name, r] : env.resources) {
            if (!r.server_type || r.status != ResourceStatus::active) {
                continue;
            }
            const double cap = capacity_index(model_, *r.server_type, 1).value;
            if (cap < base) {
                base = cap;
                subject = name;
            }
        }
        if (subject.empty()) {
            throw RunnerError("environment has no active servers to measure");
        }
    }

    TestResult result;
    result.test = item.test.name;
    result.target = entry.endpoint;
    const double jitter = unit_jitter(options_.seed, result.test, result.target);
    result.metrics["throughput_index"] = base * (1.0 + 0.05 * jitter);

    std::ostringstream log;
    log << "simulated '" << result.test << "' via " << entry.resource << " (" << entry.endpoint
        << "), measuring " << subject;
    if (options_.failing_tests.count(result.test)) {
        result.status = TestResult::Status::fail;
        log << "; assertion failed (injected)";
    }
    result.log = log.str();
    return result;
}

} // namespace safs
