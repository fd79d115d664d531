#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "safs/environment.hpp"
#include "safs/errors.hpp"
#include "safs/extractor.hpp"
#include "safs/perfmodel.hpp"
#include "safs/template.hpp"

namespace safs {

/// Controller-reported deployment failure; carries the partial environment
/// with per-resource statuses.
class DeployError : public SafsError {
public:
    DeployError(const std::string& message, DeployedEnvironment partial)
        : SafsError(message), partial_(std::move(partial)) {}

    const DeployedEnvironment& partial() const { return partial_; }

private:
    DeployedEnvironment partial_;
};

/// Provisioning backend. Implementations exist for testing; a real OpenStack
/// or similar backend plugs in behind the same three calls.
class IaasController {
public:
    virtual ~IaasController() = default;

    virtual DeployedEnvironment deploy(const ConcreteTemplate& t, const Tenant& tenant) = 0;
    virtual void teardown(const Tenant& tenant) = 0;
    virtual std::optional<DeployedEnvironment> status(const Tenant& tenant) = 0;
};

struct TestResult {
    std::string test;
    std::string target;
    enum class Status { pass, fail, error } status = Status::pass;
    std::map<std::string, double> metrics; // non-negative, e.g. throughput_index
    std::string log;
};

std::string to_string(TestResult::Status s);

/// Executes one plan item against a deployed environment.
class TestRunner {
public:
    virtual ~TestRunner() = default;

    virtual TestResult execute(const PlanItem& item, const DeployedEnvironment& env) = 0;
};

struct SimulatedControllerOptions {
    /// Resources whose provisioning is reported as failed.
    std::set<std::string> fail_resources;
};

/// In-memory controller. Endpoints are a pure function of the resource names
/// (10.0.0.k in name order), so redeploying the same template into the same
/// tenant is idempotent.
class SimulatedController : public IaasController {
public:
    explicit SimulatedController(SimulatedControllerOptions options = {});

    DeployedEnvironment deploy(const ConcreteTemplate& t, const Tenant& tenant) override;
    void teardown(const Tenant& tenant) override;
    std::optional<DeployedEnvironment> status(const Tenant& tenant) override;

    int deploy_calls() const { return deploy_calls_; }

private:
    SimulatedControllerOptions options_;
    std::map<std::string, DeployedEnvironment> environments_;
    int deploy_calls_ = 0;
};

struct SimulatedRunnerOptions {
    std::uint64_t seed = 0;
    /// Targets reported unreachable: executing an item addressed at one of
    /// these resources raises RunnerError.
    std::set<std::string> unreachable_resources;
    /// Tests forced to a failing verdict.
    std::set<std::string> failing_tests;
};

/// Synthesizes results from the performance model: throughput is the subject
/// server's capacity at n=1 scaled by a small seeded jitter in [0, 5%), so
/// runs are reproducible and a type always clears the requirement it was
/// picked for. Environment-scoped items report the bottleneck server's
/// capacity.
class SimulatedRunner : public TestRunner {
public:
    SimulatedRunner(PerformanceModel model, SimulatedRunnerOptions options = {});

    TestResult execute(const PlanItem& item, const DeployedEnvironment& env) override;

private:
    PerformanceModel model_;
    SimulatedRunnerOptions options_;
};

} // namespace safs
