#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safs/adapters.hpp"
#include "safs/analysis.hpp"
#include "safs/catalog.hpp"
#include "safs/environment.hpp"
#include "safs/errors.hpp"
#include "safs/extractor.hpp"
#include "safs/perfmodel.hpp"
#include "safs/report.hpp"
#include "safs/selector.hpp"

namespace safs {

/// The proposal confirmation gate: nothing deploys until this returns true.
class ProposalGate {
public:
    virtual ~ProposalGate() = default;

    virtual bool approve(const Proposal& proposal) = 0;
};

class AutoApprove final : public ProposalGate {
public:
    bool approve(const Proposal&) override { return true; }
};

/// Failure of one pipeline stage; remembers which one.
class PipelineError : public SafsError {
public:
    PipelineError(int step, std::string step_name, const std::string& cause);

    int step() const { return step_; }
    const std::string& step_name() const { return step_name_; }
    const std::string& cause() const { return cause_; }

private:
    int step_;
    std::string step_name_;
    std::string cause_;
};

// Validates the template and hands it to the controller.
DeployedEnvironment deploy(IaasController& controller,
                           const ConcreteTemplate& t,
                           const Tenant& tenant);

// Runs every plan item; a RunnerError becomes a status=error result and the
// run continues. Results come back ordered by (test, target) regardless of
// execution order.
std::vector<TestResult> run_tests(TestRunner& runner,
                                  const TestPlan& plan,
                                  const DeployedEnvironment& env);

enum class PipelineStatus { completed, rejected };

struct PipelineOutcome {
    PipelineStatus status = PipelineStatus::completed;
    Proposal proposal;
    std::string concrete_document;             // empty until approved
    std::optional<VerificationReport> report;  // present when completed
};

/// Everything the pipeline collaborates with.
struct PipelineContext {
    const Catalog& catalog;
    const PerformanceModel& model;
    SelectionConfig selection;
    IaasController& controller;
    TestRunner& runner;
    ProposalGate& gate;
};

struct PipelineOptions {
    std::string tenant = "default";
};

// The eight stages, in order: parse, analyze, propose, confirm, deploy,
// extract, execute, report. Rejection at the confirm stage is a distinct
// outcome, not an error; the proposal still comes back. Any stage failure is
// rethrown as PipelineError naming the stage.
PipelineOutcome run_pipeline(std::string_view abstract_doc,
                             const std::vector<ServerRequirements>& reqs,
                             const std::vector<ImageManifest>& manifests,
                             const PipelineContext& ctx,
                             const PipelineOptions& options = {});

} // namespace safs
