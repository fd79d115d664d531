#include "safs/pipeline.hpp"

#include <algorithm>
#include <tuple>

namespace safs {

PipelineError::PipelineError(int step, std::string step_name, const std::string& cause)
    : SafsError("step " + std::to_string(step) + " (" + step_name + ") failed: " + cause),
      step_(step),
      step_name_(std::move(step_name)),
      cause_(cause) {}

DeployedEnvironment deploy(IaasController& controller,
                           const ConcreteTemplate& t,
                           const Tenant& tenant) {
    const auto diagnostics = validate_template(t);
    if (!diagnostics.empty()) {
        throw InvalidTemplate("refusing to deploy: " + summarize(diagnostics));
    }
    return controller.deploy(t, tenant);
}

std::vector<TestResult> run_tests(TestRunner& runner,
                                  const TestPlan& plan,
                                  const DeployedEnvironment& env) {
    std::vector<TestResult> results;
    results.reserve(plan.items.size());
    for (const auto& item : plan.items) {
        try {
            results.push_back(runner.execute(item, env));
        } catch (const SafsError& e) {
            TestResult r;
            r.test = item.test.name;
            r.target = item.targets.empty() ? "" : item.targets.front().endpoint;
            r.status = TestResult::Status::error;
            r.log = e.what();
            results.push_back(std::move(r));
        }
    }
    std::stable_sort(results.begin(), results.end(), [](const TestResult& a, const TestResult& b) {
        return std::tie(a.test, a.target) < std::tie(b.test, b.target);
    });
    return results;
}

namespace {

template <typename F>
auto stage(int step, const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw PipelineError(step, name, e.what());
    }
}

} // namespace

PipelineOutcome run_pipeline(std::string_view abstract_doc,
                             const std::vector<ServerRequirements>& reqs,
                             const std::vector<ImageManifest>& manifests,
                             const PipelineContext& ctx,
                             const PipelineOptions& options) {
    PipelineOutcome outcome;

    const AbstractTemplate abstract = stage(1, "parse", [&] {
        AbstractTemplate t = parse_abstract(abstract_doc);
        if (const auto diagnostics = validate_template(t); !diagnostics.empty()) {
            throw InvalidTemplate(summarize(diagnostics));
        }
        return t;
    });

    const std::vector<InstalledProfile> profiles =
        stage(2, "analyze", [&] { return analyze_images(abstract, manifests, ctx.catalog); });

    outcome.proposal = stage(3, "propose", [&] {
        return propose_structure(abstract, reqs, profiles, ctx.model, ctx.selection);
    });

    const bool approved =
        stage(4, "confirm", [&] { return ctx.gate.approve(outcome.proposal); });
    if (!approved) {
        outcome.status = PipelineStatus::rejected;
        return outcome;
    }

    const DeployedEnvironment env = stage(5, "deploy", [&] {
        outcome.concrete_document = emit_concrete(abstract, outcome.proposal.assignments);
        const ConcreteTemplate concrete = parse_concrete(outcome.concrete_document);
        return deploy(ctx.controller, concrete, Tenant(options.tenant));
    });

    const TestPlan plan = stage(6, "extract", [&] {
        const TopologyGraph topology = build_topology(abstract);
        const DeploymentConfig config = infer_deployment_config(topology, profiles);
        const auto patterns = match_patterns(ctx.catalog, config);
        return resolve_test_targets(extract_test_plan(profiles, patterns, ctx.catalog), topology,
                                    env, profiles);
    });

    const std::vector<TestResult> results =
        stage(7, "execute", [&] { return run_tests(ctx.runner, plan, env); });

    outcome.report = stage(8, "report", [&] {
        return collect_report(outcome.proposal, plan, results, reqs, options.tenant);
    });
    return outcome;
}

} // namespace safs
