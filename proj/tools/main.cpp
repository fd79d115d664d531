// safs — propose server structures for an abstract template and verify the
// deployed environment with catalog-selected test cases.
//
// Exit codes: 0 success, 1 usage error, 2 processing error, 3 proposal
// rejected at the confirmation prompt.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "safs/adapters.hpp"
#include "safs/analysis.hpp"
#include "safs/catalog.hpp"
#include "safs/errors.hpp"
#include "safs/json_io.hpp"
#include "safs/perfmodel.hpp"
#include "safs/pipeline.hpp"
#include "safs/report.hpp"
#include "safs/selector.hpp"
#include "safs/template.hpp"

#ifndef SAFS_DEFAULT_CATALOG_DIR
#define SAFS_DEFAULT_CATALOG_DIR "data/catalog"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitError = 2;
constexpr int kExitRejected = 3;

struct CommonArgs {
    std::string template_path;
    std::string requirements_path;
    std::string manifests_path;
    std::string catalog_dir = SAFS_DEFAULT_CATALOG_DIR;
    std::string model_path;
    std::string tenant = "default";
    std::uint64_t seed = 0;
    bool auto_approve = false;
    bool json = false;
    bool dry_run = false;
    std::string out_path;
    int colocation = 1;
    double latency_threshold = 10.0;
};

safs::PerformanceModel load_model_arg(const CommonArgs& args) {
    if (args.model_path.empty()) {
        return safs::default_model();
    }
    return safs::load_model(args.model_path);
}

std::string read_file_arg(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw safs::IoError("cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw safs::IoError("cannot write '" + path + "'");
    }
    out << content;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string proposal_text(const safs::Proposal& proposal) {
    std::string out = "Proposed structure\n";
    for (const auto& d : proposal.decisions) {
        auto flavor = proposal.assignments.find(d.server);
        out += "  " + d.server + ": " +
               (flavor != proposal.assignments.end() ? flavor->second : to_string(d.chosen)) +
               "  [" + to_string(d.rule_fired) + "]\n";
        out += "      " + d.rationale + "\n";
        for (const auto& w : d.warnings) {
            out += "      warning: " + w + "\n";
        }
    }
    if (proposal.decisions.empty()) {
        out += "  (no servers)\n";
    }
    return out;
}

std::string plan_text(const safs::TestPlan& plan) {
    std::string out =
        "Test plan (" + std::to_string(plan.items.size()) + (plan.items.size() == 1 ? " item" : " items") + ")\n";
    for (const auto& item : plan.items) {
        out += "  [" + to_string(item.scope) + "] ";
        if (item.scope == safs::PlanScope::server) {
            out += item.server + ": ";
        }
        out += item.test.name + " (from " + item.source + ")";
        if (!item.targets.empty()) {
            out += " ->";
            for (const auto& t : item.targets) {
                out += " " + t.resource + "(" + t.endpoint + ")";
            }
        }
        out += "\n";
    }
    return out;
}

/// Step-4 confirmation: show the proposal, ask, read one line from stdin.
class PromptGate final : public safs::ProposalGate {
public:
    bool approve(const safs::Proposal& proposal) override {
        std::cout << proposal_text(proposal);
        std::cout << "Deploy this structure? [y/N] " << std::flush;
        std::string answer;
        if (!std::getline(std::cin, answer)) {
            return false;
        }
        return answer == "y" || answer == "Y" || answer == "yes" || answer == "Yes";
    }
};

struct LoadedInputs {
    safs::Catalog catalog;
    safs::PerformanceModel model;
    std::vector<safs::ServerRequirements> requirements;
    std::vector<safs::ImageManifest> manifests;
    std::string template_doc;
};

LoadedInputs load_inputs(const CommonArgs& args) {
    LoadedInputs in;
    in.catalog = safs::load_catalog(safs::CatalogPaths::in_dir(args.catalog_dir));
    in.model = load_model_arg(args);
    in.requirements = safs::load_requirements(args.requirements_path);
    in.manifests = args.manifests_path.empty()
                       ? std::vector<safs::ImageManifest>{}
                       : safs::load_manifests(args.manifests_path);
    in.template_doc = read_file_arg(args.template_path);
    return in;
}

safs::SelectionConfig selection_config(const CommonArgs& args) {
    safs::SelectionConfig cfg;
    cfg.planned_colocation = args.colocation;
    cfg.latency_baremetal_threshold_ms = args.latency_threshold;
    return cfg;
}

int cmd_propose(const CommonArgs& args) {
    const LoadedInputs in = load_inputs(args);
    const safs::AbstractTemplate t = safs::parse_abstract(in.template_doc);
    if (const auto diags = safs::validate_template(t); !diags.empty()) {
        throw safs::InvalidTemplate(safs::summarize(diags));
    }
    const auto profiles = safs::analyze_images(t, in.manifests, in.catalog);
    const safs::Proposal proposal =
        safs::propose_structure(t, in.requirements, profiles, in.model, selection_config(args));

    if (args.json) {
        std::cout << dump(safs::proposal_to_json(proposal));
    } else {
        std::cout << proposal_text(proposal);
    }
    return kExitOk;
}

int cmd_deploy(const CommonArgs& args) {
    const safs::ConcreteTemplate t = safs::parse_concrete(read_file_arg(args.template_path));
    safs::SimulatedController controller;
    const safs::DeployedEnvironment env =
        safs::deploy(controller, t, safs::Tenant(args.tenant));
    if (args.json) {
        std::cout << dump(safs::environment_to_json(env));
    } else {
        std::cout << "Deployed " << env.resources.size() << " resources for tenant '" << env.tenant
                  << "'\n";
        for (const auto& [name, r] : env.resources) {
            std::cout << "  " << name << ": " << r.endpoint
                      << (r.server_type ? " (" + to_string(*r.server_type) + ")" : "") << "  "
                      << to_string(r.status) << "\n";
        }
    }
    return kExitOk;
}

int run_with_gate(const CommonArgs& args, safs::ProposalGate& gate, bool echo_proposal) {
    const LoadedInputs in = load_inputs(args);

    safs::SimulatedController controller;
    safs::SimulatedRunnerOptions runner_options;
    runner_options.seed = args.seed;
    safs::SimulatedRunner runner(in.model, runner_options);

    const safs::PipelineContext ctx{in.catalog, in.model, selection_config(args),
                                    controller,  runner,   gate};
    safs::PipelineOptions options;
    options.tenant = args.tenant;

    const safs::PipelineOutcome outcome =
        safs::run_pipeline(in.template_doc, in.requirements, in.manifests, ctx, options);

    if (outcome.status == safs::PipelineStatus::rejected) {
        if (args.json) {
            nlohmann::ordered_json j;
            j["status"] = "rejected";
            j["proposal"] = safs::proposal_to_json(outcome.proposal);
            std::cout << dump(j);
        } else {
            std::cout << "Proposal rejected; nothing deployed.\n";
        }
        return kExitRejected;
    }

    const safs::VerificationReport& report = *outcome.report;
    const std::string report_json = dump(safs::report_to_json(report));
    if (args.json) {
        std::cout << report_json;
    } else {
        if (echo_proposal) {
            std::cout << "\n";
        }
        std::cout << safs::render_text(report);
    }
    if (!args.out_path.empty()) {
        write_file(args.out_path, report_json);
    }
    return kExitOk;
}

int cmd_run(const CommonArgs& args) {
    if (args.auto_approve) {
        safs::AutoApprove gate;
        return run_with_gate(args, gate, false);
    }
    PromptGate gate;
    return run_with_gate(args, gate, true);
}

int cmd_verify(const CommonArgs& args) {
    if (!args.dry_run) {
        safs::AutoApprove gate;
        return run_with_gate(args, gate, false);
    }

    // Dry run: everything up to target resolution, nothing executed.
    const LoadedInputs in = load_inputs(args);
    const safs::AbstractTemplate t = safs::parse_abstract(in.template_doc);
    if (const auto diags = safs::validate_template(t); !diags.empty()) {
        throw safs::InvalidTemplate(safs::summarize(diags));
    }
    const auto profiles = safs::analyze_images(t, in.manifests, in.catalog);
    const safs::Proposal proposal =
        safs::propose_structure(t, in.requirements, profiles, in.model, selection_config(args));

    safs::SimulatedController controller;
    const std::string concrete_doc = safs::emit_concrete(t, proposal.assignments);
    const safs::Tenant tenant(args.tenant);
    const safs::DeployedEnvironment env =
        safs::deploy(controller, safs::parse_concrete(concrete_doc), tenant);

    const safs::TopologyGraph topology = safs::build_topology(t);
    const safs::DeploymentConfig config = safs::infer_deployment_config(topology, profiles);
    const auto patterns = safs::match_patterns(in.catalog, config);
    const safs::TestPlan plan = safs::resolve_test_targets(
        safs::extract_test_plan(profiles, patterns, in.catalog), topology, env, profiles);
    controller.teardown(tenant);

    if (args.json) {
        nlohmann::ordered_json j;
        j["proposal"] = safs::proposal_to_json(proposal);
        j["plan"] = safs::plan_to_json(plan);
        std::cout << dump(j);
    } else {
        std::cout << proposal_text(proposal) << "\n" << plan_text(plan);
    }
    return kExitOk;
}

int cmd_catalog_validate(const CommonArgs& args) {
    const safs::Catalog catalog = safs::load_catalog(safs::CatalogPaths::in_dir(args.catalog_dir));
    if (args.json) {
        nlohmann::ordered_json j;
        j["software"] = catalog.software.size();
        j["patterns"] = catalog.patterns.size();
        j["testcases"] = catalog.tests.size();
        std::cout << dump(j);
    } else {
        std::cout << "Catalog at '" << args.catalog_dir << "' is valid: " << catalog.software.size()
                  << " software rows, " << catalog.patterns.size() << " patterns, "
                  << catalog.tests.size() << " test cases\n";
    }
    return kExitOk;
}

int cmd_report(const std::string& report_path, bool json, const std::string& out_path) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(read_file_arg(report_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw safs::FormatError(std::string("malformed report file: ") + e.what());
    }
    const safs::VerificationReport report = safs::report_from_json(parsed);
    const std::string rendered =
        json ? dump(safs::report_to_json(report)) : safs::render_text(report);
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        write_file(out_path, rendered);
    }
    return kExitOk;
}

void add_catalog_option(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--catalog-dir", args.catalog_dir, "Catalog directory")
        ->envname("SAFS_CATALOG_DIR");
}

void add_selection_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--model", args.model_path, "Performance model JSON (defaults built in)");
    cmd->add_option("--colocation", args.colocation, "Planned instances per shared host")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--latency-threshold", args.latency_threshold,
                    "Latency bound (ms) below which a dedicated host is required")
        ->check(CLI::PositiveNumber);
}

void add_input_options(CLI::App* cmd, CommonArgs& args, bool manifests_required) {
    cmd->add_option("-t,--template", args.template_path, "Template document")->required();
    cmd->add_option("-r,--requirements", args.requirements_path, "Server requirements JSON")
        ->required();
    auto* manifests =
        cmd->add_option("-m,--manifests", args.manifests_path, "Image manifests JSON");
    if (manifests_required) {
        manifests->required();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Server structure proposal and automatic verification"};
    app.require_subcommand(1);

    CommonArgs args;

    CLI::App* propose = app.add_subcommand("propose", "Propose concrete server structures");
    add_input_options(propose, args, false);
    add_catalog_option(propose, args);
    add_selection_options(propose, args);
    propose->add_flag("--json", args.json, "Machine-readable output");

    CLI::App* run = app.add_subcommand("run", "Full pipeline: propose, confirm, deploy, verify");
    add_input_options(run, args, true);
    add_catalog_option(run, args);
    add_selection_options(run, args);
    run->add_option("--tenant", args.tenant, "Tenant to deploy into");
    run->add_flag("--auto-approve", args.auto_approve, "Skip the confirmation prompt");
    run->add_option("--seed", args.seed, "Seed for the simulated test runner");
    run->add_flag("--json", args.json, "Machine-readable output");
    run->add_option("--out", args.out_path, "Also write the JSON report here");

    CLI::App* verify = app.add_subcommand("verify", "Extract and execute tests without a prompt");
    add_input_options(verify, args, true);
    add_catalog_option(verify, args);
    add_selection_options(verify, args);
    verify->add_option("--tenant", args.tenant, "Tenant to deploy into");
    verify->add_option("--seed", args.seed, "Seed for the simulated test runner");
    verify->add_flag("--dry-run", args.dry_run, "Print the resolved test plan, execute nothing");
    verify->add_flag("--json", args.json, "Machine-readable output");
    verify->add_option("--out", args.out_path, "Also write the JSON report here");

    CLI::App* deploy = app.add_subcommand("deploy", "Deploy a concrete template (simulated)");
    deploy->add_option("-t,--template", args.template_path, "Concrete template document")
        ->required();
    deploy->add_option("--tenant", args.tenant, "Tenant to deploy into");
    deploy->add_flag("--json", args.json, "Machine-readable output");

    CLI::App* catalog_validate =
        app.add_subcommand("catalog-validate", "Check the catalog files and their cross-references");
    add_catalog_option(catalog_validate, args);
    catalog_validate->add_flag("--json", args.json, "Machine-readable output");

    std::string report_path;
    CLI::App* report = app.add_subcommand("report", "Re-render a stored JSON report");
    report->add_option("report", report_path, "Report JSON file")->required();
    report->add_flag("--json", args.json, "Machine-readable output");
    report->add_option("--out", args.out_path, "Write instead of printing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (propose->parsed()) {
            return cmd_propose(args);
        }
        if (run->parsed()) {
            return cmd_run(args);
        }
        if (verify->parsed()) {
            return cmd_verify(args);
        }
        if (deploy->parsed()) {
            return cmd_deploy(args);
        }
        if (catalog_validate->parsed()) {
            return cmd_catalog_validate(args);
        }
        if (report->parsed()) {
            return cmd_report(report_path, args.json, args.out_path);
        }
    } catch (const safs::SafsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
