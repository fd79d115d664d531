#include "safs/json_io.hpp"

#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json decision_to_json(const Decision& d) {
    ordered_json j;
    j["server"] = d.server;
    j["chosen"] = to_string(d.chosen);
    j["effective_requirement_index"] = d.effective_requirement_index;
    j["rule_fired"] = to_string(d.rule_fired);
    j["rationale"] = d.rationale;
    j["warnings"] = d.warnings;
    return j;
}

ordered_json proposal_to_json(const Proposal& p) {
    ordered_json assignments = ordered_json::object();
    for (const auto& [server, flavor] : p.assignments) {
        assignments[server] = flavor;
    }
    ordered_json decisions = ordered_json::array();
    for (const auto& d : p.decisions) {
        decisions.push_back(decision_to_json(d));
    }
    return ordered_json{{"assignments", std::move(assignments)},
                        {"decisions", std::move(decisions)}};
}

namespace {

ordered_json item_to_json(const PlanItem& item) {
    ordered_json j;
    j["test"] = {{"name", item.test.name},
                 {"tier", to_string(item.test.tier)},
                 {"tier_key", item.test.tier_key},
                 {"subject", to_string(item.test.subject)}};
    j["scope"] = to_string(item.scope);
    j["server"] = item.server;
    j["source"] = item.source;
    ordered_json targets = ordered_json::array();
    for (const auto& t : item.targets) {
        targets.push_back({{"resource", t.resource}, {"endpoint", t.endpoint}});
    }
    j["targets"] = std::move(targets);
    return j;
}

} // namespace

ordered_json plan_to_json(const TestPlan& plan) {
    ordered_json items = ordered_json::array();
    for (const auto& item : plan.items) {
        items.push_back(item_to_json(item));
    }
    return items;
}

ordered_json environment_to_json(const DeployedEnvironment& env) {
    ordered_json resources = ordered_json::object();
    for (const auto& [name, r] : env.resources) {
        ordered_json entry;
        entry["endpoint"] = r.endpoint;
        if (r.server_type) {
            entry["server_type"] = to_string(*r.server_type);
        }
        entry["status"] = to_string(r.status);
        resources[name] = std::move(entry);
    }
    return ordered_json{{"tenant", env.tenant}, {"resources", std::move(resources)}};
}

ordered_json result_to_json(const TestResult& r) {
    ordered_json metrics = ordered_json::object();
    for (const auto& [name, value] : r.metrics) {
        metrics[name] = value;
    }
    ordered_json j;
    j["test"] = r.test;
    j["target"] = r.target;
    j["status"] = to_string(r.status);
    j["metrics"] = std::move(metrics);
    j["log"] = r.log;
    return j;
}

namespace {

ordered_json verdict_to_json(const ServerVerdict& v) {
    ordered_json j;
    j["server"] = v.server;
    j["met"] = v.met;
    j["effective_requirement_index"] = v.effective_requirement_index;
    if (v.min_throughput_index) {
        j["min_throughput_index"] = *v.min_throughput_index;
    }
    j["notes"] = v.notes;
    return j;
}

} // namespace

ordered_json report_to_json(const VerificationReport& report) {
    ordered_json results = ordered_json::array();
    for (const auto& r : report.results) {
        results.push_back(result_to_json(r));
    }
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back(verdict_to_json(v));
    }
    ordered_json j;
    j["tenant"] = report.tenant;
    j["proposal"] = proposal_to_json(report.proposal);
    j["plan"] = plan_to_json(report.plan);
    j["results"] = std::move(results);
    j["verdicts"] = std::move(verdicts);
    j["warnings"] = report.warnings;
    return j;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw FormatError("malformed report: " + what);
}

std::string get_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
        bad(std::string("missing string '") + key + "'");
    }
    return j[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        bad(std::string("missing array '") + key + "'");
    }
    std::vector<std::string> out;
    for (const auto& s : j[key]) {
        if (!s.is_string()) {
            bad(std::string("non-string entry in '") + key + "'");
        }
        out.push_back(s.get<std::string>());
    }
    return out;
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        bad(std::string("missing number '") + key + "'");
    }
    return j[key].get<double>();
}

} // namespace

VerificationReport report_from_json(const json& j) {
    if (!j.is_object()) {
        bad("not an object");
    }
    VerificationReport report;
    report.tenant = get_string(j, "tenant");

    if (!j.contains("proposal") || !j["proposal"].is_object()) {
        bad("missing object 'proposal'");
    }
    const json& proposal = j["proposal"];
    if (!proposal.contains("assignments") || !proposal["assignments"].is_object()) {
        bad("missing object 'assignments'");
    }
    for (const auto& [server, flavor] : proposal["assignments"].items()) {
        if (!flavor.is_string()) {
            bad("non-string flavor assignment");
        }
        report.proposal.assignments[server] = flavor.get<std::string>();
    }
    if (!proposal.contains("decisions") || !proposal["decisions"].is_array()) {
        bad("missing array 'decisions'");
    }
    for (const auto& row : proposal["decisions"]) {
        Decision d;
        d.server = get_string(row, "server");
        auto chosen = server_type_from_string(get_string(row, "chosen"));
        auto rule = selection_rule_from_string(get_string(row, "rule_fired"));
        if (!chosen || !rule) {
            bad("unknown server type or rule in decision for '" + d.server + "'");
        }
        d.chosen = *chosen;
        d.rule_fired = *rule;
        d.effective_requirement_index = get_number(row, "effective_requirement_index");
        d.rationale = get_string(row, "rationale");
        d.warnings = get_strings(row, "warnings");
        report.proposal.decisions.push_back(std::move(d));
    }

    if (!j.contains("plan") || !j["plan"].is_array()) {
        bad("missing array 'plan'");
    }
    for (const auto& row : j["plan"]) {
        PlanItem item;
        if (!row.contains("test") || !row["test"].is_object()) {
            bad("plan item without 'test'");
        }
        const json& test = row["test"];
        item.test.name = get_string(test, "name");
        auto tier = test_tier_from_string(get_string(test, "tier"));
        auto subject = test_subject_from_string(get_string(test, "subject"));
        if (!tier || !subject) {
            bad("unknown tier or subject for test '" + item.test.name + "'");
        }
        item.test.tier = *tier;
        item.test.tier_key = get_string(test, "tier_key");
        item.test.subject = *subject;
        const std::string scope = get_string(row, "scope");
        if (scope == "server") {
            item.scope = PlanScope::server;
        } else if (scope == "environment") {
            item.scope = PlanScope::environment;
        } else {
            bad("unknown scope '" + scope + "'");
        }
        item.server = get_string(row, "server");
        item.source = get_string(row, "source");
        if (!row.contains("targets") || !row["targets"].is_array()) {
            bad("plan item without 'targets'");
        }
        for (const auto& t : row["targets"]) {
            item.targets.push_back({get_string(t, "resource"), get_string(t, "endpoint")});
        }
        report.plan.items.push_back(std::move(item));
    }

    if (!j.contains("results") || !j["results"].is_array()) {
        bad("missing array 'results'");
    }
    for (const auto& row : j["results"]) {
        TestResult r;
        r.test = get_string(row, "test");
        r.target = get_string(row, "target");
        const std::string status = get_string(row, "status");
        if (status == "pass") {
            r.status = TestResult::Status::pass;
        } else if (status == "fail") {
            r.status = TestResult::Status::fail;
        } else if (status == "error") {
            r.status = TestResult::Status::error;
        } else {
            bad("unknown result status '" + status + "'");
        }
        if (!row.contains("metrics") || !row["metrics"].is_object()) {
            bad("result without 'metrics'");
        }
        for (const auto& [name, value] : row["metrics"].items()) {
            if (!value.is_number()) {
                bad("non-numeric metric '" + name + "'");
            }
            r.metrics[name] = value.get<double>();
        }
        r.log = get_string(row, "log");
        report.results.push_back(std::move(r));
    }

    if (!j.contains("verdicts") || !j["verdicts"].is_array()) {
        bad("missing array 'verdicts'");
    }
    for (const auto& row : j["verdicts"]) {
        ServerVerdict v;
        v.server = get_string(row, "server");
        if (!row.contains("met") || !row["met"].is_boolean()) {
            bad("verdict without boolean 'met'");
        }
        v.met = row["met"].get<bool>();
        v.effective_requirement_index = get_number(row, "effective_requirement_index");
        if (row.contains("min_throughput_index")) {
            if (!row["min_throughput_index"].is_number()) {
                bad("non-numeric 'min_throughput_index'");
            }
            v.min_throughput_index = row["min_throughput_index"].get<double>();
        }
        v.notes = get_strings(row, "notes");
        report.verdicts.push_back(std::move(v));
    }

    report.warnings = get_strings(j, "warnings");
    return report;
}

} // namespace safs
