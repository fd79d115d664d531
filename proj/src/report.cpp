#include "safs/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace safs {

namespace {

double effective_requirement(const ServerRequirements& req) {
    if (req.consistency == Consistency::eventual && req.max_replicas > 1) {
        return req.required_throughput_index / req.max_replicas;
    }
    return req.required_throughput_index;
}

std::string result_key(const std::string& test, const std::string& target) {
    return test + "\x1f" + target;
}

} // namespace

VerificationReport collect_report(const Proposal& proposal,
                                  const TestPlan& plan,
                                  const std::vector<TestResult>& results,
                                  const std::vector<ServerRequirements>& reqs,
                                  const std::string& tenant) {
    VerificationReport report;
    report.tenant = tenant;
    report.proposal = proposal;
    report.plan = plan;
    report.results = results;

    // Pair each plan item with one result. Runners report the test name and
    // the endpoint of the item's first target, so that pair (with
    // multiplicity) identifies the item a result belongs to.
    std::map<std::string, std::vector<const TestResult*>> pool;
    for (const auto& r : results) {
        pool[result_key(r.test, r.target)].push_back(&r);
    }
    std::map<std::string, std::vector<const TestResult*>> by_server;
    for (const auto& item : plan.items) {
        const std::string endpoint = item.targets.empty() ? "" : item.targets.front().endpoint;
        auto it = pool.find(result_key(item.test.name, endpoint));
        if (it == pool.end() || it->second.empty()) {
            continue;
        }
        const TestResult* r = it->second.front();
        it->second.erase(it->second.begin());
        if (item.scope == PlanScope::server) {
            by_server[item.server].push_back(r);
        }
    }

    for (const auto& r : results) {
        if (r.status == TestResult::Status::error) {
            report.warnings.push_back("test '" + r.test + "' against " + r.target +
                                      " reported an error" + (r.log.empty() ? "" : ": " + r.log));
        }
    }

    std::map<std::string, double> effective_by_server;
    for (const auto& d : proposal.decisions) {
        effective_by_server[d.server] = d.effective_requirement_index;
    }

    std::vector<ServerRequirements> sorted_reqs = reqs;
    std::sort(sorted_reqs.begin(), sorted_reqs.end(),
              [](const ServerRequirements& a, const ServerRequirements& b) {
                  return a.server < b.server;
              });

    for (const auto& req : sorted_reqs) {
        ServerVerdict v;
        v.server = req.server;
        auto eff = effective_by_server.find(req.server);
        v.effective_requirement_index =
            eff != effective_by_server.end() ? eff->second : effective_requirement(req);

        const auto measured = by_server.find(req.server);
        if (measured == by_server.end() || measured->second.empty()) {
            v.met = true;
            v.notes.push_back("no test results targeted this server; requirement unverified");
            report.verdicts.push_back(std::move(v));
            continue;
        }

        v.met = true;
        for (const TestResult* r : measured->second) {
            if (r->status != TestResult::Status::pass) {
                v.met = false;
                v.notes.push_back("test '" + r->test + "' " + to_string(r->status));
            }
            auto metric = r->metrics.find("throughput_index");
            if (metric == r->metrics.end()) {
                continue;
            }
            if (!v.min_throughput_index || metric->second < *v.min_throughput_index) {
                v.min_throughput_index = metric->second;
            }
            if (metric->second < v.effective_requirement_index) {
                v.met = false;
                std::ostringstream note;
                note << "test '" << r->test << "' measured " << metric->second
                     << ", below the required " << v.effective_requirement_index;
                v.notes.push_back(note.str());
            }
        }
        report.verdicts.push_back(std::move(v));
    }

    return report;
}

std::string render_text(const VerificationReport& report) {
    std::ostringstream out;
    out << "Verification report for tenant '" << report.tenant << "'\n";

    out << "\nProposal\n";
    if (report.proposal.decisions.empty()) {
        out << "  (no servers)\n";
    }
    for (const auto& d : report.proposal.decisions) {
        auto flavor = report.proposal.assignments.find(d.server);
        out << "  " << d.server << ": "
            << (flavor != report.proposal.assignments.end() ? flavor->second : to_string(d.chosen))
            << "  [" << to_string(d.rule_fired) << "]\n";
        out << "      " << d.rationale << "\n";
        for (const auto& w : d.warnings) {
            out << "      warning: " << w << "\n";
        }
    }

    out << "\nTest plan (" << report.plan.items.size() << " item"
        << (report.plan.items.size() == 1 ? "" : "s") << ")\n";
    for (const auto& item : report.plan.items) {
        out << "  [" << to_string(item.scope) << "] ";
        if (item.scope == PlanScope::server) {
            out << item.server << ": ";
        }
        out << item.test.name << " (from " << item.source << ")";
        if (!item.targets.empty()) {
            out << " ->";
            for (const auto& t : item.targets) {
                out << " " << t.resource << "(" << t.endpoint << ")";
            }
        }
        out << "\n";
    }

    out << "\nResults\n";
    if (report.results.empty()) {
        out << "  (none)\n";
    }
    for (const auto& r : report.results) {
        out << "  " << to_string(r.status) << "  " << r.test << " @ " << r.target;
        for (const auto& [name, value] : r.metrics) {
            out << "  " << name << "=" << value;
        }
        out << "\n";
    }

    out << "\nVerdicts\n";
    if (report.verdicts.empty()) {
        out << "  (no requirements)\n";
    }
    for (const auto& v : report.verdicts) {
        out << "  " << v.server << ": " << (v.met ? "met" : "NOT met")
            << " (requirement " << v.effective_requirement_index;
        if (v.min_throughput_index) {
            out << ", min throughput " << *v.min_throughput_index;
        }
        out << ")\n";
        for (const auto& note : v.notes) {
            out << "      note: " << note << "\n";
        }
    }

    if (!report.warnings.empty()) {
        out << "\nWarnings\n";
        for (const auto& w : report.warnings) {
            out << "  - " << w << "\n";
        }
    }

    return out.str();
}

} // namespace safs
