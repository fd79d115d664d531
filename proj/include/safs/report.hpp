#pragma once

#include <optional>
#include <string>
#include <vector>

#include "safs/adapters.hpp"
#include "safs/extractor.hpp"
#include "safs/selector.hpp"

namespace safs {

/// Met / not-met judgement for one server with a requirement.
struct ServerVerdict {
    std::string server;
    bool met = false;
    double effective_requirement_index = 0;
    /// Lowest throughput measured across the server's results; absent when
    /// nothing measured it.
    std::optional<double> min_throughput_index;
    std::vector<std::string> notes;
};

struct VerificationReport {
    std::string tenant;
    Proposal proposal;
    TestPlan plan;
    std::vector<TestResult> results;
    std::vector<ServerVerdict> verdicts; // one per server with a requirement
    std::vector<std::string> warnings;
};

// Joins one run's proposal, plan and results into the report. A server is met
// when every result targeting it passed and every measured throughput reaches
// its effective requirement (the per-replica share when consistency is
// eventual). Servers nothing measured are met vacuously, with a note.
VerificationReport collect_report(const Proposal& proposal,
                                  const TestPlan& plan,
                                  const std::vector<TestResult>& results,
                                  const std::vector<ServerRequirements>& reqs,
                                  const std::string& tenant);

std::string render_text(const VerificationReport& report);

} // namespace safs
