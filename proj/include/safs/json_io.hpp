#pragma once

#include <nlohmann/json.hpp>

#include "safs/adapters.hpp"
#include "safs/environment.hpp"
#include "safs/extractor.hpp"
#include "safs/report.hpp"
#include "safs/selector.hpp"

// JSON views of the pipeline-facing types. Field names and ordering are
// stable so emitted documents compare byte-for-byte across runs.

namespace safs {

nlohmann::ordered_json decision_to_json(const Decision& d);
nlohmann::ordered_json proposal_to_json(const Proposal& p);
nlohmann::ordered_json plan_to_json(const TestPlan& plan);
nlohmann::ordered_json environment_to_json(const DeployedEnvironment& env);
nlohmann::ordered_json result_to_json(const TestResult& r);
nlohmann::ordered_json report_to_json(const VerificationReport& report);

// Inverse of report_to_json, for re-rendering stored reports.
VerificationReport report_from_json(const nlohmann::json& j);

} // namespace safs
