#include "safs/selector.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "file_io.hpp"
#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;

std::string to_string(SelectionRule r) {
    switch (r) {
    case SelectionRule::perf_baremetal: return "perf_baremetal";
    case SelectionRule::latency_baremetal: return "latency_baremetal";
    case SelectionRule::os_vm: return "os_vm";
    case SelectionRule::default_container: return "default_container";
    }
    return "?";
}

std::optional<SelectionRule> selection_rule_from_string(std::string_view s) {
    if (s == "perf_baremetal") return SelectionRule::perf_baremetal;
    if (s == "latency_baremetal") return SelectionRule::latency_baremetal;
    if (s == "os_vm") return SelectionRule::os_vm;
    if (s == "default_container") return SelectionRule::default_container;
    return std::nullopt;
}

std::vector<ServerRequirements> parse_requirements(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed requirements file: ") + e.what());
    }
    if (!doc.is_array()) {
        throw FormatError("requirements file must be a JSON array");
    }

    std::vector<ServerRequirements> reqs;
    std::set<std::string> seen;
    for (const auto& row : doc) {
        if (!row.is_object() || !row.contains("server") || !row["server"].is_string()) {
            throw FormatError("requirements entry needs a string 'server'");
        }
        ServerRequirements req;
        req.server = row["server"].get<std::string>();
        if (!seen.insert(req.server).second) {
            throw FormatError("duplicate requirements for server '" + req.server + "'");
        }
        for (const auto& [key, value] : row.items()) {
            if (key == "server") {
                continue;
            }
            if (key == "os_kind") {
                if (!value.is_string()) {
                    throw FormatError("os_kind for '" + req.server + "' must be a string");
                }
                auto os = os_kind_from_string(value.get<std::string>());
                if (!os) {
                    throw FormatError("unknown os_kind for '" + req.server + "'");
                }
                req.os_kind = *os;
            } else if (key == "required_throughput_index") {
                if (!value.is_number() || value.get<double>() < 0) {
                    throw FormatError("required_throughput_index for '" + req.server +
                                      "' must be a non-negative number");
                }
                req.required_throughput_index = value.get<double>();
            } else if (key == "required_latency_ms") {
                if (!value.is_number() || !(value.get<double>() > 0)) {
                    throw FormatError("required_latency_ms for '" + req.server +
                                      "' must be a positive number");
                }
                req.required_latency_ms = value.get<double>();
            } else if (key == "consistency") {
                if (!value.is_string()) {
                    throw FormatError("consistency for '" + req.server + "' must be a string");
                }
                auto c = consistency_from_string(value.get<std::string>());
                if (!c) {
                    throw FormatError("unknown consistency for '" + req.server + "'");
                }
                req.consistency = *c;
            } else if (key == "max_replicas") {
                if (!value.is_number_integer() || value.get<int>() < 1) {
                    throw FormatError("max_replicas for '" + req.server + "' must be an integer >= 1");
                }
                req.max_replicas = value.get<int>();
            } else {
                throw FormatError("unknown requirements key '" + key + "' for '" + req.server + "'");
            }
        }
        reqs.push_back(std::move(req));
    }
    return reqs;
}

std::vector<ServerRequirements> load_requirements(const std::string& path) {
    return parse_requirements(detail::read_file(path));
}

Decision select_server_type(const ServerRequirements& req,
                            const PerformanceModel& m,
                            const SelectionConfig& cfg) {
    if (!req.os_kind) {
        throw MissingRequirement("os_kind for server '" + req.server +
                                 "' is available neither from requirements nor from a manifest");
    }

    Decision d;
    d.server = req.server;

    std::ostringstream why;

    // Eventual consistency admits scale-out, so each replica carries a share.
    if (req.consistency == Consistency::eventual && req.max_replicas > 1) {
        d.effective_requirement_index = req.required_throughput_index / req.max_replicas;
        why << "effective requirement " << d.effective_requirement_index << " (= "
            << req.required_throughput_index << " / " << req.max_replicas
            << " replicas, eventual consistency)";
    } else {
        d.effective_requirement_index = req.required_throughput_index;
        why << "effective requirement " << d.effective_requirement_index;
    }

    const IndexValue dedicated = capacity_index(m, ServerType::baremetal, 1);
    if (d.effective_requirement_index > dedicated.value) {
        throw Unsatisfiable("server '" + req.server + "': effective requirement " +
                            std::to_string(d.effective_requirement_index) +
                            " exceeds the dedicated-host capacity " + std::to_string(dedicated.value));
    }

    const IndexValue shared = capacity_index(m, ServerType::container, cfg.planned_colocation);
    if (shared.warning) {
        d.warnings.push_back(*shared.warning);
    }

    const bool throughput_exceeds = d.effective_requirement_index > shared.value;
    const bool latency_tight =
        req.required_latency_ms && *req.required_latency_ms < cfg.latency_baremetal_threshold_ms;

    if (throughput_exceeds || latency_tight) {
        d.chosen = ServerType::baremetal;
        if (throughput_exceeds) {
            d.rule_fired = SelectionRule::perf_baremetal;
            why << "; exceeds container capacity " << shared.value << " at colocation "
                << cfg.planned_colocation << ", dedicated host required";
        } else {
            d.rule_fired = SelectionRule::latency_baremetal;
            why << "; latency bound " << *req.required_latency_ms << " ms below threshold "
                << cfg.latency_baremetal_threshold_ms << " ms, dedicated host required";
            d.warnings.push_back("latency threshold " +
                                 std::to_string(cfg.latency_baremetal_threshold_ms) +
                                 " ms is a configuration default, not a measured value");
        }
    } else if (*req.os_kind != OsKind::normal_linux) {
        d.chosen = ServerType::vm;
        d.rule_fired = SelectionRule::os_vm;
        why << "; fits container capacity " << shared.value << " but OS " << to_string(*req.os_kind)
            << " needs hardware virtualization";
        const IndexValue vm_cap = capacity_index(m, ServerType::vm, cfg.planned_colocation);
        if (d.effective_requirement_index > vm_cap.value) {
            d.warnings.push_back("requirement " + std::to_string(d.effective_requirement_index) +
                                 " exceeds vm capacity " + std::to_string(vm_cap.value) +
                                 "; expect the verification to flag this server");
        }
    } else {
        d.chosen = ServerType::container;
        d.rule_fired = SelectionRule::default_container;
        why << "; fits container capacity " << shared.value << " and OS is normal Linux";
    }

    why << " -> " << to_string(d.chosen);
    d.rationale = why.str();
    return d;
}

namespace {

SizeBucket size_bucket_for(double effective_index, double baseline) {
    if (effective_index <= baseline / 3.0) {
        return SizeBucket::small;
    }
    if (effective_index <= 2.0 * baseline / 3.0) {
        return SizeBucket::medium;
    }
    return SizeBucket::large;
}

} // namespace

Proposal propose_structure(const AbstractTemplate& t,
                           const std::vector<ServerRequirements>& reqs,
                           const std::vector<InstalledProfile>& profiles,
                           const PerformanceModel& m,
                           const SelectionConfig& cfg) {
    std::map<std::string, const ServerRequirements*> req_by_server;
    for (const auto& req : reqs) {
        req_by_server[req.server] = &req;
    }
    std::map<std::string, const InstalledProfile*> profile_by_server;
    for (const auto& p : profiles) {
        profile_by_server[p.server] = &p;
    }

    Proposal proposal;
    for (const auto& [name, r] : t.resources) {
        if (r.kind != ResourceKind::server) {
            continue;
        }
        auto it = req_by_server.find(name);
        if (it == req_by_server.end()) {
            throw MissingRequirement("no requirements for server '" + name + "'");
        }
        ServerRequirements req = *it->second;
        if (!req.os_kind) {
            if (auto pit = profile_by_server.find(name); pit != profile_by_server.end()) {
                req.os_kind = pit->second->os_kind;
            }
        }

        Decision d = select_server_type(req, m, cfg);
        Flavor flavor{d.chosen, size_bucket_for(d.effective_requirement_index, m.baseline_index)};
        proposal.assignments[name] = flavor.str();
        proposal.decisions.push_back(std::move(d));
    }
    return proposal;
}

} // namespace safs
