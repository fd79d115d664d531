#include "safs/template.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(ResourceKind k) {
    return k == ResourceKind::server ? "server" : "loadbalancer";
}

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

Resource parse_resource(const std::string& name, const json& body) {
    if (!body.is_object()) {
        throw SchemaError("resource " + quoted(name) + " must be an object");
    }
    if (!body.contains("kind") || !body["kind"].is_string()) {
        throw SchemaError("resource " + quoted(name) + " needs a string 'kind'");
    }
    const std::string kind = body["kind"].get<std::string>();

    Resource r;
    if (kind == "server") {
        r.kind = ResourceKind::server;
    } else if (kind == "loadbalancer") {
        r.kind = ResourceKind::loadbalancer;
    } else {
        throw SchemaError("resource " + quoted(name) + " has unknown kind " + quoted(kind));
    }

    auto string_list = [&](const json& v, const char* field) {
        if (!v.is_array()) {
            throw SchemaError("resource " + quoted(name) + ": " + field + " must be an array of strings");
        }
        std::vector<std::string> out;
        for (const auto& item : v) {
            if (!item.is_string()) {
                throw SchemaError("resource " + quoted(name) + ": " + field + " must be an array of strings");
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    };

    for (const auto& [field, value] : body.items()) {
        if (field == "kind") {
            continue;
        }
        if (r.kind == ResourceKind::server && field == "image") {
            if (!value.is_string()) {
                throw SchemaError("resource " + quoted(name) + ": image must be a string");
            }
            r.image = value.get<std::string>();
        } else if (r.kind == ResourceKind::server && field == "software") {
            r.software_override = string_list(value, "software");
        } else if (r.kind == ResourceKind::server && field == "flavor") {
            if (!value.is_string()) {
                throw SchemaError("resource " + quoted(name) + ": flavor must be a string");
            }
            r.flavor = value.get<std::string>();
        } else if (r.kind == ResourceKind::loadbalancer && field == "members") {
            r.members = string_list(value, "members");
        } else {
            throw SchemaError("resource " + quoted(name) + " (" + kind + "): unknown field " + quoted(field));
        }
    }
    return r;
}

TemplateData parse_data(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("malformed template document: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("template document must be a JSON object");
    }

    TemplateData t;
    for (const auto& [key, value] : doc.items()) {
        if (key == "version") {
            if (!value.is_number_integer()) {
                throw SchemaError("version must be an integer");
            }
            t.version = value.get<int>();
        } else if (key == "resources") {
            if (!value.is_object()) {
                throw SchemaError("resources must be an object");
            }
            for (const auto& [name, body] : value.items()) {
                t.resources.emplace(name, parse_resource(name, body));
            }
        } else if (key == "links") {
            if (!value.is_array()) {
                throw SchemaError("links must be an array of [name, name] pairs");
            }
            for (const auto& link : value) {
                if (!link.is_array() || link.size() != 2 || !link[0].is_string() || !link[1].is_string()) {
                    throw SchemaError("links must be an array of [name, name] pairs");
                }
                t.links.emplace_back(link[0].get<std::string>(), link[1].get<std::string>());
            }
        } else {
            throw SchemaError("unknown top-level key " + quoted(key));
        }
    }
    return t;
}

// The rules shared by abstract and concrete templates.
std::vector<Diagnostic> structural_diagnostics(const TemplateData& t) {
    std::vector<Diagnostic> out;
    for (const auto& [name, r] : t.resources) {
        if (name.empty()) {
            out.push_back({name, "empty-name", "resource name must be nonempty"});
        }
        if (r.kind == ResourceKind::server) {
            if (r.image.empty()) {
                out.push_back({name, "missing-image", "server needs a nonempty image id"});
            }
            if (!r.members.empty()) {
                out.push_back({name, "members-on-server", "only load balancers have members"});
            }
        } else {
            if (!r.image.empty()) {
                out.push_back({name, "image-on-loadbalancer", "load balancers carry no image"});
            }
            if (r.software_override.has_value()) {
                out.push_back({name, "software-on-loadbalancer", "load balancers carry no software"});
            }
            if (r.flavor.has_value()) {
                out.push_back({name, "flavor-on-loadbalancer", "load balancers carry no flavor"});
            }
            for (const auto& member : r.members) {
                auto it = t.resources.find(member);
                if (it == t.resources.end()) {
                    out.push_back({member, "unknown-member", "member of " + quoted(name) + " does not exist"});
                } else if (it->second.kind != ResourceKind::server) {
                    out.push_back({member, "member-not-server", "member of " + quoted(name) + " is not a server"});
                }
            }
        }
    }
    for (const auto& [a, b] : t.links) {
        for (const auto& end : {a, b}) {
            if (!t.resources.contains(end)) {
                out.push_back({end, "dangling-link", "link endpoint does not exist"});
            }
        }
    }
    return out;
}

std::string serialize(const TemplateData& t,
                      std::optional<std::string> (*flavor_of)(const Resource&, const FlavorAssignments*, const std::string&),
                      const FlavorAssignments* assignments) {
    ordered_json doc;
    doc["version"] = t.version;
    ordered_json resources = ordered_json::object();
    for (const auto& [name, r] : t.resources) {
        ordered_json body;
        body["kind"] = to_string(r.kind);
        if (r.kind == ResourceKind::server) {
            body["image"] = r.image;
            if (r.software_override) {
                body["software"] = *r.software_override;
            }
            if (auto flavor = flavor_of(r, assignments, name)) {
                body["flavor"] = *flavor;
            }
        } else {
            body["members"] = r.members;
        }
        resources[name] = std::move(body);
    }
    doc["resources"] = std::move(resources);
    ordered_json links = ordered_json::array();
    for (const auto& [a, b] : t.links) {
        links.push_back(ordered_json::array({a, b}));
    }
    doc["links"] = std::move(links);
    return doc.dump(2) + "\n";
}

} // namespace

std::string summarize(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    os << "template invalid:";
    for (const auto& d : diags) {
        os << " " << d.rule << "(" << d.resource << ")";
    }
    return os.str();
}

AbstractTemplate parse_abstract(std::string_view text) {
    AbstractTemplate t;
    static_cast<TemplateData&>(t) = parse_data(text);
    if (auto diags = validate_template(t); !diags.empty()) {
        throw SchemaError(summarize(diags));
    }
    return t;
}

ConcreteTemplate parse_concrete(std::string_view text) {
    ConcreteTemplate t;
    static_cast<TemplateData&>(t) = parse_data(text);
    if (auto diags = validate_template(t); !diags.empty()) {
        throw SchemaError(summarize(diags));
    }
    return t;
}

std::vector<Diagnostic> validate_template(const AbstractTemplate& t) {
    auto out = structural_diagnostics(t);
    for (const auto& [name, r] : t.resources) {
        if (r.kind == ResourceKind::server && r.flavor.has_value()) {
            out.push_back({name, "flavor-in-abstract", "abstract templates carry no flavors"});
        }
    }
    return out;
}

std::vector<Diagnostic> validate_template(const ConcreteTemplate& t) {
    auto out = structural_diagnostics(t);
    for (const auto& [name, r] : t.resources) {
        if (r.kind != ResourceKind::server) {
            continue;
        }
        if (!r.flavor.has_value()) {
            out.push_back({name, "missing-flavor", "concrete templates need a flavor per server"});
        } else if (!Flavor::parse(*r.flavor)) {
            out.push_back({name, "bad-flavor", quoted(*r.flavor) + " does not match <type>.<size>"});
        }
    }
    return out;
}

TopologyGraph build_topology(const TemplateData& t) {
    if (auto diags = structural_diagnostics(t); !diags.empty()) {
        throw InvalidTemplate(summarize(diags));
    }

    TopologyGraph g;
    for (const auto& [name, r] : t.resources) {
        g.nodes.push_back(name);
        g.adjacency.emplace(name, std::set<std::string>{});
    }

    auto add_edge = [&g](const std::string& a, const std::string& b) {
        auto [lo, hi] = std::minmax(a, b);
        if (g.edges.emplace(lo, hi).second) {
            g.adjacency[a].insert(b);
            g.adjacency[b].insert(a);
        }
    };

    for (const auto& [a, b] : t.links) {
        add_edge(a, b);
    }
    for (const auto& [name, r] : t.resources) {
        if (r.kind == ResourceKind::loadbalancer) {
            g.lb_groups[name] = r.members;
            for (const auto& member : r.members) {
                add_edge(name, member);
            }
        }
    }
    return g;
}

std::string emit_concrete(const AbstractTemplate& t, const FlavorAssignments& assignments) {
    for (const auto& [server, flavor] : assignments) {
        auto it = t.resources.find(server);
        if (it == t.resources.end() || it->second.kind != ResourceKind::server) {
            throw UnknownServer("flavor assigned to unknown server " + quoted(server));
        }
        if (!Flavor::parse(flavor)) {
            throw BadFlavor("flavor " + quoted(flavor) + " for server " + quoted(server) +
                            " does not match <type>.<size>");
        }
    }
    for (const auto& [name, r] : t.resources) {
        if (r.kind == ResourceKind::server && !assignments.contains(name)) {
            throw MissingAssignment("no flavor assigned to server " + quoted(name));
        }
    }

    return serialize(
        t,
        [](const Resource&, const FlavorAssignments* a, const std::string& name) -> std::optional<std::string> {
            return a->at(name);
        },
        &assignments);
}

std::string emit_document(const ConcreteTemplate& t) {
    if (auto diags = validate_template(t); !diags.empty()) {
        throw InvalidTemplate(summarize(diags));
    }
    return serialize(
        t,
        [](const Resource& r, const FlavorAssignments*, const std::string&) -> std::optional<std::string> {
            return r.flavor;
        },
        nullptr);
}

} // namespace safs
