#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "safs/types.hpp"

namespace safs {

enum class ResourceKind { server, loadbalancer };

std::string to_string(ResourceKind k);

/// One entry of a template's resource map.
///
/// Servers carry an image id, an optional software override (wins over the
/// image manifest) and, in concrete templates only, a flavor. Load balancers
/// carry the list of member server names.
struct Resource {
    ResourceKind kind = ResourceKind::server;
    std::string image;
    std::optional<std::vector<std::string>> software_override;
    std::vector<std::string> members;
    std::optional<std::string> flavor;

    bool operator==(const Resource&) const = default;
};

using Link = std::pair<std::string, std::string>;

/// Fields shared by abstract and concrete templates.
struct TemplateData {
    int version = 1;
    std::map<std::string, Resource> resources;
    std::vector<Link> links;

    bool operator==(const TemplateData&) const = default;
};

/// Template without flavors; what a user hands in.
struct AbstractTemplate : TemplateData {};

/// Template with a flavor on every server; what gets deployed.
struct ConcreteTemplate : TemplateData {};

/// One validation finding: the offending resource and the rule it breaks.
struct Diagnostic {
    std::string resource;
    std::string rule;
    std::string detail;

    bool operator==(const Diagnostic&) const = default;
};

/// Undirected connectivity derived from links and LB membership.
struct TopologyGraph {
    std::vector<std::string> nodes;                            // name-sorted
    std::set<std::pair<std::string, std::string>> edges;       // normalized (a <= b)
    std::map<std::string, std::set<std::string>> adjacency;
    std::map<std::string, std::vector<std::string>> lb_groups; // lb -> members
};

// Document format (JSON, UTF-8):
//
//   { "version": 1,
//     "resources": {
//       "<name>": { "kind": "server", "image": "<image-id>",
//                   "software": ["<sw>", ...]?, "flavor": "<type>.<size>"? },
//       "<name>": { "kind": "loadbalancer", "members": ["<server>", ...] } },
//     "links": [ ["<name>", "<name>"], ... ] }
//
// "flavor" is permitted only in concrete documents. Throws SyntaxError for
// malformed JSON and SchemaError for anything violating the schema or the
// template invariants (dangling link, missing image, flavor in an abstract
// document, ...).
AbstractTemplate parse_abstract(std::string_view text);
ConcreteTemplate parse_concrete(std::string_view text);

// Structural checks shared by both forms plus the form-specific flavor rules.
// Empty result means the template is valid.
std::vector<Diagnostic> validate_template(const AbstractTemplate& t);
std::vector<Diagnostic> validate_template(const ConcreteTemplate& t);

// One-line rendering of validation findings, for error messages.
std::string summarize(const std::vector<Diagnostic>& diags);

// Builds the topology graph. Duplicate links collapse to one edge; each LB
// contributes one edge per member. Throws InvalidTemplate when
// validate_template would report diagnostics.
TopologyGraph build_topology(const TemplateData& t);

using FlavorAssignments = std::map<std::string, std::string>;

// Serializes `t` plus per-server flavors as a concrete document. Assignments
// must cover exactly the server resources. Emission is deterministic: object
// keys in schema order, resources name-sorted, lists kept as stored.
std::string emit_concrete(const AbstractTemplate& t, const FlavorAssignments& assignments);

// Re-serializes a parsed concrete template; emit/parse/emit is byte-stable.
std::string emit_document(const ConcreteTemplate& t);

} // namespace safs
