#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safs/catalog.hpp"
#include "safs/template.hpp"
#include "safs/types.hpp"

namespace safs {

/// What is installed on one image, supplied as a manifest file instead of
/// inspecting deployed volumes.
struct ImageManifest {
    std::string image;
    OsKind os_kind = OsKind::normal_linux;
    std::vector<std::string> software;
};

/// One software item on a server, resolved through the catalog taxonomy.
struct ResolvedSoftware {
    std::string software;
    std::string software_group; // empty when unknown
    std::string function_group; // empty when unknown
    ResolveProvenance provenance = ResolveProvenance::unknown;
};

/// Per-server result of image analysis. os_kind is absent when the server
/// was profiled from a template software override with no manifest; the
/// server requirements must then supply it.
struct InstalledProfile {
    std::string server;
    std::optional<OsKind> os_kind;
    std::vector<std::string> software;
    std::vector<ResolvedSoftware> resolved; // one entry per software item
};

// Manifest file: JSON array of {image, os_kind, software[]} objects.
std::vector<ImageManifest> parse_manifests(std::string_view text);
std::vector<ImageManifest> load_manifests(const std::string& path);

// One profile per server resource, in name order. A template software
// override wins over the manifest software list. Throws MissingManifest when
// a server's image has no manifest and the server has no override.
std::vector<InstalledProfile> analyze_images(const AbstractTemplate& t,
                                             const std::vector<ImageManifest>& manifests,
                                             const Catalog& catalog);

// Per server, the set of distinct non-OS function groups of its resolved
// software; servers contributing no group are omitted and duplicate sets
// collapse. Unknown software never blocks inference.
DeploymentConfig infer_deployment_config(const TopologyGraph& g,
                                         const std::vector<InstalledProfile>& profiles);

} // namespace safs
