#include "safs/analysis.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "file_io.hpp"
#include "safs/errors.hpp"

namespace safs {

using nlohmann::json;

// Function group excluded from deployment configs; OS rows still feed test
// extraction.
static const std::string kOsFunctionGroup = "OS";

std::vector<ImageManifest> parse_manifests(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed manifest file: ") + e.what());
    }
    if (!doc.is_array()) {
        throw FormatError("manifest file must be a JSON array");
    }

    std::vector<ImageManifest> manifests;
    std::set<std::string> seen;
    for (const auto& row : doc) {
        if (!row.is_object() || !row.contains("image") || !row["image"].is_string()) {
            throw FormatError("manifest entry needs a string 'image'");
        }
        ImageManifest m;
        m.image = row["image"].get<std::string>();
        if (!seen.insert(m.image).second) {
            throw FormatError("duplicate manifest for image '" + m.image + "'");
        }
        if (!row.contains("os_kind") || !row["os_kind"].is_string()) {
            throw FormatError("manifest for '" + m.image + "' needs a string 'os_kind'");
        }
        auto os = os_kind_from_string(row["os_kind"].get<std::string>());
        if (!os) {
            throw FormatError("manifest for '" + m.image + "' has an unknown os_kind");
        }
        m.os_kind = *os;
        if (row.contains("software")) {
            if (!row["software"].is_array()) {
                throw FormatError("manifest for '" + m.image + "': software must be an array");
            }
            for (const auto& sw : row["software"]) {
                if (!sw.is_string()) {
                    throw FormatError("manifest for '" + m.image + "': software must hold strings");
                }
                m.software.push_back(sw.get<std::string>());
            }
        }
        manifests.push_back(std::move(m));
    }
    return manifests;
}

std::vector<ImageManifest> load_manifests(const std::string& path) {
    return parse_manifests(detail::read_file(path));
}

std::vector<InstalledProfile> analyze_images(const AbstractTemplate& t,
                                             const std::vector<ImageManifest>& manifests,
                                             const Catalog& catalog) {
    std::map<std::string, const ImageManifest*> by_image;
    for (const auto& m : manifests) {
        by_image[m.image] = &m;
    }

    std::vector<InstalledProfile> profiles;
    for (const auto& [name, r] : t.resources) {
        if (r.kind != ResourceKind::server) {
            continue;
        }
        InstalledProfile profile;
        profile.server = name;

        const ImageManifest* manifest = nullptr;
        if (auto it = by_image.find(r.image); it != by_image.end()) {
            manifest = it->second;
            profile.os_kind = manifest->os_kind;
        } else if (!r.software_override) {
            throw MissingManifest("no manifest for image '" + r.image + "' of server '" + name +
                                  "' and no software override");
        }

        profile.software = r.software_override ? *r.software_override
                           : manifest          ? manifest->software
                                               : std::vector<std::string>{};

        for (const auto& sw : profile.software) {
            if (auto res = resolve_software(catalog, sw)) {
                profile.resolved.push_back({sw, res->software_group, res->function_group, res->provenance});
            } else {
                profile.resolved.push_back({sw, "", "", ResolveProvenance::unknown});
            }
        }
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

DeploymentConfig infer_deployment_config(const TopologyGraph&,
                                         const std::vector<InstalledProfile>& profiles) {
    DeploymentConfig dc;
    for (const auto& profile : profiles) {
        std::set<std::string> groups;
        for (const auto& rs : profile.resolved) {
            if (rs.provenance != ResolveProvenance::unknown && rs.function_group != kOsFunctionGroup) {
                groups.insert(rs.function_group);
            }
        }
        if (!groups.empty()) {
            dc.groups.insert(std::move(groups));
        }
    }
    return dc;
}

} // namespace safs
