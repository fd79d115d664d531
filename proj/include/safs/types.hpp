#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace safs {

/// Server provisioning technology encoded in the first flavor component.
enum class ServerType { baremetal, container, vm };

/// Capacity bucket encoded in the second flavor component.
enum class SizeBucket { small, medium, large };

/// OS requirement classes used by manifests and server requirements.
enum class OsKind { normal_linux, custom_linux, non_linux };

enum class Consistency { strong, eventual };

std::string to_string(ServerType t);
std::string to_string(SizeBucket s);
std::string to_string(OsKind k);
std::string to_string(Consistency c);

std::optional<ServerType> server_type_from_string(std::string_view s);
std::optional<SizeBucket> size_bucket_from_string(std::string_view s);
std::optional<OsKind> os_kind_from_string(std::string_view s);
std::optional<Consistency> consistency_from_string(std::string_view s);

/// A flavor string `<type>.<size>`, e.g. "container.medium".
struct Flavor {
    ServerType type;
    SizeBucket size;

    std::string str() const;

    // Parses a flavor string; nullopt when it does not match the grammar.
    static std::optional<Flavor> parse(std::string_view text);

    bool operator==(const Flavor&) const = default;
};

} // namespace safs
