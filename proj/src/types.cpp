#include "safs/types.hpp"

namespace safs {

std::string to_string(ServerType t) {
    switch (t) {
    case ServerType::baremetal: return "baremetal";
    case ServerType::container: return "container";
    case ServerType::vm: return "vm";
    }
    return "?";
}

std::string to_string(SizeBucket s) {
    switch (s) {
    case SizeBucket::small: return "small";
    case SizeBucket::medium: return "medium";
    case SizeBucket::large: return "large";
    }
    return "?";
}

std::string to_string(OsKind k) {
    switch (k) {
    case OsKind::normal_linux: return "normal_linux";
    case OsKind::custom_linux: return "custom_linux";
    case OsKind::non_linux: return "non_linux";
    }
    return "?";
}

std::string to_string(Consistency c) {
    return c == Consistency::strong ? "strong" : "eventual";
}

std::optional<ServerType> server_type_from_string(std::string_view s) {
    if (s == "baremetal") return ServerType::baremetal;
    if (s == "container") return ServerType::container;
    if (s == "vm") return ServerType::vm;
    return std::nullopt;
}

std::optional<SizeBucket> size_bucket_from_string(std::string_view s) {
    if (s == "small") return SizeBucket::small;
    if (s == "medium") return SizeBucket::medium;
    if (s == "large") return SizeBucket::large;
    return std::nullopt;
}

std::optional<OsKind> os_kind_from_string(std::string_view s) {
    if (s == "normal_linux") return OsKind::normal_linux;
    if (s == "custom_linux") return OsKind::custom_linux;
    if (s == "non_linux") return OsKind::non_linux;
    return std::nullopt;
}

std::optional<Consistency> consistency_from_string(std::string_view s) {
    if (s == "strong") return Consistency::strong;
    if (s == "eventual") return Consistency::eventual;
    return std::nullopt;
}

std::string Flavor::str() const {
    return to_string(type) + "." + to_string(size);
}

std::optional<Flavor> Flavor::parse(std::string_view text) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos || text.find('.', dot + 1) != std::string_view::npos) {
        return std::nullopt;
    }
    auto type = server_type_from_string(text.substr(0, dot));
    auto size = size_bucket_from_string(text.substr(dot + 1));
    if (!type || !size) {
        return std::nullopt;
    }
    return Flavor{*type, *size};
}

} // namespace safs
