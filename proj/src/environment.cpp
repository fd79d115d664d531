#include "safs/environment.hpp"

#include <stdexcept>

namespace safs {

Tenant::Tenant(std::string id) : id_(std::move(id)) {
    if (id_.empty()) {
        throw std::invalid_argument("tenant id must not be empty");
    }
}

std::string to_string(ResourceStatus s) {
    switch (s) {
    case ResourceStatus::active: return "active";
    case ResourceStatus::failed: return "failed";
    }
    return "?";
}

} // namespace safs
