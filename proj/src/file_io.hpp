#pragma once

#include <string>

namespace safs::detail {

// Reads a whole file; throws IoError when it cannot be opened or read.
std::string read_file(const std::string& path);

} // namespace safs::detail
