#include "file_io.hpp"

#include <fstream>
#include <sstream>

#include "safs/errors.hpp"

namespace safs::detail {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read file: " + path);
    }
    return buf.str();
}

} // namespace safs::detail
