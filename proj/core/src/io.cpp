#include "collabpred/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "collabpred/error.hpp"
#include "collabpred/hash.hpp"

namespace collabpred {

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("FileReadFailed", path);
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) throw Error("FileReadFailed", path);
    return out.str();
}

void atomic_write_file(const std::string& path, std::string_view content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("FileWriteFailed", tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("FileWriteFailed", tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("FileWriteFailed", path);
    }
}

} // namespace collabpred
