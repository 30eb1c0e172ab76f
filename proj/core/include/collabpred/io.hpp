#pragma once

#include <string>
#include <string_view>

namespace collabpred {

/// Reads a whole file; throws Error("FileReadFailed", ...) on failure.
std::string read_file(const std::string& path);

/// Writes via a temporary sibling file and rename, so readers never observe
/// a partially written file.
void atomic_write_file(const std::string& path, std::string_view content);

} // namespace collabpred
