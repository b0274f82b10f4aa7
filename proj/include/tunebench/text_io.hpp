#pragma once

#include <filesystem>
#include <string>

namespace tunebench {

// Shortest decimal form that still round-trips an IEEE double exactly.
std::string fmt17(double v);

// Fixed significant digits, for human-facing CSV output.
std::string fmt_sig(double v, int digits);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames into place, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace tunebench
