#pragma once

#include <string>
#include <string_view>

namespace scenval {

/// Reads a whole file; throws std::runtime_error with the path on failure.
std::string read_file(const std::string& path);

/// Writes bytes, creating parent directories as needed.
void write_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit content fingerprint, rendered as "fnv1a64:<16 hex digits>".
/// Change detection only, not a cryptographic hash.
std::string fnv1a64_hex(std::string_view content);

/// Current UTC time as ISO-8601 ("2024-05-01T12:00:00Z").
std::string utc_timestamp();

}  // namespace scenval
