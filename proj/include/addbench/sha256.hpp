#pragma once

#include <string>
#include <string_view>

namespace addbench {

// Hex digest of the SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);  // throws if unreadable

}  // namespace addbench
