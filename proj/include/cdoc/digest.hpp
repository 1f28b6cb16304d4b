#pragma once

#include <string>
#include <vector>

namespace cdoc {

// Lowercase hex SHA-256; keys the content-addressed blob directory.
std::string sha256_hex(const void* data, size_t size);
std::string sha256_hex(const std::string& data);

}  // namespace cdoc
