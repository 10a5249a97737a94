#pragma once

#include <string>

namespace xorcert {

/// Lowercase hex SHA-256 of the bytes of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace xorcert
