#pragma once

#include <cstdint>
#include <string>

namespace monge8 {

// SHA-256 of a byte string, hex-encoded
std::string sha256_hex(const std::string& data);

}  // namespace monge8
