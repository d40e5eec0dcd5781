#pragma once

#include <string>
#include <string_view>

namespace bc {

// Hex digest of the SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace bc
