#pragma once

#include <string>
#include <string_view>

namespace hyx::testing {

/// Straight FIPS 180-4 SHA-1, written for tests only. Shares no code with
/// the library's hashing so it can serve as an independent oracle.
std::string sha1_hex(std::string_view message);

}  // namespace hyx::testing
