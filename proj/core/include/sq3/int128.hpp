#pragma once

#include <cstdint>
#include <string>

namespace sq3 {

using u128 = unsigned __int128;

// Decimal rendering; iostreams have no overload for __int128.
std::string to_string(u128 value);

// Parses a non-negative decimal integer; throws FormatError on junk or overflow.
u128 parse_u128(const std::string& text);

}  // namespace sq3
