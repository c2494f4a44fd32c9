#include "sq3/format.hpp"

#include <array>
#include <cstdio>

#include "sq3/constants.hpp"

namespace sq3 {

std::string to_decimal(double value, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, value);
  return buf.data();
}

std::string format_real(double value) { return to_decimal(value, 17); }

}  // namespace sq3
