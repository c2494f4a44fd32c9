#pragma once

#include <string>

namespace sq3 {

// 17 significant digits, '.' separator, no grouping: round-trips any double.
std::string format_real(double value);

}  // namespace sq3
