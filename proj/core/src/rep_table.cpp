#include "sq3/rep_table.hpp"

#include <stdexcept>

#include "sq3/errors.hpp"
#include "sq3/int128.hpp"

namespace sq3 {

std::string_view to_string(BuilderTag tag) {
  switch (tag) {
    case BuilderTag::direct_lattice: return "direct-lattice";
    case BuilderTag::convolution: return "convolution";
    case BuilderTag::two_square_fold: return "two-square-fold";
    case BuilderTag::positive_only: return "positive-only";
  }
  return "unknown";
}

RepTable::RepTable(unsigned order, BuilderTag tag, std::vector<std::uint64_t> counts)
    : order_(order), tag_(tag), counts_(std::move(counts)) {
  if (order_ == 0) throw DomainError("RepTable order must be at least 1");
  if (counts_.empty()) throw DomainError("RepTable needs at least the n = 0 entry");
}

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw FormatError("empty integer field");
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw FormatError("not a non-negative integer: '" + text + "'");
    if (__builtin_mul_overflow(value, u128{10}, &value) ||
        __builtin_add_overflow(value, static_cast<u128>(c - '0'), &value)) {
      throw FormatError("integer out of range: '" + text + "'");
    }
  }
  return value;
}

}  // namespace sq3
