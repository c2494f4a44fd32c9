#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "sq3/rep_table.hpp"

namespace sq3 {

// CSV: header "n,count", one row per n = 0..limit, plain decimal.
void write_csv(const RepTable& table, std::ostream& out);
// The CSV carries neither order nor provenance, so the caller supplies both.
RepTable read_csv(std::istream& in, unsigned order, BuilderTag tag = BuilderTag::convolution);

// Binary: 16-byte header ("RKTB", u32 k, u64 x), then x + 1 u64 counts.
// All integers little-endian.
void write_binary(const RepTable& table, std::ostream& out);
RepTable read_binary(std::istream& in, BuilderTag tag = BuilderTag::convolution);

// Detects the format by the magic bytes. `order` is required for CSV input and
// checked against the header for binary input when given.
RepTable load_table(const std::filesystem::path& path, std::optional<unsigned> order,
                    BuilderTag tag = BuilderTag::convolution);

}  // namespace sq3
