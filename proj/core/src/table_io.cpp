#include "sq3/table_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sq3/errors.hpp"

namespace sq3 {
namespace {

constexpr std::array<char, 4> kMagic{'R', 'K', 'T', 'B'};

template <typename UInt>
void put_le(std::ostream& out, UInt value) {
  std::array<char, sizeof(UInt)> bytes{};
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFU);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename UInt>
UInt get_le(std::istream& in) {
  std::array<unsigned char, sizeof(UInt)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw FormatError("truncated binary table");
  }
  UInt value = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) value |= static_cast<UInt>(bytes[i]) << (8 * i);
  return value;
}

std::uint64_t parse_field(std::string_view text, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void write_csv(const RepTable& table, std::ostream& out) {
  out << "n,count\n";
  const auto counts = table.counts();
  std::string row;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    row.clear();
    row += std::to_string(n);
    row += ',';
    row += std::to_string(counts[n]);
    row += '\n';
    out << row;
  }
}

RepTable read_csv(std::istream& in, unsigned order, BuilderTag tag) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::uint64_t> counts;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "n,count") throw FormatError("expected header 'n,count', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("line " + std::to_string(line_no) + ": missing comma");
    const auto n = parse_field(std::string_view(line).substr(0, comma), line_no);
    const auto count = parse_field(std::string_view(line).substr(comma + 1), line_no);
    if (n != counts.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected n = " + std::to_string(counts.size()));
    }
    counts.push_back(count);
  }
  if (!header) throw FormatError("empty table CSV");
  return {order, tag, std::move(counts)};
}

void write_binary(const RepTable& table, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, table.order());
  put_le<std::uint64_t>(out, table.limit());
  for (auto v : table.counts()) put_le<std::uint64_t>(out, v);
}

RepTable read_binary(std::istream& in, BuilderTag tag) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("missing RKTB magic");
  }
  const auto order = get_le<std::uint32_t>(in);
  const auto limit = get_le<std::uint64_t>(in);
  if (limit > (std::uint64_t{1} << 40)) throw FormatError("implausible table limit");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(limit) + 1);
  for (auto& v : counts) v = get_le<std::uint64_t>(in);
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after binary table");
  return {order, tag, std::move(counts)};
}

RepTable load_table(const std::filesystem::path& path, std::optional<unsigned> order, BuilderTag tag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open table file " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  if (binary) {
    auto table = read_binary(in, tag);
    if (order && *order != table.order()) {
      throw FormatError(path.string() + " holds order " + std::to_string(table.order()) +
                        ", expected " + std::to_string(*order));
    }
    return table;
  }
  if (!order) throw FormatError("CSV tables need an explicit order");
  return read_csv(in, *order, tag);
}

}  // namespace sq3
