#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sq3 {

enum class BuilderTag : std::uint8_t {
  direct_lattice,
  convolution,
  two_square_fold,
  positive_only,
};

std::string_view to_string(BuilderTag tag);

// Exact table of r_k(n) for 0 <= n <= limit. Immutable once built.
class RepTable {
 public:
  RepTable(unsigned order, BuilderTag tag, std::vector<std::uint64_t> counts);

  unsigned order() const noexcept { return order_; }
  std::uint64_t limit() const noexcept { return counts_.size() - 1; }
  BuilderTag builder_tag() const noexcept { return tag_; }

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t operator[](std::uint64_t n) const { return counts_[n]; }
  std::uint64_t at(std::uint64_t n) const { return counts_.at(n); }

  // Same order and identical counts; the builder tag is provenance only.
  bool same_counts(const RepTable& other) const noexcept {
    return order_ == other.order_ && counts_ == other.counts_;
  }

 private:
  unsigned order_;
  BuilderTag tag_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace sq3
