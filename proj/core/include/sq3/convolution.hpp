#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sq3 {

// Exact linear convolution truncated to out_len entries:
//   out[n] = sum_{m=0}^{n} a[m] * b[n - m],  0 <= n < out_len
// (missing entries of a or b count as zero).
//
// Uses a number-theoretic transform over up to three NTT-friendly primes and
// Garner reconstruction. The prime count is chosen from an a-priori bound on
// the output, so reconstruction is always exact; if even three primes cannot
// cover the bound, a checked schoolbook product is used. Any output entry
// above 2^64 - 1 raises OverflowError.
//
// Long inputs are split into blocks; each pair of blocks is transformed on its
// own and accumulated modulo the primes, so results do not depend on the
// blocking. `threads` only distributes the per-prime work.
std::vector<std::uint64_t> convolve_exact(std::span<const std::uint64_t> a,
                                          std::span<const std::uint64_t> b,
                                          std::size_t out_len,
                                          unsigned threads = 1);

// Cyclic self-convolution modulo q: out[r] = #{(i, j) : i + j == r (mod q)}
// weighted by a[i] * a[j]. a.size() must equal q.
std::vector<std::uint64_t> cyclic_convolve_exact(std::span<const std::uint64_t> a,
                                                 std::span<const std::uint64_t> b);

namespace detail {

// Largest transform length supported by the prime set.
inline constexpr std::size_t kMaxTransform = std::size_t{1} << 23;

// Overrides the block length used when an operand exceeds one transform.
// Exposed so tests can force multi-block paths on small inputs.
std::vector<std::uint64_t> convolve_exact_blocked(std::span<const std::uint64_t> a,
                                                  std::span<const std::uint64_t> b,
                                                  std::size_t out_len,
                                                  std::size_t block,
                                                  unsigned threads);

std::vector<std::uint64_t> convolve_schoolbook(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               std::size_t out_len);

}  // namespace detail
}  // namespace sq3
