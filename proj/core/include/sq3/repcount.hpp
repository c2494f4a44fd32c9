#pragma once

#include <cstdint>

#include "sq3/rep_table.hpp"

namespace sq3 {

// Tables above this limit need an explicit override in the CLI.
inline constexpr std::uint64_t kMaxLimitWithoutOverride = 100'000'000;

std::uint64_t isqrt(std::uint64_t n) noexcept;

// r_1(n): 1 at n = 0, 2 at positive squares, else 0.
RepTable build_r1(std::uint64_t x);

// r_2(n) by enumerating lattice points a^2 + b^2 <= x.
RepTable build_r2_lattice(std::uint64_t x);

// Exact additive convolution, truncated at x. Both inputs must reach x.
RepTable convolve(const RepTable& t1, const RepTable& t2, std::uint64_t x, unsigned threads = 1);

// r_3(n) = sum over m in Z with m^2 <= n of r_2(n - m^2). Does not touch the
// transform code path, so it serves as an independent builder.
RepTable build_r3_fold(std::uint64_t x, unsigned threads = 1);

// Slow single-point oracle for r_3(n), O(n).
std::uint64_t r3_point(std::uint64_t n);

// r*(n): ordered triples of positive integers with m1^2 + m2^2 + m3^2 = n.
RepTable build_rstar(std::uint64_t x, unsigned threads = 1);

// Three-square criterion: false iff n = 4^a (8k + 7).
bool is_representable(std::uint64_t n) noexcept;

// r_k(n) for n <= x via repeated squaring of the r_1 table under convolve.
RepTable build_rk(std::uint64_t x, unsigned k, unsigned threads = 1);

}  // namespace sq3
