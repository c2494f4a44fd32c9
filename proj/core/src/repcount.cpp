#include "sq3/repcount.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "sq3/convolution.hpp"
#include "sq3/errors.hpp"
#include "sq3/int128.hpp"

namespace sq3 {
namespace {

using u64 = std::uint64_t;

std::vector<u64> table_storage(u64 x) {
  if (x >= std::numeric_limits<std::size_t>::max() / sizeof(u64)) {
    throw DomainError("table limit " + std::to_string(x) + " too large to allocate");
  }
  return std::vector<u64>(static_cast<std::size_t>(x) + 1, 0);
}

// out[n] += sum_{m >= m_first, m^2 <= n} w(m) * base[n - m^2] over [lo, hi),
// with w = 1 for m = 0 and 2 otherwise (signs of m).
void fold_squares(const std::vector<u64>& base, std::vector<u64>& out, u64 lo, u64 hi, u64 m_first,
                  bool signed_m) {
  if (lo >= hi) return;
  const u64 m_last = isqrt(hi - 1);
  for (u64 m = m_first; m <= m_last; ++m) {
    const u64 sq = m * m;
    const u64 w = (signed_m && m > 0) ? 2 : 1;
    const u64 start = std::max(lo, sq);
    u64* dst = out.data();
    const u64* src = base.data();
    for (u64 n = start; n < hi; ++n) dst[n] += w * src[n - sq];
  }
}

void check_fold_range(const std::vector<u64>& base, u64 x) {
  // Every fold entry is bounded by (2 sqrt(x) + 1) * max(base).
  u64 mx = 0;
  for (u64 v : base) mx = std::max(mx, v);
  const u128 bound = static_cast<u128>(2 * isqrt(x) + 1) * 2 * mx;
  if (bound > std::numeric_limits<u64>::max()) {
    throw OverflowError("fold bound exceeds 64-bit range at x = " + std::to_string(x));
  }
}

}  // namespace

u64 isqrt(u64 n) noexcept {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

RepTable build_r1(u64 x) {
  auto counts = table_storage(x);
  counts[0] = 1;
  for (u64 m = 1; m * m <= x; ++m) counts[m * m] = 2;
  return {1, BuilderTag::direct_lattice, std::move(counts)};
}

RepTable build_r2_lattice(u64 x) {
  auto counts = table_storage(x);
  for (u64 a = 0; a * a <= x; ++a) {
    const u64 wa = a == 0 ? 1 : 2;
    const u64 rest = x - a * a;
    for (u64 b = 0; b * b <= rest; ++b) counts[a * a + b * b] += wa * (b == 0 ? 1 : 2);
  }
  return {2, BuilderTag::direct_lattice, std::move(counts)};
}

RepTable convolve(const RepTable& t1, const RepTable& t2, u64 x, unsigned threads) {
  if (t1.limit() < x || t2.limit() < x) {
    throw TableTooShort("convolve needs both tables to reach x = " + std::to_string(x) +
                        " (got limits " + std::to_string(t1.limit()) + " and " +
                        std::to_string(t2.limit()) + ")");
  }
  const auto n = static_cast<std::size_t>(x) + 1;
  auto counts = convolve_exact(t1.counts().first(n), t2.counts().first(n), n, threads);
  return {t1.order() + t2.order(), BuilderTag::convolution, std::move(counts)};
}

RepTable build_r3_fold(u64 x, unsigned threads) {
  const auto r2 = build_r2_lattice(x);
  std::vector<u64> base(r2.counts().begin(), r2.counts().end());
  check_fold_range(base, x);
  auto counts = table_storage(x);
  detail::parallel_chunks(0, x + 1, threads,
                          [&](u64 lo, u64 hi) { fold_squares(base, counts, lo, hi, 0, true); });
  return {3, BuilderTag::two_square_fold, std::move(counts)};
}

u64 r3_point(u64 n) {
  u64 total = 0;
  const u64 r = isqrt(n);
  for (u64 a = 0; a <= r; ++a) {
    const u64 wa = a == 0 ? 1 : 2;
    const u64 rest_a = n - a * a;
    for (u64 b = 0; b * b <= rest_a; ++b) {
      const u64 wb = b == 0 ? 1 : 2;
      const u64 rest = rest_a - b * b;
      const u64 c = isqrt(rest);
      if (c * c == rest) total += wa * wb * (c == 0 ? 1 : 2);
    }
  }
  return total;
}

RepTable build_rstar(u64 x, unsigned threads) {
  auto pairs = table_storage(x);
  for (u64 a = 1; a * a < x; ++a) {
    for (u64 b = 1; a * a + b * b <= x; ++b) ++pairs[a * a + b * b];
  }
  check_fold_range(pairs, x);
  auto counts = table_storage(x);
  detail::parallel_chunks(0, x + 1, threads,
                          [&](u64 lo, u64 hi) { fold_squares(pairs, counts, lo, hi, 1, false); });
  return {3, BuilderTag::positive_only, std::move(counts)};
}

bool is_representable(u64 n) noexcept {
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

RepTable build_rk(u64 x, unsigned k, unsigned threads) {
  if (k == 0) throw DomainError("build_rk needs k >= 1");
  RepTable power = build_r1(x);
  if (k == 1) return power;
  std::optional<RepTable> acc;
  unsigned bits = k;
  while (true) {
    if (bits & 1U) acc = acc ? convolve(*acc, power, x, threads) : power;
    bits >>= 1;
    if (bits == 0) break;
    power = convolve(power, power, x, threads);
  }
  return RepTable(acc->order(), BuilderTag::convolution,
                  std::vector<u64>(acc->counts().begin(), acc->counts().end()));
}

}  // namespace sq3
