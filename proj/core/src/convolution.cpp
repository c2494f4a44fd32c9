#include "sq3/convolution.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <thread>

#include "sq3/errors.hpp"
#include "sq3/int128.hpp"

namespace sq3 {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// 32-bit Montgomery arithmetic for an odd modulus below 2^30.
class Montgomery {
 public:
  explicit constexpr Montgomery(u32 mod) : mod_(mod), inv_(neg_inverse(mod)), r2_(r_squared(mod)) {}

  constexpr u32 mod() const { return mod_; }

  constexpr u32 reduce(u64 t) const {
    const u32 k = static_cast<u32>(t) * inv_;
    const u64 u = (t + static_cast<u64>(k) * mod_) >> 32;
    return static_cast<u32>(u >= mod_ ? u - mod_ : u);
  }
  constexpr u32 mul(u32 a, u32 b) const { return reduce(static_cast<u64>(a) * b); }
  constexpr u32 to(u32 a) const { return mul(a % mod_, r2_); }
  constexpr u32 from(u32 a) const { return reduce(a); }
  constexpr u32 add(u32 a, u32 b) const {
    const u32 s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  constexpr u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + mod_ - b; }

  constexpr u32 pow(u32 base, u64 exp) const {
    u32 acc = to(1);
    while (exp > 0) {
      if (exp & 1U) acc = mul(acc, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return acc;
  }

 private:
  static constexpr u32 neg_inverse(u32 m) {
    u32 x = m;  // Newton iteration for m^{-1} mod 2^32
    for (int i = 0; i < 5; ++i) x *= 2U - m * x;
    return ~x + 1U;
  }
  static constexpr u32 r_squared(u32 m) {
    const u64 r = (u64{1} << 32) % m;
    return static_cast<u32>(r * r % m);
  }

  u32 mod_;
  u32 inv_;
  u32 r2_;
};

struct NttPrime {
  u32 mod;
  u32 generator;
};

// Each supports transforms of length up to 2^23.
constexpr std::array<NttPrime, 3> kPrimes{{
    {998244353U, 3U},
    {167772161U, 3U},
    {469762049U, 3U},
}};

class Ntt {
 public:
  explicit Ntt(NttPrime p) : mt_(p.mod), g_(mt_.to(p.generator)), g_inv_(mt_.pow(g_, p.mod - 2)) {}

  const Montgomery& arith() const { return mt_; }

  // Decimation in frequency; leaves output in bit-reversed order.
  void forward(std::vector<u32>& a) const {
    const std::size_t n = a.size();
    const auto tw = twiddles(n, g_);
    for (std::size_t len = n >> 1; len >= 1; len >>= 1) {
      const u32* w = tw.data() + len;
      for (std::size_t i = 0; i < n; i += 2 * len) {
        for (std::size_t j = 0; j < len; ++j) {
          const u32 u = a[i + j];
          const u32 v = a[i + j + len];
          a[i + j] = mt_.add(u, v);
          a[i + j + len] = mt_.mul(mt_.sub(u, v), w[j]);
        }
      }
    }
  }

  // Decimation in time from bit-reversed input; includes the 1/n scaling.
  void inverse(std::vector<u32>& a) const {
    const std::size_t n = a.size();
    const auto tw = twiddles(n, g_inv_);
    for (std::size_t len = 1; len < n; len <<= 1) {
      const u32* w = tw.data() + len;
      for (std::size_t i = 0; i < n; i += 2 * len) {
        for (std::size_t j = 0; j < len; ++j) {
          const u32 u = a[i + j];
          const u32 v = mt_.mul(a[i + j + len], w[j]);
          a[i + j] = mt_.add(u, v);
          a[i + j + len] = mt_.sub(u, v);
        }
      }
    }
    const u32 n_inv = mt_.pow(mt_.to(static_cast<u32>(n % mt_.mod())), mt_.mod() - 2);
    for (auto& x : a) x = mt_.mul(x, n_inv);
  }

 private:
  // tw[len + j] = w_{2 len}^j for every power of two len < n.
  std::vector<u32> twiddles(std::size_t n, u32 root) const {
    std::vector<u32> tw(std::max<std::size_t>(n, 2));
    for (std::size_t len = 1; len < n; len <<= 1) {
      const u32 step = mt_.pow(root, (mt_.mod() - 1) / (2 * len));
      u32 w = mt_.to(1);
      for (std::size_t j = 0; j < len; ++j) {
        tw[len + j] = w;
        w = mt_.mul(w, step);
      }
    }
    return tw;
  }

  Montgomery mt_;
  u32 g_;
  u32 g_inv_;
};

std::size_t ceil_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// acc[offset + n] += (a * b)[n] mod p for n < out_len - offset.
void accumulate_block(const Ntt& ntt, std::span<const u64> a, std::span<const u64> b,
                      std::size_t offset, std::span<u32> acc, bool self) {
  const auto& mt = ntt.arith();
  const std::size_t want = std::min(a.size() + b.size() - 1, acc.size() - offset);
  const std::size_t len = ceil_pow2(a.size() + b.size() - 1);
  std::vector<u32> fa(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = mt.to(static_cast<u32>(a[i] % mt.mod()));
  ntt.forward(fa);
  if (self) {
    for (auto& x : fa) x = mt.mul(x, x);
  } else {
    std::vector<u32> fb(len, 0);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = mt.to(static_cast<u32>(b[i] % mt.mod()));
    ntt.forward(fb);
    for (std::size_t i = 0; i < len; ++i) fa[i] = mt.mul(fa[i], fb[i]);
  }
  ntt.inverse(fa);
  for (std::size_t i = 0; i < want; ++i) {
    acc[offset + i] = mt.add(acc[offset + i], mt.from(fa[i]) % mt.mod());
  }
}

long double bound_of(std::span<const u64> a, std::span<const u64> b) {
  auto max_sum = [](std::span<const u64> v) {
    long double mx = 0;
    long double sum = 0;
    for (u64 x : v) {
      mx = std::max(mx, static_cast<long double>(x));
      sum += static_cast<long double>(x);
    }
    return std::pair{mx, sum};
  };
  const auto [ma, sa] = max_sum(a);
  const auto [mb, sb] = max_sum(b);
  return std::min(ma * sb, mb * sa);
}

u32 inverse_mod(u64 a, u32 m) {
  // m is prime
  u64 base = a % m;
  u64 exp = m - 2;
  u64 acc = 1;
  while (exp > 0) {
    if (exp & 1U) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return static_cast<u32>(acc);
}

std::vector<u64> reconstruct(const std::vector<std::vector<u32>>& residues, std::size_t out_len) {
  constexpr u64 p1 = kPrimes[0].mod;
  constexpr u64 p2 = kPrimes[1].mod;
  constexpr u64 p3 = kPrimes[2].mod;
  const u64 inv_p1_mod_p2 = inverse_mod(p1, p2);
  const u64 inv_p1p2_mod_p3 = inverse_mod((p1 % p3) * (p2 % p3) % p3, p3);

  std::vector<u64> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    const u64 x1 = residues[0][n];
    u128 value = x1;
    if (residues.size() >= 2) {
      const u64 r2 = residues[1][n];
      const u64 x2 = (r2 + p2 - x1 % p2) % p2 * inv_p1_mod_p2 % p2;
      value += static_cast<u128>(p1) * x2;
      if (residues.size() == 3) {
        const u64 r3 = residues[2][n];
        const u64 partial = (x1 % p3 + (p1 % p3) * (x2 % p3)) % p3;
        const u64 x3 = (r3 + p3 - partial) % p3 * inv_p1p2_mod_p3 % p3;
        value += static_cast<u128>(p1) * p2 * x3;
      }
    }
    if (value > std::numeric_limits<u64>::max()) {
      throw OverflowError("convolution entry " + std::to_string(n) + " = " + to_string(value) +
                          " exceeds 64-bit range");
    }
    out[n] = static_cast<u64>(value);
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<u64> convolve_schoolbook(std::span<const u64> a, std::span<const u64> b,
                                     std::size_t out_len) {
  std::vector<u64> out(out_len, 0);
  if (a.empty() || b.empty()) return out;
  for (std::size_t n = 0; n < out_len; ++n) {
    u128 acc = 0;
    const std::size_t lo = n >= b.size() ? n - b.size() + 1 : 0;
    const std::size_t hi = std::min(n, a.size() - 1);
    for (std::size_t m = lo; m <= hi; ++m) {
      u128 prod = 0;
      if (__builtin_mul_overflow(static_cast<u128>(a[m]), static_cast<u128>(b[n - m]), &prod) ||
          __builtin_add_overflow(acc, prod, &acc)) {
        throw OverflowError("convolution entry " + std::to_string(n) + " exceeds 128-bit accumulator");
      }
    }
    if (acc > std::numeric_limits<u64>::max()) {
      throw OverflowError("convolution entry " + std::to_string(n) + " = " + to_string(acc) +
                          " exceeds 64-bit range");
    }
    out[n] = static_cast<u64>(acc);
  }
  return out;
}

std::vector<u64> convolve_exact_blocked(std::span<const u64> a, std::span<const u64> b,
                                        std::size_t out_len, std::size_t block, unsigned threads) {
  a = a.first(std::min(a.size(), out_len));
  b = b.first(std::min(b.size(), out_len));
  if (out_len == 0) return {};
  if (a.empty() || b.empty()) return std::vector<u64>(out_len, 0);

  const long double bound = bound_of(a, b);
  std::size_t primes = 0;
  long double cover = 1;
  while (primes < kPrimes.size() && cover <= bound) {
    cover *= static_cast<long double>(kPrimes[primes].mod);
    ++primes;
  }
  if (cover <= bound) return convolve_schoolbook(a, b, out_len);
  primes = std::max<std::size_t>(primes, 1);

  const bool self = a.data() == b.data() && a.size() == b.size();
  std::vector<std::vector<u32>> residues(primes, std::vector<u32>(out_len, 0));

  auto run_prime = [&](std::size_t pi) {
    const Ntt ntt(kPrimes[pi]);
    for (std::size_t ia = 0; ia < a.size(); ia += block) {
      const auto blk_a = a.subspan(ia, std::min(block, a.size() - ia));
      for (std::size_t ib = 0; ib < b.size() && ia + ib < out_len; ib += block) {
        const auto blk_b = b.subspan(ib, std::min(block, b.size() - ib));
        const bool same = self && ia == ib;
        accumulate_block(ntt, blk_a, blk_b, ia + ib, residues[pi], same);
      }
    }
  };

  if (threads > 1 && primes > 1) {
    std::vector<std::thread> pool;
    for (std::size_t pi = 0; pi < primes; ++pi) pool.emplace_back(run_prime, pi);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t pi = 0; pi < primes; ++pi) run_prime(pi);
  }
  return reconstruct(residues, out_len);
}

}  // namespace detail

std::vector<u64> convolve_exact(std::span<const u64> a, std::span<const u64> b, std::size_t out_len,
                                unsigned threads) {
  const std::size_t la = std::min(a.size(), out_len);
  const std::size_t lb = std::min(b.size(), out_len);
  if (std::min(la, lb) <= 32) {
    return detail::convolve_schoolbook(a.first(la), b.first(lb), out_len);
  }
  return detail::convolve_exact_blocked(a, b, out_len, detail::kMaxTransform / 2, threads);
}

std::vector<u64> cyclic_convolve_exact(std::span<const u64> a, std::span<const u64> b) {
  const std::size_t q = a.size();
  if (q == 0) return {};
  const auto lin = convolve_exact(a, b, 2 * q - 1);
  std::vector<u64> out(lin.begin(), lin.begin() + static_cast<std::ptrdiff_t>(q));
  for (std::size_t r = 0; r + q < lin.size(); ++r) {
    if (__builtin_add_overflow(out[r], lin[r + q], &out[r])) {
      throw OverflowError("cyclic convolution entry " + std::to_string(r) + " exceeds 64-bit range");
    }
  }
  return out;
}

}  // namespace sq3
