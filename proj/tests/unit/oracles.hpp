#pragma once

// Brute-force reference implementations. Deliberately naive: nothing here
// shares code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using cld = std::complex<long double>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;
// Apery's constant to 30 digits.
inline constexpr long double kZeta3 = 1.202056903159594285399738161511L;

inline long double zeta2() { return kPi * kPi / 6.0L; }

// r_k(n) for all n <= x by enumerating every tuple in [-sqrt(x), sqrt(x)]^k.
inline std::vector<u64> rk_tuples(unsigned k, u64 x) {
  std::vector<u64> counts(x + 1, 0);
  long r = 0;
  while (static_cast<u64>((r + 1) * (r + 1)) <= x) ++r;
  std::vector<long> v(k, -r);
  for (;;) {
    u64 s = 0;
    for (long c : v) s += static_cast<u64>(c * c);
    if (s <= x) ++counts[s];
    unsigned i = 0;
    while (i < k && v[i] == r) v[i++] = -r;
    if (i == k) break;
    ++v[i];
  }
  return counts;
}

// Ordered triples of positive integers.
inline std::vector<u64> rstar_triples(u64 x) {
  std::vector<u64> counts(x + 1, 0);
  for (u64 a = 1; a * a <= x; ++a)
    for (u64 b = 1; a * a + b * b <= x; ++b)
      for (u64 c = 1; a * a + b * b + c * c <= x; ++c) ++counts[a * a + b * b + c * c];
  return counts;
}

// Lattice points in the closed ball of radius sqrt(x), origin excluded.
inline u64 ball_points(u64 x) {
  u64 total = 0;
  long r = static_cast<long>(std::sqrt(static_cast<double>(x))) + 1;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long c = -r; c <= r; ++c) {
        const u64 s = static_cast<u64>(a * a + b * b + c * c);
        if (s >= 1 && s <= x) ++total;
      }
  return total;
}

inline bool form_4a_8k7(u64 n) {
  if (n == 0) return false;
  while (n % 4 == 0) n /= 4;
  return n % 8 == 7;
}

inline cld e(long double t) { return std::polar(1.0L, 2.0L * kPi * t); }

// S(q, a) term by term with a long double phase; no modular reduction.
inline cld gauss(u64 q, long a) {
  cld s = 0;
  for (u64 h = 1; h <= q; ++h) {
    const long double t = static_cast<long double>(a) * static_cast<long double>(h * h) / static_cast<long double>(q);
    s += e(t - std::floor(t));
  }
  return s;
}

inline u64 totient(u64 q) {
  u64 c = 0;
  for (u64 a = 1; a <= q; ++a)
    if (std::gcd(a, q) == 1) ++c;
  return c;
}

// A(q, n) from the definition with the naive Gauss sums above.
inline cld a_term(u64 q, u64 n) {
  cld s = 0;
  for (u64 a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const cld g = gauss(q, static_cast<long>(a));
    const long double t = -static_cast<long double>((a * n) % q) / static_cast<long double>(q);
    s += g * g * g * e(t);
  }
  const long double q3 = static_cast<long double>(q) * q * q;
  return s / q3;
}

// (1/8) sum over m1 + m2 + m3 = n, 1 <= mi <= x, of (m1 m2 m3)^{-1/2}.
inline long double i_triple(u64 n, u64 x) {
  long double s = 0;
  for (u64 a = 1; a <= x && a < n; ++a)
    for (u64 b = 1; b <= x && a + b < n; ++b) {
      const u64 c = n - a - b;
      if (c >= 1 && c <= x) s += 1.0L / std::sqrt(static_cast<long double>(a) * b * c);
    }
  return s / 8.0L;
}

// #{(h1, h2, h3) mod m : h1^2 + h2^2 + h3^2 = n mod m}.
inline u64 residue_triples(u64 m, u64 n) {
  u64 c = 0;
  for (u64 a = 0; a < m; ++a)
    for (u64 b = 0; b < m; ++b)
      for (u64 d = 0; d < m; ++d)
        if ((a * a + b * b + d * d) % m == n % m) ++c;
  return c;
}

}  // namespace oracle
