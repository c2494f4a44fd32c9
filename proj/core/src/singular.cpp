#include "sq3/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "sq3/convolution.hpp"
#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/int128.hpp"

namespace sq3 {
namespace {

using u64 = std::uint64_t;

std::vector<u64> smallest_prime_sieve(u64 limit) {
  std::vector<u64> spf(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

}  // namespace

Complex a_term_complex(const GaussTable& sums, u64 n) {
  const u64 q = sums.modulus();
  const u64 nr = n % q;
  Complex total{0.0, 0.0};
  for (u64 a = 1; a <= q; ++a) {
    if (gcd(static_cast<std::int64_t>(a), q) != 1) continue;
    const Complex s = sums[a % q];
    // e(-a n / q) with the phase index reduced exactly
    const u64 k = static_cast<u64>((static_cast<u128>(a % q) * nr) % q);
    total += s * s * s * sums.root((q - k) % q);
  }
  const double scale = 1.0 / (static_cast<double>(q) * static_cast<double>(q) * static_cast<double>(q));
  return total * scale;
}

double a_term(const GaussTable& sums, u64 n) {
  if (n == 0) throw DomainError("a_term needs n >= 1");
  const Complex value = a_term_complex(sums, n);
  if (std::abs(value.imag()) > kImaginaryTolerance) {
    throw ImaginaryResidue("A(" + std::to_string(sums.modulus()) + ", " + std::to_string(n) +
                           ") has imaginary part " + format_real(value.imag()));
  }
  return value.real();
}

double a_term(u64 q, u64 n) {
  if (q == 0) throw DomainError("a_term needs q >= 1");
  return a_term(GaussTable(q), n);
}

ResidueCountSeries::ResidueCountSeries(u64 q_max, std::span<const u64> ns)
    : q_max_(q_max), smallest_prime_(smallest_prime_sieve(std::max<u64>(q_max, 1))), ns_(ns.begin(), ns.end()) {
  if (q_max == 0) throw DomainError("ResidueCountSeries needs Q >= 1");
  for (u64 n : ns_) {
    if (n == 0) throw DomainError("singular series needs n >= 1");
  }
  for (u64 p = 2; p <= q_max_; ++p) {
    if (smallest_prime_[p] != p) continue;
    for (u64 pe = p; pe <= q_max_; pe *= p) {
      std::vector<u64> hist(pe, 0);
      for (u64 h = 0; h < pe; ++h) ++hist[h * h % pe];
      // two[r] = #{(h1, h2) mod pe : h1^2 + h2^2 = r}
      const auto two = cyclic_convolve_exact(hist, hist);
      std::vector<u64> per_n(ns_.size(), 0);
      for (std::size_t i = 0; i < ns_.size(); ++i) {
        const u64 target = ns_[i] % pe;
        u128 total = 0;
        for (u64 r = 0; r < pe; ++r) {
          if (hist[r] == 0) continue;
          total += static_cast<u128>(hist[r]) * two[(target + pe - r) % pe];
        }
        per_n[i] = static_cast<u64>(total);
      }
      counts_.emplace(pe, std::move(per_n));
      if (pe > q_max_ / p) break;
    }
  }
}

std::size_t ResidueCountSeries::slot(u64 n) const {
  const auto it = std::find(ns_.begin(), ns_.end(), n);
  if (it == ns_.end()) throw DomainError("n = " + std::to_string(n) + " was not registered");
  return static_cast<std::size_t>(it - ns_.begin());
}

u64 ResidueCountSeries::prime_power_count(u64 pe, u64 n) const {
  if (pe == 1) return 1;
  const auto it = counts_.find(pe);
  if (it == counts_.end()) throw DomainError(std::to_string(pe) + " is not a tabulated prime power");
  return it->second[slot(n)];
}

double ResidueCountSeries::a_term(u64 q, u64 n) const {
  if (q == 0 || q > q_max_) throw DomainError("q out of range for this series");
  const std::size_t s = slot(n);
  // The Moebius sum over squarefree d | q factors over the primes of q:
  //   prod_{p^e || q} (N_{p^e}(n) - p^2 N_{p^{e-1}}(n)) / p^{2e}.
  double value = 1.0;
  u64 rest = q;
  while (rest > 1) {
    const u64 p = smallest_prime_[rest];
    u64 pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    const u64 full = counts_.at(pe)[s];
    const u64 lower = pe == p ? 1 : counts_.at(pe / p)[s];
    const __int128 numerator = static_cast<__int128>(full) - static_cast<__int128>(p * p) * lower;
    value *= static_cast<double>(numerator) / (static_cast<double>(pe) * static_cast<double>(pe));
    if (value == 0.0) break;
  }
  return value;
}

SingularTruncation ResidueCountSeries::truncation(u64 n, u64 q_max) const {
  if (q_max == 0 || q_max > q_max_) throw DomainError("truncation level out of range");
  SingularTruncation out;
  out.n = n;
  out.q_max = q_max;
  out.terms.resize(q_max);
  for (u64 q = 1; q <= q_max; ++q) {
    out.terms[q - 1] = a_term(q, n);
    out.value += out.terms[q - 1];
  }
  return out;
}

SingularTruncation singular_series(u64 n, u64 q_max, SeriesMethod method) {
  if (n == 0) throw DomainError("singular_series needs n >= 1");
  if (q_max == 0) throw DomainError("singular_series needs Q >= 1");
  if (method == SeriesMethod::residue_count) {
    const u64 ns[] = {n};
    return ResidueCountSeries(q_max, ns).truncation(n, q_max);
  }
  SingularTruncation out;
  out.n = n;
  out.q_max = q_max;
  out.terms.resize(q_max);
  for (u64 q = 1; q <= q_max; ++q) {
    out.terms[q - 1] = a_term(q, n);
    out.value += out.terms[q - 1];
  }
  return out;
}

double bateman_r3(const SingularTruncation& series) {
  return 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(series.n)) * series.value;
}

double bateman_r3(u64 n, u64 q_max) { return bateman_r3(singular_series(n, q_max)); }

double i_exact(u64 n, u64 x) {
  if (n < 3 || x == 0) return 0.0;
  if (n > 3 * x) throw DomainError("i_exact needs n <= 3x");
  std::vector<double> inv_sqrt(n, 0.0);
  for (u64 m = 1; m < n; ++m) inv_sqrt[m] = 1.0 / std::sqrt(static_cast<double>(m));
  double total = 0.0;
  for (u64 m1 = 1; m1 <= std::min(x, n - 2); ++m1) {
    const u64 rest = n - m1;
    // m2 + m3 = rest with 1 <= m2, m3 <= x
    const u64 lo = rest > x ? rest - x : 1;
    const u64 hi = std::min(x, rest - 1);
    double inner = 0.0;
    for (u64 m2 = lo; m2 <= hi; ++m2) inner += inv_sqrt[m2] * inv_sqrt[rest - m2];
    total += inv_sqrt[m1] * inner;
  }
  return total / 8.0;
}

std::vector<double> i_exact_series(u64 x, u64 n_max) {
  if (n_max > 3 * x) throw DomainError("i_exact_series needs n_max <= 3x");
  std::vector<double> u(std::min(x, n_max) + 1, 0.0);
  for (u64 m = 1; m < u.size(); ++m) u[m] = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> pair(n_max + 1, 0.0);
  for (u64 a = 1; a < u.size(); ++a) {
    for (u64 b = 1; b < u.size() && a + b <= n_max; ++b) pair[a + b] += u[a] * u[b];
  }
  std::vector<double> out(n_max + 1, 0.0);
  for (u64 n = 3; n <= n_max; ++n) {
    double total = 0.0;
    for (u64 m = 1; m < u.size() && m + 2 <= n; ++m) total += u[m] * pair[n - m];
    out[n] = total / 8.0;
  }
  return out;
}

void write_csv(const SingularTruncation& series, std::ostream& out) {
  out << "q,A_q_n\n";
  for (std::size_t i = 0; i < series.terms.size(); ++i) {
    out << (i + 1) << ',' << format_real(series.terms[i]) << '\n';
  }
  out << "total," << format_real(series.value) << '\n';
}

}  // namespace sq3
