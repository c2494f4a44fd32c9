#include "sq3/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sq3/errors.hpp"
#include "sq3/int128.hpp"

namespace sq3 {
namespace {

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t q) {
  const auto r = static_cast<std::int64_t>(static_cast<__int128>(a) % static_cast<__int128>(q));
  return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(q)) : static_cast<std::uint64_t>(r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % q);
}

// Fractional part of alpha * n, using the exact rounding error of the product.
double frac_product(double alpha, double n) {
  const double p = alpha * n;
  const double err = std::fma(alpha, n, -p);
  const double fp = p - std::floor(p);
  return fp + err;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

std::uint64_t gcd(std::int64_t a, std::uint64_t b) noexcept {
  std::uint64_t x = a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
  while (b != 0) {
    const auto t = x % b;
    x = b;
    b = t;
  }
  return x;
}

Complex unit_phase(double t) {
  t -= std::nearbyint(t);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

Complex unit_root(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("unit_root denominator must be positive");
  std::uint64_t r = reduce_mod(num, den);
  // Map to (-den/2, den/2] so the angle is small and symmetric.
  double t = 0;
  if (2 * static_cast<u128>(r) > den) {
    t = -static_cast<double>(den - r) / static_cast<double>(den);
  } else {
    t = static_cast<double>(r) / static_cast<double>(den);
  }
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

Complex gauss_sum(std::uint64_t q, std::int64_t a) {
  if (q == 0) throw DomainError("gauss_sum needs q >= 1");
  const std::uint64_t ar = reduce_mod(a, q);
  Complex sum{0.0, 0.0};
  for (std::uint64_t h = 1; h <= q; ++h) {
    const std::uint64_t sq = mul_mod(h % q, h % q, q);
    sum += unit_root(static_cast<std::int64_t>(mul_mod(ar, sq, q)), q);
  }
  return sum;
}

double gauss_magnitude_closed(std::uint64_t q) {
  if (q == 0) throw DomainError("gauss_magnitude_closed needs q >= 1");
  if (q % 2 == 1) return std::sqrt(static_cast<double>(q));
  if (q % 4 == 0) return std::sqrt(2.0 * static_cast<double>(q));
  return 0.0;
}

Complex weyl_sum(double alpha, std::uint64_t terms) {
  require_finite(alpha, "alpha");
  if (terms == 0) throw DomainError("weyl_sum needs N >= 1");
  if (terms > kMaxWeylTerms) throw DomainError("weyl_sum: N above 2^26 loses exactness of m^2");
  const double base = alpha - std::floor(alpha);
  Complex sum{0.0, 0.0};
  for (std::uint64_t m = 1; m <= terms; ++m) {
    const auto m2 = static_cast<double>(m * m);
    sum += unit_phase(frac_product(base, m2));
  }
  return sum;
}

Complex v_sum(double beta, std::uint64_t x) {
  require_finite(beta, "beta");
  if (x == 0) throw DomainError("v_sum needs x >= 1");
  // Phases advance by e(beta) per term; restart exactly every block to bound drift.
  constexpr std::uint64_t kBlock = 64;
  const double b = beta - std::floor(beta);
  const Complex step = unit_phase(b);
  Complex total{0.0, 0.0};
  for (std::uint64_t start = 1; start <= x; start += kBlock) {
    const std::uint64_t stop = std::min(x, start + kBlock - 1);
    Complex phase = unit_phase(frac_product(b, static_cast<double>(start)));
    Complex block{0.0, 0.0};
    for (std::uint64_t m = start; m <= stop; ++m) {
      block += phase / std::sqrt(static_cast<double>(m));
      phase *= step;
    }
    total += block;
  }
  return 0.5 * total;
}

Complex f_star(double alpha, std::uint64_t q, std::int64_t a, std::uint64_t x) {
  require_finite(alpha, "alpha");
  if (q == 0) throw DomainError("f_star needs q >= 1");
  if (gcd(a, q) != 1) {
    throw NotCoprime("f_star: gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") > 1");
  }
  const double beta = alpha - static_cast<double>(a) / static_cast<double>(q);
  return gauss_sum(q, a) * v_sum(beta, x) / static_cast<double>(q);
}

GaussTable::GaussTable(std::uint64_t q) : q_(q) {
  if (q == 0) throw DomainError("GaussTable needs q >= 1");
  roots_.resize(q);
  for (std::uint64_t k = 0; k < q; ++k) roots_[k] = unit_root(static_cast<std::int64_t>(k), q);

  std::vector<std::uint64_t> hist(q, 0);
  for (std::uint64_t h = 0; h < q; ++h) ++hist[mul_mod(h, h, q)];
  std::vector<std::uint64_t> residues;
  std::vector<double> weights;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (hist[r] != 0) {
      residues.push_back(r);
      weights.push_back(static_cast<double>(hist[r]));
    }
  }

  sums_.assign(q, Complex{0.0, 0.0});
  for (std::uint64_t a = 0; a < q; ++a) {
    double re = 0;
    double im = 0;
    std::uint64_t idx = 0;  // a * r mod q, advanced incrementally
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
      idx = (idx + mul_mod(a, residues[i] - prev, q)) % q;
      prev = residues[i];
      const Complex& z = roots_[idx];
      re += weights[i] * z.real();
      im += weights[i] * z.imag();
    }
    sums_[a] = {re, im};
  }
}

Complex GaussTable::at(std::int64_t a) const { return sums_[reduce_mod(a, q_)]; }

}  // namespace sq3
