#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sq3 {

using Complex = std::complex<double>;

// Weyl sums evaluate alpha * m^2 with an exact two-product; m^2 must stay
// exactly representable in a double.
inline constexpr std::uint64_t kMaxWeylTerms = std::uint64_t{1} << 26;

// e(num / den) = exp(2 pi i num / den). num is reduced modulo den in integer
// arithmetic before any floating-point work.
Complex unit_root(std::int64_t num, std::uint64_t den);

// e(t) for real t, reduced to [-1/2, 1/2] first.
Complex unit_phase(double t);

// S(q, a) = sum_{h=1}^{q} e(a h^2 / q).
Complex gauss_sum(std::uint64_t q, std::int64_t a);

// |S(q, a)| for gcd(a, q) = 1: sqrt(q), sqrt(2q) or 0 by q mod 4.
double gauss_magnitude_closed(std::uint64_t q);

// f(alpha) = sum_{m=1}^{N} e(alpha m^2).
Complex weyl_sum(double alpha, std::uint64_t terms);

// v(beta) = (1/2) sum_{m=1}^{x} m^{-1/2} e(beta m).
Complex v_sum(double beta, std::uint64_t x);

// f*(alpha) = q^{-1} S(q, a) v(alpha - a/q). Throws NotCoprime.
Complex f_star(double alpha, std::uint64_t q, std::int64_t a, std::uint64_t x);

std::uint64_t gcd(std::int64_t a, std::uint64_t b) noexcept;

// S(q, a) for every residue a mod q, each evaluated from the definition.
// Terms are grouped by h^2 mod q, so one table costs O(q * #squares mod q)
// root lookups plus q complex exponentials.
class GaussTable {
 public:
  explicit GaussTable(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }
  const Complex& operator[](std::uint64_t a) const { return sums_[a]; }
  Complex at(std::int64_t a) const;

  // e(k / q) for 0 <= k < q.
  const Complex& root(std::uint64_t k) const { return roots_[k]; }

 private:
  std::uint64_t q_;
  std::vector<Complex> roots_;
  std::vector<Complex> sums_;
};

}  // namespace sq3
