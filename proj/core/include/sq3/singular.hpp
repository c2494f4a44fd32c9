#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "sq3/expsum.hpp"

namespace sq3 {

// Truncated singular series S_3(n, Q) with its terms A(q, n), q = 1..Q.
struct SingularTruncation {
  std::uint64_t n = 0;
  std::uint64_t q_max = 0;
  double value = 0.0;
  std::vector<double> terms;  // terms[q - 1] = A(q, n)

  double term(std::uint64_t q) const { return terms.at(q - 1); }
};

// Imaginary parts above this abort a_term: they can only come from a bug.
inline constexpr double kImaginaryTolerance = 1e-9;

// A(q, n) = sum_{1<=a<=q, (a,q)=1} q^{-3} S(q, a)^3 e(-a n / q), evaluated
// from the complex definition. Throws ImaginaryResidue.
double a_term(std::uint64_t q, std::uint64_t n);
double a_term(const GaussTable& sums, std::uint64_t n);

// Same sum without the realness check; for diagnostics.
Complex a_term_complex(const GaussTable& sums, std::uint64_t n);

enum class SeriesMethod {
  direct,         // a_term per q; O(q * phi(q)) each
  residue_count,  // exact integer counts of x^2 + y^2 + z^2 = n mod m
};

// Evaluates A(q, n) exactly through
//   A(q, n) = q^{-2} sum_{d | q} mu(d) d^2 N_{q/d}(n),
//   N_m(n) = #{(h1, h2, h3) mod m : h1^2 + h2^2 + h3^2 = n (mod m)},
// which follows from summing the cubed Gauss sums over all a and removing the
// non-coprime a by Moebius inversion. N_m is multiplicative in m (CRT), so
// only prime-power counts are tabulated; those come from an exact cyclic
// convolution of the square-residue histogram.
//
// Counts are prepared for a fixed set of n at construction.
class ResidueCountSeries {
 public:
  ResidueCountSeries(std::uint64_t q_max, std::span<const std::uint64_t> ns);

  std::uint64_t q_max() const noexcept { return q_max_; }

  // N_{p^e}(n) for a prime power p^e <= q_max and a registered n.
  std::uint64_t prime_power_count(std::uint64_t pe, std::uint64_t n) const;

  double a_term(std::uint64_t q, std::uint64_t n) const;
  SingularTruncation truncation(std::uint64_t n, std::uint64_t q_max) const;

 private:
  std::size_t slot(std::uint64_t n) const;

  std::uint64_t q_max_;
  std::vector<std::uint64_t> smallest_prime_;
  std::vector<std::uint64_t> ns_;
  // counts_[pe][slot] = N_{pe}(ns_[slot]); only prime powers are populated.
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> counts_;
};

SingularTruncation singular_series(std::uint64_t n, std::uint64_t q_max,
                                   SeriesMethod method = SeriesMethod::residue_count);

// Singular-series approximation to r_3(n): 2 pi sqrt(n) S_3(n, Q). The factor
// is the one that matches A(q, n) as normalized above (r_3(1) = 6 needs
// S_3(1) = 3 / pi).
double bateman_r3(std::uint64_t n, std::uint64_t q_max);
double bateman_r3(const SingularTruncation& series);

// I(n) = (1/8) sum_{m1+m2+m3=n, 1<=mi<=x} (m1 m2 m3)^{-1/2}: the exact value
// of the integral of v(beta)^3 e(-beta n) over one period. Zero for n < 3.
double i_exact(std::uint64_t n, std::uint64_t x);

// I(n) for n = 0..n_max in one pass (n_max <= 3x).
std::vector<double> i_exact_series(std::uint64_t x, std::uint64_t n_max);

// Header "q,A_q_n", one row per q, then "total,<value>".
void write_csv(const SingularTruncation& series, std::ostream& out);

}  // namespace sq3
