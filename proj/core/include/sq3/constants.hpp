#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace sq3 {

// 50 significant decimal digits; used for the extended-precision report.
using Extended = boost::multiprecision::cpp_bin_float_50;

template <typename Real>
inline constexpr unsigned kZetaDefaultTerms = 16;
template <>
inline constexpr unsigned kZetaDefaultTerms<Extended> = 48;

// Riemann zeta for real s > 1: direct sum of `precision_terms` terms plus an
// Euler-Maclaurin tail with Bernoulli corrections. Throws DomainError for s <= 1.
template <typename Real = double>
Real zeta_real(const Real& s, unsigned precision_terms = kZetaDefaultTerms<Real>);

// phi(q) for q = 0..q_max by a linear sieve (entry 0 is 0).
std::vector<std::uint64_t> totient_sieve(std::uint64_t q_max);

// |S(q, a)|^2 for (a, q) = 1 as an exact integer: q, 2q or 0.
std::uint64_t closed_magnitude_squared(std::uint64_t q);

// Gamma(t / 2) for positive integer t, from factorials and sqrt(pi).
template <typename Real = double>
Real gamma_half(unsigned t);

// sum_{q<=Q} sum_{(a,q)=1} q^{-6} |S(q, a)|^6 with the closed magnitude.
template <typename Real = double>
Real b1_direct(std::uint64_t q_max);

// Same partial sum with |S(q, a)| evaluated as an explicit Gauss sum for
// every a. O(Q^3); for cross-checking the closed magnitude.
double b1_direct_from_sums(std::uint64_t q_max);

// (4/3) sum_{q odd, q<=Q} phi(q) / q^3.
template <typename Real = double>
Real b1_euler(std::uint64_t q_max);

// Running partial sums for q = 1..Q, used by the monotonicity checks.
std::vector<double> b1_direct_partials(std::uint64_t q_max);
std::vector<double> b1_euler_partials(std::uint64_t q_max);

// 8 zeta(2) / (7 zeta(3)).
template <typename Real = double>
Real b1_closed();

// 8 pi^4 / (21 zeta(3)).
template <typename Real = double>
Real mean_square_constant();

// 1/((N-1)(1-2^-N)) * pi^N / Gamma(N/2)^2 * zeta(N-1)/zeta(N), N >= 3.
template <typename Real = double>
Real w_constant(unsigned n_squares);

// Inequivalent cusps of Gamma_0(4) used in the assembly: 1, 1/2, 1/4.
enum class Cusp { one, half, quarter };

struct CuspData {
  std::int64_t u;
  std::uint64_t w;
  std::uint64_t width;
};

CuspData cusp_data(Cusp cusp);
std::string cusp_label(Cusp cusp);

// Scattering entries phi_{inf, iota}(s) for Gamma_0(4), general real s > 1:
//   phi_{1/4}(s) = 2^{1-4s} (1-2^{-2s})^{-1} F(s)
//   phi_{1/2}(s) = phi_1(s) = 2^{-2s} (1-2^{-2s})^{-1} (1-2^{1-2s}) F(s)
//   F(s) = pi^{1/2} Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s))
template <typename Real = double>
Real eisenstein_phi(Cusp cusp, const Real& s);

// width^3 * 2^-3 * w^-3 * |S(w, u)|^6. Throws NotCoprime.
double cusp_zero_coeff(std::int64_t u, std::uint64_t w, std::uint64_t width);

// |a_{iota,0}|^2 as used in the assembly: 1, 0, 1 for iota = 1, 1/2, 1/4.
// At iota = 1 this differs from cusp_zero_coeff(1, 1, 4) = 8.
double stated_zero_coeff(Cusp cusp);

template <typename Real = double>
struct MullerBreakdown {
  Real prefactor;  // (4 pi)^2 / (3 - 1)
  Real b_plus;     // 1 / Gamma(2)
  Real phi_1;
  Real phi_12;
  Real phi_14;
  Real a0_sq_1;
  Real a0_sq_12;
  Real a0_sq_14;
  Real value;
};

// B = (4 pi)^2 / 2 * b+(3/4, 1/4) * sum_iota phi_{inf,iota}(3/2) |a_{iota,0}|^2.
template <typename Real = double>
MullerBreakdown<Real> muller_breakdown();

template <typename Real = double>
Real muller_assembly() {
  return muller_breakdown<Real>().value;
}

template <typename Real = double>
struct ConstantsReport {
  std::uint64_t b1_direct_q = 0;
  Real b1_direct_at_q;
  std::uint64_t b1_euler_q = 0;
  Real b1_euler_at_q;
  Real b1_closed;
  Real c3;
  std::map<unsigned, Real> w_values;
  Real muller_b;
  MullerBreakdown<Real> assembly;
  // cusp_zero_coeff for each cusp, next to the stated values in `assembly`.
  double a0_sq_formula_1 = 0;
  double a0_sq_formula_12 = 0;
  double a0_sq_formula_14 = 0;
};

template <typename Real = double>
ConstantsReport<Real> make_constants_report(std::uint64_t q_direct, std::uint64_t q_euler,
                                            const std::vector<unsigned>& n_values);

// Fixed-point-free decimal rendering with `digits` significant digits.
std::string to_decimal(double value, int digits = 17);
std::string to_decimal(const Extended& value, int digits = 40);

}  // namespace sq3
