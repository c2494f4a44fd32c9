#include "sq3/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sq3/errors.hpp"
#include "sq3/expsum.hpp"
#include "sq3/format.hpp"

namespace sq3 {
namespace {

using u64 = std::uint64_t;

struct Bernoulli {
  long long num;
  long long den;
};

// B_2, B_4, ..., B_30
constexpr std::array<Bernoulli, 15> kBernoulli{{
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029LL, 870},
    {8615841276005LL, 14322},
}};

template <typename Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <typename Real>
unsigned correction_terms() {
  return std::is_same_v<Real, double> ? 10U : 15U;
}

}  // namespace

template <typename Real>
Real zeta_real(const Real& s, unsigned precision_terms) {
  using std::pow;
  if (!(s > 1)) throw DomainError("zeta_real needs s > 1");
  const unsigned n_terms = std::max(precision_terms, 2U);
  Real sum = 0;
  // Smallest terms first.
  for (unsigned n = n_terms - 1; n >= 1; --n) sum += pow(Real(n), -s);
  const Real big_n = n_terms;
  const Real n_pow = pow(big_n, -s);
  sum += big_n * n_pow / (s - 1) + n_pow / 2;

  // sum_k B_{2k} / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
  Real rising = s;                   // s (s+1) ... (s+2k-2)
  Real factorial = 2;                // (2k)!
  Real power = n_pow / big_n;        // N^{-s-2k+1}
  const Real inv_n2 = 1 / (big_n * big_n);
  for (unsigned k = 1; k <= correction_terms<Real>(); ++k) {
    const auto& b = kBernoulli[k - 1];
    sum += Real(b.num) / Real(b.den) / factorial * rising * power;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    factorial *= Real(2 * k + 1) * Real(2 * k + 2);
    power *= inv_n2;
  }
  return sum;
}

std::vector<u64> totient_sieve(u64 q_max) {
  std::vector<u64> phi(q_max + 1, 0);
  std::vector<u64> primes;
  if (q_max >= 1) phi[1] = 1;
  std::vector<bool> composite(q_max + 1, false);
  for (u64 i = 2; i <= q_max; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      phi[i] = i - 1;
    }
    for (u64 p : primes) {
      const u64 ip = i * p;
      if (ip > q_max) break;
      composite[ip] = true;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  return phi;
}

u64 closed_magnitude_squared(u64 q) {
  if (q == 0) throw DomainError("closed_magnitude_squared needs q >= 1");
  if (q % 2 == 1) return q;
  if (q % 4 == 0) return 2 * q;
  return 0;
}

template <typename Real>
Real gamma_half(unsigned t) {
  using std::sqrt;
  if (t == 0) throw DomainError("gamma_half needs t >= 1");
  Real value = 1;
  if (t % 2 == 0) {
    for (unsigned k = 2; k < t / 2; ++k) value *= k;  // (t/2 - 1)!
    return value;
  }
  value = sqrt(pi<Real>());
  // Gamma(k + 1/2) = (k - 1/2)(k - 3/2) ... (1/2) sqrt(pi)
  for (unsigned twice = 1; twice + 2 <= t; twice += 2) value *= Real(twice) / 2;
  return value;
}

template <typename Real>
Real b1_direct(u64 q_max) {
  const auto phi = totient_sieve(q_max);
  Real total = 0;
  for (u64 q = 1; q <= q_max; ++q) {
    const u64 m2 = closed_magnitude_squared(q);
    if (m2 == 0) continue;
    const Real ratio = Real(m2) / (Real(q) * Real(q));  // |S|^2 / q^2
    total += Real(phi[q]) * ratio * ratio * ratio;
  }
  return total;
}

double b1_direct_from_sums(u64 q_max) {
  double total = 0;
  for (u64 q = 1; q <= q_max; ++q) {
    const GaussTable sums(q);
    const double q2 = static_cast<double>(q) * static_cast<double>(q);
    double row = 0;
    for (u64 a = 1; a <= q; ++a) {
      if (gcd(static_cast<std::int64_t>(a), q) != 1) continue;
      const double ratio = std::norm(sums[a % q]) / q2;
      row += ratio * ratio * ratio;
    }
    total += row;
  }
  return total;
}

std::vector<double> b1_direct_partials(u64 q_max) {
  const auto phi = totient_sieve(q_max);
  std::vector<double> out(q_max);
  double total = 0;
  for (u64 q = 1; q <= q_max; ++q) {
    const u64 m2 = closed_magnitude_squared(q);
    if (m2 != 0) {
      const double ratio = static_cast<double>(m2) / (static_cast<double>(q) * static_cast<double>(q));
      total += static_cast<double>(phi[q]) * ratio * ratio * ratio;
    }
    out[q - 1] = total;
  }
  return out;
}

template <typename Real>
Real b1_euler(u64 q_max) {
  const auto phi = totient_sieve(q_max);
  Real total = 0;
  for (u64 q = 1; q <= q_max; q += 2) {
    const Real qr = q;
    total += Real(phi[q]) / (qr * qr * qr);
  }
  return total * 4 / 3;
}

std::vector<double> b1_euler_partials(u64 q_max) {
  const auto phi = totient_sieve(q_max);
  std::vector<double> out(q_max);
  double total = 0;
  for (u64 q = 1; q <= q_max; ++q) {
    if (q % 2 == 1) {
      const auto qr = static_cast<double>(q);
      total += static_cast<double>(phi[q]) / (qr * qr * qr);
    }
    out[q - 1] = total * 4.0 / 3.0;
  }
  return out;
}

template <typename Real>
Real b1_closed() {
  return 8 * zeta_real<Real>(Real(2)) / (7 * zeta_real<Real>(Real(3)));
}

template <typename Real>
Real mean_square_constant() {
  const Real p = pi<Real>();
  return 8 * p * p * p * p / (21 * zeta_real<Real>(Real(3)));
}

template <typename Real>
Real w_constant(unsigned n_squares) {
  using std::pow;
  if (n_squares < 3) throw DomainError("w_constant needs N >= 3");
  const Real n = n_squares;
  const Real g = gamma_half<Real>(n_squares);
  const Real lead = 1 / ((n - 1) * (1 - pow(Real(2), -n)));
  return lead * pow(pi<Real>(), n) / (g * g) * zeta_real<Real>(n - 1) / zeta_real<Real>(n);
}

CuspData cusp_data(Cusp cusp) {
  switch (cusp) {
    case Cusp::one: return {1, 1, 4};
    case Cusp::half: return {1, 2, 1};
    case Cusp::quarter: return {1, 4, 1};
  }
  throw DomainError("unknown cusp");
}

std::string cusp_label(Cusp cusp) {
  switch (cusp) {
    case Cusp::one: return "1";
    case Cusp::half: return "1/2";
    case Cusp::quarter: return "1/4";
  }
  return "?";
}

template <typename Real>
Real eisenstein_phi(Cusp cusp, const Real& s) {
  using std::pow;
  using std::sqrt;
  if (!(s > 1)) throw DomainError("eisenstein_phi needs s > 1");
  const Real common = sqrt(pi<Real>()) * boost::math::tgamma(Real(s - Real(0.5))) *
                      zeta_real<Real>(2 * s - 1) /
                      (boost::math::tgamma(s) * zeta_real<Real>(2 * s));
  const Real two = 2;
  const Real damp = 1 / (1 - pow(two, -2 * s));
  if (cusp == Cusp::quarter) return pow(two, 1 - 4 * s) * damp * common;
  return pow(two, -2 * s) * damp * (1 - pow(two, 1 - 2 * s)) * common;
}

double cusp_zero_coeff(std::int64_t u, u64 w, u64 width) {
  if (w == 0) throw DomainError("cusp_zero_coeff needs w >= 1");
  if (gcd(u, w) != 1) {
    throw NotCoprime("cusp_zero_coeff: gcd(" + std::to_string(u) + ", " + std::to_string(w) + ") > 1");
  }
  const double mag2 = std::round(std::norm(gauss_sum(w, u)));
  const double wd = static_cast<double>(w);
  const double width_d = static_cast<double>(width);
  return width_d * width_d * width_d * mag2 * mag2 * mag2 / (8.0 * wd * wd * wd);
}

double stated_zero_coeff(Cusp cusp) {
  switch (cusp) {
    case Cusp::one: return 1.0;
    case Cusp::half: return 0.0;
    case Cusp::quarter: return 1.0;
  }
  return 0.0;
}

template <typename Real>
MullerBreakdown<Real> muller_breakdown() {
  const Real s = Real(3) / 2;
  const Real four_pi = 4 * pi<Real>();
  MullerBreakdown<Real> out;
  out.prefactor = four_pi * four_pi / (3 - 1);
  out.b_plus = 1 / boost::math::tgamma(s + Real(0.5));  // G*_{1/4,1/4}(s) = Gamma(s + 1/2)^{-1}
  out.phi_1 = eisenstein_phi<Real>(Cusp::one, s);
  out.phi_12 = eisenstein_phi<Real>(Cusp::half, s);
  out.phi_14 = eisenstein_phi<Real>(Cusp::quarter, s);
  out.a0_sq_1 = stated_zero_coeff(Cusp::one);
  out.a0_sq_12 = stated_zero_coeff(Cusp::half);
  out.a0_sq_14 = stated_zero_coeff(Cusp::quarter);
  out.value = out.prefactor * out.b_plus *
              (out.phi_1 * out.a0_sq_1 + out.phi_12 * out.a0_sq_12 + out.phi_14 * out.a0_sq_14);
  return out;
}

template <typename Real>
ConstantsReport<Real> make_constants_report(u64 q_direct, u64 q_euler, const std::vector<unsigned>& n_values) {
  ConstantsReport<Real> r;
  r.b1_direct_q = q_direct;
  r.b1_direct_at_q = b1_direct<Real>(q_direct);
  r.b1_euler_q = q_euler;
  r.b1_euler_at_q = b1_euler<Real>(q_euler);
  r.b1_closed = b1_closed<Real>();
  r.c3 = mean_square_constant<Real>();
  for (unsigned n : n_values) r.w_values.emplace(n, w_constant<Real>(n));
  r.assembly = muller_breakdown<Real>();
  r.muller_b = r.assembly.value;
  for (Cusp c : {Cusp::one, Cusp::half, Cusp::quarter}) {
    const auto d = cusp_data(c);
    const double v = cusp_zero_coeff(d.u, d.w, d.width);
    if (c == Cusp::one) r.a0_sq_formula_1 = v;
    if (c == Cusp::half) r.a0_sq_formula_12 = v;
    if (c == Cusp::quarter) r.a0_sq_formula_14 = v;
  }
  return r;
}

std::string to_decimal(const Extended& value, int digits) { return value.str(digits); }

#define SQ3_INSTANTIATE(Real)                                                                        \
  template Real zeta_real<Real>(const Real&, unsigned);                                              \
  template Real gamma_half<Real>(unsigned);                                                          \
  template Real b1_direct<Real>(u64);                                                                \
  template Real b1_euler<Real>(u64);                                                                 \
  template Real b1_closed<Real>();                                                                   \
  template Real mean_square_constant<Real>();                                                        \
  template Real w_constant<Real>(unsigned);                                                          \
  template Real eisenstein_phi<Real>(Cusp, const Real&);                                             \
  template MullerBreakdown<Real> muller_breakdown<Real>();                                           \
  template ConstantsReport<Real> make_constants_report<Real>(u64, u64, const std::vector<unsigned>&);

SQ3_INSTANTIATE(double)
SQ3_INSTANTIATE(Extended)

#undef SQ3_INSTANTIATE

}  // namespace sq3
