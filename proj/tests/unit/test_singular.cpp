#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sq3/errors.hpp"
#include "sq3/repcount.hpp"
#include "sq3/singular.hpp"

namespace {

using u64 = std::uint64_t;

nlohmann::json fixture() {
  std::ifstream in(SQ3_FIXTURE_DIR "/empirical_constants.json");
  return nlohmann::json::parse(in);
}

TEST(ATerm, Examples) {
  for (u64 n : {1u, 2u, 7u, 100u}) {
    EXPECT_NEAR(sq3::a_term(1, n), 1.0, 1e-15);
    EXPECT_NEAR(sq3::a_term(2, n), 0.0, 1e-15);
  }
  EXPECT_NEAR(sq3::a_term(4, 1), 0.5, 1e-14);
}

TEST(ATerm, MatchesNaiveOracle) {
  for (u64 q = 1; q <= 40; ++q)
    for (u64 n = 1; n <= 20; ++n) {
      const auto want = oracle::a_term(q, n);
      EXPECT_NEAR(sq3::a_term(q, n), static_cast<double>(want.real()), 1e-10) << q << ' ' << n;
      EXPECT_LE(std::fabs(static_cast<double>(want.imag())), 1e-9);
    }
}

TEST(ATerm, ImaginaryPartVanishes) {
  for (u64 q = 1; q <= 300; q += 7) {
    const sq3::GaussTable table(q);
    for (u64 n : {1u, 3u, 7u, 12u, 99u}) {
      EXPECT_LE(std::fabs(sq3::a_term_complex(table, n).imag()), sq3::kImaginaryTolerance) << q << ' ' << n;
    }
  }
}

TEST(ATerm, MultiplicativeInQ) {
  std::vector<std::unique_ptr<sq3::GaussTable>> tables(31 * 31 + 1);
  auto table = [&](u64 q) -> const sq3::GaussTable& {
    if (!tables[q]) tables[q] = std::make_unique<sq3::GaussTable>(q);
    return *tables[q];
  };
  for (u64 q1 = 1; q1 <= 30; ++q1)
    for (u64 q2 = q1; q2 <= 30; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (u64 n = 1; n <= 30; ++n) {
        const double lhs = sq3::a_term(table(q1 * q2), n);
        const double rhs = sq3::a_term(table(q1), n) * sq3::a_term(table(q2), n);
        ASSERT_NEAR(lhs, rhs, 1e-9) << q1 << ' ' << q2 << ' ' << n;
      }
    }
}

TEST(ResidueCountSeries, PrimePowerCountsMatchEnumeration) {
  const std::vector<u64> ns{1, 2, 3, 4, 7, 12, 25};
  const sq3::ResidueCountSeries series(64, ns);
  for (u64 pe : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u}) {
    for (u64 n : ns) EXPECT_EQ(series.prime_power_count(pe, n), oracle::residue_triples(pe, n)) << pe << ' ' << n;
  }
}

TEST(ResidueCountSeries, AgreesWithDirectRoute) {
  std::vector<u64> ns(30);
  std::iota(ns.begin(), ns.end(), 1);
  const sq3::ResidueCountSeries series(200, ns);
  for (u64 q = 1; q <= 200; ++q) {
    const sq3::GaussTable table(q);
    for (u64 n : ns) ASSERT_NEAR(series.a_term(q, n), sq3::a_term(table, n), 1e-12) << q << ' ' << n;
  }
}

TEST(SingularSeries, Examples) {
  for (u64 n : {1u, 5u, 1000u}) EXPECT_DOUBLE_EQ(sq3::singular_series(n, 1).value, 1.0);
  const auto s = sq3::singular_series(1, 4);
  EXPECT_NEAR(s.value, 1.0 + 0.0 + sq3::a_term(3, 1) + 0.5, 1e-14);
  EXPECT_NEAR(sq3::a_term(3, 1), -1.0 / 3.0, 1e-14);
}

TEST(SingularSeries, Invariants) {
  for (auto method : {sq3::SeriesMethod::direct, sq3::SeriesMethod::residue_count}) {
    const auto s = sq3::singular_series(6, 300, method);
    ASSERT_EQ(s.terms.size(), 300u);
    EXPECT_DOUBLE_EQ(s.term(1), 1.0);
    const double sum = std::accumulate(s.terms.begin(), s.terms.end(), 0.0);
    EXPECT_NEAR(s.value, sum, 1e-10 * 300);
  }
  const auto a = sq3::singular_series(6, 300, sq3::SeriesMethod::direct);
  const auto b = sq3::singular_series(6, 300, sq3::SeriesMethod::residue_count);
  EXPECT_NEAR(a.value, b.value, 1e-11);
}

TEST(SingularSeries, Deterministic) {
  const auto a = sq3::singular_series(11, 2000);
  const auto b = sq3::singular_series(11, 2000);
  EXPECT_EQ(a.terms, b.terms);
  EXPECT_EQ(a.value, b.value);
}

TEST(SingularSeries, DecayCeiling) {
  const auto params = fixture()["decay"];
  const u64 q_max = params["q_max"];
  const u64 n_max = params["n_max"];
  std::vector<u64> ns(n_max);
  std::iota(ns.begin(), ns.end(), 1);
  const sq3::ResidueCountSeries series(q_max, ns);
  double worst = 0;
  for (u64 q = 1; q <= q_max; ++q)
    for (u64 n : ns) worst = std::max(worst, std::fabs(series.a_term(q, n)) * std::sqrt(static_cast<double>(q)));
  RecordProperty("max_scaled_term", std::to_string(worst));
  EXPECT_LT(worst, static_cast<double>(params["ceiling"]));
}

TEST(SingularSeries, VanishesOnExcludedIntegers) {
  const auto params = fixture()["bateman"];
  const u64 q_max = params["q_max"];
  const double tol = params["rel_tolerance"];
  const std::vector<u64> ns = params["vanishing_n"];
  const sq3::ResidueCountSeries series(q_max, ns);
  for (u64 n : ns) {
    ASSERT_FALSE(sq3::is_representable(n));
    EXPECT_LE(std::fabs(series.truncation(n, q_max).value), tol) << n;
  }
}

TEST(Bateman, FirstTruncation) {
  for (u64 n : {1u, 2u, 10u}) {
    EXPECT_NEAR(sq3::bateman_r3(n, 1), 2 * std::numbers::pi * std::sqrt(static_cast<double>(n)), 1e-12);
  }
}

TEST(Bateman, SmallNConverge) {
  const std::vector<u64> ns{1, 2, 3, 5, 6};
  const sq3::ResidueCountSeries series(10000, ns);
  for (u64 n : ns) {
    const double exact = static_cast<double>(sq3::r3_point(n));
    const double far = std::fabs(sq3::bateman_r3(series.truncation(n, 10000)) - exact);
    const double near = std::fabs(sq3::bateman_r3(series.truncation(n, 100)) - exact);
    EXPECT_LE(far / exact, 0.05) << n;
    EXPECT_LT(far, near) << n;
  }
}

TEST(SingularIntegral, Examples) {
  EXPECT_NEAR(sq3::i_exact(3, 1), 0.125, 1e-15);
  EXPECT_NEAR(sq3::i_exact(4, 2), 3.0 / (8.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_EQ(sq3::i_exact(2, 50), 0.0);
  EXPECT_THROW(sq3::i_exact(10, 3), sq3::DomainError);
}

TEST(SingularIntegral, MatchesTripleSum) {
  for (u64 x : {5u, 40u}) {
    const auto series = sq3::i_exact_series(x, 3 * x);
    for (u64 n = 0; n <= 3 * x; ++n) {
      const double want = static_cast<double>(oracle::i_triple(n, x));
      EXPECT_NEAR(sq3::i_exact(n, x), want, 1e-12) << n;
      EXPECT_NEAR(series[n], want, 1e-12) << n;
    }
  }
}

TEST(SingularIntegral, StaysNearLeadingTerm) {
  const auto params = fixture()["singular_integral"];
  const u64 x = params["x"];
  const u64 lo = params["n_min"];
  const u64 hi = params["n_max"];
  const auto values = sq3::i_exact_series(x, hi);
  double first = 0, second = 0;
  for (u64 n = lo; n <= hi; ++n) {
    const double dev = std::fabs(values[n] - std::numbers::pi / 4 * std::sqrt(static_cast<double>(n)));
    double& bucket = n <= hi / 2 ? first : second;
    bucket = std::max(bucket, dev);
  }
  RecordProperty("max_deviation", std::to_string(std::max(first, second)));
  EXPECT_LE(std::max(first, second), static_cast<double>(params["ceiling"]));
  EXPECT_LE(second, 2 * first);
}

TEST(SingularSeries, CsvExport) {
  std::stringstream ss;
  sq3::write_csv(sq3::singular_series(1, 4), ss);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "q,A_q_n");
  std::getline(ss, line);
  EXPECT_EQ(line, "1,1");
  std::string last;
  while (std::getline(ss, line)) last = line;
  EXPECT_EQ(last.rfind("total,", 0), 0u);
}

}  // namespace
