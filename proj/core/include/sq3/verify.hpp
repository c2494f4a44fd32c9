#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sq3/int128.hpp"
#include "sq3/rep_table.hpp"

namespace sq3 {

// Partial sum over 1 <= n <= x compared with a main term.
struct Checkpoint {
  std::uint64_t x = 0;
  u128 partial_sum = 0;
  double main_term = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  std::size_t points_skipped = 0;  // checkpoints with abs_err == 0
};

// sum_{n<=x} r_3(n) against (4/3) pi x^{3/2}.
std::vector<Checkpoint> mean_value_series(const RepTable& table, std::span<const std::uint64_t> checkpoints);

// sum_{n<=x} r_3(n)^2 against 8 pi^4 / (21 zeta(3)) x^2.
std::vector<Checkpoint> mean_square_series(const RepTable& table, std::span<const std::uint64_t> checkpoints);

// sum_{n<=x} r_N(n)^2 against W_N x^{N-1}, N > 3.
std::vector<Checkpoint> mean_square_general(unsigned n_squares, const RepTable& table,
                                            std::span<const std::uint64_t> checkpoints);

// Least squares of log(abs_err) on log(x). Throws InsufficientPoints when
// fewer than three checkpoints have abs_err > 0.
FitResult fit_error_exponent(std::span<const Checkpoint> checkpoints);

struct SweepRow {
  std::uint64_t q_max = 0;
  double series_value = 0.0;  // S_3(n, Q)
  double approximation = 0.0;  // 2 pi sqrt(n) S_3(n, Q)
  double abs_err = 0.0;
  std::optional<double> rel_err;  // absent when r_3(n) = 0
};

struct SweepReport {
  std::uint64_t n = 0;
  std::uint64_t exact = 0;  // r_3(n) from the point oracle
  std::vector<SweepRow> rows;
};

SweepReport singular_truncation_sweep(std::uint64_t n, std::span<const std::uint64_t> q_grid);

// 1, 3, 10, 30, 100, ... clipped to [lo, hi]; hi is always included.
std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi);

// Header "x,partial_sum,main_term,abs_err,rel_err".
void write_csv(std::span<const Checkpoint> series, std::ostream& out);
// Reads what write_csv produced; lines starting with '#' are skipped.
std::vector<Checkpoint> read_checkpoints_csv(std::istream& in);

// Header "Q,series_value,approximation,exact,abs_err,rel_err"; rel_err empty when undefined.
void write_csv(const SweepReport& report, std::ostream& out);

}  // namespace sq3
