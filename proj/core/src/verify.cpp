#include "sq3/verify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "sq3/constants.hpp"
#include "sq3/errors.hpp"
#include "sq3/format.hpp"
#include "sq3/repcount.hpp"
#include "sq3/singular.hpp"

namespace sq3 {
namespace {

using u64 = std::uint64_t;

void check_grid(const RepTable& table, std::span<const u64> checkpoints) {
  for (u64 x : checkpoints) {
    if (x == 0) throw DomainError("checkpoints must be positive");
    if (x > table.limit()) {
      throw CheckpointExceedsTable("checkpoint " + std::to_string(x) + " exceeds table limit " +
                                   std::to_string(table.limit()));
    }
  }
}

Checkpoint make_checkpoint(u64 x, u128 partial, long double main_term) {
  Checkpoint c;
  c.x = x;
  c.partial_sum = partial;
  c.main_term = static_cast<double>(main_term);
  const long double diff = static_cast<long double>(partial) - main_term;
  c.abs_err = static_cast<double>(std::fabs(diff));
  c.rel_err = static_cast<double>(std::fabs(diff) / main_term);
  return c;
}

// Accumulates value(r(n)) for 1 <= n <= x and reports at each checkpoint.
template <typename Term, typename Main>
std::vector<Checkpoint> series(const RepTable& table, std::span<const u64> checkpoints, Term term, Main main) {
  check_grid(table, checkpoints);
  std::vector<u64> order(checkpoints.begin(), checkpoints.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<std::pair<u64, u128>> at;
  u128 acc = 0;
  u64 n = 1;
  for (u64 x : order) {
    for (; n <= x; ++n) {
      if (__builtin_add_overflow(acc, term(table[n]), &acc)) {
        throw OverflowError("partial sum overflows at n = " + std::to_string(n));
      }
    }
    at.emplace_back(x, acc);
  }
  std::vector<Checkpoint> out;
  out.reserve(checkpoints.size());
  for (u64 x : checkpoints) {
    const auto it = std::lower_bound(at.begin(), at.end(), x,
                                     [](const auto& e, u64 v) { return e.first < v; });
    out.push_back(make_checkpoint(x, it->second, main(static_cast<long double>(x))));
  }
  return out;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw FormatError("bad real '" + text + "'");
  }
  if (used != text.size()) throw FormatError("bad real '" + text + "'");
  return v;
}

}  // namespace

std::vector<Checkpoint> mean_value_series(const RepTable& table, std::span<const u64> checkpoints) {
  if (table.order() != 3) throw DomainError("mean_value_series needs an order-3 table");
  const long double c = 4.0L / 3.0L * std::numbers::pi_v<long double>;
  u128 guard = 0;
  auto out = series(
      table, checkpoints,
      [&](u64 r) {
        // sums of r_3 are kept within 64 bits
        if (__builtin_add_overflow(guard, r, &guard) || guard > std::numeric_limits<u64>::max()) {
          throw OverflowError("sum of r_3 exceeds 64-bit range");
        }
        return static_cast<u128>(r);
      },
      [&](long double x) { return c * x * std::sqrt(x); });
  return out;
}

std::vector<Checkpoint> mean_square_series(const RepTable& table, std::span<const u64> checkpoints) {
  if (table.order() != 3) throw DomainError("mean_square_series needs an order-3 table");
  const long double c = mean_square_constant<double>();
  return series(
      table, checkpoints, [](u64 r) { return static_cast<u128>(r) * r; },
      [&](long double x) { return c * x * x; });
}

std::vector<Checkpoint> mean_square_general(unsigned n_squares, const RepTable& table,
                                            std::span<const u64> checkpoints) {
  if (n_squares <= 3) throw DomainError("mean_square_general needs N > 3");
  if (table.order() != n_squares) {
    throw DomainError("table order " + std::to_string(table.order()) + " does not match N = " +
                      std::to_string(n_squares));
  }
  const long double w = w_constant<double>(n_squares);
  return series(
      table, checkpoints, [](u64 r) { return static_cast<u128>(r) * r; },
      [&](long double x) { return w * std::pow(x, static_cast<long double>(n_squares - 1)); });
}

FitResult fit_error_exponent(std::span<const Checkpoint> checkpoints) {
  std::vector<std::pair<double, double>> pts;
  FitResult fit;
  for (const auto& c : checkpoints) {
    if (c.abs_err > 0 && c.x > 0) {
      pts.emplace_back(std::log(static_cast<double>(c.x)), std::log(c.abs_err));
    } else {
      ++fit.points_skipped;
    }
  }
  if (pts.size() < 3) {
    throw InsufficientPoints("error-exponent fit needs at least 3 checkpoints with abs_err > 0, got " +
                             std::to_string(pts.size()));
  }
  const auto n = static_cast<double>(pts.size());
  double mx = 0;
  double my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw InsufficientPoints("error-exponent fit needs at least two distinct x");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (auto [x, y] : pts) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.points_used = pts.size();
  return fit;
}

SweepReport singular_truncation_sweep(u64 n, std::span<const u64> q_grid) {
  if (n == 0) throw DomainError("sweep needs n >= 1");
  SweepReport report;
  report.n = n;
  report.exact = r3_point(n);
  if (q_grid.empty()) return report;
  const u64 q_top = *std::max_element(q_grid.begin(), q_grid.end());
  const u64 ns[] = {n};
  const ResidueCountSeries engine(q_top, ns);
  const auto full = engine.truncation(n, q_top);

  std::vector<double> prefix(q_top + 1, 0.0);
  for (u64 q = 1; q <= q_top; ++q) prefix[q] = prefix[q - 1] + full.terms[q - 1];
  for (u64 q : q_grid) {
    if (q == 0) throw DomainError("truncation levels must be positive");
    SweepRow row;
    row.q_max = q;
    row.series_value = prefix[q];
    row.approximation = 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)) * prefix[q];
    row.abs_err = std::fabs(row.approximation - static_cast<double>(report.exact));
    if (report.exact > 0) row.rel_err = row.abs_err / static_cast<double>(report.exact);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<u64> geometric_grid(u64 lo, u64 hi) {
  std::vector<u64> out;
  lo = std::max<u64>(lo, 1);
  for (u64 decade = 1;; decade *= 10) {
    for (u64 v : {decade, 3 * decade}) {
      if (v >= lo && v < hi) out.push_back(v);
    }
    if (decade > hi / 10) break;
  }
  if (hi >= lo) out.push_back(hi);
  return out;
}

void write_csv(std::span<const Checkpoint> rows, std::ostream& out) {
  out << "x,partial_sum,main_term,abs_err,rel_err\n";
  for (const auto& c : rows) {
    out << c.x << ',' << to_string(c.partial_sum) << ',' << format_real(c.main_term) << ','
        << format_real(c.abs_err) << ',' << format_real(c.rel_err) << '\n';
  }
}

std::vector<Checkpoint> read_checkpoints_csv(std::istream& in) {
  std::string line;
  bool header = false;
  std::vector<Checkpoint> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "x,partial_sum,main_term,abs_err,rel_err") {
        throw FormatError("expected checkpoint header, got '" + line + "'");
      }
      header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw FormatError("checkpoint row needs 5 fields: '" + line + "'");
    Checkpoint c;
    const u128 x = parse_u128(fields[0]);
    if (x > std::numeric_limits<u64>::max()) throw FormatError("x out of range");
    c.x = static_cast<u64>(x);
    c.partial_sum = parse_u128(fields[1]);
    c.main_term = parse_real(fields[2]);
    c.abs_err = parse_real(fields[3]);
    c.rel_err = parse_real(fields[4]);
    rows.push_back(c);
  }
  if (!header) throw FormatError("empty checkpoint CSV");
  return rows;
}

void write_csv(const SweepReport& report, std::ostream& out) {
  out << "Q,series_value,approximation,exact,abs_err,rel_err\n";
  for (const auto& row : report.rows) {
    out << row.q_max << ',' << format_real(row.series_value) << ',' << format_real(row.approximation) << ','
        << report.exact << ',' << format_real(row.abs_err) << ',';
    if (row.rel_err) out << format_real(*row.rel_err);
    out << '\n';
  }
}

}  // namespace sq3
