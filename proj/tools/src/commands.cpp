#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sq3/constants.hpp"
#include "sq3/errors.hpp"
#include "sq3/expsum.hpp"
#include "sq3/format.hpp"
#include "sq3/repcount.hpp"
#include "sq3/singular.hpp"
#include "sq3/table_io.hpp"
#include "sq3/verify.hpp"

namespace sq3::cli::detail {
namespace {

using json = nlohmann::ordered_json;
using Row = std::vector<std::string>;

// Keep partial sums of r_N^2 comfortably inside 128 bits.
constexpr double kGeneralMainTermCeiling = 1e30;

void write_json(const json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

json u128_json(u128 v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

void write_aligned(const Row& header, const std::vector<Row>& rows, std::ostream& out) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string pad(width[i] - r[i].size(), ' ');
      if (i == 0) {
        out << r[i] << pad;
      } else {
        out << "  " << pad << r[i];
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

BuilderTag tag_for(TableBuilder b) {
  switch (b) {
    case TableBuilder::fold: return BuilderTag::two_square_fold;
    case TableBuilder::convolution: return BuilderTag::convolution;
    case TableBuilder::positive: return BuilderTag::positive_only;
    case TableBuilder::lattice: return BuilderTag::direct_lattice;
  }
  return BuilderTag::convolution;
}

RepTable build_table(TableBuilder builder, unsigned order, std::uint64_t limit, unsigned threads,
                     std::ostream& err) {
  err << "building r_" << order << " table up to " << limit << " (" << to_string(tag_for(builder)) << ", "
      << threads << (threads == 1 ? " thread)\n" : " threads)\n");
  switch (builder) {
    case TableBuilder::fold: return build_r3_fold(limit, threads);
    case TableBuilder::positive: return build_rstar(limit, threads);
    case TableBuilder::lattice: return order == 1 ? build_r1(limit) : build_r2_lattice(limit);
    case TableBuilder::convolution: break;
  }
  return build_rk(limit, order, threads);
}

std::uint64_t general_cap(unsigned n_squares) {
  const double w = w_constant<double>(n_squares);
  return static_cast<std::uint64_t>(std::floor(std::pow(kGeneralMainTermCeiling / w, 1.0 / (n_squares - 1))));
}

json fit_json(const std::optional<FitResult>& fit) {
  if (!fit) return nullptr;
  return json{{"slope", fit->slope},
              {"intercept", fit->intercept},
              {"r_squared", fit->r_squared},
              {"points_used", fit->points_used},
              {"points_skipped", fit->points_skipped}};
}

std::optional<FitResult> try_fit(std::span<const Checkpoint> series) {
  try {
    return fit_error_exponent(series);
  } catch (const InsufficientPoints&) {
    return std::nullopt;
  }
}

void write_checkpoints_text(std::span<const Checkpoint> series, std::ostream& out) {
  std::vector<Row> rows;
  for (const auto& c : series) {
    rows.push_back({std::to_string(c.x), to_string(c.partial_sum), format_real(c.main_term),
                    format_real(c.abs_err), format_real(c.rel_err)});
  }
  write_aligned({"x", "partial_sum", "main_term", "abs_err", "rel_err"}, rows, out);
}

json checkpoints_json(std::span<const Checkpoint> series) {
  json arr = json::array();
  for (const auto& c : series) {
    arr.push_back({{"x", c.x},
                   {"partial_sum", u128_json(c.partial_sum)},
                   {"main_term", c.main_term},
                   {"abs_err", c.abs_err},
                   {"rel_err", c.rel_err}});
  }
  return arr;
}

template <typename Real>
json real_json(const Real& v) {
  if constexpr (std::is_same_v<Real, double>) {
    return v;
  } else {
    return to_decimal(v, 40);
  }
}

template <typename Real>
std::string real_text(const Real& v) {
  if constexpr (std::is_same_v<Real, double>) {
    return format_real(v);
  } else {
    return to_decimal(v, 40);
  }
}

template <typename Real>
int emit_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  err << "computing constants (B1 direct to " << cfg.q_max << ", Euler form to " << cfg.q_euler << ")\n";
  const auto report = make_constants_report<Real>(cfg.q_max, cfg.q_euler, cfg.w_values);
  const auto& a = report.assembly;

  if (cfg.format == OutputFormat::json) {
    json w = json::object();
    for (const auto& [n, v] : report.w_values) w[std::to_string(n)] = real_json(v);
    json doc{
        {"precision", cfg.precision == Precision::extended ? "extended" : "double"},
        {"b1_direct_at_Q", {{"Q", report.b1_direct_q}, {"value", real_json(report.b1_direct_at_q)}}},
        {"b1_euler_at_Q", {{"Q", report.b1_euler_q}, {"value", real_json(report.b1_euler_at_q)}}},
        {"b1_closed", real_json(report.b1_closed)},
        {"c3", real_json(report.c3)},
        {"w_values", w},
        {"muller_b", real_json(report.muller_b)},
        {"assembly_components",
         {{"prefactor", real_json(a.prefactor)},
          {"b_plus", real_json(a.b_plus)},
          {"phi_1", real_json(a.phi_1)},
          {"phi_12", real_json(a.phi_12)},
          {"phi_14", real_json(a.phi_14)},
          {"a0_sq_1", real_json(a.a0_sq_1)},
          {"a0_sq_12", real_json(a.a0_sq_12)},
          {"a0_sq_14", real_json(a.a0_sq_14)},
          {"a0_sq_formula_1", report.a0_sq_formula_1},
          {"a0_sq_formula_12", report.a0_sq_formula_12},
          {"a0_sq_formula_14", report.a0_sq_formula_14},
          {"width_1", cusp_data(Cusp::one).width},
          {"width_12", cusp_data(Cusp::half).width},
          {"width_14", cusp_data(Cusp::quarter).width}}}};
    write_json(doc, out);
    return kExitOk;
  }

  std::vector<Row> rows{
      {"b1_direct_at_Q", real_text(report.b1_direct_at_q), "Q=" + std::to_string(report.b1_direct_q)},
      {"b1_euler_at_Q", real_text(report.b1_euler_at_q), "Q=" + std::to_string(report.b1_euler_q)},
      {"b1_closed", real_text(report.b1_closed), ""},
      {"c3", real_text(report.c3), ""},
  };
  for (const auto& [n, v] : report.w_values) rows.push_back({"w_" + std::to_string(n), real_text(v), ""});
  rows.push_back({"muller_b", real_text(report.muller_b), ""});
  rows.push_back({"prefactor", real_text(a.prefactor), ""});
  rows.push_back({"b_plus", real_text(a.b_plus), ""});
  rows.push_back({"phi_1", real_text(a.phi_1), ""});
  rows.push_back({"phi_12", real_text(a.phi_12), ""});
  rows.push_back({"phi_14", real_text(a.phi_14), ""});
  rows.push_back({"a0_sq_1", real_text(a.a0_sq_1), "formula=" + format_real(report.a0_sq_formula_1)});
  rows.push_back({"a0_sq_12", real_text(a.a0_sq_12), "formula=" + format_real(report.a0_sq_formula_12)});
  rows.push_back({"a0_sq_14", real_text(a.a0_sq_14), "formula=" + format_real(report.a0_sq_formula_14)});

  if (cfg.format == OutputFormat::text) {
    write_aligned({"name", "value", "note"}, rows, out);
  } else {
    out << "name,value,note\n";
    for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << '\n';
  }
  return kExitOk;
}

// Best rational approximation a/q with q <= q_bound from the continued fraction of alpha.
std::pair<std::int64_t, std::uint64_t> dirichlet_approx(double alpha, std::uint64_t q_bound) {
  std::int64_t p0 = 0, p1 = 1;
  std::uint64_t q0 = 1, q1 = 0;
  double x = alpha;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(x);
    const auto c = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = c * p1 + p0;
    const std::uint64_t q2 = static_cast<std::uint64_t>(c) * q1 + q0;
    if (q2 > q_bound) break;
    p0 = p1;
    p1 = p2;
    q0 = q1;
    q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-12 || std::fabs(alpha - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-15) break;
    x = 1.0 / frac;
  }
  return {p1, q1};
}

}  // namespace

int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RepTable table = build_table(cfg.builder, cfg.order, cfg.limit, cfg.threads, err);
  if (cfg.format == OutputFormat::binary) {
    write_binary(table, out);
  } else {
    write_csv(table, out);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool general = cfg.subcommand == Subcommand::verify_general;
  const unsigned order = general ? cfg.n_squares : 3;
  std::uint64_t limit = cfg.limit;
  if (general) {
    const std::uint64_t cap = general_cap(order);
    if (limit > cap) {
      err << "capping --limit at " << cap << " for N = " << order << "\n";
      limit = cap;
    }
  }

  std::optional<RepTable> table;
  if (cfg.table) {
    err << "loading " << cfg.table->string() << "\n";
    table.emplace(load_table(*cfg.table, order, tag_for(cfg.builder)));
    if (table->order() != order) {
      throw UsageError("--table has order " + std::to_string(table->order()) + ", expected " +
                       std::to_string(order));
    }
    limit = std::min(limit, table->limit());
  }

  std::vector<std::uint64_t> grid = cfg.checkpoints;
  if (grid.empty()) {
    grid = geometric_grid(std::min<std::uint64_t>(100, limit), limit);
  } else if (grid.back() > limit) {
    if (cfg.table) throw CheckpointExceedsTable("checkpoint " + std::to_string(grid.back()) +
                                                " exceeds table limit " + std::to_string(limit));
    throw UsageError("--checkpoints must not exceed " + std::to_string(limit) + " for N = " +
                     std::to_string(order));
  }
  if (!table) {
    const TableBuilder builder = cfg.builder == TableBuilder::fold && order != 3 ? TableBuilder::convolution
                                                                                 : cfg.builder;
    if (builder != TableBuilder::fold && builder != TableBuilder::convolution) {
      throw UsageError("--builder for verify must be fold or convolution");
    }
    table.emplace(build_table(builder, order, grid.back(), cfg.threads, err));
  }

  std::vector<Checkpoint> series;
  std::string name;
  switch (cfg.subcommand) {
    case Subcommand::verify_mean:
      series = mean_value_series(*table, grid);
      name = "mean_value";
      break;
    case Subcommand::verify_meansquare:
      series = mean_square_series(*table, grid);
      name = "mean_square";
      break;
    default:
      series = mean_square_general(order, *table, grid);
      name = "mean_square_general";
      break;
  }
  const auto fit = try_fit(series);

  switch (cfg.format) {
    case OutputFormat::json:
      write_json(json{{"series", name},
                      {"order", order},
                      {"limit", grid.back()},
                      {"checkpoints", checkpoints_json(series)},
                      {"fit", fit_json(fit)}},
                 out);
      break;
    case OutputFormat::text:
      write_checkpoints_text(series, out);
      if (fit) {
        out << "fit: slope " << format_real(fit->slope) << ", intercept " << format_real(fit->intercept)
            << ", r_squared " << format_real(fit->r_squared) << ", points " << fit->points_used << '\n';
      }
      break;
    default:
      write_csv(series, out);
      if (fit) err << "fitted error exponent " << format_real(fit->slope) << " (r^2 " << format_real(fit->r_squared)
                   << ")\n";
      break;
  }

  int status = kExitOk;
  if (cfg.max_rel_err && series.back().rel_err > *cfg.max_rel_err) {
    err << "assertion failed: rel_err " << format_real(series.back().rel_err) << " at x = " << series.back().x
        << " exceeds --max-rel-err " << format_real(*cfg.max_rel_err) << "\n";
    status = kExitAssertion;
  }
  if (cfg.expect_decay && !(series.size() >= 2 && series.back().rel_err < series.front().rel_err)) {
    err << "assertion failed: rel_err does not decrease from x = " << series.front().x << " to x = "
        << series.back().x << "\n";
    status = kExitAssertion;
  }
  return status;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.precision == Precision::extended) return emit_constants<Extended>(cfg, out, err);
  return emit_constants<double>(cfg, out, err);
}

int cmd_singular(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t q_top = *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end());
  err << "singular series for n = " << cfg.n << " up to Q = " << q_top << "\n";
  const SweepReport report = singular_truncation_sweep(cfg.n, cfg.q_grid);
  std::optional<SingularTruncation> terms;
  if (cfg.terms) terms = singular_series(cfg.n, q_top);

  if (cfg.format == OutputFormat::json) {
    json rows = json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"Q", r.q_max},
                      {"series_value", r.series_value},
                      {"approximation", r.approximation},
                      {"abs_err", r.abs_err},
                      {"rel_err", r.rel_err ? json(*r.rel_err) : json(nullptr)}});
    }
    json doc{{"n", report.n}, {"exact", report.exact}, {"rows", rows}};
    if (terms) {
      json a = json::array();
      for (double t : terms->terms) a.push_back(t);
      doc["terms"] = a;
    }
    write_json(doc, out);
  } else if (cfg.format == OutputFormat::text) {
    std::vector<Row> rows;
    for (const auto& r : report.rows) {
      rows.push_back({std::to_string(r.q_max), format_real(r.series_value), format_real(r.approximation),
                      std::to_string(report.exact), format_real(r.abs_err),
                      r.rel_err ? format_real(*r.rel_err) : "-"});
    }
    write_aligned({"Q", "series_value", "approximation", "exact", "abs_err", "rel_err"}, rows, out);
    if (terms) {
      std::vector<Row> trows;
      for (std::uint64_t q = 1; q <= terms->q_max; ++q) trows.push_back({std::to_string(q), format_real(terms->term(q))});
      out << '\n';
      write_aligned({"q", "A_q_n"}, trows, out);
    }
  } else if (terms) {
    write_csv(*terms, out);
  } else {
    write_csv(report, out);
  }
  return kExitOk;
}

int cmd_gauss(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  struct GaussRow {
    std::int64_t a;
    Complex s;
    bool coprime;
  };
  std::vector<GaussRow> rows;
  if (cfg.a) {
    rows.push_back({*cfg.a, gauss_sum(cfg.q, *cfg.a), gcd(*cfg.a, cfg.q) == 1});
  } else {
    const GaussTable table(cfg.q);
    for (std::uint64_t a = 1; a <= cfg.q; ++a) {
      const auto sa = static_cast<std::int64_t>(a);
      rows.push_back({sa, table.at(sa), gcd(sa, cfg.q) == 1});
    }
  }
  const double closed = gauss_magnitude_closed(cfg.q);
  const double tol = 1e-9 * static_cast<double>(cfg.q);

  int status = kExitOk;
  for (const auto& r : rows) {
    if (r.coprime && std::fabs(std::abs(r.s) - closed) > tol) {
      err << "assertion failed: |S(" << cfg.q << ", " << r.a << ")| = " << format_real(std::abs(r.s))
          << " differs from the closed form " << format_real(closed) << "\n";
      status = kExitAssertion;
    }
  }

  if (cfg.format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"a", r.a},
                     {"re", r.s.real()},
                     {"im", r.s.imag()},
                     {"abs", std::abs(r.s)},
                     {"closed_abs", r.coprime ? json(closed) : json(nullptr)},
                     {"coprime", r.coprime}});
    }
    write_json(json{{"q", cfg.q}, {"sums", arr}}, out);
  } else {
    std::vector<Row> table;
    for (const auto& r : rows) {
      table.push_back({std::to_string(r.a), format_real(r.s.real()), format_real(r.s.imag()),
                       format_real(std::abs(r.s)), r.coprime ? format_real(closed) : "",
                       r.coprime ? "1" : "0"});
    }
    const Row header{"a", "re", "im", "abs", "closed_abs", "coprime"};
    if (cfg.format == OutputFormat::text) {
      write_aligned(header, table, out);
    } else {
      out << "a,re,im,abs,closed_abs,coprime\n";
      for (const auto& r : table) out << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << ',' << r[5] << '\n';
    }
  }
  return status;
}

int cmd_weyl_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n_terms > kMaxWeylTerms) {
    throw UsageError("--n-terms must not exceed " + std::to_string(kMaxWeylTerms));
  }
  const auto steps = static_cast<std::uint64_t>(std::ceil(1.0 / cfg.grid_step - 1e-9));
  err << "sweeping " << steps << " points with N = " << cfg.n_terms << "\n";
  const double n = static_cast<double>(cfg.n_terms);

  struct SweepPoint {
    double alpha, abs, normalized, ratio;
    std::int64_t a;
    std::uint64_t q;
  };
  std::vector<SweepPoint> points;
  points.reserve(steps);
  for (std::uint64_t k = 0; k < steps; ++k) {
    const double alpha = static_cast<double>(k) * cfg.grid_step;
    const double mag = std::abs(weyl_sum(alpha, cfg.n_terms));
    const auto [a, q] = dirichlet_approx(alpha, cfg.n_terms);
    const double qd = static_cast<double>(q);
    const double bound = n * std::sqrt(1.0 / qd + 1.0 / n + qd / (n * n));
    points.push_back({alpha, mag, mag / n, mag / bound, a, q});
  }

  if (cfg.format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"alpha", p.alpha},
                     {"abs", p.abs},
                     {"normalized", p.normalized},
                     {"a", p.a},
                     {"q", p.q},
                     {"weyl_ratio", p.ratio}});
    }
    write_json(json{{"n_terms", cfg.n_terms}, {"grid", cfg.grid_step}, {"points", arr}}, out);
    return kExitOk;
  }
  std::vector<Row> rows;
  for (const auto& p : points) {
    rows.push_back({format_real(p.alpha), format_real(p.abs), format_real(p.normalized), std::to_string(p.a),
                    std::to_string(p.q), format_real(p.ratio)});
  }
  const Row header{"alpha", "abs", "normalized", "a", "q", "weyl_ratio"};
  if (cfg.format == OutputFormat::text) {
    write_aligned(header, rows, out);
  } else {
    out << "alpha,abs,normalized,a,q,weyl_ratio\n";
    for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4] << ',' << r[5] << '\n';
  }
  return kExitOk;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream in(*cfg.input);
  if (!in) throw UsageError("cannot read --input " + cfg.input->string());
  const auto series = read_checkpoints_csv(in);
  err << "fitting " << series.size() << " checkpoints\n";
  const FitResult fit = fit_error_exponent(series);
  if (cfg.format == OutputFormat::json) {
    write_json(json{{"fit", fit_json(fit)}}, out);
  } else if (cfg.format == OutputFormat::text) {
    write_aligned({"slope", "intercept", "r_squared", "points_used", "points_skipped"},
                  {{format_real(fit.slope), format_real(fit.intercept), format_real(fit.r_squared),
                    std::to_string(fit.points_used), std::to_string(fit.points_skipped)}},
                  out);
  } else {
    out << "slope,intercept,r_squared,points_used,points_skipped\n"
        << format_real(fit.slope) << ',' << format_real(fit.intercept) << ',' << format_real(fit.r_squared) << ','
        << fit.points_used << ',' << fit.points_skipped << '\n';
  }
  return kExitOk;
}

}  // namespace sq3::cli::detail
