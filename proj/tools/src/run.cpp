#include "sq3/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sq3/errors.hpp"
#include "sq3/repcount.hpp"

namespace sq3::cli {
namespace {

bool is_verify(Subcommand s) {
  return s == Subcommand::verify_mean || s == Subcommand::verify_meansquare ||
         s == Subcommand::verify_general;
}

std::string timestamp_line() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string("# sq3 generated ") + buf + "\n";
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.subcommand) {
    case Subcommand::tables: return detail::cmd_tables(cfg, out, err);
    case Subcommand::verify_mean:
    case Subcommand::verify_meansquare:
    case Subcommand::verify_general: return detail::cmd_verify(cfg, out, err);
    case Subcommand::constants: return detail::cmd_constants(cfg, out, err);
    case Subcommand::singular: return detail::cmd_singular(cfg, out, err);
    case Subcommand::gauss: return detail::cmd_gauss(cfg, out, err);
    case Subcommand::weyl_sweep: return detail::cmd_weyl_sweep(cfg, out, err);
    case Subcommand::fit: return detail::cmd_fit(cfg, out, err);
  }
  throw UsageError("unknown subcommand");
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
  if (cfg.limit > kMaxLimitWithoutOverride && !cfg.overwrite) {
    throw UsageError("--limit above 100000000 needs --overwrite");
  }
  if (cfg.limit < 1 && cfg.subcommand != Subcommand::tables) throw UsageError("--limit must be positive");
  if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end())) {
    throw UsageError("--checkpoints must be sorted ascending");
  }
  if (!cfg.checkpoints.empty()) {
    if (cfg.checkpoints.front() == 0) throw UsageError("--checkpoints must be positive");
    if (!cfg.table && cfg.checkpoints.back() > cfg.limit) {
      throw UsageError("--checkpoints must not exceed --limit");
    }
  }
  if (cfg.format == OutputFormat::binary && cfg.subcommand != Subcommand::tables) {
    throw UsageError("--format binary is only valid for 'tables'");
  }
  switch (cfg.subcommand) {
    case Subcommand::tables:
      if (cfg.format == OutputFormat::json || cfg.format == OutputFormat::text) {
        throw UsageError("--format for 'tables' must be csv or binary");
      }
      if (cfg.order < 1) throw UsageError("--order must be at least 1");
      if (cfg.builder == TableBuilder::fold && cfg.order != 3) {
        throw UsageError("--builder fold only builds order 3");
      }
      if (cfg.builder == TableBuilder::positive && cfg.order != 3) {
        throw UsageError("--builder positive only builds order 3");
      }
      if (cfg.builder == TableBuilder::lattice && cfg.order > 2) {
        throw UsageError("--builder lattice only builds orders 1 and 2");
      }
      break;
    case Subcommand::verify_general:
      if (cfg.n_squares <= 3) throw UsageError("--n must be greater than 3");
      break;
    case Subcommand::singular:
      if (cfg.n < 1) throw UsageError("--n must be positive");
      if (cfg.q_grid.empty()) throw UsageError("--q-grid must not be empty");
      if (std::find(cfg.q_grid.begin(), cfg.q_grid.end(), 0U) != cfg.q_grid.end()) {
        throw UsageError("--q-grid entries must be positive");
      }
      break;
    case Subcommand::gauss:
      if (cfg.q < 1) throw UsageError("--q must be positive");
      break;
    case Subcommand::weyl_sweep:
      if (cfg.n_terms < 1) throw UsageError("--n-terms must be positive");
      if (!(cfg.grid_step > 0 && cfg.grid_step <= 1)) throw UsageError("--grid must be in (0, 1]");
      break;
    case Subcommand::fit:
      if (!cfg.input) throw UsageError("--input is required for 'fit'");
      break;
    case Subcommand::constants:
      if (cfg.q_max < 1 || cfg.q_euler < 1) throw UsageError("--q-max and --q-euler must be positive");
      for (unsigned n : cfg.w_values) {
        if (n < 3) throw UsageError("--w-n entries must be at least 3");
      }
      break;
    default: break;
  }
  if (is_verify(cfg.subcommand) && cfg.max_rel_err && !(*cfg.max_rel_err >= 0)) {
    throw UsageError("--max-rel-err must be non-negative");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.output) {
    if (std::filesystem::exists(*cfg.output) && !cfg.overwrite) {
      throw UsageError("--output " + cfg.output->string() + " exists; pass --overwrite to replace it");
    }
    file.open(*cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open --output " + cfg.output->string());
    sink = &file;
  }
  const bool textual = cfg.format == OutputFormat::csv || cfg.format == OutputFormat::text;
  if (!cfg.reproducible && textual) *sink << timestamp_line();
  const int status = dispatch(cfg, *sink, err);
  sink->flush();
  return status;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Sums of three squares: exact tables and asymptotic verification", "sq3"};
  app.require_subcommand(1);
  app.fallthrough();

  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                    {"json", OutputFormat::json},
                                                    {"text", OutputFormat::text},
                                                    {"binary", OutputFormat::binary}};
  const std::map<std::string, Precision> precisions{{"double", Precision::standard},
                                                    {"extended", Precision::extended}};
  const std::map<std::string, TableBuilder> builders{{"fold", TableBuilder::fold},
                                                     {"convolution", TableBuilder::convolution},
                                                     {"positive", TableBuilder::positive},
                                                     {"lattice", TableBuilder::lattice}};
  std::string output;
  app.add_option("--limit,-x", cfg.limit, "Table limit x");
  app.add_option("--order,-k", cfg.order, "Number of squares k");
  app.add_option("--q-max", cfg.q_max, "Truncation level Q");
  app.add_option("--checkpoints", cfg.checkpoints, "Comma-separated checkpoint grid")->delimiter(',');
  app.add_option("--format", cfg.format, "csv | json | text | binary")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--output,-o", output, "Write to this file instead of standard output");
  app.add_option("--threads,-j", cfg.threads, "Worker threads");
  app.add_option("--precision", cfg.precision, "double | extended")
      ->transform(CLI::CheckedTransformer(precisions, CLI::ignore_case));
  app.add_flag("--overwrite", cfg.overwrite, "Allow limits above 10^8 and replacing --output");
  app.add_flag("--reproducible", cfg.reproducible, "Omit the timestamp header line");

  auto* tables = app.add_subcommand("tables", "Build and export a representation-count table");
  tables->add_option("--builder", cfg.builder, "fold | convolution | positive | lattice")
      ->transform(CLI::CheckedTransformer(builders, CLI::ignore_case));

  std::string table_path;
  std::optional<double> max_rel;
  auto add_verify_opts = [&](CLI::App* sub) {
    sub->add_option("--table", table_path, "Previously exported table (CSV or RKTB)");
    sub->add_option("--builder", cfg.builder, "fold | convolution")
        ->transform(CLI::CheckedTransformer(builders, CLI::ignore_case));
    sub->add_option("--max-rel-err", max_rel, "Fail when the last rel_err exceeds this");
    sub->add_flag("--expect-decay", cfg.expect_decay, "Fail unless rel_err decreases over the grid");
  };
  auto* vmean = app.add_subcommand("verify-mean", "Partial sums of r_3 against (4/3) pi x^{3/2}");
  add_verify_opts(vmean);
  auto* vsq = app.add_subcommand("verify-meansquare", "Partial sums of r_3^2 against C_3 x^2");
  add_verify_opts(vsq);
  auto* vgen = app.add_subcommand("verify-general", "Partial sums of r_N^2 against W_N x^{N-1}");
  add_verify_opts(vgen);
  vgen->add_option("--n", cfg.n_squares, "Number of squares N > 3")->required();

  auto* consts = app.add_subcommand("constants", "Report every constant with cross-checks");
  consts->add_option("--q-euler", cfg.q_euler, "Truncation of the Euler-form B_1 sum");
  consts->add_option("--w-n", cfg.w_values, "N values for W_N")->delimiter(',');

  auto* sing = app.add_subcommand("singular", "Truncated singular series against r_3(n)");
  sing->add_option("--n", cfg.n, "Target n")->required();
  sing->add_option("--q-grid", cfg.q_grid, "Comma-separated truncation levels")->delimiter(',');
  sing->add_flag("--terms", cfg.terms, "Emit A(q, n) for q up to the largest grid level");

  auto* gauss = app.add_subcommand("gauss", "Quadratic Gauss sums S(q, a)");
  gauss->add_option("--q", cfg.q, "Modulus q")->required();
  std::optional<std::int64_t> a_opt;
  gauss->add_option("--a", a_opt, "Single residue a (default: all 1..q)");

  auto* weyl = app.add_subcommand("weyl-sweep", "|f(alpha)| profile over [0, 1)");
  weyl->add_option("--n-terms", cfg.n_terms, "Terms N of the Weyl sum");
  weyl->add_option("--grid", cfg.grid_step, "Step in alpha");

  auto* fit = app.add_subcommand("fit", "Fit the error exponent of an exported series");
  std::string input;
  fit->add_option("--input", input, "Checkpoint CSV from verify-*")->required();

  std::vector<std::string> argv_store{"sq3"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::pair<CLI::App*, Subcommand> subs[] = {
      {tables, Subcommand::tables},        {vmean, Subcommand::verify_mean},
      {vsq, Subcommand::verify_meansquare}, {vgen, Subcommand::verify_general},
      {consts, Subcommand::constants},     {sing, Subcommand::singular},
      {gauss, Subcommand::gauss},          {weyl, Subcommand::weyl_sweep},
      {fit, Subcommand::fit}};
  for (const auto& [sub, kind] : subs) {
    if (sub->parsed()) cfg.subcommand = kind;
  }
  if (!output.empty()) cfg.output = output;
  if (!table_path.empty()) cfg.table = table_path;
  if (!input.empty()) cfg.input = input;
  cfg.a = a_opt;
  cfg.max_rel_err = max_rel;

  try {
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TableTooShort& e) {
    err << "table too short: " << e.what() << "\n";
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << "\n";
  } catch (const CheckpointExceedsTable& e) {
    err << "checkpoint exceeds table: " << e.what() << "\n";
  } catch (const InsufficientPoints& e) {
    err << "insufficient points: " << e.what() << "\n";
  } catch (const NotCoprime& e) {
    err << "not coprime: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "bad input file: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitAssertion;
}

}  // namespace sq3::cli
