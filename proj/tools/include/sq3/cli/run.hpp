#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sq3::cli {

enum class Subcommand {
  tables,
  verify_mean,
  verify_meansquare,
  verify_general,
  constants,
  singular,
  gauss,
  weyl_sweep,
  fit,
};

enum class OutputFormat { csv, json, text, binary };
enum class Precision { standard, extended };
enum class TableBuilder { fold, convolution, positive, lattice };

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Subcommand subcommand = Subcommand::constants;
  std::uint64_t limit = 1'000'000;
  unsigned order = 3;
  std::uint64_t q_max = 4096;
  std::uint64_t q_euler = 1'000'000;
  std::vector<std::uint64_t> checkpoints;  // empty: 1-3-10 grid from 100 to limit
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> output;
  unsigned threads = 1;
  Precision precision = Precision::standard;
  bool overwrite = false;  // lifts the 10^8 limit cap and allows replacing --output
  bool reproducible = false;

  TableBuilder builder = TableBuilder::fold;
  std::optional<std::filesystem::path> table;  // verify-*: reuse an exported table
  std::optional<std::filesystem::path> input;  // fit: checkpoint CSV
  unsigned n_squares = 4;                      // verify-general --n
  std::uint64_t n = 1;                         // singular --n
  std::vector<std::uint64_t> q_grid{1, 10, 100, 1000, 10000};
  bool terms = false;                          // singular: emit A(q, n) terms
  std::uint64_t q = 1;                         // gauss --q
  std::optional<std::int64_t> a;              // gauss --a
  std::uint64_t n_terms = 1000;                // weyl-sweep
  double grid_step = 1e-3;                     // weyl-sweep
  std::vector<unsigned> w_values{4, 5, 6, 7, 8};
  std::optional<double> max_rel_err;
  bool expect_decay = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UsageError naming the offending flag.
void validate(const RunConfig& config);

// Runs one subcommand. Machine-readable output goes to `out` (or the
// configured file); progress and diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: parses, validates, runs, maps errors to
// exit codes. args excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sq3::cli
