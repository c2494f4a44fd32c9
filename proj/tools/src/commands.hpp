#pragma once

#include <iosfwd>

#include "sq3/cli/run.hpp"

namespace sq3::cli::detail {

// Each returns an exit status. `out` already points at the final sink.
int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_singular(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gauss(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_weyl_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sq3::cli::detail
