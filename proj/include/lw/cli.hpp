#ifndef LW_CLI_HPP
#define LW_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lw/estimators.hpp"

namespace lw::cli {

/// Runs the full command-line surface. `args` excludes the program name.
/// Returns the process exit status: 0 on success, 2 on usage errors, 1 on
/// runtime/numerical errors. `in` backs `--input -`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

/// Informational note emitted by `estimate --method all` when the spread of
/// estimates exceeds twice the largest standard error.
std::optional<std::string> disagreement_note(const std::vector<EstimateResult>& results);

}  // namespace lw::cli

#endif  // LW_CLI_HPP
