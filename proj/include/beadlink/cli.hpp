#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace beadlink {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  /// Axiom violation, table mismatch or engine divergence.
  kExitFailure = 1,
  kExitInputError = 2,
};

/// Runs the command line (args excludes the program name). Output goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Text rendering of a batch JSON document; the text output mode prints
/// exactly this.
std::string render_batch_text(const nlohmann::json& batch);

/// Dispatches on the document shape (single invariant record or batch).
std::string render_json_as_text(const nlohmann::json& doc);

}  // namespace beadlink
