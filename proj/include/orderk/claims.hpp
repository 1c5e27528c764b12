#pragma once

#include <string>
#include <vector>

namespace orderk {

// One row of the reproduction index: a verifiable statement about the
// distribution, the command that checks it, and what counts as a pass.
struct ClaimEntry {
  std::string claim_id;
  std::string statement;
  std::string command_line;
  std::string expected;
  std::string status;  // reproduced | scaled-down | informational
};

const std::vector<ClaimEntry>& claim_index();

// Markdown document with one row per claim.
std::string generate_claim_index();

// Cross-checks the index against the verify suites: every suite is referenced
// by at least one claim, every referenced suite exists, and informational
// claims name a real subcommand.  Returns human-readable problems; empty means
// the index is complete.
std::vector<std::string> validate_claim_index();

}  // namespace orderk
