#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kLimit = 3 };

struct StructuralOptions {
  bool relaxed = false;
  std::uint64_t seed = 0;
  std::optional<int> grid_side;  // bramble size to aim for; default max(2, 2k)
};

/// Result of the long path -> well-linked set -> bramble -> linker pipeline.
struct StructuralOutcome {
  std::optional<PathSystem> solution;  // verified at congestion 2
  std::string stage;                   // failing stage when no solution
  std::string reason;
  std::string notes;                   // what was used, one item per line
};

/// Runs the pipeline, starting at the linker when `bramble` is given.
/// Strict mode throws SizeLimit at the first unmet threshold.
StructuralOutcome solve_structural(const LinkageInstance& inst, const std::optional<Bramble>& bramble,
                                   const StructuralOptions& options);

/// Parses the command line and runs one subcommand. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddpp::cli
