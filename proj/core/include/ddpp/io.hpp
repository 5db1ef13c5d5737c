#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp {

/// Instance files: `ddpp 1`, `n <count>`, `e <u> <v>` per edge, `k <pairs>`,
/// `p <i> <s> <t>` with 1-based i. `#` starts a comment. Throws ParseError.
LinkageInstance parse_instance(std::string_view text);
/// `comments` are emitted as `# ...` lines after the header.
std::string format_instance(const LinkageInstance& inst, const std::vector<std::string>& comments = {});

/// Solution files: `sol 1`, then `path <i>: v0 v1 ... vm`.
PathSystem parse_solution(std::string_view text);
std::string format_solution(const PathSystem& sol);

/// Bramble sidecars: `bramble 1`, then `bag <i>: v ...`.
Bramble parse_bramble(std::string_view text);
std::string format_bramble(const Bramble& b);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ddpp
