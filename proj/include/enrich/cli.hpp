#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "enrich/harness.hpp"

namespace enrich {

enum class Format { automatic, tree, edges, polygon, perm };

Format parse_format(const std::string& s);  // auto|tree|edges|polygon|perm
// UsageError when the object has no representation in the format.
std::string serialize(const SampledObject& o, Format f);

// Reads P(zeta = 0), P(zeta = 1), ... one per line; '#' starts a comment.
ZetaSpec read_zeta_file(const std::string& path, std::vector<std::size_t> omega);

// Subcommands sample, count, selftest, bench. Returns the process exit code:
// 0 on success, 1 on a failed check or runtime error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace enrich
