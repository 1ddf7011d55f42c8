#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hgf::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInvalid = 2 };

// Runs one subcommand. args excludes the program name. Reports go to out (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "key = value" lines; '#' starts a comment. Throws DomainError on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace hgf::cli
