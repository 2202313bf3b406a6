#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace linfty::cli {

enum ExitCode : int { kVerified = 0, kFails = 1, kInputError = 2, kInternalError = 3 };

/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string digest(const std::string& text);

/// Runs one command. args excludes the program name. Reports go to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linfty::cli
