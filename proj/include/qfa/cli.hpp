#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qfa/automata.hpp"

namespace qfa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kConsistency = 3,
  kEnumerationGuard = 4,
};

/// Splits `text` on `sep`, or into UTF-8 characters when `sep` is empty.
/// An empty `text` is the empty word.
Word parse_word(std::string_view text, std::string_view sep = "");

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfa::cli
