#pragma once

// The rectilt command line: JSON on `out`, a human summary on `err`.
// Exit codes: 0 success, 1 a mathematical verdict of false, 2 input or
// hypothesis errors, 3 internal errors.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace rectilt::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GoldenCase {
  std::string file;                // output name inside the golden directory
  std::string fixture;             // fixture file the case needs
  std::vector<std::string> args;   // "{fixtures}" stands for the fixture directory
  int exit_code = 0;
};

/// The regression corpus: the glued algebra, its roster and exactness
/// report, the trivial product gluing and the failing mutated gluing.
std::vector<GoldenCase> golden_cases();

/// Arguments with "{fixtures}" replaced.
std::vector<std::string> golden_arguments(const GoldenCase& c, const std::filesystem::path& fixtures);

}  // namespace rectilt::cli
