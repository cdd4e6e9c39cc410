#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rectilt/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("golden") {
  TEST_CASE("command outputs match the recorded files byte for byte") {
    const fs::path fixtures{RECTILT_FIXTURE_DIR}, golden{RECTILT_GOLDEN_DIR};
    const auto cases = rectilt::cli::golden_cases();
    CHECK(cases.size() == 9);
    for (const auto& c : cases) {
      CAPTURE(c.file);
      const fs::path expected = golden / c.file;
      REQUIRE(fs::exists(expected));
      std::ostringstream out, err;
      const int code = rectilt::cli::run(rectilt::cli::golden_arguments(c, fixtures), out, err);
      CHECK(code == c.exit_code);
      CHECK(out.str() == slurp(expected));
    }
  }
}
