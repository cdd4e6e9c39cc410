#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rectilt/cli.hpp"
#include "rectilt/io.hpp"
#include "rectilt/tilting.hpp"
#include "support.hpp"

using namespace rectilt;
using namespace rectilt::testing;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures{RECTILT_FIXTURE_DIR};

std::string fixture(const std::string& name) { return (fixtures / name).string(); }

struct Outcome {
  int code = 0;
  std::string out, err;
  io::Json json() const { return io::Json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Morphism morphism_from_json(const io::Json& j, const Rep& source, const Rep& target) {
  const Quiver& q = source.algebra().quiver();
  std::vector<Mat> c;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    c.push_back(io::matrix_from_json(j["components"][q.label(v)], target.dim(v), source.dim(v), "component"));
  return Morphism(source, target, c);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("algebra info and check") {
    const Outcome r = run({"algebra", "info", fixture("lambda.json")});
    CHECK(r.code == 0);
    CHECK(r.json()["dimension"] == 11);
    CHECK(run({"algebra", "check", fixture("lambda.json")}).code == 0);
  }

  TEST_CASE("exit codes") {
    const std::string lambda = fixture("lambda.json");
    CHECK(run({"tilting", "check", lambda, "T_case1"}).code == 0);
    CHECK(run({"tilting", "check", lambda, "S(3)"}).code == 1);

    const Outcome nt = run({"torsion", "partition", lambda, "S(3)"});
    CHECK(nt.code == 2);
    CHECK(nt.err.find("error: not tilting") != std::string::npos);
    CHECK(nt.json()["error"]["culprit"] == "tilting");

    const fs::path broken = fs::temp_directory_path() / "rectilt-cli-broken.json";
    std::ofstream(broken) << "{\"vertices\": [";
    const Outcome bad = run({"algebra", "info", broken.string()});
    CHECK(bad.code == 2);
    CHECK(bad.json()["error"]["kind"] == "InputError");

    const Outcome unknown = run({"module", "hom", lambda, "P(1)", "Nope"});
    CHECK(unknown.code == 2);
    CHECK(unknown.json()["error"]["message"].get<std::string>().find("unknown module") != std::string::npos);

    CHECK(run({"module", "iso", lambda, "P(1)", "S(1)"}).code == 1);
    CHECK(run({"module", "iso", lambda, "P(3)", "[P1,P3]"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"rec", "split", lambda, "--outer", "1,2"}).json()["error"]["kind"] == "NotTriangular");
  }

  TEST_CASE("module queries") {
    const std::string outer = fixture("lambda_dprime.json");
    const Outcome e = run({"module", "ext", outer, "S(3)", "S(5)", "--degree", "2"});
    CHECK(e.code == 0);
    CHECK(e.json()["dimension"] == 1);
    const Outcome h = run({"module", "hom", fixture("lambda.json"), "P(4)", "P(3)"});
    CHECK(h.json()["dimension"] == 1);
    const Outcome d = run({"module", "decompose", fixture("lambda.json"), "T_case2"});
    CHECK(d.code == 0);
    CHECK(d.out.find("[S2,S4]") != std::string::npos);
  }

  TEST_CASE("global options may follow the subcommand") {
    const std::string lambda = fixture("lambda.json");
    const Outcome a = run({"--seed", "7", "ar", "roster", lambda});
    const Outcome b = run({"ar", "roster", lambda, "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.json()["size"] == 15);
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"rec",  "glue",          fixture("lambda.json"), "--outer",
                                        "3,4,5", "--inner-tilting", "T_prime",           "--outer-tilting",
                                        "T_dprime_case2"};
    const Outcome first = run(args), second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    auto seeded = args;
    seeded.insert(seeded.end(), {"--seed", "5"});
    const io::Json a = first.json(), b = run(seeded).json();
    CHECK(a["summands"].size() == b["summands"].size());
    CHECK(a["partition"] == b["partition"]);
  }

  TEST_CASE("the glue certificate re-verifies from its raw matrices") {
    const Outcome r = run({"rec", "glue", fixture("lambda.json"), "--outer", "3,4,5", "--inner-tilting", "T_prime",
                           "--outer-tilting", "T_dprime_case2"});
    REQUIRE(r.code == 0);
    const io::Json j = r.json();
    CHECK(j["passes"] == true);
    const AlgebraPtr& l = lambda();

    std::vector<Rep> summands;
    for (const auto& m : j["summands"]) summands.push_back(io::module_from_json(m, l));
    REQUIRE(summands.size() == 5);
    const Rep t = sum(l, summands);
    for (const auto& x : summands) {
      CHECK(is_indecomposable(x));
      for (std::size_t v = 0; v < l->vertex_count(); ++v) CHECK(ext_k(x, simple(l, v), 2) == 0);
    }
    CHECK(ext1_dim(t, t) == 0);

    const io::Json& seq = j["universal_extension"]["sequence"];
    const Rep left = io::module_from_json(seq["left"], l), middle = io::module_from_json(seq["middle"], l),
              right = io::module_from_json(seq["right"], l);
    const SES s{left, middle, right, morphism_from_json(seq["inject"], left, middle),
                morphism_from_json(seq["project"], middle, right)};
    CHECK(is_exact(s));
    CHECK_FALSE(is_split(s));
    CHECK(j["ext_dimension"] == 2);
    // Two copies of j_!(P3 + P4 + S4) = (P1, P3) + (S2, P4) + (S2, S4).
    CHECK(is_isomorphic(left, power(sum(l, {pair(l, "P1", "P3"), pair(l, "S2", "P4"), pair(l, "S2", "S4")}), 2)));
    CHECK(ext1_dim(middle, io::module_from_json(seq["left"], l)) == 0);

    // Partition membership recomputed from Ext and Hom.
    const auto roster = roster_of(l);
    std::size_t torsion = 0, free = 0;
    for (const auto& m : roster) {
      torsion += ext1_dim(t, m) == 0;
      free += hom_dim(t, m) == 0;
    }
    CHECK(j["partition"]["torsion"].size() == torsion);
    CHECK(j["partition"]["free"].size() == free);
  }

  TEST_CASE("rec split checks the parts against expected algebras") {
    const std::string lambda = fixture("lambda.json");
    const Outcome ok = run({"rec", "split", lambda, "--outer", "3,4,5", "--expect-inner", fixture("lambda_prime.json"),
                            "--expect-outer", fixture("lambda_dprime.json")});
    CHECK(ok.code == 0);
    CHECK(ok.json()["inner_expected"]["isomorphic"] == true);
    CHECK(ok.json()["outer_expected"]["arrow_map"]["beta"] == "beta");
    const Outcome swapped = run({"rec", "split", lambda, "--outer", "3,4,5", "--expect-inner", fixture("lambda_dprime.json")});
    CHECK(swapped.code == 1);
    CHECK(swapped.json()["inner_expected"]["isomorphic"] == false);
  }

  TEST_CASE("golden regeneration skips missing fixtures") {
    const fs::path empty = fs::temp_directory_path() / "rectilt-empty-fixtures";
    const fs::path out = fs::temp_directory_path() / "rectilt-empty-golden";
    fs::remove_all(out);
    fs::create_directories(empty);
    const Outcome r = run({"golden", "regen", "--fixtures", empty.string(), "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.json()["written"].empty());
    CHECK_FALSE(fs::exists(out));
  }

  TEST_CASE("rec apply and restrict") {
    const std::string lambda = fixture("lambda.json");
    const Outcome a = run({"rec", "apply", lambda, "--outer", "3,4,5", "j_!", "S(4)"});
    CHECK(a.code == 0);
    CHECK(a.out.find("[S2,S4]") != std::string::npos);
    CHECK(run({"rec", "restrict", lambda, "--outer", "3,4,5", "--tilting", "T_case3", "--side", "right"}).code == 1);
    CHECK(run({"rec", "restrict", lambda, "--outer", "3,4,5", "--tilting", "T_case4", "--side", "right"}).code == 0);
    const Outcome left = run({"rec", "restrict", lambda, "--outer", "3,4,5", "--tilting", "T_case1", "--side", "left"});
    CHECK(left.code == 2);
    CHECK(left.json()["error"]["culprit"] == "i*");
  }
}
