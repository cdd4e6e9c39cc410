#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rectilt/errors.hpp"
#include "rectilt/io.hpp"
#include "rectilt/recollement.hpp"
#include "support.hpp"

using namespace rectilt;
using namespace rectilt::testing;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures{RECTILT_FIXTURE_DIR};

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "rectilt-io-tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << contents;
  return p;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const io::AlgebraFile& lambda_file() {
  static const io::AlgebraFile file(fixtures / "lambda.json");
  return file;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("malformed JSON reports file, line and column") {
    const fs::path p = scratch("broken.json", "{\n  \"vertices\": [1, 2,\n}\n");
    const std::string msg = message_of([&] { io::read_json(p); });
    CHECK(msg.find("broken.json") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
    CHECK(message_of([] { io::read_json("/nonexistent/x.json"); }).find("cannot open") != std::string::npos);
  }

  TEST_CASE("rationals and matrices") {
    CHECK(io::rational_from_json("6/4", "x") == Rational(3, 2));
    CHECK(io::rational_from_json(-7, "x") == Rational(-7));
    CHECK(io::to_json(Rational(-1, 3)) == "-1/3");
    CHECK_THROWS_AS(io::rational_from_json("abc", "x"), InputError);
    CHECK_THROWS_AS(io::rational_from_json("1/0", "x"), InputError);
    CHECK_THROWS_AS(io::rational_from_json(1.5, "x"), InputError);
    const Mat m{{1, 2}, {Rational(1, 2), 0}};
    CHECK(io::matrix_from_json(io::matrix_to_json(m), 2, 2, "m") == m);
    CHECK(message_of([&] { io::matrix_from_json(io::matrix_to_json(m), 3, 2, "maps/alpha"); }).find("maps/alpha") !=
          std::string::npos);
  }

  TEST_CASE("algebra documents round trip and locate errors") {
    const AlgebraPtr& a = lambda_file().algebra();
    CHECK(find_presentation_isomorphism(*a, *lambda()));
    const io::Json j = io::algebra_to_json(*a);
    CHECK(j["dimension"] == 11);
    CHECK(j["basis"].size() == 11);
    const AlgebraPtr back = io::algebra_from_json(j);
    CHECK(back->dimension() == a->dimension());
    CHECK(find_presentation_isomorphism(*back, *a));

    io::Json bad = j;
    bad["arrows"][2]["target"] = "9";
    CHECK(message_of([&] { io::algebra_from_json(bad); }).find("arrows") != std::string::npos);
    io::Json rel = j;
    rel["relations"][0][0]["path"] = io::Json::array({"beta", "alpha"});
    CHECK_THROWS_AS(io::algebra_from_json(rel), RelationIllFormed);
    io::Json loop = io::Json::parse(R"({"vertices": ["1"], "arrows": [{"name": "x", "source": "1", "target": "1"}]})");
    CHECK_THROWS_AS(io::algebra_from_json(loop, 8), CapExceeded);
  }

  TEST_CASE("property: modules round trip through JSON") {
    const AlgebraPtr& a = lambda_file().algebra();
    std::mt19937_64 gen(12);
    for (const auto& m : enumerate_roster(a).modules()) {
      const Rep c = random_conjugate(gen, m);
      CHECK(io::module_from_json(io::module_to_json(c), a) == c);
    }
    const io::Json missing = io::Json::parse(R"({"dims": {"1": 1, "2": 1}})");
    const Rep z = io::module_from_json(missing, a);
    CHECK(z.map(0).is_zero());
    CHECK(message_of([&] { io::module_from_json(io::Json::parse(R"({"dims": {"7": 1}})"), a); }).find("7") !=
          std::string::npos);
    CHECK_THROWS_AS(io::module_from_json(io::Json::parse(R"({"dims": {"3": 1, "4": 1, "5": 1},
        "maps": {"alpha": [["1"]], "beta": [["1"]]}})"),
                                         a),
                    InputError);
  }

  TEST_CASE("declared modules are the thin indecomposables") {
    const io::AlgebraFile& f = lambda_file();
    const AlgebraPtr& a = f.algebra();
    const auto roster = enumerate_roster(a).modules();
    for (const auto& [x, y] : example_labels()) {
      const std::string name = "[" + x + "," + y + "]";
      const Rep m = f.parse_module(name, a);
      CHECK(m == pair(a, x, y));
      CHECK(find_isomorphic(roster, m));
    }
    const io::Namer namer(&f, a, io::Part::Whole);
    for (std::size_t i = 0; i < roster.size(); ++i) {
      const auto& [x, y] = example_labels()[i];
      CHECK(namer.name(roster[i]) == "[" + x + "," + y + "]");
    }
    CHECK(namer.name(sum(a, {roster[0], roster[1]})) == std::nullopt);
  }

  TEST_CASE("module expressions") {
    const io::AlgebraFile& f = lambda_file();
    const AlgebraPtr& a = f.algebra();
    CHECK(is_isomorphic(f.parse_module("P(3) + S(2)", a), sum(a, {P(a, "3"), S(a, "2")})));
    CHECK(is_isomorphic(f.parse_module("I(5)", a), I(a, "5")));
    CHECK(f.parse_module("T_case1", a).total_dim() == 1 + 2 + 3 + 4 + 4);

    const RecollementContext ctx = split_context(a, {2, 3, 4});
    const Rep tp = f.parse_module("T_prime", ctx.inner_algebra, io::Part::Inner);
    CHECK(tp.algebra_ptr() == ctx.inner_algebra);
    CHECK(is_isomorphic(tp, sum(ctx.inner_algebra, {projective(ctx.inner_algebra, 0), simple(ctx.inner_algebra, 0)})));
    const Rep from_file = f.parse_module((fixtures / "t_prime.json").string(), ctx.inner_algebra, io::Part::Inner);
    CHECK(is_isomorphic(from_file, tp));
    CHECK(f.parse_module("t_prime.json", ctx.inner_algebra, io::Part::Inner).total_dim() == 3);

    CHECK(message_of([&] { f.parse_module("T_prime", a); }).find("inner") != std::string::npos);
    CHECK(message_of([&] { f.parse_module("Q(1)", a); }).find("unknown module") != std::string::npos);
    CHECK(message_of([&] { f.parse_module("P(9)", a); }).find("unknown vertex") != std::string::npos);
    CHECK_THROWS_AS(f.parse_module("P(1)++S(1)", a), InputError);
    CHECK(f.module_names(io::Part::Outer) == std::vector<std::string>{"T_dprime_case1", "T_dprime_case2"});
  }

  TEST_CASE("rosters round trip") {
    const io::AlgebraFile& f = lambda_file();
    const Roster r = enumerate_roster(f.algebra());
    const io::Json j = io::roster_to_json(r, io::Namer(&f, f.algebra(), io::Part::Whole));
    CHECK(j["size"] == 15);
    CHECK(j["modules"][0]["origin"] == "projective");
    const auto back = io::roster_from_json(j, f.algebra());
    REQUIRE(back.size() == r.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == r.entries[i].module);
    const auto plain = io::roster_from_json(j["modules"], f.algebra());
    CHECK(plain.size() == 15);
    CHECK_THROWS_AS(io::roster_from_json(io::Json::object(), f.algebra()), InputError);
  }
}
