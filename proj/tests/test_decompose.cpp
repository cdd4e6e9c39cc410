#include <doctest.h>

#include <algorithm>

#include "rectilt/errors.hpp"
#include "support.hpp"

using namespace rectilt;
using namespace rectilt::testing;

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Roster index of every summand, matched by isomorphism.
std::vector<std::size_t> summand_indices(const Decomposition& d, const std::vector<Rep>& roster) {
  std::vector<std::size_t> out;
  for (const auto& s : d.summands) {
    const auto i = find_isomorphic(roster, s.module);
    REQUIRE(i);
    out.push_back(*i);
  }
  return sorted(out);
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("roster modules are indecomposable with local endomorphism rings") {
    for (const auto& a : {a2(), a3_zero_relation(), lambda()})
      for (const auto& m : roster_of(a)) {
        CHECK(is_indecomposable(m));
        CHECK(endomorphism_top_dimension(m) == 1);
        CHECK(decompose(m).summands.size() == 1);
      }
  }

  TEST_CASE("the zero module has no summands") {
    const Decomposition d = decompose(Rep::zero(lambda()));
    CHECK(d.summands.empty());
    CHECK(d.class_count() == 0);
  }

  TEST_CASE("property: random sums in random bases decompose into their parts") {
    std::mt19937_64 gen(2024);
    const AlgebraPtr& l = lambda();
    const auto& roster = roster_of(l);
    for (int trial = 0; trial < 12; ++trial) {
      const auto parts = random_parts(gen, roster.size(), 4);
      std::vector<Rep> mods;
      for (auto p : parts) mods.push_back(roster[p]);
      const Rep m = random_conjugate(gen, sum(l, mods));
      const Decomposition d = decompose(m, gen());
      CHECK(summand_indices(d, roster) == sorted(parts));
      // The inclusions and projections split M.
      Morphism total = Morphism::zero(m, m);
      for (const auto& s : d.summands) {
        CHECK((s.projection * s.inclusion).is_isomorphism());
        total = total + s.inclusion * s.projection;
      }
      CHECK(total.is_isomorphism());
      std::size_t mult = 0;
      for (auto x : d.multiplicities) mult += x;
      CHECK(mult == parts.size());
    }
  }

  TEST_CASE("Krull-Schmidt stability under different seeds") {
    const AlgebraPtr& l = lambda();
    const auto& roster = roster_of(l);
    const Rep all = sum(l, roster);
    const Decomposition d0 = decompose(all, 0), d1 = decompose(all, 1);
    REQUIRE(d0.summands.size() == roster.size());
    REQUIRE(d1.summands.size() == roster.size());
    for (std::size_t i = 0; i < roster.size(); ++i) {
      CHECK(d0.summands[i].module.dims() == d1.summands[i].module.dims());
      CHECK(is_isomorphic(d0.summands[i].module, d1.summands[i].module));
    }
    for (const auto& m : roster) CHECK(canonical_key(decompose(m, 0).summands[0].module) == canonical_key(decompose(m, 1).summands[0].module));
  }

  TEST_CASE("isomorphism search returns verified witnesses") {
    std::mt19937_64 gen(3);
    const AlgebraPtr& l = lambda();
    const auto& roster = roster_of(l);
    for (const auto& m : roster) {
      const Rep c = random_conjugate(gen, m);
      const auto iso = find_isomorphism(m, c);
      REQUIRE(iso);
      CHECK(iso->is_isomorphism());
    }
    // Same dimension vector, different modules: S(1)+S(2) and P(1) over A2.
    const AlgebraPtr a = a2();
    CHECK_FALSE(is_isomorphic(P(a, "1"), sum(a, {S(a, "1"), S(a, "2")})));
    CHECK(is_isomorphic(sum(a, {P(a, "1"), S(a, "2")}), sum(a, {S(a, "2"), P(a, "1")})));
  }

  TEST_CASE("basic, add-equality and membership") {
    const AlgebraPtr& l = lambda();
    const Rep p3 = P(l, "3"), s2 = S(l, "2");
    const Rep m = sum(l, {p3, s2, p3, s2, s2});
    const auto b = basic_summands(m);
    CHECK(b.size() == 2);
    CHECK(basic(m).total_dim() == p3.total_dim() + s2.total_dim());
    CHECK(in_add(m, {s2, p3}));
    CHECK_FALSE(in_add(m, {p3}));
    CHECK(add_equal({p3, s2}, b));
    CHECK_FALSE(add_equal({p3}, b));
    std::vector<Rep> into{p3};
    merge_unique(into, {s2, p3, s2});
    CHECK(into.size() == 2);
  }

  TEST_CASE("endomorphisms of a matrix-ring summand split") {
    // S(1)^3 has End = M_3(Q), top dimension 9, and splits into 3 copies.
    const AlgebraPtr a = a2();
    const Rep m = power(S(a, "1"), 3);
    CHECK(endomorphism_top_dimension(m) == 9);
    const Decomposition d = decompose(m);
    CHECK(d.summands.size() == 3);
    CHECK(d.class_count() == 1);
    CHECK(d.multiplicities == std::vector<std::size_t>{3});
  }

  TEST_CASE("a division algebra over Q is reported, not split") {
    // The Kronecker module with x = id and y = a rotation by a quarter turn
    // has End = Q[rotation], the field Q(i): no rational eigenvalue to split
    // along, and indeed indecomposable over Q.
    auto free2 = Algebra::build(Quiver::from_labels({"1", "2"}, {{"x", "1", "2"}, {"y", "1", "2"}}), {});
    const Rep k(free2, {2, 2}, {Mat::identity(2), Mat{{0, -1}, {1, 0}}});
    CHECK(endomorphism_top_dimension(k) == 2);
    CHECK_THROWS_AS(decompose(k), PossibleDivisionAlgebra);
  }
}
