#include <doctest.h>

#include "rectilt/errors.hpp"
#include "rectilt/recollement.hpp"
#include "support.hpp"

using namespace rectilt;
using namespace rectilt::testing;

namespace {

const RecollementContext& lambda_context() {
  static const RecollementContext ctx = split_context(lambda(), {2, 3, 4});
  return ctx;
}

// dim i^*(M) at u in V': dim M_u minus the rank of all paths from V'' into u.
std::vector<std::size_t> i_upper_star_dims(const RecollementContext& ctx, const Rep& m) {
  const Algebra& a = m.algebra();
  std::vector<std::size_t> dims;
  for (auto u : ctx.inner) {
    std::vector<Mat> blocks;
    for (auto v : ctx.outer)
      for (auto b : a.basis_between(v, u)) blocks.push_back(m.path_action(a.basis()[b]));
    std::size_t r = 0;
    if (!blocks.empty()) r = rank(hstack(blocks, m.dim(u)));
    dims.push_back(m.dim(u) - r);
  }
  return dims;
}

std::vector<std::size_t> restricted_dims(const Rep& m, const std::vector<std::size_t>& part) {
  std::vector<std::size_t> dims;
  for (auto v : part) dims.push_back(m.dim(v));
  return dims;
}

}  // namespace

TEST_SUITE("recollement") {
  TEST_CASE("splits must be triangular and proper") {
    CHECK_THROWS_AS(split_context(lambda(), {0, 1}), NotTriangular);
    CHECK_THROWS_AS(split_context(lambda(), {}), InputError);
    CHECK_THROWS_AS(split_context(lambda(), {0, 1, 2, 3, 4}), InputError);
    const RecollementContext& ctx = lambda_context();
    CHECK(ctx.inner == std::vector<std::size_t>{0, 1});
    CHECK(find_presentation_isomorphism(*ctx.inner_algebra, *a2()));
    CHECK(find_presentation_isomorphism(*ctx.outer_algebra, *a3_zero_relation()));
    // e Lambda f: paths from {3, 4, 5} into 1 and into 2.
    REQUIRE(ctx.bimodule_rows.size() == 2);
    CHECK(ctx.bimodule_rows[0].total_dim() == 1);  // epsilon
    CHECK(ctx.bimodule_rows[1].total_dim() == 2);  // gamma, gamma*alpha
  }

  TEST_CASE("functor names round trip") {
    for (auto f : {Functor::IUpperStar, Functor::ILowerStar, Functor::IShriek, Functor::JShriek, Functor::JUpperStar,
                   Functor::JLowerStar})
      CHECK(parse_functor(functor_name(f)) == f);
    CHECK(parse_functor("j_shriek") == Functor::JShriek);
    CHECK_THROWS_AS(parse_functor("k*"), InputError);
  }

  TEST_CASE("j_! on the outer modules") {
    const RecollementContext& ctx = lambda_context();
    const AlgebraPtr& l = lambda();
    const AlgebraPtr& o = ctx.outer_algebra;
    for (std::size_t k = 0; k < ctx.outer.size(); ++k)
      CHECK(is_isomorphic(j_shriek(ctx, projective(o, k)), projective(l, ctx.outer[k])));
    // Right exactness on 0 -> P5 -> P4 -> S4 and P4 -> P3 -> S3: j_!(S4) is
    // P(4)/P(5) and j_!(S3) is P(3) modulo the image of alpha.
    CHECK(is_isomorphic(j_shriek(ctx, simple(o, 1)), pair(l, "S2", "S4")));
    CHECK(is_isomorphic(j_shriek(ctx, simple(o, 0)), pair(l, "S1", "S3")));
    CHECK(is_isomorphic(j_shriek(ctx, simple(o, 2)), pair(l, "0", "P5")));
  }

  TEST_CASE("property: functor dimensions match independent formulas") {
    const RecollementContext& ctx = lambda_context();
    for (const auto& m : roster_of(lambda())) {
      CHECK(i_upper_star(ctx, m).dims() == i_upper_star_dims(ctx, m));
      CHECK(i_shriek(ctx, m).dims() == restricted_dims(m, ctx.inner));
      CHECK(j_star_upper(ctx, m).dims() == restricted_dims(m, ctx.outer));
      CHECK(i_upper_star(ctx, m).algebra_ptr() == ctx.inner_algebra);
      CHECK(j_star_upper(ctx, m).algebra_ptr() == ctx.outer_algebra);
    }
  }

  TEST_CASE("composite identities on every part module") {
    const RecollementContext& ctx = lambda_context();
    for (const auto& x : roster_of(ctx.inner_algebra)) {
      CHECK(is_isomorphic(i_upper_star(ctx, i_star(ctx, x)), x));
      CHECK(is_isomorphic(i_shriek(ctx, i_star(ctx, x)), x));
      CHECK(j_star_upper(ctx, i_star(ctx, x)).is_zero());
    }
    for (const auto& y : roster_of(ctx.outer_algebra)) {
      CHECK(is_isomorphic(j_star_upper(ctx, j_shriek(ctx, y)), y));
      CHECK(is_isomorphic(j_star_upper(ctx, j_star_lower(ctx, y)), y));
      CHECK(i_upper_star(ctx, j_shriek(ctx, y)).is_zero());
      CHECK(i_shriek(ctx, j_star_lower(ctx, y)).is_zero());
    }
  }

  TEST_CASE("property: adjunction dimensions") {
    const RecollementContext& ctx = lambda_context();
    const auto& inner = roster_of(ctx.inner_algebra);
    const auto& outer = roster_of(ctx.outer_algebra);
    for (const auto& m : roster_of(lambda())) {
      for (const auto& x : inner) {
        CHECK(hom_dim(i_upper_star(ctx, m), x) == hom_dim(m, i_star(ctx, x)));
        CHECK(hom_dim(i_star(ctx, x), m) == hom_dim(x, i_shriek(ctx, m)));
      }
      for (const auto& y : outer) {
        CHECK(hom_dim(j_shriek(ctx, y), m) == hom_dim(y, j_star_upper(ctx, m)));
        CHECK(hom_dim(j_star_upper(ctx, m), y) == hom_dim(m, j_star_lower(ctx, y)));
      }
    }
  }

  TEST_CASE("property: functors respect composition and identities") {
    const RecollementContext& ctx = lambda_context();
    const auto& roster = roster_of(lambda());
    const auto& outer = roster_of(ctx.outer_algebra);
    std::mt19937_64 gen(4);
    int composites = 0;
    for (int trial = 0; trial < 200 && composites < 15; ++trial) {
      const Rep& a = roster[gen() % roster.size()];
      const Rep& b = roster[gen() % roster.size()];
      const Rep& c = roster[gen() % roster.size()];
      const auto f = hom_basis(a, b), g = hom_basis(b, c);
      if (f.empty() || g.empty()) continue;
      ++composites;
      for (auto fn : {Functor::IUpperStar, Functor::IShriek, Functor::JUpperStar}) {
        const Morphism lhs = apply(ctx, fn, g[0] * f[0]);
        const Morphism rhs = apply(ctx, fn, g[0]) * apply(ctx, fn, f[0]);
        CHECK(lhs.total() == rhs.total());
        CHECK(apply(ctx, fn, Morphism::identity(a)).total() == Mat::identity(apply(ctx, fn, a).total_dim()));
      }
    }
    CHECK(composites == 15);
    for (const auto& y : outer)
      for (const auto& z : outer)
        for (const auto& h : hom_basis(y, z)) {
          const Morphism up = apply(ctx, Functor::JShriek, h);
          CHECK(is_isomorphic(up.source(), j_shriek(ctx, y)));
          CHECK(apply(ctx, Functor::JUpperStar, up).total() == h.total());
        }
  }

  TEST_CASE("canonical sequences are exact with outer parts in the right places") {
    const RecollementContext& ctx = lambda_context();
    for (const auto& m : roster_of(lambda())) {
      const SES s = canonical_sequence(ctx, m);
      CHECK(is_exact(s));
      CHECK(j_star_upper(ctx, s.left).is_zero());
      CHECK(i_shriek(ctx, s.right).is_zero());
    }
  }

  TEST_CASE("exactness reports") {
    const ExactnessReport r = check_exactness(lambda_context());
    REQUIRE(r.functors.size() == 6);
    const FunctorExactness& i = r.at(Functor::IUpperStar);
    CHECK_FALSE(i.exact);
    CHECK(i.method == "tor");
    REQUIRE(i.witness);
    CHECK(i.witness->dim > 0);
    for (auto f : {Functor::ILowerStar, Functor::IShriek, Functor::JShriek, Functor::JUpperStar, Functor::JLowerStar})
      CHECK(r.at(f).exact);
    CHECK(r.at(Functor::JShriek).method == "tor");
    CHECK(r.at(Functor::IShriek).method == "structural");

    const ExactnessReport p = check_exactness(split_context(product_lambda(), {2, 3, 4}));
    for (const auto& f : p.functors) CHECK(f.exact);

    const ExactnessReport m = check_exactness(split_context(mutated_lambda(), {2, 3, 4}));
    const FunctorExactness& j = m.at(Functor::JShriek);
    CHECK_FALSE(j.exact);
    REQUIRE(j.witness);
    // kappa*alpha = 0 leaves Tor_1(e_1 Lambda f, S(3)) one-dimensional.
    CHECK(j.witness->row == 0);
    CHECK(j.witness->simple == 2);
    CHECK(j.witness->dim == 1);
  }

  TEST_CASE("the identity report passes on the rosters") {
    const RecollementContext& ctx = lambda_context();
    const IdentityReport r = verify_recollement_identities(ctx, roster_of(ctx.inner_algebra),
                                                           roster_of(ctx.outer_algebra), roster_of(lambda()));
    CHECK(r.passes());
    CHECK(r.checks.size() >= 6);
    for (const auto& c : r.checks) {
      CHECK(c.checked > 0);
      CHECK(c.failures.empty());
    }
  }
}
