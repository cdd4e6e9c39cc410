#pragma once

// The recollement of module categories induced by a vertex bipartition
// V = V' + V'' of a triangular algebra: no nonzero path runs from V' to V''.
// Lambda' lives on V' (idempotent e), Lambda'' on V'' (idempotent f), and
// N = e Lambda f is read off the path classes from V'' to V'.
//
//   i^*  = quotient by the submodule generated by the V''-part, then restrict
//   i_*  = extension by zero from V'
//   i^!  = restriction to V' (a submodule, arrows only run V'' -> V')
//   j_!  = (N (x) Y, Y) with identity structure map
//   j^*  = restriction to V''
//   j_*  = extension by zero from V''

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectilt/homological.hpp"
#include "rectilt/representation.hpp"

namespace rectilt {

enum class Functor { IUpperStar, ILowerStar, IShriek, JShriek, JUpperStar, JLowerStar };

/// "i*", "i_*", "i!", "j_!", "j*", "j_*".
std::string functor_name(Functor f);
/// Accepts the names above and the spelled-out forms ("i_upper_star", ...).
Functor parse_functor(const std::string& name);

struct RecollementContext {
  AlgebraPtr algebra;
  AlgebraPtr opposite;
  std::vector<std::size_t> inner;  // V', increasing
  std::vector<std::size_t> outer;  // V'', increasing
  AlgebraPtr inner_algebra;        // Lambda'
  AlgebraPtr outer_algebra;        // Lambda''
  AlgebraPtr outer_opposite;
  std::vector<std::size_t> inner_arrows;  // arrow k of Lambda' is arrow inner_arrows[k] of Lambda
  std::vector<std::size_t> outer_arrows;
  /// e_u Lambda f as a right Lambda''-module, one per u in V'.
  std::vector<Rep> bimodule_rows;

  /// The side of the recollement a module lives on.
  bool on_inner(const Rep& m) const { return m.algebra_ptr() == inner_algebra; }
  bool on_outer(const Rep& m) const { return m.algebra_ptr() == outer_algebra; }
};

/// Throws NotTriangular if some nonzero path class runs from V' to V'',
/// InputError if either part is empty.
RecollementContext split_context(const AlgebraPtr& algebra, const std::vector<std::size_t>& outer);

Rep i_star(const RecollementContext& ctx, const Rep& x);
Rep i_upper_star(const RecollementContext& ctx, const Rep& m);
Rep i_shriek(const RecollementContext& ctx, const Rep& m);
Rep j_shriek(const RecollementContext& ctx, const Rep& y);
Rep j_star_upper(const RecollementContext& ctx, const Rep& m);
Rep j_star_lower(const RecollementContext& ctx, const Rep& y);

Rep apply(const RecollementContext& ctx, Functor f, const Rep& m);
Morphism apply(const RecollementContext& ctx, Functor f, const Morphism& m);

/// 0 -> i_* i^! M -> M -> j_* j^* M -> 0.
SES canonical_sequence(const RecollementContext& ctx, const Rep& m);

struct TorWitness {
  std::size_t row = 0;     // vertex u of V' (global index)
  std::size_t simple = 0;  // vertex of the simple module (global index)
  std::size_t dim = 0;
};

struct FunctorExactness {
  Functor functor;
  bool exact = false;
  /// "structural" for restrictions and extensions by zero, "tor" otherwise.
  std::string method;
  std::optional<TorWitness> witness;
};

struct ExactnessReport {
  std::vector<FunctorExactness> functors;  // in the order i*, i_*, i!, j_!, j*, j_*
  const FunctorExactness& at(Functor f) const;
};

/// j_! is exact iff Tor_1(e Lambda f, S) = 0 for the simple Lambda''-modules;
/// i^* is exact iff Tor_1(Lambda / Lambda f Lambda, S) = 0 for the simple
/// Lambda-modules.
ExactnessReport check_exactness(const RecollementContext& ctx);

struct IdentityCheck {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool passes() const;
};

/// i^* j_! = 0 = i^! j_*, the counit/unit isomorphisms, Im i_* = Ker j^*
/// and the four adjunction dimension equalities on the given samples.
IdentityReport verify_recollement_identities(const RecollementContext& ctx, const std::vector<Rep>& inner_samples,
                                             const std::vector<Rep>& outer_samples,
                                             const std::vector<Rep>& samples, std::uint64_t seed = 0);

}  // namespace rectilt
