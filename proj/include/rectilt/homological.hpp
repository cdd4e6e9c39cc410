#pragma once

// Projective covers, presentations, Ext, Tor, the AR translate and the
// tau-inverse roster of indecomposables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectilt/representation.hpp"

namespace rectilt {

/// rad M: at vertex j the span of the images of all arrows ending in j.
Subrep radical(const Rep& m);
QuotientRep top(const Rep& m);
/// dim top(M) at each vertex.
std::vector<std::size_t> top_dims(const Rep& m);

struct ProjectiveCover {
  Rep cover;                      // direct sum of P(v), one per entry of `tops`
  std::vector<std::size_t> tops;  // vertex of each indecomposable summand, in block order
  Morphism surjection;
};

/// Minimal: P0 = sum of P(v)^(dim top(M)_v), generators lifted from a basis of top M.
ProjectiveCover projective_cover(const Rep& m);

/// Direct sum of P(tops[i]) and the map sending the i-th generator e_v to
/// generators[i] (a column vector in target_{tops[i]}).
Morphism map_from_projectives(const AlgebraPtr& algebra, const std::vector<std::size_t>& tops,
                              const std::vector<Mat>& generators, const Rep& target);

/// P1 --differential--> P0 --cover--> M -> 0 with syzygy = ker(cover).
struct ProjectivePresentation {
  Rep module;
  ProjectiveCover p0;
  Subrep syzygy;
  ProjectiveCover p1;  // cover of the syzygy
  Morphism differential;
};

ProjectivePresentation min_presentation(const Rep& m);

/// Omega(M), the kernel of the projective cover.
Rep syzygy(const Rep& m);

/// Length of the minimal projective resolution; CapExceeded beyond `cap`
/// steps. The default cap is the dimension of the algebra.
std::size_t proj_dim(const Rep& m, std::optional<std::size_t> cap = std::nullopt);

struct ExtSpace {
  Rep source;       // M
  Rep coefficient;  // N
  Rep cover;        // P0
  Morphism cover_map;
  Subrep syzygy;  // Omega with its inclusion into P0
  /// Cocycles Omega -> N whose classes form a basis of Ext^1(M, N).
  std::vector<Morphism> cocycles;

  std::size_t dimension() const noexcept { return cocycles.size(); }
};

/// Ext^1(M, N) = coker(Hom(P0, N) -> Hom(Omega, N)).
ExtSpace ext1(const Rep& m, const Rep& n);
std::size_t ext1_dim(const Rep& m, const Rep& n);

/// 0 -> X -> E -> M -> 0 obtained by pushing Omega -> P0 out along `cocycle`
/// (a morphism Omega -> X, with Omega the syzygy stored in `e`).
SES realize_cocycle(const ExtSpace& e, const Morphism& cocycle);

/// The extension of M by N with class sum(coeffs[i] * e_i).
SES realize_extension(const ExtSpace& e, const std::vector<Rational>& coeffs);

/// 0 -> N^n -> U -> M -> 0 realizing the whole cocycle basis at once, so
/// that the connecting map Hom(N^n, N) -> Ext^1(M, N) is onto.
SES universal_extension(const ExtSpace& e);

/// dim Ext^k(M, N) by dimension shifting; k = 0 gives dim Hom(M, N).
std::size_t ext_k(const Rep& m, const Rep& n, std::size_t k);

/// R (x)_A X for R a representation of the opposite algebra (a right
/// A-module) and X an A-module: the quotient of sum_v R_v (x) X_v by the
/// balancing relations (r a) (x) x = r (x) (a x).
struct TensorSpace {
  std::size_t dim = 0;
  std::vector<std::size_t> offsets;  // block of R_v (x) X_v in the unreduced space
  Mat projection;                    // unreduced -> quotient
  Mat section;
};
TensorSpace tensor(const Rep& right, const Rep& left);
/// The linear map R (x) f.
Mat tensor_map(const Rep& right, const Morphism& f, const TensorSpace& from, const TensorSpace& to);

/// dim Tor_1(R, S) computed from the minimal presentation of S.
std::size_t tor1_right(const Rep& right, const Rep& s);

/// The right projective e_v A as a representation of `opposite`.
Rep right_projective(const AlgebraPtr& algebra, const AlgebraPtr& opposite, std::size_t v);

/// AR translate via the Nakayama functor on a minimal presentation:
/// tau M = ker(nu P1 -> nu P0). Zero for projective M.
Rep tau(const Rep& m);
/// D tau_{A^op} D. Zero for injective M.
Rep tau_inverse(const Rep& m);
Rep tau_inverse(const Rep& m, const AlgebraPtr& opposite);

struct RosterEntry {
  Rep module;
  /// "projective" or "tau-" (one application of tau inverse to `parent`).
  std::string origin;
  std::size_t generation = 0;
  std::optional<std::size_t> parent;
};

struct Roster {
  AlgebraPtr algebra;
  std::vector<RosterEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<Rep> modules() const;
};

/// Closure of the indecomposable projectives under tau inverse, deduplicated
/// up to isomorphism, in discovery order. Complete for representation-directed
/// algebras. CapExceeded when more than `cap` modules appear.
Roster enumerate_roster(const AlgebraPtr& algebra, std::size_t cap = 200, std::uint64_t seed = 0);

}  // namespace rectilt
