#pragma once

// Krull-Schmidt decomposition and isomorphism testing.
//
// Indecomposability is decided by the trace-form radical of End(M): over a
// field of characteristic zero, x lies in rad End(M) iff tr(x y) = 0 for all
// y in End(M). When End(M)/rad has dimension > 1 we look for an endomorphism
// x with a rational eigenvalue r such that x - r is neither nilpotent nor
// invertible, and split M along the Fitting decomposition of x - r.

#include <cstdint>
#include <optional>
#include <vector>

#include "rectilt/representation.hpp"

namespace rectilt {

struct Summand {
  Rep module;
  Morphism inclusion;   // module -> M
  Morphism projection;  // M -> module
};

struct Decomposition {
  /// Canonical order (see canonical_less); empty for the zero module.
  std::vector<Summand> summands;
  /// Iso class index of each summand, classes numbered by first appearance.
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> multiplicities;

  std::size_t class_count() const noexcept { return multiplicities.size(); }
};

/// Throws PossibleDivisionAlgebra when a module with End/rad of dimension > 1
/// resists splitting.
Decomposition decompose(const Rep& m, std::uint64_t seed = 0);

/// dim End(M) - dim rad End(M).
std::size_t endomorphism_top_dimension(const Rep& m);
bool is_indecomposable(const Rep& m);

/// An invertible morphism m -> n, verified exactly, or nullopt.
std::optional<Morphism> find_isomorphism(const Rep& m, const Rep& n, std::uint64_t seed = 0);
bool is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed = 0);

/// One representative per isomorphism class of indecomposable summands.
std::vector<Rep> basic_summands(const Rep& m, std::uint64_t seed = 0);
/// Direct sum of basic_summands(m).
Rep basic(const Rep& m, std::uint64_t seed = 0);

/// Index of the first entry of `list` isomorphic to m, if any.
std::optional<std::size_t> find_isomorphic(const std::vector<Rep>& list, const Rep& m, std::uint64_t seed = 0);

/// Appends the indecomposables in `items` not already present up to iso.
void merge_unique(std::vector<Rep>& into, const std::vector<Rep>& items, std::uint64_t seed = 0);

/// Every indecomposable summand of m is isomorphic to a member of `indecomposables`.
bool in_add(const Rep& m, const std::vector<Rep>& indecomposables, std::uint64_t seed = 0);

/// Same set of indecomposables up to isomorphism (ignoring multiplicity).
bool add_equal(const std::vector<Rep>& a, const std::vector<Rep>& b, std::uint64_t seed = 0);

}  // namespace rectilt
