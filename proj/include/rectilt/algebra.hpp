#pragma once

// Bound quiver algebras kQ/I over Q.
//
// Composition convention (the only place it is decided): a path is stored as
// the sequence of its arrows in application order, first applied first. The
// algebra product x * y means "y, then x", so for alpha: i -> j and
// beta: j -> k the product beta * alpha is the path [alpha, beta] from i to k.
// Everything else in the library goes through `concatenate` / `multiply`.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rectilt/linalg.hpp"

namespace rectilt {

struct Arrow {
  std::string name;
  std::size_t source;
  std::size_t target;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  /// Builder: arrow endpoints given by vertex label.
  static Quiver from_labels(std::vector<std::string> vertices,
                            const std::vector<std::tuple<std::string, std::string, std::string>>& arrows);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::string& label(std::size_t v) const { return vertices_.at(v); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  std::optional<std::size_t> find_vertex(const std::string& label) const;
  std::optional<std::size_t> find_arrow(const std::string& name) const;
  /// Throwing lookups (InputError).
  std::size_t vertex(const std::string& label) const;
  std::size_t arrow_index(const std::string& name) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A path in application order. Trivial paths carry no arrows but still
/// remember their vertex.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const noexcept { return arrows.size(); }
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// `first` then `second`; nullopt when target(first) != source(second).
std::optional<Path> concatenate(const Path& first, const Path& second);

struct Term {
  Rational coeff;
  std::vector<std::size_t> arrows;  // application order
};
using Relation = std::vector<Term>;

/// Dense coordinate vector with respect to Algebra::basis().
using Element = std::vector<Rational>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
 public:
  static constexpr std::size_t kDefaultLengthCap = 30;

  /// Reduce all paths modulo the two-sided ideal generated by `relations`.
  /// Throws RelationIllFormed for bad relations, CapExceeded when some path
  /// of length `length_cap` survives.
  static AlgebraPtr build(Quiver quiver, std::vector<Relation> relations,
                          std::size_t length_cap = kDefaultLengthCap);

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const std::vector<Path>& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  std::size_t vertex_count() const noexcept { return quiver_.vertex_count(); }
  std::size_t arrow_count() const noexcept { return quiver_.arrow_count(); }
  /// Every path of this length or longer is zero.
  std::size_t nilpotency_bound() const noexcept { return bound_; }

  /// Index of the trivial path e_v in the basis.
  std::size_t idempotent(std::size_t v) const { return trivial_.at(v); }
  /// Basis indices of path classes from `source` to `target` (i.e. e_t A e_s),
  /// in basis order.
  const std::vector<std::size_t>& basis_between(std::size_t source, std::size_t target) const;

  /// Coordinates of a path (application order) in the basis.
  Element reduce(const Path& p) const;
  Element reduce_arrows(std::size_t source, const std::vector<std::size_t>& arrows) const;

  /// x * y ("y, then x") on basis coordinates.
  Element multiply(const Element& x, const Element& y) const;
  /// b_i * b_j as sparse (index, coefficient) pairs.
  const std::vector<std::pair<std::size_t, Rational>>& product(std::size_t i, std::size_t j) const;

  Element unit() const;
  Element basis_element(std::size_t i) const;

  /// Human-readable form of basis element i, e.g. "e1" or "alpha*epsilon".
  std::string describe(std::size_t i) const;

 private:
  Algebra() = default;

  Quiver quiver_;
  std::vector<Relation> relations_;
  std::vector<Path> basis_;
  std::vector<std::size_t> trivial_;
  std::size_t bound_ = 1;
  std::map<Path, std::vector<std::pair<std::size_t, Rational>>> reductions_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> table_;
  std::vector<std::vector<std::vector<std::size_t>>> between_;  // [source][target]
};

/// Arrows reversed, relation paths reversed; vertex and arrow order kept, so
/// arrow k of the opposite is arrow k of the original turned around.
AlgebraPtr opposite_algebra(const Algebra& a);

/// The algebra on the full subquiver spanned by `vertices` (kept in their
/// original order), with the relations it inherits. Only meaningful when no
/// nonzero path leaves and re-enters the subset; callers check that.
AlgebraPtr full_subalgebra(const Algebra& a, const std::vector<std::size_t>& vertices);

/// A bijection of vertices and arrows carrying one presentation onto another.
struct PresentationIsomorphism {
  std::vector<std::size_t> vertices;  // vertex of `a` -> vertex of `b`
  std::vector<std::size_t> arrows;    // arrow of `a` -> arrow of `b`
};

/// Searches quiver isomorphisms a -> b under which the relations of each side
/// vanish in the other. Equal dimension then makes the ideals equal.
std::optional<PresentationIsomorphism> find_presentation_isomorphism(const Algebra& a, const Algebra& b);

/// Exhaustive associativity check of the product table; returns a failing
/// triple (i, j, k) if any.
std::optional<std::array<std::size_t, 3>> find_associativity_failure(const Algebra& a);

}  // namespace rectilt
