#pragma once

// Modules over a bound quiver algebra as representations: one vector space
// per vertex, one matrix per arrow (shape dims[target] x dims[source]).

#include <cstddef>
#include <string>
#include <vector>

#include "rectilt/algebra.hpp"
#include "rectilt/linalg.hpp"

namespace rectilt {

class Rep {
 public:
  /// Validates map shapes and that every relation evaluates to zero.
  Rep(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Mat> maps);

  static Rep zero(AlgebraPtr algebra);

  const Algebra& algebra() const noexcept { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_.at(v); }
  const std::vector<Mat>& maps() const noexcept { return maps_; }
  const Mat& map(std::size_t arrow) const { return maps_.at(arrow); }

  std::size_t total_dim() const noexcept;
  bool is_zero() const noexcept { return total_dim() == 0; }
  /// Start of vertex v's block in the concatenated total space.
  std::vector<std::size_t> offsets() const;

  /// The linear map of a path (application order) from dims[source] to dims[target].
  Mat path_action(const Path& p) const;
  /// Action of an algebra element restricted to e_target A e_source.
  Mat element_action(const Element& x, std::size_t source, std::size_t target) const;

  friend bool operator==(const Rep& a, const Rep& b);

 private:
  AlgebraPtr algebra_;
  std::vector<std::size_t> dims_;
  std::vector<Mat> maps_;
};

class Morphism {
 public:
  /// Validates component shapes and commutation with every arrow.
  Morphism(Rep source, Rep target, std::vector<Mat> components);

  static Morphism zero(const Rep& source, const Rep& target);
  static Morphism identity(const Rep& m);

  const Rep& source() const noexcept { return source_; }
  const Rep& target() const noexcept { return target_; }
  const std::vector<Mat>& components() const noexcept { return components_; }
  const Mat& component(std::size_t v) const { return components_.at(v); }

  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const;
  std::size_t rank() const;

  /// Block-diagonal matrix on the concatenated total spaces.
  Mat total() const;

  /// g * f = g after f.
  friend Morphism operator*(const Morphism& g, const Morphism& f);
  friend Morphism operator+(const Morphism& f, const Morphism& g);
  friend Morphism operator*(const Rational& s, const Morphism& f);

 private:
  Rep source_;
  Rep target_;
  std::vector<Mat> components_;
};

/// 0 -> left --inject--> middle --project--> right -> 0
struct SES {
  Rep left;
  Rep middle;
  Rep right;
  Morphism inject;
  Morphism project;
};

/// Vertexwise rank certificate: inject injective, project surjective,
/// project * inject = 0 and dimensions add.
bool is_exact(const SES& s);

/// True when `project` has a section, i.e. the sequence splits.
bool is_split(const SES& s);

struct Subrep {
  Rep rep;
  Morphism inclusion;
};

struct QuotientRep {
  Rep rep;
  Morphism projection;
  std::vector<Mat> sections;  // per vertex right inverse of the projection
};

/// The subrepresentation whose vertex spaces are spanned by `bases` (columns
/// independent). Throws InternalError if the spaces are not arrow-stable.
Subrep subrepresentation(const Rep& m, const std::vector<Mat>& bases);
/// The smallest subrepresentation containing the given vectors.
Subrep generated_subrepresentation(const Rep& m, const std::vector<Mat>& generators);
/// m modulo the arrow-stable subspaces spanned by `spans` (any columns).
QuotientRep quotient_representation(const Rep& m, const std::vector<Mat>& spans);

Subrep kernel(const Morphism& f);
Subrep image(const Morphism& f);
QuotientRep cokernel(const Morphism& f);

/// Given a surjection q: X -> Q (with sections) and h: X -> Y vanishing on
/// ker q, the unique map Q -> Y with (Q -> Y) * q = h.
Morphism descend(const QuotientRep& q, const Morphism& h);

struct DirectSum {
  Rep sum;
  std::vector<Morphism> injections;
  std::vector<Morphism> projections;
};
DirectSum direct_sum(const AlgebraPtr& algebra, const std::vector<Rep>& parts);
Rep direct_sum_rep(const AlgebraPtr& algebra, const std::vector<Rep>& parts);
Rep power(const Rep& m, std::size_t n);

struct Pushout {
  Rep object;
  Morphism from_first;   // N -> E
  Morphism from_second;  // P -> E
};
/// Pushout of N <-f- W -g-> P: E = (N + P) / {(f(w), -g(w))}.
Pushout pushout(const Morphism& f, const Morphism& g);

/// Basis of Hom(M, N) as the kernel of the assembled intertwining system.
std::vector<Morphism> hom_basis(const Rep& m, const Rep& n);
std::size_t hom_dim(const Rep& m, const Rep& n);

/// Morphism <-> flat coordinate vector (vertex by vertex, row-major blocks).
Mat flatten(const Morphism& f);
Morphism unflatten(const Rep& source, const Rep& target, const Mat& coords);
/// Number of flat coordinates for maps source -> target.
std::size_t flat_size(const Rep& source, const Rep& target);

Rep simple(const AlgebraPtr& algebra, std::size_t v);
/// Basis: path classes starting at v; arrows act by left multiplication.
Rep projective(const AlgebraPtr& algebra, std::size_t v);
/// Dual of the right projective e_v A: at u, the dual of span{paths u -> v}.
Rep injective(const AlgebraPtr& algebra, std::size_t v);
/// The regular module A as a direct sum of the P(v).
Rep regular(const AlgebraPtr& algebra);

/// Linear dual D(M), a representation of `opposite` (whose arrow k must be
/// arrow k of M's algebra reversed). Maps are transposed.
Rep dual(const Rep& m, const AlgebraPtr& opposite);
Morphism dual(const Morphism& f, const AlgebraPtr& opposite);

/// Stable text form used for canonical ordering and golden files.
std::string canonical_key(const Rep& m);

/// Ordering by (total dimension, dimension vector, matrix data).
bool canonical_less(const Rep& a, const Rep& b);

}  // namespace rectilt
