#pragma once

// Tilting modules, the torsion pair (Gen T, T-perp), and torsion-pair checks
// over a roster of indecomposables.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectilt/homological.hpp"
#include "rectilt/representation.hpp"

namespace rectilt {

struct PartialTiltingCertificate {
  std::size_t proj_dim = 0;
  std::size_t self_ext = 0;  // dim Ext^1(T, T)
  bool passes = false;
};

PartialTiltingCertificate is_partial_tilting(const Rep& t);

struct TiltingCertificate {
  PartialTiltingCertificate partial;
  std::vector<Rep> summands;  // basic summands of T
  std::size_t simple_count = 0;
  bool count_criterion = false;  // partial tilting with |summands| = |simples|
  /// 0 -> A -> T0 -> T1 -> 0 from the minimal left add(T)-approximation of A.
  std::optional<SES> sequence;
  bool approximation_injective = false;
  bool cokernel_in_add = false;
  bool passes = false;
};

/// (T1), (T2) and (T3). When T is partial tilting the constructive (T3)
/// verdict is compared with the count criterion; a mismatch is an InternalError.
TiltingCertificate is_tilting(const Rep& t, std::uint64_t seed = 0);

/// Sum of the images of all maps T -> M.
Subrep trace(const Rep& t, const Rep& m);
bool gen_member(const Rep& t, const Rep& m);
bool perp_member(const Rep& t, const Rep& m);

/// 0 -> tr_T(M) -> M -> M / tr_T(M) -> 0. Throws HypothesisFailed when the
/// quotient is not T-perp, i.e. Gen T is not a torsion class.
SES torsion_decompose(const Rep& t, const Rep& m);

enum class Membership { Torsion, Free, Neither };
std::string to_string(Membership m);

/// The zero module counts as torsion.
Membership classify(const Rep& t, const Rep& m);

struct RosterPartition {
  std::vector<std::size_t> torsion;  // roster indices
  std::vector<std::size_t> free;
  std::vector<std::size_t> neither;
};

RosterPartition partition_roster(const Rep& t, const std::vector<Rep>& roster);

/// Every indecomposable injective lies in Gen T.
bool is_tilting_torsion_pair(const Rep& t);

struct TorsionPairWitness {
  /// "hom": a nonzero map from torsion_index to free_index.
  /// "sequence": roster module `roster_index` has no such exact sequence.
  std::string kind;
  std::size_t torsion_index = 0;
  std::size_t free_index = 0;
  std::size_t roster_index = 0;
  std::optional<Morphism> map;
};

struct TorsionPairCheck {
  bool passes = false;
  std::optional<TorsionPairWitness> witness;
};

/// Hom(X, Y) = 0 for X in the torsion list and Y in the free list, and
/// every roster module sits in 0 -> X -> M -> Y -> 0 with X in add(torsion),
/// Y in add(free), built from the trace of the torsion list.
TorsionPairCheck is_torsion_pair(const std::vector<Rep>& torsion, const std::vector<Rep>& free,
                                 const std::vector<Rep>& roster, std::uint64_t seed = 0);

/// Indices of the members M with Ext^1(M, X) = 0 for all X in the class.
std::vector<std::size_t> ext_projective_indices(const std::vector<Rep>& cls);
/// Direct sum of one copy of each Ext-projective member.
Rep ext_projectives(const AlgebraPtr& algebra, const std::vector<Rep>& cls);

/// A tilting module with its certificate and membership predicates.
class TorsionProfile {
 public:
  /// Throws HypothesisFailed("tilting", ...) when T is not tilting.
  explicit TorsionProfile(const Rep& t, std::uint64_t seed = 0);

  const Rep& module() const noexcept { return basic_; }
  const TiltingCertificate& certificate() const noexcept { return cert_; }
  bool torsion(const Rep& m) const { return gen_member(basic_, m); }
  bool free(const Rep& m) const { return perp_member(basic_, m); }
  RosterPartition partition(const std::vector<Rep>& roster) const { return partition_roster(basic_, roster); }

 private:
  TiltingCertificate cert_;
  Rep basic_;
};

}  // namespace rectilt
