#include "rectilt/gluing.hpp"

#include <algorithm>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"

namespace rectilt {

Membership glued_membership(const GluedPairSpec& spec, const Rep& m) {
  const RecollementContext& ctx = *spec.context;
  if (m.is_zero()) return Membership::Torsion;
  const Rep outer = j_star_upper(ctx, m);
  if (gen_member(spec.inner_tilting, i_upper_star(ctx, m)) && gen_member(spec.outer_tilting, outer))
    return Membership::Torsion;
  if (perp_member(spec.inner_tilting, i_shriek(ctx, m)) && perp_member(spec.outer_tilting, outer))
    return Membership::Free;
  return Membership::Neither;
}

namespace {

std::vector<Membership> memberships(const RosterPartition& p, std::size_t n) {
  std::vector<Membership> out(n, Membership::Neither);
  for (auto i : p.torsion) out[i] = Membership::Torsion;
  for (auto i : p.free) out[i] = Membership::Free;
  return out;
}

ExtSpace change_basis(ExtSpace e, const Mat& change) {
  const std::size_t n = e.dimension();
  if (change.rows() != n || change.cols() != n || !inverse(change))
    throw InputError("Ext basis change must be an invertible " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  std::vector<Morphism> cocycles;
  for (std::size_t j = 0; j < n; ++j) {
    Morphism c = Morphism::zero(e.syzygy.rep, e.coefficient);
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(change(i, j)) != 0) c = c + change(i, j) * e.cocycles[i];
    cocycles.push_back(std::move(c));
  }
  e.cocycles = std::move(cocycles);
  return e;
}

}  // namespace

GlueCertificate glue_tilting(const GluedPairSpec& spec, const std::vector<Rep>& roster, const GlueOptions& options) {
  const RecollementContext& ctx = *spec.context;
  const ExactnessReport exact = check_exactness(ctx);
  if (!exact.at(Functor::IShriek).exact) throw HypothesisFailed("i!", "i! is not exact");
  if (const auto& js = exact.at(Functor::JShriek); !js.exact)
    throw HypothesisFailed("j_!", "j_! is not exact: Tor_1(e_" + ctx.algebra->quiver().label(js.witness->row) +
                                      " Lambda f, S(" + ctx.algebra->quiver().label(js.witness->simple) +
                                      ")) has dimension " + std::to_string(js.witness->dim));
  if (!spec.inner_tilting.algebra_ptr() || spec.inner_tilting.algebra_ptr() != ctx.inner_algebra)
    throw InputError("T' must be a module over the inner algebra");
  if (spec.outer_tilting.algebra_ptr() != ctx.outer_algebra)
    throw InputError("T'' must be a module over the outer algebra");
  if (!is_tilting(spec.inner_tilting, options.seed).passes) throw HypothesisFailed("T'", "T' is not tilting");
  if (!is_tilting(spec.outer_tilting, options.seed).passes) throw HypothesisFailed("T''", "T'' is not tilting");

  const Rep left = i_star(ctx, spec.inner_tilting);
  const Rep right = j_shriek(ctx, spec.outer_tilting);
  ExtSpace e = ext1(left, right);
  if (options.basis_change) e = change_basis(std::move(e), *options.basis_change);

  GlueCertificate c{e.dimension(), universal_extension(e), 0, {}, Rep::zero(ctx.algebra), 0, 0, {}, {}, {}, false,
                    {}, false, false};
  const Rep& m = c.universal.middle;
  c.residual_ext = ext1_dim(m, right);
  if (c.residual_ext != 0) throw InternalError("universal extension leaves Ext^1(M, j_! T'') nonzero");

  c.summands = basic_summands(direct_sum_rep(ctx.algebra, {right, m}), options.seed);
  c.module = direct_sum_rep(ctx.algebra, c.summands);
  c.proj_dim = proj_dim(c.module);
  c.self_ext = ext1_dim(c.module, c.module);
  c.tilting = is_tilting(c.module, options.seed);

  c.partition = partition_roster(c.module, roster);
  const auto from_t = memberships(c.partition, roster.size());
  c.partition_matches = true;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    c.glued.push_back(glued_membership(spec, roster[i]));
    if (c.glued.back() != from_t[i]) c.partition_matches = false;
  }

  std::vector<Rep> torsion;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < roster.size(); ++i)
    if (c.glued[i] == Membership::Torsion) {
      torsion.push_back(roster[i]);
      where.push_back(i);
    }
  std::vector<Rep> projectives;
  for (auto k : ext_projective_indices(torsion)) {
    c.ext_projectives.push_back(where[k]);
    projectives.push_back(torsion[k]);
  }
  c.ext_projectives_match = add_equal(projectives, c.summands, options.seed);

  c.passes = c.proj_dim <= 1 && c.self_ext == 0 && c.tilting.passes && c.partition_matches && c.ext_projectives_match &&
             c.summands.size() == ctx.algebra->vertex_count();
  return c;
}

bool glued_pair_is_tilting(const GluedPairSpec& spec) {
  const RecollementContext& ctx = *spec.context;
  for (std::size_t v = 0; v < ctx.algebra->vertex_count(); ++v)
    if (glued_membership(spec, injective(ctx.algebra, v)) != Membership::Torsion) return false;
  return true;
}

RestrictedPair restricted_pair(const RecollementContext& ctx, const Rep& t, const std::vector<Rep>& roster, Side side,
                               std::uint64_t seed) {
  const RosterPartition p = partition_roster(t, roster);
  RestrictedPair out;
  for (auto i : p.torsion)
    merge_unique(out.torsion, {side == Side::Left ? i_upper_star(ctx, roster[i]) : j_star_upper(ctx, roster[i])}, seed);
  for (auto i : p.free)
    merge_unique(out.free, {side == Side::Left ? i_shriek(ctx, roster[i]) : j_star_upper(ctx, roster[i])}, seed);
  return out;
}

RestrictionHypotheses check_restriction_hypotheses(const RecollementContext& ctx, const Rep& t,
                                                   const std::vector<Rep>& roster) {
  const RosterPartition p = partition_roster(t, roster);
  RestrictionHypotheses h;
  for (auto i : p.free) {
    const Rep image = j_star_lower(ctx, j_star_upper(ctx, roster[i]));
    if (!perp_member(t, image)) {
      h.free_closed = false;
      h.free_witness = i;
      break;
    }
  }
  for (auto i : p.torsion) {
    const Rep image = j_star_lower(ctx, j_star_upper(ctx, roster[i]));
    if (!gen_member(t, image)) {
      h.torsion_closed = false;
      h.torsion_witness = i;
      break;
    }
  }
  h.j_lower_exact = check_exactness(ctx).at(Functor::JLowerStar).exact;
  return h;
}

namespace {

// The restricted pair equals (Gen R, R-perp) computed on the part roster.
bool matches_induced_pair(const RestrictedPair& pair, const Rep& r, const std::vector<Rep>& part_roster,
                          std::uint64_t seed) {
  const RosterPartition p = partition_roster(r, part_roster);
  if (!p.neither.empty()) return false;
  std::vector<Rep> torsion, free;
  for (auto i : p.torsion) torsion.push_back(part_roster[i]);
  for (auto i : p.free) free.push_back(part_roster[i]);
  return add_equal(pair.torsion, torsion, seed) && add_equal(pair.free, free, seed);
}

RestrictionResult finish(const RecollementContext& ctx, const Rep& t, const Rep& restricted, Side side,
                         const std::vector<Rep>& roster, const std::vector<Rep>& part_roster, std::uint64_t seed) {
  std::vector<Rep> summands = basic_summands(restricted, seed);
  Rep module = direct_sum_rep(restricted.algebra_ptr(), summands);
  TiltingCertificate cert = is_tilting(module, seed);
  RestrictedPair pair = restricted_pair(ctx, t, roster, side, seed);
  const bool matches = matches_induced_pair(pair, module, part_roster, seed);
  RestrictionResult r{side, std::move(summands), std::move(module), std::move(cert), false, std::nullopt, std::nullopt,
                      std::move(pair), matches};
  return r;
}

}  // namespace

RestrictionResult restrict_left(const RecollementContext& ctx, const Rep& t, const std::vector<Rep>& roster,
                                const std::vector<Rep>& inner_roster, std::uint64_t seed) {
  if (!is_tilting(t, seed).passes) throw HypothesisFailed("T", "T is not tilting");
  RestrictionResult r = finish(ctx, t, i_upper_star(ctx, t), Side::Left, roster, inner_roster, seed);
  r.hypotheses_hold = check_exactness(ctx).at(Functor::IUpperStar).exact;
  if (!r.hypotheses_hold) r.failed_hypothesis = "i*";
  return r;
}

RestrictionResult restrict_right(const RecollementContext& ctx, const Rep& t, const std::vector<Rep>& roster,
                                 const std::vector<Rep>& outer_roster, std::uint64_t seed) {
  if (!is_tilting(t, seed).passes) throw HypothesisFailed("T", "T is not tilting");
  RestrictionResult r = finish(ctx, t, j_star_upper(ctx, t), Side::Right, roster, outer_roster, seed);
  r.right_hypotheses = check_restriction_hypotheses(ctx, t, roster);
  r.hypotheses_hold = r.right_hypotheses->passes();
  if (!r.hypotheses_hold)
    r.failed_hypothesis = !r.right_hypotheses->free_closed    ? "j_*j*(F) in F"
                          : !r.right_hypotheses->torsion_closed ? "j_*j*(T) in T"
                                                                : "j_* exact";
  return r;
}

}  // namespace rectilt
