#include "rectilt/tilting.hpp"

#include <tuple>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"

namespace rectilt {

PartialTiltingCertificate is_partial_tilting(const Rep& t) {
  PartialTiltingCertificate c;
  c.proj_dim = proj_dim(t);
  c.self_ext = ext1_dim(t, t);
  c.passes = c.proj_dim <= 1 && c.self_ext == 0;
  return c;
}

namespace {

// Basis of the radical maps a -> b between indecomposables: all of Hom when
// a and b are not isomorphic, the trace-zero endomorphisms when a == b.
std::vector<Morphism> radical_maps(const Rep& a, const Rep& b, bool same) {
  auto basis = hom_basis(a, b);
  if (!same) return basis;
  const Rational n = a.total_dim();
  std::vector<Morphism> out;
  for (const auto& f : basis) {
    const Rational tr = f.total().trace();
    out.push_back(f + (Rational(-1) * tr / n) * Morphism::identity(a));
  }
  return out;
}

struct Approximation {
  std::vector<std::size_t> tops;  // one entry per summand of A, vertex order
  Rep target;
  Morphism map;  // A -> T0
};

// Minimal left add(T)-approximation of A = sum of P(v). A map P(v) -> T_i is a
// vector of (T_i)_v; those reachable from other summands through radical maps
// are redundant, the complement gives the multiplicity of T_i.
Approximation left_approximation(const AlgebraPtr& algebra, const std::vector<Rep>& summands) {
  const std::size_t k = summands.size();
  std::vector<std::vector<std::vector<Morphism>>> rad(k, std::vector<std::vector<Morphism>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rad[j][i] = radical_maps(summands[j], summands[i], i == j);

  std::vector<std::tuple<std::size_t, std::size_t, Mat>> pieces;  // (vertex, T index, vector)
  for (std::size_t v = 0; v < algebra->vertex_count(); ++v)
    for (std::size_t i = 0; i < k; ++i) {
      const Rep& ti = summands[i];
      Mat redundant(ti.dim(v), 0);
      for (std::size_t j = 0; j < k; ++j)
        for (const auto& g : rad[j][i]) redundant = hstack(redundant, g.component(v));
      const Quotient q = quotient(ti.dim(v), redundant);
      for (std::size_t c = 0; c < q.dim; ++c) pieces.emplace_back(v, i, q.section.col(c));
    }

  std::vector<Rep> targets;
  for (const auto& [v, i, vec] : pieces) targets.push_back(summands[i]);
  const DirectSum t0 = direct_sum(algebra, targets);
  std::vector<std::size_t> tops;
  for (std::size_t v = 0; v < algebra->vertex_count(); ++v) tops.push_back(v);

  // Generator of P(v) goes to the sum of the chosen vectors for v.
  std::vector<Mat> gens;
  for (std::size_t v = 0; v < algebra->vertex_count(); ++v) {
    Mat g(t0.sum.dim(v), 1);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      const auto& [pv, i, vec] = pieces[p];
      if (pv != v) continue;
      g += t0.injections[p].component(v) * vec;
    }
    gens.push_back(std::move(g));
  }
  Morphism f = map_from_projectives(algebra, tops, gens, t0.sum);
  return {tops, t0.sum, std::move(f)};
}

}  // namespace

TiltingCertificate is_tilting(const Rep& t, std::uint64_t seed) {
  TiltingCertificate c;
  c.partial = is_partial_tilting(t);
  c.summands = basic_summands(t, seed);
  c.simple_count = t.algebra().vertex_count();
  c.count_criterion = c.partial.passes && c.summands.size() == c.simple_count;

  const Approximation a = left_approximation(t.algebra_ptr(), c.summands);
  c.approximation_injective = a.map.is_injective();
  if (c.approximation_injective) {
    const QuotientRep q = cokernel(a.map);
    c.sequence = SES{a.map.source(), a.target, q.rep, a.map, q.projection};
    if (!is_exact(*c.sequence)) throw InternalError("approximation sequence is not exact");
    c.cokernel_in_add = in_add(q.rep, c.summands, seed);
  }
  const bool constructive = c.approximation_injective && c.cokernel_in_add;
  if (c.partial.passes && constructive != c.count_criterion)
    throw InternalError("constructive (T3) check and the summand count disagree");
  c.passes = c.partial.passes && constructive;
  return c;
}

Subrep trace(const Rep& t, const Rep& m) {
  std::vector<Mat> spans;
  for (std::size_t v = 0; v < m.dims().size(); ++v) spans.emplace_back(m.dim(v), 0);
  for (const auto& f : hom_basis(t, m))
    for (std::size_t v = 0; v < spans.size(); ++v) spans[v] = hstack(spans[v], f.component(v));
  for (auto& s : spans) s = column_space_basis(s);
  return subrepresentation(m, spans);
}

bool gen_member(const Rep& t, const Rep& m) { return trace(t, m).rep.dims() == m.dims(); }

bool perp_member(const Rep& t, const Rep& m) { return hom_dim(t, m) == 0; }

SES torsion_decompose(const Rep& t, const Rep& m) {
  Subrep tr = trace(t, m);
  QuotientRep q = cokernel(tr.inclusion);
  if (!perp_member(t, q.rep)) throw HypothesisFailed("T", "M / tr_T(M) is not in T-perp; Gen T is not a torsion class");
  if (!gen_member(t, tr.rep)) throw InternalError("trace is not generated by T");
  return SES{tr.rep, m, q.rep, tr.inclusion, q.projection};
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Torsion:
      return "torsion";
    case Membership::Free:
      return "free";
    default:
      return "neither";
  }
}

Membership classify(const Rep& t, const Rep& m) {
  if (gen_member(t, m)) return Membership::Torsion;
  if (perp_member(t, m)) return Membership::Free;
  return Membership::Neither;
}

RosterPartition partition_roster(const Rep& t, const std::vector<Rep>& roster) {
  RosterPartition p;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    switch (classify(t, roster[i])) {
      case Membership::Torsion:
        p.torsion.push_back(i);
        break;
      case Membership::Free:
        p.free.push_back(i);
        break;
      case Membership::Neither:
        p.neither.push_back(i);
        break;
    }
  }
  return p;
}

bool is_tilting_torsion_pair(const Rep& t) {
  for (std::size_t v = 0; v < t.algebra().vertex_count(); ++v)
    if (!gen_member(t, injective(t.algebra_ptr(), v))) return false;
  return true;
}

TorsionPairCheck is_torsion_pair(const std::vector<Rep>& torsion, const std::vector<Rep>& free,
                                 const std::vector<Rep>& roster, std::uint64_t seed) {
  TorsionPairCheck out;
  for (std::size_t i = 0; i < torsion.size(); ++i)
    for (std::size_t j = 0; j < free.size(); ++j) {
      const auto basis = hom_basis(torsion[i], free[j]);
      if (!basis.empty()) {
        out.witness = TorsionPairWitness{"hom", i, j, 0, basis.front()};
        return out;
      }
    }
  if (!roster.empty()) {
    const AlgebraPtr& alg = roster.front().algebra_ptr();
    const Rep tsum = direct_sum_rep(alg, torsion);
    std::vector<Rep> tclass, fclass;
    merge_unique(tclass, torsion, seed);
    merge_unique(fclass, free, seed);
    for (std::size_t r = 0; r < roster.size(); ++r) {
      const Subrep tr = trace(tsum, roster[r]);
      const QuotientRep q = cokernel(tr.inclusion);
      if (!in_add(tr.rep, tclass, seed) || !in_add(q.rep, fclass, seed)) {
        out.witness = TorsionPairWitness{"sequence", 0, 0, r, std::nullopt};
        return out;
      }
    }
  }
  out.passes = true;
  return out;
}

std::vector<std::size_t> ext_projective_indices(const std::vector<Rep>& cls) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    bool projective = true;
    for (std::size_t j = 0; j < cls.size() && projective; ++j) projective = ext1_dim(cls[i], cls[j]) == 0;
    if (projective) out.push_back(i);
  }
  return out;
}

Rep ext_projectives(const AlgebraPtr& algebra, const std::vector<Rep>& cls) {
  std::vector<Rep> parts;
  for (auto i : ext_projective_indices(cls)) parts.push_back(cls[i]);
  return direct_sum_rep(algebra, parts);
}

TorsionProfile::TorsionProfile(const Rep& t, std::uint64_t seed) : cert_(is_tilting(t, seed)), basic_(t) {
  if (!cert_.passes) throw HypothesisFailed("tilting", "module is not tilting");
  basic_ = direct_sum_rep(t.algebra_ptr(), cert_.summands);
}

}  // namespace rectilt
