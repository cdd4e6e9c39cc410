#include "rectilt/homological.hpp"

#include <algorithm>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"

namespace rectilt {

Subrep radical(const Rep& m) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Mat> spans;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) spans.emplace_back(m.dim(v), 0);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t t = q.arrow(a).target;
    spans[t] = hstack(spans[t], m.map(a));
  }
  for (auto& s : spans) s = column_space_basis(s);
  return subrepresentation(m, spans);
}

QuotientRep top(const Rep& m) { return cokernel(radical(m).inclusion); }

std::vector<std::size_t> top_dims(const Rep& m) { return top(m).rep.dims(); }

Morphism map_from_projectives(const AlgebraPtr& algebra, const std::vector<std::size_t>& tops,
                              const std::vector<Mat>& generators, const Rep& target) {
  const Algebra& a = *algebra;
  std::vector<Rep> parts;
  for (auto v : tops) parts.push_back(projective(algebra, v));
  const Rep source = direct_sum_rep(algebra, parts);
  std::vector<Mat> comps;
  for (std::size_t u = 0; u < a.vertex_count(); ++u) {
    std::vector<Mat> blocks;
    for (std::size_t i = 0; i < tops.size(); ++i) {
      const auto& paths = a.basis_between(tops[i], u);
      Mat b(target.dim(u), paths.size());
      for (std::size_t c = 0; c < paths.size(); ++c)
        b.set_block(0, c, target.path_action(a.basis()[paths[c]]) * generators[i]);
      blocks.push_back(std::move(b));
    }
    comps.push_back(hstack(blocks, target.dim(u)));
  }
  return Morphism(source, target, std::move(comps));
}

ProjectiveCover projective_cover(const Rep& m) {
  const QuotientRep t = top(m);
  std::vector<std::size_t> tops;
  std::vector<Mat> gens;
  for (std::size_t v = 0; v < m.dims().size(); ++v)
    for (std::size_t c = 0; c < t.rep.dim(v); ++c) {
      tops.push_back(v);
      gens.push_back(t.sections[v].col(c));
    }
  Morphism f = map_from_projectives(m.algebra_ptr(), tops, gens, m);
  if (!f.is_surjective()) throw InternalError("projective cover is not surjective");
  Rep cover = f.source();
  return {std::move(cover), std::move(tops), std::move(f)};
}

ProjectivePresentation min_presentation(const Rep& m) {
  ProjectiveCover p0 = projective_cover(m);
  Subrep omega = kernel(p0.surjection);
  ProjectiveCover p1 = projective_cover(omega.rep);
  Morphism d = omega.inclusion * p1.surjection;
  return {m, std::move(p0), std::move(omega), std::move(p1), std::move(d)};
}

Rep syzygy(const Rep& m) { return kernel(projective_cover(m).surjection).rep; }

std::size_t proj_dim(const Rep& m, std::optional<std::size_t> cap) {
  const std::size_t limit = cap.value_or(m.algebra().dimension());
  Rep current = m;
  for (std::size_t steps = 0; steps <= limit; ++steps) {
    if (current.is_zero()) return steps == 0 ? 0 : steps - 1;
    current = syzygy(current);
  }
  if (current.is_zero()) return limit;
  throw CapExceeded("projective resolution did not terminate within " + std::to_string(limit) + " steps");
}

ExtSpace ext1(const Rep& m, const Rep& n) {
  ProjectiveCover p0 = projective_cover(m);
  Subrep omega = kernel(p0.surjection);

  const auto hom_omega = hom_basis(omega.rep, n);
  const std::size_t flat = flat_size(omega.rep, n);
  std::vector<Mat> cols;
  for (const auto& h : hom_omega) cols.push_back(flatten(h));
  const Mat h_mat = hstack(cols, flat);

  std::vector<Mat> restricted;
  for (const auto& g : hom_basis(p0.cover, n)) restricted.push_back(flatten(g * omega.inclusion));
  const Mat r_mat = hstack(restricted, flat);
  auto coords = solve(h_mat, r_mat);
  if (!coords) throw InternalError("restricted maps are not homomorphisms");

  const Quotient q = quotient(hom_omega.size(), *coords);
  std::vector<Morphism> cocycles;
  for (std::size_t c = 0; c < q.dim; ++c) cocycles.push_back(unflatten(omega.rep, n, h_mat * q.section.col(c)));
  return {m, n, p0.cover, p0.surjection, std::move(omega), std::move(cocycles)};
}

std::size_t ext1_dim(const Rep& m, const Rep& n) {
  if (m.is_zero() || n.is_zero()) return 0;
  const ProjectiveCover p0 = projective_cover(m);
  const Subrep omega = kernel(p0.surjection);
  // Hom(M,N) -> Hom(P0,N) -> Hom(Omega,N) -> Ext^1(M,N) -> 0 is exact.
  return hom_dim(omega.rep, n) + hom_dim(m, n) - hom_dim(p0.cover, n);
}

namespace {

// The unique h with h * legs[i] = images[i], when the legs are jointly onto.
Morphism map_out_of(const Rep& source, const std::vector<Morphism>& legs, const std::vector<Morphism>& images,
                    const Rep& target) {
  std::vector<Mat> comps;
  for (std::size_t v = 0; v < source.dims().size(); ++v) {
    std::vector<Mat> l, r;
    for (std::size_t i = 0; i < legs.size(); ++i) {
      l.push_back(legs[i].component(v));
      r.push_back(images[i].component(v));
    }
    const Mat lhs = hstack(l, source.dim(v)).transpose();
    const Mat rhs = hstack(r, target.dim(v)).transpose();
    auto x = solve(lhs, rhs);
    if (!x) throw InternalError("map out of a pushout is not well defined");
    comps.push_back(x->transpose());
  }
  return Morphism(source, target, std::move(comps));
}

}  // namespace

SES realize_cocycle(const ExtSpace& e, const Morphism& cocycle) {
  const Pushout po = pushout(cocycle, e.syzygy.inclusion);
  const Rep& x = cocycle.target();
  Morphism project = map_out_of(po.object, {po.from_first, po.from_second},
                                {Morphism::zero(x, e.source), e.cover_map}, e.source);
  SES s{x, po.object, e.source, po.from_first, std::move(project)};
  if (!is_exact(s)) throw InternalError("realized extension is not exact");
  return s;
}

SES realize_extension(const ExtSpace& e, const std::vector<Rational>& coeffs) {
  if (coeffs.size() != e.dimension()) throw InputError("coefficient vector does not match dim Ext^1");
  Morphism phi = Morphism::zero(e.syzygy.rep, e.coefficient);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) phi = phi + coeffs[i] * e.cocycles[i];
  return realize_cocycle(e, phi);
}

SES universal_extension(const ExtSpace& e) {
  const std::size_t n = e.dimension();
  const Rep target = power(e.coefficient, n);
  std::vector<Mat> comps;
  for (std::size_t v = 0; v < e.syzygy.rep.dims().size(); ++v) {
    std::vector<Mat> blocks;
    for (const auto& c : e.cocycles) blocks.push_back(c.component(v));
    comps.push_back(vstack(blocks, e.syzygy.rep.dim(v)));
  }
  return realize_cocycle(e, Morphism(e.syzygy.rep, target, std::move(comps)));
}

std::size_t ext_k(const Rep& m, const Rep& n, std::size_t k) {
  if (k == 0) return hom_dim(m, n);
  Rep current = m;
  for (std::size_t i = 1; i < k; ++i) {
    if (current.is_zero()) return 0;
    current = syzygy(current);
  }
  return ext1_dim(current, n);
}

namespace {

void check_tensor_pair(const Rep& right, const Rep& left) {
  const Quiver& r = right.algebra().quiver();
  const Quiver& l = left.algebra().quiver();
  if (r.vertex_count() != l.vertex_count() || r.arrow_count() != l.arrow_count())
    throw InputError("tensor: the right module is not over the opposite algebra");
  for (std::size_t k = 0; k < r.arrow_count(); ++k)
    if (r.arrow(k).source != l.arrow(k).target || r.arrow(k).target != l.arrow(k).source)
      throw InputError("tensor: the right module is not over the opposite algebra");
}

}  // namespace

TensorSpace tensor(const Rep& right, const Rep& left) {
  check_tensor_pair(right, left);
  const Quiver& q = left.algebra().quiver();
  TensorSpace t;
  std::size_t total = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    t.offsets.push_back(total);
    total += right.dim(v) * left.dim(v);
  }
  std::vector<Mat> rels;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& arr = q.arrow(k);
    const std::size_t i = arr.source, j = arr.target;
    // r in R_j, x in X_i: (r a) (x) x - r (x) (a x).
    const std::size_t cols = right.dim(j) * left.dim(i);
    Mat block(total, cols);
    block.set_block(t.offsets[i], 0, kronecker(right.map(k), Mat::identity(left.dim(i))));
    Mat other = kronecker(Mat::identity(right.dim(j)), left.map(k)) * Rational(-1);
    // Arrows i -> i (loops) land in the same block.
    for (std::size_t r = 0; r < other.rows(); ++r)
      for (std::size_t c = 0; c < other.cols(); ++c) block(t.offsets[j] + r, c) += other(r, c);
    rels.push_back(std::move(block));
  }
  const Quotient qt = quotient(total, hstack(rels, total));
  t.dim = qt.dim;
  t.projection = qt.projection;
  t.section = qt.section;
  return t;
}

Mat tensor_map(const Rep& right, const Morphism& f, const TensorSpace& from, const TensorSpace& to) {
  std::vector<Mat> blocks;
  for (std::size_t v = 0; v < f.components().size(); ++v)
    blocks.push_back(kronecker(Mat::identity(right.dim(v)), f.component(v)));
  return to.projection * block_diag(blocks) * from.section;
}

std::size_t tor1_right(const Rep& right, const Rep& s) {
  if (right.is_zero() || s.is_zero()) return 0;
  const ProjectiveCover p0 = projective_cover(s);
  const Subrep omega = kernel(p0.surjection);
  const TensorSpace t_omega = tensor(right, omega.rep);
  const TensorSpace t_p0 = tensor(right, p0.cover);
  const Mat m = tensor_map(right, omega.inclusion, t_omega, t_p0);
  return m.cols() - rank(m);
}

Rep right_projective(const AlgebraPtr& algebra, const AlgebraPtr& opposite, std::size_t v) {
  return dual(injective(algebra, v), opposite);
}

namespace {

// Left multiplication by x in e_w A e_v as a map e_v A e_u -> e_w A e_u.
Mat left_multiplication(const Algebra& a, const Element& x, std::size_t u, std::size_t v, std::size_t w) {
  const auto& from = a.basis_between(u, v);
  const auto& to = a.basis_between(u, w);
  Mat m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    const Element y = a.multiply(x, a.basis_element(from[c]));
    for (std::size_t r = 0; r < to.size(); ++r) m(r, c) = y[to[r]];
  }
  return m;
}

}  // namespace

Rep tau(const Rep& m) {
  const Algebra& a = m.algebra();
  if (m.is_zero()) return m;
  const ProjectivePresentation pres = min_presentation(m);
  if (pres.syzygy.rep.is_zero()) return Rep::zero(m.algebra_ptr());

  const auto& top0 = pres.p0.tops;
  const auto& top1 = pres.p1.tops;
  // Offsets of each P(v) summand inside the vertex spaces of P0 and P1.
  auto block_offsets = [&](const std::vector<std::size_t>& tops) {
    std::vector<std::vector<std::size_t>> off(tops.size(), std::vector<std::size_t>(a.vertex_count()));
    std::vector<std::size_t> at(a.vertex_count(), 0);
    for (std::size_t i = 0; i < tops.size(); ++i)
      for (std::size_t u = 0; u < a.vertex_count(); ++u) {
        off[i][u] = at[u];
        at[u] += a.basis_between(tops[i], u).size();
      }
    return off;
  };
  const auto off0 = block_offsets(top0);
  const auto off1 = block_offsets(top1);

  // x_ij in e_{w_i} A e_{v_j}: the image of the i-th generator of P1 in the j-th summand of P0.
  std::vector<std::vector<Element>> x(top1.size(), std::vector<Element>(top0.size()));
  for (std::size_t i = 0; i < top1.size(); ++i) {
    const std::size_t w = top1[i];
    const auto& own = a.basis_between(w, w);
    const std::size_t pos = static_cast<std::size_t>(
        std::find(own.begin(), own.end(), a.idempotent(w)) - own.begin());
    const Mat col = pres.differential.component(w).col(off1[i][w] + pos);
    for (std::size_t j = 0; j < top0.size(); ++j) {
      Element e(a.dimension());
      const auto& paths = a.basis_between(top0[j], w);
      for (std::size_t r = 0; r < paths.size(); ++r) e[paths[r]] = col(off0[j][w] + r, 0);
      x[i][j] = std::move(e);
    }
  }

  std::vector<Rep> inj1, inj0;
  for (auto w : top1) inj1.push_back(injective(m.algebra_ptr(), w));
  for (auto v : top0) inj0.push_back(injective(m.algebra_ptr(), v));
  const DirectSum nu1 = direct_sum(m.algebra_ptr(), inj1);
  const DirectSum nu0 = direct_sum(m.algebra_ptr(), inj0);

  std::vector<Mat> comps;
  for (std::size_t u = 0; u < a.vertex_count(); ++u) {
    Mat c(nu0.sum.dim(u), nu1.sum.dim(u));
    std::size_t row = 0;
    for (std::size_t j = 0; j < top0.size(); ++j) {
      std::size_t col = 0;
      for (std::size_t i = 0; i < top1.size(); ++i) {
        // D(e_w A e_u) -> D(e_v A e_u) is the transpose of p |-> x_ij p.
        const Mat l = left_multiplication(a, x[i][j], u, top0[j], top1[i]);
        c.set_block(row, col, l.transpose());
        col += inj1[i].dim(u);
      }
      row += inj0[j].dim(u);
    }
    comps.push_back(std::move(c));
  }
  const Morphism nu(nu1.sum, nu0.sum, std::move(comps));
  return kernel(nu).rep;
}

Rep tau_inverse(const Rep& m, const AlgebraPtr& opposite) {
  const Rep dm = dual(m, opposite);
  const Rep t = tau(dm);
  return dual(t, m.algebra_ptr());
}

Rep tau_inverse(const Rep& m) { return tau_inverse(m, opposite_algebra(m.algebra())); }

std::vector<Rep> Roster::modules() const {
  std::vector<Rep> out;
  for (const auto& e : entries) out.push_back(e.module);
  return out;
}

Roster enumerate_roster(const AlgebraPtr& algebra, std::size_t cap, std::uint64_t seed) {
  Roster roster{algebra, {}};
  const AlgebraPtr op = opposite_algebra(*algebra);
  auto known = [&](const Rep& m) {
    for (const auto& e : roster.entries)
      if (e.module.dims() == m.dims() && is_isomorphic(e.module, m, seed)) return true;
    return false;
  };
  auto add = [&](RosterEntry entry) {
    if (known(entry.module)) return;
    if (roster.entries.size() >= cap)
      throw CapExceeded("more than " + std::to_string(cap) + " indecomposables generated");
    roster.entries.push_back(std::move(entry));
  };

  for (std::size_t v = 0; v < algebra->vertex_count(); ++v)
    for (const auto& s : decompose(projective(algebra, v), seed).summands) add({s.module, "projective", 0, std::nullopt});

  for (std::size_t next = 0; next < roster.entries.size(); ++next) {
    const Rep shifted = tau_inverse(roster.entries[next].module, op);
    const std::size_t gen = roster.entries[next].generation + 1;
    for (const auto& s : decompose(shifted, seed).summands) add({s.module, "tau-", gen, next});
  }
  return roster;
}

}  // namespace rectilt
