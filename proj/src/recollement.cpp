#include "rectilt/recollement.hpp"

#include <algorithm>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"

namespace rectilt {

std::string functor_name(Functor f) {
  switch (f) {
    case Functor::IUpperStar:
      return "i*";
    case Functor::ILowerStar:
      return "i_*";
    case Functor::IShriek:
      return "i!";
    case Functor::JShriek:
      return "j_!";
    case Functor::JUpperStar:
      return "j*";
    case Functor::JLowerStar:
      return "j_*";
  }
  return "?";
}

Functor parse_functor(const std::string& name) {
  if (name == "i*" || name == "i^*" || name == "i_upper_star") return Functor::IUpperStar;
  if (name == "i_*" || name == "i_star") return Functor::ILowerStar;
  if (name == "i!" || name == "i^!" || name == "i_shriek") return Functor::IShriek;
  if (name == "j_!" || name == "j!" || name == "j_shriek") return Functor::JShriek;
  if (name == "j*" || name == "j^*" || name == "j_star_upper") return Functor::JUpperStar;
  if (name == "j_*" || name == "j_star_lower") return Functor::JLowerStar;
  throw InputError("unknown functor \"" + name + "\"");
}

namespace {

Rep restrict_to(const Rep& m, const std::vector<std::size_t>& vertices, const AlgebraPtr& part,
                const std::vector<std::size_t>& arrows) {
  std::vector<std::size_t> dims;
  for (auto v : vertices) dims.push_back(m.dim(v));
  std::vector<Mat> maps;
  for (auto k : arrows) maps.push_back(m.map(k));
  return Rep(part, std::move(dims), std::move(maps));
}

Morphism restrict_to(const Morphism& f, const std::vector<std::size_t>& vertices, const AlgebraPtr& part,
                     const std::vector<std::size_t>& arrows) {
  std::vector<Mat> comps;
  for (auto v : vertices) comps.push_back(f.component(v));
  return Morphism(restrict_to(f.source(), vertices, part, arrows), restrict_to(f.target(), vertices, part, arrows),
                  std::move(comps));
}

Rep extend_by_zero(const Rep& x, const AlgebraPtr& big, const std::vector<std::size_t>& vertices,
                   const std::vector<std::size_t>& arrows) {
  const Quiver& q = big->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) dims[vertices[i]] = x.dim(i);
  std::vector<Mat> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k)
    maps.emplace_back(dims[q.arrow(k).target], dims[q.arrow(k).source]);
  for (std::size_t i = 0; i < arrows.size(); ++i) maps[arrows[i]] = x.map(i);
  return Rep(big, std::move(dims), std::move(maps));
}

Morphism extend_by_zero(const Morphism& f, const AlgebraPtr& big, const std::vector<std::size_t>& vertices,
                        const std::vector<std::size_t>& arrows) {
  Rep s = extend_by_zero(f.source(), big, vertices, arrows);
  Rep t = extend_by_zero(f.target(), big, vertices, arrows);
  std::vector<Mat> comps;
  for (std::size_t v = 0; v < s.dims().size(); ++v) comps.emplace_back(t.dim(v), s.dim(v));
  for (std::size_t i = 0; i < vertices.size(); ++i) comps[vertices[i]] = f.component(i);
  return Morphism(std::move(s), std::move(t), std::move(comps));
}

std::vector<std::size_t> arrows_inside(const Quiver& q, const std::vector<bool>& in) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < q.arrow_count(); ++k)
    if (in[q.arrow(k).source] && in[q.arrow(k).target]) out.push_back(k);
  return out;
}

// The submodule generated by the V''-part.
Subrep outer_generated(const RecollementContext& ctx, const Rep& m) {
  std::vector<Mat> gens;
  for (std::size_t v = 0; v < m.dims().size(); ++v) gens.emplace_back(m.dim(v), 0);
  for (auto v : ctx.outer) gens[v] = Mat::identity(m.dim(v));
  return generated_subrepresentation(m, gens);
}

std::size_t position(const std::vector<std::size_t>& xs, std::size_t x) {
  return static_cast<std::size_t>(std::find(xs.begin(), xs.end(), x) - xs.begin());
}

}  // namespace

RecollementContext split_context(const AlgebraPtr& algebra, const std::vector<std::size_t>& outer) {
  const Algebra& a = *algebra;
  const std::size_t n = a.vertex_count();
  std::vector<bool> is_outer(n, false);
  for (auto v : outer) {
    if (v >= n) throw InputError("outer vertex out of range");
    is_outer[v] = true;
  }
  RecollementContext ctx;
  ctx.algebra = algebra;
  for (std::size_t v = 0; v < n; ++v) (is_outer[v] ? ctx.outer : ctx.inner).push_back(v);
  if (ctx.inner.empty() || ctx.outer.empty()) throw InputError("both parts of the vertex split must be nonempty");

  for (auto s : ctx.inner)
    for (auto t : ctx.outer)
      if (!a.basis_between(s, t).empty())
        throw NotTriangular("nonzero path class " + a.describe(a.basis_between(s, t).front()) + " runs from " +
                            a.quiver().label(s) + " to " + a.quiver().label(t));

  std::vector<bool> is_inner(n);
  for (std::size_t v = 0; v < n; ++v) is_inner[v] = !is_outer[v];
  ctx.inner_arrows = arrows_inside(a.quiver(), is_inner);
  ctx.outer_arrows = arrows_inside(a.quiver(), is_outer);
  ctx.opposite = opposite_algebra(a);
  ctx.inner_algebra = full_subalgebra(a, ctx.inner);
  ctx.outer_algebra = full_subalgebra(a, ctx.outer);
  ctx.outer_opposite = opposite_algebra(*ctx.outer_algebra);
  for (auto u : ctx.inner)
    ctx.bimodule_rows.push_back(
        restrict_to(right_projective(algebra, ctx.opposite, u), ctx.outer, ctx.outer_opposite, ctx.outer_arrows));
  return ctx;
}

Rep i_star(const RecollementContext& ctx, const Rep& x) {
  return extend_by_zero(x, ctx.algebra, ctx.inner, ctx.inner_arrows);
}

Rep j_star_lower(const RecollementContext& ctx, const Rep& y) {
  return extend_by_zero(y, ctx.algebra, ctx.outer, ctx.outer_arrows);
}

Rep i_shriek(const RecollementContext& ctx, const Rep& m) {
  return restrict_to(m, ctx.inner, ctx.inner_algebra, ctx.inner_arrows);
}

Rep j_star_upper(const RecollementContext& ctx, const Rep& m) {
  return restrict_to(m, ctx.outer, ctx.outer_algebra, ctx.outer_arrows);
}

Rep i_upper_star(const RecollementContext& ctx, const Rep& m) {
  const QuotientRep q = cokernel(outer_generated(ctx, m).inclusion);
  return restrict_to(q.rep, ctx.inner, ctx.inner_algebra, ctx.inner_arrows);
}

namespace {

struct ShriekData {
  Rep rep;
  std::vector<TensorSpace> spaces;  // per u in V'
};

ShriekData j_shriek_data(const RecollementContext& ctx, const Rep& y) {
  const Algebra& a = *ctx.algebra;
  const Quiver& q = a.quiver();
  std::vector<TensorSpace> spaces;
  for (const auto& row : ctx.bimodule_rows) spaces.push_back(tensor(row, y));

  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (std::size_t i = 0; i < ctx.inner.size(); ++i) dims[ctx.inner[i]] = spaces[i].dim;
  for (std::size_t i = 0; i < ctx.outer.size(); ++i) dims[ctx.outer[i]] = y.dim(i);

  std::vector<Mat> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& arr = q.arrow(k);
    const std::size_t si = position(ctx.inner, arr.source), ti = position(ctx.inner, arr.target);
    const std::size_t so = position(ctx.outer, arr.source);
    const bool s_in = si < ctx.inner.size(), t_in = ti < ctx.inner.size();
    if (!s_in && !t_in) {
      maps.push_back(y.map(position(ctx.outer_arrows, k)));
    } else if (!s_in && t_in) {
      // y in Y_w |-> [arrow (x) y] in N e_w (x) Y_w.
      const TensorSpace& t = spaces[ti];
      const Element c = a.reduce_arrows(arr.source, {k});
      const auto& paths = a.basis_between(arr.source, arr.target);
      Mat cv(paths.size(), 1);
      for (std::size_t r = 0; r < paths.size(); ++r) cv(r, 0) = c[paths[r]];
      Mat embed(t.projection.cols(), y.dim(so));
      embed.set_block(t.offsets[so], 0, kronecker(cv, Mat::identity(y.dim(so))));
      maps.push_back(t.projection * embed);
    } else if (s_in && t_in) {
      // Left multiplication by the arrow on each e_u Lambda e_w, tensored with Y_w.
      std::vector<Mat> blocks;
      for (std::size_t w = 0; w < ctx.outer.size(); ++w) {
        const std::size_t gw = ctx.outer[w];
        const auto& from = a.basis_between(gw, arr.source);
        const auto& into = a.basis_between(gw, arr.target);
        Mat l(into.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c) {
          Path p = a.basis()[from[c]];
          p.arrows.push_back(k);
          p.target = arr.target;
          const Element e = a.reduce(p);
          for (std::size_t r = 0; r < into.size(); ++r) l(r, c) = e[into[r]];
        }
        blocks.push_back(kronecker(l, Mat::identity(y.dim(w))));
      }
      maps.push_back(spaces[ti].projection * block_diag(blocks) * spaces[si].section);
    } else {
      maps.emplace_back(dims[arr.target], dims[arr.source]);
    }
  }
  return {Rep(ctx.algebra, std::move(dims), std::move(maps)), std::move(spaces)};
}

}  // namespace

Rep j_shriek(const RecollementContext& ctx, const Rep& y) { return j_shriek_data(ctx, y).rep; }

Rep apply(const RecollementContext& ctx, Functor f, const Rep& m) {
  const bool want_inner = f == Functor::ILowerStar;
  const bool want_outer = f == Functor::JShriek || f == Functor::JLowerStar;
  const AlgebraPtr& expected = want_inner ? ctx.inner_algebra : want_outer ? ctx.outer_algebra : ctx.algebra;
  if (m.algebra_ptr() != expected)
    throw InputError("functor " + functor_name(f) + " applied to a module over the wrong algebra");
  switch (f) {
    case Functor::IUpperStar:
      return i_upper_star(ctx, m);
    case Functor::ILowerStar:
      return i_star(ctx, m);
    case Functor::IShriek:
      return i_shriek(ctx, m);
    case Functor::JShriek:
      return j_shriek(ctx, m);
    case Functor::JUpperStar:
      return j_star_upper(ctx, m);
    case Functor::JLowerStar:
      return j_star_lower(ctx, m);
  }
  throw InternalError("unreachable");
}

Morphism apply(const RecollementContext& ctx, Functor f, const Morphism& m) {
  switch (f) {
    case Functor::ILowerStar:
      return extend_by_zero(m, ctx.algebra, ctx.inner, ctx.inner_arrows);
    case Functor::JLowerStar:
      return extend_by_zero(m, ctx.algebra, ctx.outer, ctx.outer_arrows);
    case Functor::IShriek:
      return restrict_to(m, ctx.inner, ctx.inner_algebra, ctx.inner_arrows);
    case Functor::JUpperStar:
      return restrict_to(m, ctx.outer, ctx.outer_algebra, ctx.outer_arrows);
    case Functor::IUpperStar: {
      const QuotientRep qs = cokernel(outer_generated(ctx, m.source()).inclusion);
      const QuotientRep qt = cokernel(outer_generated(ctx, m.target()).inclusion);
      const Morphism induced = descend(qs, qt.projection * m);
      return restrict_to(induced, ctx.inner, ctx.inner_algebra, ctx.inner_arrows);
    }
    case Functor::JShriek: {
      const ShriekData s = j_shriek_data(ctx, m.source());
      const ShriekData t = j_shriek_data(ctx, m.target());
      std::vector<Mat> comps(ctx.algebra->vertex_count());
      for (std::size_t i = 0; i < ctx.inner.size(); ++i)
        comps[ctx.inner[i]] = tensor_map(ctx.bimodule_rows[i], m, s.spaces[i], t.spaces[i]);
      for (std::size_t i = 0; i < ctx.outer.size(); ++i) comps[ctx.outer[i]] = m.component(i);
      return Morphism(s.rep, t.rep, std::move(comps));
    }
  }
  throw InternalError("unreachable");
}

SES canonical_sequence(const RecollementContext& ctx, const Rep& m) {
  const Rep left = i_star(ctx, i_shriek(ctx, m));
  const Rep right = j_star_lower(ctx, j_star_upper(ctx, m));
  std::vector<Mat> inc, proj;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    const bool outer = std::binary_search(ctx.outer.begin(), ctx.outer.end(), v);
    inc.push_back(outer ? Mat(m.dim(v), 0) : Mat::identity(m.dim(v)));
    proj.push_back(outer ? Mat::identity(m.dim(v)) : Mat(0, m.dim(v)));
  }
  SES s{left, m, right, Morphism(left, m, std::move(inc)), Morphism(m, right, std::move(proj))};
  if (!is_exact(s)) throw InternalError("canonical sequence is not exact");
  return s;
}

const FunctorExactness& ExactnessReport::at(Functor f) const {
  for (const auto& e : functors)
    if (e.functor == f) return e;
  throw InternalError("functor missing from exactness report");
}

ExactnessReport check_exactness(const RecollementContext& ctx) {
  ExactnessReport r;
  auto structural = [](Functor f) { return FunctorExactness{f, true, "structural", std::nullopt}; };

  FunctorExactness upper{Functor::IUpperStar, true, "tor", std::nullopt};
  for (auto u : ctx.inner) {
    const Rep row = right_projective(ctx.algebra, ctx.opposite, u);
    const QuotientRep b = cokernel(outer_generated(ctx, row).inclusion);
    for (std::size_t v = 0; v < ctx.algebra->vertex_count() && upper.exact; ++v) {
      const std::size_t d = tor1_right(b.rep, simple(ctx.algebra, v));
      if (d != 0) upper = {Functor::IUpperStar, false, "tor", TorWitness{u, v, d}};
    }
    if (!upper.exact) break;
  }

  FunctorExactness shriek{Functor::JShriek, true, "tor", std::nullopt};
  for (std::size_t i = 0; i < ctx.inner.size() && shriek.exact; ++i)
    for (std::size_t w = 0; w < ctx.outer.size() && shriek.exact; ++w) {
      const std::size_t d = tor1_right(ctx.bimodule_rows[i], simple(ctx.outer_algebra, w));
      if (d != 0) shriek = {Functor::JShriek, false, "tor", TorWitness{ctx.inner[i], ctx.outer[w], d}};
    }

  r.functors = {upper,  structural(Functor::ILowerStar), structural(Functor::IShriek),
                shriek, structural(Functor::JUpperStar), structural(Functor::JLowerStar)};
  return r;
}

bool IdentityReport::passes() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.failures.empty(); });
}

IdentityReport verify_recollement_identities(const RecollementContext& ctx, const std::vector<Rep>& inner_samples,
                                             const std::vector<Rep>& outer_samples,
                                             const std::vector<Rep>& samples, std::uint64_t seed) {
  IdentityReport report;
  report.checks.reserve(11);
  auto check = [&](const std::string& name) -> IdentityCheck& {
    report.checks.push_back({name, 0, {}});
    return report.checks.back();
  };
  auto record = [](IdentityCheck& c, bool ok, const std::string& where) {
    ++c.checked;
    if (!ok) c.failures.push_back(where);
  };
  auto tag = [](const char* kind, std::size_t i) { return std::string(kind) + "[" + std::to_string(i) + "]"; };
  auto tag2 = [&](const char* a, std::size_t i, const char* b, std::size_t j) { return tag(a, i) + "," + tag(b, j); };

  std::vector<Rep> shrieks, lowers, inner_images;
  for (const auto& y : outer_samples) {
    shrieks.push_back(j_shriek(ctx, y));
    lowers.push_back(j_star_lower(ctx, y));
  }
  for (const auto& x : inner_samples) inner_images.push_back(i_star(ctx, x));

  IdentityCheck& c1 = check("i*j_! = 0");
  for (std::size_t i = 0; i < outer_samples.size(); ++i) record(c1, i_upper_star(ctx, shrieks[i]).is_zero(), tag("Y", i));
  IdentityCheck& c2 = check("i!j_* = 0");
  for (std::size_t i = 0; i < outer_samples.size(); ++i) record(c2, i_shriek(ctx, lowers[i]).is_zero(), tag("Y", i));
  IdentityCheck& c3 = check("j*j_! = id");
  for (std::size_t i = 0; i < outer_samples.size(); ++i)
    record(c3, is_isomorphic(j_star_upper(ctx, shrieks[i]), outer_samples[i], seed), tag("Y", i));
  IdentityCheck& c4 = check("j*j_* = id");
  for (std::size_t i = 0; i < outer_samples.size(); ++i)
    record(c4, is_isomorphic(j_star_upper(ctx, lowers[i]), outer_samples[i], seed), tag("Y", i));
  IdentityCheck& c5 = check("i*i_* = id");
  for (std::size_t i = 0; i < inner_samples.size(); ++i)
    record(c5, is_isomorphic(i_upper_star(ctx, inner_images[i]), inner_samples[i], seed), tag("X", i));
  IdentityCheck& c6 = check("i!i_* = id");
  for (std::size_t i = 0; i < inner_samples.size(); ++i)
    record(c6, is_isomorphic(i_shriek(ctx, inner_images[i]), inner_samples[i], seed), tag("X", i));
  IdentityCheck& c7 = check("Im i_* = Ker j*");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const bool in_kernel = j_star_upper(ctx, samples[i]).is_zero();
    const bool in_image = is_isomorphic(samples[i], i_star(ctx, i_shriek(ctx, samples[i])), seed);
    record(c7, in_kernel == in_image, tag("M", i));
  }

  IdentityCheck& a1 = check("Hom(j_!Y, M) = Hom(Y, j*M)");
  IdentityCheck& a4 = check("Hom(j*M, Y) = Hom(M, j_*Y)");
  for (std::size_t i = 0; i < outer_samples.size(); ++i)
    for (std::size_t m = 0; m < samples.size(); ++m) {
      const Rep jm = j_star_upper(ctx, samples[m]);
      record(a1, hom_dim(shrieks[i], samples[m]) == hom_dim(outer_samples[i], jm), tag2("Y", i, "M", m));
      record(a4, hom_dim(jm, outer_samples[i]) == hom_dim(samples[m], lowers[i]), tag2("Y", i, "M", m));
    }
  IdentityCheck& a2 = check("Hom(i*M, X) = Hom(M, i_*X)");
  IdentityCheck& a3 = check("Hom(i_*X, M) = Hom(X, i!M)");
  for (std::size_t i = 0; i < inner_samples.size(); ++i)
    for (std::size_t m = 0; m < samples.size(); ++m) {
      record(a2, hom_dim(i_upper_star(ctx, samples[m]), inner_samples[i]) == hom_dim(samples[m], inner_images[i]),
             tag2("X", i, "M", m));
      record(a3, hom_dim(inner_images[i], samples[m]) == hom_dim(inner_samples[i], i_shriek(ctx, samples[m])),
             tag2("X", i, "M", m));
    }
  return report;
}

}  // namespace rectilt
