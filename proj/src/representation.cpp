#include "rectilt/representation.hpp"

#include <numeric>
#include <sstream>

#include "rectilt/errors.hpp"

namespace rectilt {

Rep::Rep(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Mat> maps)
    : algebra_(std::move(algebra)), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!algebra_) throw InternalError("representation without an algebra");
  const Quiver& q = algebra_->quiver();
  if (dims_.size() != q.vertex_count()) throw InputError("dimension vector has the wrong length");
  if (maps_.size() != q.arrow_count()) throw InputError("wrong number of arrow maps");
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (maps_[a].rows() != dims_[arr.target] || maps_[a].cols() != dims_[arr.source])
      throw InputError("map for arrow \"" + arr.name + "\" has shape " + std::to_string(maps_[a].rows()) + "x" +
                       std::to_string(maps_[a].cols()) + ", expected " + std::to_string(dims_[arr.target]) + "x" +
                       std::to_string(dims_[arr.source]));
  }
  for (const auto& rel : algebra_->relations()) {
    const std::size_t s = q.arrow(rel.front().arrows.front()).source;
    const std::size_t t = q.arrow(rel.front().arrows.back()).target;
    Mat acc(dims_[t], dims_[s]);
    for (const auto& term : rel) {
      Path p{s, s, {}};
      for (auto a : term.arrows) {
        p.arrows.push_back(a);
        p.target = q.arrow(a).target;
      }
      acc += path_action(p) * term.coeff;
    }
    if (!acc.is_zero()) throw InputError("representation violates a relation");
  }
}

Rep Rep::zero(AlgebraPtr algebra) {
  const Quiver& q = algebra->quiver();
  std::vector<Mat> maps(q.arrow_count());
  return Rep(std::move(algebra), std::vector<std::size_t>(q.vertex_count(), 0), std::move(maps));
}

std::size_t Rep::total_dim() const noexcept { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

std::vector<std::size_t> Rep::offsets() const {
  std::vector<std::size_t> off(dims_.size());
  std::size_t at = 0;
  for (std::size_t v = 0; v < dims_.size(); ++v) {
    off[v] = at;
    at += dims_[v];
  }
  return off;
}

Mat Rep::path_action(const Path& p) const {
  Mat acc = Mat::identity(dims_.at(p.source));
  for (auto a : p.arrows) acc = maps_.at(a) * acc;
  return acc;
}

Mat Rep::element_action(const Element& x, std::size_t source, std::size_t target) const {
  Mat acc(dims_.at(target), dims_.at(source));
  for (auto i : algebra_->basis_between(source, target)) {
    if (sgn(x[i]) == 0) continue;
    acc += path_action(algebra_->basis()[i]) * x[i];
  }
  return acc;
}

bool operator==(const Rep& a, const Rep& b) {
  return a.algebra_ == b.algebra_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
}

Morphism::Morphism(Rep source, Rep target, std::vector<Mat> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (source_.algebra_ptr() != target_.algebra_ptr()) throw InternalError("morphism between different algebras");
  const Quiver& q = source_.algebra().quiver();
  if (components_.size() != q.vertex_count()) throw InternalError("morphism has the wrong number of components");
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (components_[v].rows() != target_.dim(v) || components_[v].cols() != source_.dim(v))
      throw InternalError("morphism component has the wrong shape");
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (!(target_.map(a) * components_[arr.source] == components_[arr.target] * source_.map(a)))
      throw InternalError("morphism does not commute with arrow \"" + arr.name + "\"");
  }
}

Morphism Morphism::zero(const Rep& source, const Rep& target) {
  std::vector<Mat> c;
  for (std::size_t v = 0; v < source.dims().size(); ++v) c.emplace_back(target.dim(v), source.dim(v));
  return Morphism(source, target, std::move(c));
}

Morphism Morphism::identity(const Rep& m) {
  std::vector<Mat> c;
  for (auto d : m.dims()) c.push_back(Mat::identity(d));
  return Morphism(m, m, std::move(c));
}

bool Morphism::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

bool Morphism::is_injective() const {
  for (std::size_t v = 0; v < components_.size(); ++v)
    if (rectilt::rank(components_[v]) != source_.dim(v)) return false;
  return true;
}

bool Morphism::is_surjective() const {
  for (std::size_t v = 0; v < components_.size(); ++v)
    if (rectilt::rank(components_[v]) != target_.dim(v)) return false;
  return true;
}

bool Morphism::is_isomorphism() const { return source_.dims() == target_.dims() && is_injective(); }

std::size_t Morphism::rank() const {
  std::size_t r = 0;
  for (const auto& c : components_) r += rectilt::rank(c);
  return r;
}

Mat Morphism::total() const { return block_diag(components_); }

Morphism operator*(const Morphism& g, const Morphism& f) {
  if (g.source_.dims() != f.target_.dims()) throw InternalError("composing non-composable morphisms");
  std::vector<Mat> c;
  for (std::size_t v = 0; v < f.components_.size(); ++v) c.push_back(g.components_[v] * f.components_[v]);
  return Morphism(f.source_, g.target_, std::move(c));
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  std::vector<Mat> c;
  for (std::size_t v = 0; v < f.components_.size(); ++v) c.push_back(f.components_[v] + g.components_[v]);
  return Morphism(f.source_, f.target_, std::move(c));
}

Morphism operator*(const Rational& s, const Morphism& f) {
  std::vector<Mat> c;
  for (const auto& m : f.components_) c.push_back(m * s);
  return Morphism(f.source_, f.target_, std::move(c));
}

bool is_exact(const SES& s) {
  const std::size_t nv = s.middle.dims().size();
  for (std::size_t v = 0; v < nv; ++v) {
    if (s.left.dim(v) + s.right.dim(v) != s.middle.dim(v)) return false;
    if (rank(s.inject.component(v)) != s.left.dim(v)) return false;
    if (rank(s.project.component(v)) != s.right.dim(v)) return false;
    if (!(s.project.component(v) * s.inject.component(v)).is_zero()) return false;
  }
  return true;
}

bool is_split(const SES& s) {
  const auto basis = hom_basis(s.right, s.middle);
  const Mat target = flatten(Morphism::identity(s.right));
  if (basis.empty()) return target.rows() == 0 || target.is_zero();
  std::vector<Mat> cols;
  for (const auto& h : basis) cols.push_back(flatten(s.project * h));
  return solve(hstack(cols, target.rows()), target).has_value();
}

Subrep subrepresentation(const Rep& m, const std::vector<Mat>& bases) {
  const Quiver& q = m.algebra().quiver();
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (bases[v].rows() != m.dim(v)) throw InternalError("subspace basis lives in the wrong space");
    dims.push_back(bases[v].cols());
  }
  std::vector<Mat> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    auto x = solve(bases[arr.target], m.map(a) * bases[arr.source]);
    if (!x) throw InternalError("subspaces are not stable under arrow \"" + arr.name + "\"");
    maps.push_back(std::move(*x));
  }
  Rep sub(m.algebra_ptr(), std::move(dims), std::move(maps));
  Morphism inc(sub, m, bases);
  return {std::move(sub), std::move(inc)};
}

Subrep generated_subrepresentation(const Rep& m, const std::vector<Mat>& generators) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Mat> span;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) span.push_back(column_space_basis(generators.at(v)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const Arrow& arr = q.arrow(a);
      Mat img = m.map(a) * span[arr.source];
      if (!contained_in(img, span[arr.target])) {
        span[arr.target] = column_space_basis(hstack(span[arr.target], img));
        changed = true;
      }
    }
  }
  return subrepresentation(m, span);
}

QuotientRep quotient_representation(const Rep& m, const std::vector<Mat>& spans) {
  const Quiver& q = m.algebra().quiver();
  std::vector<Quotient> parts;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    parts.push_back(quotient(m.dim(v), spans.at(v)));
    dims.push_back(parts.back().dim);
  }
  std::vector<Mat> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    maps.push_back(parts[arr.target].projection * m.map(a) * parts[arr.source].section);
  }
  Rep rep(m.algebra_ptr(), std::move(dims), std::move(maps));
  std::vector<Mat> proj, sec;
  for (auto& p : parts) {
    proj.push_back(std::move(p.projection));
    sec.push_back(std::move(p.section));
  }
  Morphism projection(m, rep, std::move(proj));
  return {std::move(rep), std::move(projection), std::move(sec)};
}

Subrep kernel(const Morphism& f) {
  std::vector<Mat> bases;
  for (const auto& c : f.components()) bases.push_back(kernel_basis(c));
  return subrepresentation(f.source(), bases);
}

Subrep image(const Morphism& f) {
  std::vector<Mat> bases;
  for (const auto& c : f.components()) bases.push_back(column_space_basis(c));
  return subrepresentation(f.target(), bases);
}

QuotientRep cokernel(const Morphism& f) { return quotient_representation(f.target(), f.components()); }

Morphism descend(const QuotientRep& q, const Morphism& h) {
  std::vector<Mat> c;
  for (std::size_t v = 0; v < q.sections.size(); ++v) c.push_back(h.component(v) * q.sections[v]);
  Morphism out(q.rep, h.target(), std::move(c));
  for (std::size_t v = 0; v < q.sections.size(); ++v)
    if (!(out.component(v) * q.projection.component(v) == h.component(v)))
      throw InternalError("descend: map does not vanish on the kernel");
  return out;
}

DirectSum direct_sum(const AlgebraPtr& algebra, const std::vector<Rep>& parts) {
  const Quiver& q = algebra->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (const auto& p : parts) {
    if (p.algebra_ptr() != algebra) throw InternalError("direct sum across algebras");
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += p.dim(v);
  }
  std::vector<Mat> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) blocks.push_back(p.map(a));
    Mat m = block_diag(blocks);
    if (parts.empty()) m = Mat(0, 0);
    maps.push_back(std::move(m));
  }
  Rep sum(algebra, dims, std::move(maps));
  DirectSum out{sum, {}, {}};
  std::vector<std::size_t> at(dims.size(), 0);
  for (const auto& p : parts) {
    std::vector<Mat> inj, proj;
    for (std::size_t v = 0; v < dims.size(); ++v) {
      Mat i(dims[v], p.dim(v));
      i.set_block(at[v], 0, Mat::identity(p.dim(v)));
      proj.push_back(i.transpose());
      inj.push_back(std::move(i));
      at[v] += p.dim(v);
    }
    out.injections.emplace_back(p, sum, std::move(inj));
    out.projections.emplace_back(sum, p, std::move(proj));
  }
  return out;
}

Rep direct_sum_rep(const AlgebraPtr& algebra, const std::vector<Rep>& parts) {
  return direct_sum(algebra, parts).sum;
}

Rep power(const Rep& m, std::size_t n) { return direct_sum_rep(m.algebra_ptr(), std::vector<Rep>(n, m)); }

Pushout pushout(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source())) throw InternalError("pushout legs have different sources");
  const AlgebraPtr& alg = f.source().algebra_ptr();
  DirectSum s = direct_sum(alg, {f.target(), g.target()});
  std::vector<Mat> c;
  for (std::size_t v = 0; v < f.components().size(); ++v)
    c.push_back(vstack(f.component(v), g.component(v) * Rational(-1)));
  Morphism h(f.source(), s.sum, std::move(c));
  QuotientRep q = cokernel(h);
  Morphism first = q.projection * s.injections[0];
  Morphism second = q.projection * s.injections[1];
  return {q.rep, std::move(first), std::move(second)};
}

std::size_t flat_size(const Rep& source, const Rep& target) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < source.dims().size(); ++v) n += source.dim(v) * target.dim(v);
  return n;
}

Mat flatten(const Morphism& f) {
  Mat out(flat_size(f.source(), f.target()), 1);
  std::size_t at = 0;
  for (const auto& c : f.components())
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) out(at++, 0) = c(r, k);
  return out;
}

Morphism unflatten(const Rep& source, const Rep& target, const Mat& coords) {
  std::vector<Mat> comps;
  std::size_t at = 0;
  for (std::size_t v = 0; v < source.dims().size(); ++v) {
    Mat c(target.dim(v), source.dim(v));
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) = coords(at++, 0);
    comps.push_back(std::move(c));
  }
  return Morphism(source, target, std::move(comps));
}

namespace {

Mat hom_system(const Rep& m, const Rep& n) {
  const Quiver& q = m.algebra().quiver();
  std::vector<std::size_t> off(q.vertex_count());
  std::size_t vars = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    off[v] = vars;
    vars += n.dim(v) * m.dim(v);
  }
  std::size_t eqs = 0;
  for (const auto& arr : q.arrows()) eqs += n.dim(arr.target) * m.dim(arr.source);
  Mat sys(eqs, vars);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    const std::size_t i = arr.source, j = arr.target;
    const Mat& na = n.map(a);
    const Mat& ma = m.map(a);
    // (N_a X_i - X_j M_a)[r][c] = 0
    for (std::size_t r = 0; r < n.dim(j); ++r) {
      for (std::size_t c = 0; c < m.dim(i); ++c, ++row) {
        for (std::size_t k = 0; k < n.dim(i); ++k)
          if (sgn(na(r, k)) != 0) sys(row, off[i] + k * m.dim(i) + c) += na(r, k);
        for (std::size_t k = 0; k < m.dim(j); ++k)
          if (sgn(ma(k, c)) != 0) sys(row, off[j] + r * m.dim(j) + k) -= ma(k, c);
      }
    }
  }
  return sys;
}

}  // namespace

std::vector<Morphism> hom_basis(const Rep& m, const Rep& n) {
  if (m.algebra_ptr() != n.algebra_ptr()) throw InternalError("Hom between modules over different algebras");
  const Mat k = kernel_basis(hom_system(m, n));
  std::vector<Morphism> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(unflatten(m, n, k.col(c)));
  return out;
}

std::size_t hom_dim(const Rep& m, const Rep& n) {
  if (m.algebra_ptr() != n.algebra_ptr()) throw InternalError("Hom between modules over different algebras");
  const Mat sys = hom_system(m, n);
  return sys.cols() - rank(sys);
}

Rep simple(const AlgebraPtr& algebra, std::size_t v) {
  const Quiver& q = algebra->quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  dims.at(v) = 1;
  std::vector<Mat> maps;
  for (const auto& arr : q.arrows()) maps.emplace_back(dims[arr.target], dims[arr.source]);
  return Rep(algebra, std::move(dims), std::move(maps));
}

Rep projective(const AlgebraPtr& algebra, std::size_t v) {
  const Algebra& a = *algebra;
  const Quiver& q = a.quiver();
  std::vector<std::size_t> dims;
  for (std::size_t w = 0; w < q.vertex_count(); ++w) dims.push_back(a.basis_between(v, w).size());
  std::vector<Mat> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& arr = q.arrow(k);
    const auto& from = a.basis_between(v, arr.source);
    const auto& to = a.basis_between(v, arr.target);
    Mat m(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
      // arrow * p = p then arrow
      Path p = a.basis()[from[c]];
      p.arrows.push_back(k);
      p.target = arr.target;
      const Element e = a.reduce(p);
      for (std::size_t r = 0; r < to.size(); ++r) m(r, c) = e[to[r]];
    }
    maps.push_back(std::move(m));
  }
  return Rep(algebra, std::move(dims), std::move(maps));
}

Rep injective(const AlgebraPtr& algebra, std::size_t v) {
  const Algebra& a = *algebra;
  const Quiver& q = a.quiver();
  std::vector<std::size_t> dims;
  for (std::size_t u = 0; u < q.vertex_count(); ++u) dims.push_back(a.basis_between(u, v).size());
  std::vector<Mat> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& arr = q.arrow(k);
    // Right multiplication by the arrow: span{paths target -> v} -> span{paths source -> v},
    // p |-> p * arrow (arrow first). The dual map is its transpose.
    const auto& from = a.basis_between(arr.target, v);
    const auto& to = a.basis_between(arr.source, v);
    Mat right(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
      Path p{arr.source, v, {k}};
      const auto& tail = a.basis()[from[c]].arrows;
      p.arrows.insert(p.arrows.end(), tail.begin(), tail.end());
      const Element e = a.reduce(p);
      for (std::size_t r = 0; r < to.size(); ++r) right(r, c) = e[to[r]];
    }
    maps.push_back(right.transpose());
  }
  return Rep(algebra, std::move(dims), std::move(maps));
}

Rep regular(const AlgebraPtr& algebra) {
  std::vector<Rep> parts;
  for (std::size_t v = 0; v < algebra->vertex_count(); ++v) parts.push_back(projective(algebra, v));
  return direct_sum_rep(algebra, parts);
}

namespace {
void check_opposite(const Algebra& a, const Algebra& op) {
  if (a.vertex_count() != op.vertex_count() || a.arrow_count() != op.arrow_count())
    throw InternalError("dual: algebras are not opposite");
  for (std::size_t k = 0; k < a.arrow_count(); ++k) {
    const Arrow& x = a.quiver().arrow(k);
    const Arrow& y = op.quiver().arrow(k);
    if (x.source != y.target || x.target != y.source) throw InternalError("dual: algebras are not opposite");
  }
}
}  // namespace

Rep dual(const Rep& m, const AlgebraPtr& opposite) {
  check_opposite(m.algebra(), *opposite);
  std::vector<Mat> maps;
  for (const auto& x : m.maps()) maps.push_back(x.transpose());
  return Rep(opposite, m.dims(), std::move(maps));
}

Morphism dual(const Morphism& f, const AlgebraPtr& opposite) {
  std::vector<Mat> c;
  for (const auto& x : f.components()) c.push_back(x.transpose());
  return Morphism(dual(f.target(), opposite), dual(f.source(), opposite), std::move(c));
}

std::string canonical_key(const Rep& m) {
  std::ostringstream os;
  os << "d";
  for (auto d : m.dims()) os << ':' << d;
  for (const auto& x : m.maps()) {
    os << '|';
    for (std::size_t r = 0; r < x.rows(); ++r) {
      if (r) os << ';';
      for (std::size_t c = 0; c < x.cols(); ++c) {
        if (c) os << ',';
        os << to_string(x(r, c));
      }
    }
  }
  return os.str();
}

bool canonical_less(const Rep& a, const Rep& b) {
  if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
  if (a.dims() != b.dims()) return a.dims() < b.dims();
  return canonical_key(a) < canonical_key(b);
}

}  // namespace rectilt
