#include "rectilt/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rectilt/errors.hpp"

namespace rectilt {

namespace {
constexpr std::size_t kMaxEnumeratedPaths = 200000;
}

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (v.empty()) throw InputError("empty vertex label");
    if (!seen.insert(v).second) throw InputError("duplicate vertex label \"" + v + "\"");
  }
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (a.name.empty()) throw InputError("empty arrow name");
    if (!names.insert(a.name).second) throw InputError("duplicate arrow name \"" + a.name + "\"");
    if (a.source >= vertices_.size() || a.target >= vertices_.size())
      throw InputError("arrow \"" + a.name + "\" has an undeclared endpoint");
  }
}

Quiver Quiver::from_labels(std::vector<std::string> vertices,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
  Quiver probe(vertices, {});
  std::vector<Arrow> out;
  for (const auto& [name, s, t] : arrows) out.push_back({name, probe.vertex(s), probe.vertex(t)});
  return Quiver(std::move(vertices), std::move(out));
}

std::optional<std::size_t> Quiver::find_vertex(const std::string& label) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Quiver::vertex(const std::string& label) const {
  if (auto v = find_vertex(label)) return *v;
  throw InputError("unknown vertex \"" + label + "\"");
}

std::size_t Quiver::arrow_index(const std::string& name) const {
  if (auto a = find_arrow(name)) return *a;
  throw InputError("unknown arrow \"" + name + "\"");
}

std::optional<Path> concatenate(const Path& first, const Path& second) {
  if (first.target != second.source) return std::nullopt;
  Path p{first.source, second.target, first.arrows};
  p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
  return p;
}

namespace {

Path path_of(const Quiver& q, std::size_t source, const std::vector<std::size_t>& arrows) {
  Path p{source, source, {}};
  for (auto a : arrows) {
    if (a >= q.arrow_count()) throw RelationIllFormed("arrow index out of range");
    const Arrow& arr = q.arrow(a);
    if (p.target != arr.source) throw RelationIllFormed("relation path is not composable");
    p.target = arr.target;
    p.arrows.push_back(a);
  }
  return p;
}

void validate_relations(const Quiver& q, const std::vector<Relation>& rels) {
  for (const auto& rel : rels) {
    if (rel.empty()) throw RelationIllFormed("empty relation");
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& term : rel) {
      if (sgn(term.coeff) == 0) throw RelationIllFormed("relation term with zero coefficient");
      if (term.arrows.size() < 2) throw RelationIllFormed("relation term of length < 2");
      const std::size_t src = q.arrow(term.arrows.front()).source;
      const Path p = path_of(q, src, term.arrows);
      if (!ends) ends = std::make_pair(p.source, p.target);
      else if (*ends != std::make_pair(p.source, p.target))
        throw RelationIllFormed("relation terms are not parallel");
    }
  }
}

struct Enumeration {
  std::vector<Path> paths;
  std::map<Path, std::size_t> index;
  std::vector<std::vector<std::size_t>> by_source, by_target;
};

Enumeration enumerate_paths(const Quiver& q, std::size_t max_len) {
  Enumeration e;
  e.by_source.resize(q.vertex_count());
  e.by_target.resize(q.vertex_count());
  auto add = [&](Path p) {
    const std::size_t id = e.paths.size();
    e.by_source[p.source].push_back(id);
    e.by_target[p.target].push_back(id);
    e.index.emplace(p, id);
    e.paths.push_back(std::move(p));
  };
  for (std::size_t v = 0; v < q.vertex_count(); ++v) add(Path{v, v, {}});
  std::size_t level_begin = 0, level_end = e.paths.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Path& base = e.paths[i];
        const Arrow& arr = q.arrow(a);
        if (len == 1) {
          if (base.source != arr.source) continue;
        } else if (base.target != arr.source) {
          continue;
        }
        Path next{base.source, arr.target, base.arrows};
        next.arrows.push_back(a);
        add(std::move(next));
        if (e.paths.size() > kMaxEnumeratedPaths)
          throw CapExceeded("path enumeration exceeded " + std::to_string(kMaxEnumeratedPaths) + " paths");
      }
    }
    level_begin = level_end;
    level_end = e.paths.size();
  }
  return e;
}

}  // namespace

AlgebraPtr Algebra::build(Quiver quiver, std::vector<Relation> relations, std::size_t length_cap) {
  if (length_cap < 1) throw InputError("length cap must be at least 1");
  validate_relations(quiver, relations);

  for (std::size_t bound = 1; bound <= length_cap; ++bound) {
    const Enumeration en = enumerate_paths(quiver, bound);
    const std::size_t n = en.paths.size();
    // Column c of the generator matrix holds path n-1-c, so rref pivots land
    // on the largest paths and the standard monomials are the small ones.
    auto column_of = [n](std::size_t path_id) { return n - 1 - path_id; };

    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
    for (const auto& rel : relations) {
      std::size_t min_len = SIZE_MAX;
      for (const auto& t : rel) min_len = std::min(min_len, t.arrows.size());
      if (min_len > bound) continue;
      const Path first = path_of(quiver, quiver.arrow(rel.front().arrows.front()).source, rel.front().arrows);
      // u * r * v: v first, then r, then u.
      for (auto vi : en.by_target[first.source]) {
        const Path& v = en.paths[vi];
        for (auto ui : en.by_source[first.target]) {
          const Path& u = en.paths[ui];
          if (min_len + u.length() + v.length() > bound) continue;
          std::map<std::size_t, Rational> acc;
          for (const auto& t : rel) {
            if (t.arrows.size() + u.length() + v.length() > bound) continue;
            Path p{v.source, u.target, v.arrows};
            p.arrows.insert(p.arrows.end(), t.arrows.begin(), t.arrows.end());
            p.arrows.insert(p.arrows.end(), u.arrows.begin(), u.arrows.end());
            acc[column_of(en.index.at(p))] += t.coeff;
          }
          std::vector<std::pair<std::size_t, Rational>> row;
          for (auto& [c, q] : acc)
            if (sgn(q) != 0) row.emplace_back(c, q);
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }

    Mat gen(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, q] : rows[r]) gen(r, c) = q;
    const auto [reduced, pivots] = rref(gen);
    std::vector<std::optional<std::size_t>> pivot_row(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = i;

    bool survives = false;
    for (std::size_t id = 0; id < n; ++id)
      if (en.paths[id].length() == bound && !pivot_row[column_of(id)]) survives = true;
    if (survives) continue;

    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->quiver_ = std::move(quiver);
    alg->relations_ = std::move(relations);
    alg->bound_ = bound;
    std::vector<std::optional<std::size_t>> basis_index(n);
    for (std::size_t id = 0; id < n; ++id) {
      if (pivot_row[column_of(id)]) continue;
      basis_index[id] = alg->basis_.size();
      alg->basis_.push_back(en.paths[id]);
    }
    const std::size_t dim = alg->basis_.size();
    for (std::size_t id = 0; id < n; ++id) {
      const Path& p = en.paths[id];
      if (p.length() >= bound) continue;
      std::vector<std::pair<std::size_t, Rational>> red;
      if (basis_index[id]) {
        red.emplace_back(*basis_index[id], Rational(1));
      } else {
        const std::size_t r = *pivot_row[column_of(id)];
        for (std::size_t other = 0; other < n; ++other) {
          if (other == id || !basis_index[other]) continue;
          const Rational& q = reduced(r, column_of(other));
          if (sgn(q) != 0) red.emplace_back(*basis_index[other], -q);
        }
        std::sort(red.begin(), red.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      alg->reductions_.emplace(p, std::move(red));
    }

    const std::size_t nv = alg->quiver_.vertex_count();
    alg->trivial_.resize(nv);
    alg->between_.assign(nv, std::vector<std::vector<std::size_t>>(nv));
    for (std::size_t i = 0; i < dim; ++i) {
      const Path& p = alg->basis_[i];
      if (p.length() == 0) alg->trivial_[p.source] = i;
      alg->between_[p.source][p.target].push_back(i);
    }

    alg->table_.resize(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        // b_i * b_j = b_j then b_i
        auto cat = concatenate(alg->basis_[j], alg->basis_[i]);
        if (!cat || cat->length() >= bound) continue;
        alg->table_[i * dim + j] = alg->reductions_.at(*cat);
      }
    }
    return alg;
  }
  throw CapExceeded("a path of length " + std::to_string(length_cap) +
                    " survives reduction; finite dimensionality is unverified");
}

const std::vector<std::size_t>& Algebra::basis_between(std::size_t source, std::size_t target) const {
  return between_.at(source).at(target);
}

Element Algebra::reduce(const Path& p) const {
  Element out(dimension());
  if (p.length() >= bound_) return out;
  auto it = reductions_.find(p);
  if (it == reductions_.end()) throw InternalError("path missing from reduction table");
  for (const auto& [k, q] : it->second) out[k] = q;
  return out;
}

Element Algebra::reduce_arrows(std::size_t source, const std::vector<std::size_t>& arrows) const {
  Path p{source, source, {}};
  for (auto a : arrows) {
    const Arrow& arr = quiver_.arrow(a);
    if (p.target != arr.source) return Element(dimension());
    p.target = arr.target;
    p.arrows.push_back(a);
  }
  return reduce(p);
}

Element Algebra::multiply(const Element& x, const Element& y) const {
  const std::size_t dim = dimension();
  Element out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational c = x[i] * y[j];
      for (const auto& [k, q] : table_[i * dim + j]) out[k] += c * q;
    }
  }
  return out;
}

const std::vector<std::pair<std::size_t, Rational>>& Algebra::product(std::size_t i, std::size_t j) const {
  return table_.at(i * dimension() + j);
}

Element Algebra::unit() const {
  Element u(dimension());
  for (auto t : trivial_) u[t] = 1;
  return u;
}

Element Algebra::basis_element(std::size_t i) const {
  Element e(dimension());
  e.at(i) = 1;
  return e;
}

std::string Algebra::describe(std::size_t i) const {
  const Path& p = basis_.at(i);
  if (p.length() == 0) return "e" + quiver_.label(p.source);
  std::ostringstream os;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (it != p.arrows.rbegin()) os << '*';
    os << quiver_.arrow(*it).name;
  }
  return os.str();
}

AlgebraPtr opposite_algebra(const Algebra& a) {
  std::vector<Arrow> arrows;
  for (const auto& arr : a.quiver().arrows()) arrows.push_back({arr.name, arr.target, arr.source});
  std::vector<Relation> rels;
  for (const auto& rel : a.relations()) {
    Relation r;
    for (const auto& t : rel) r.push_back({t.coeff, {t.arrows.rbegin(), t.arrows.rend()}});
    rels.push_back(std::move(r));
  }
  return Algebra::build(Quiver(a.quiver().vertices(), std::move(arrows)), std::move(rels),
                        std::max(a.nilpotency_bound(), Algebra::kDefaultLengthCap));
}

AlgebraPtr full_subalgebra(const Algebra& a, const std::vector<std::size_t>& vertices) {
  const Quiver& q = a.quiver();
  std::vector<std::optional<std::size_t>> local(q.vertex_count());
  std::vector<std::string> labels;
  for (auto v : vertices) {
    local.at(v) = labels.size();
    labels.push_back(q.label(v));
  }
  std::vector<Arrow> arrows;
  std::vector<std::optional<std::size_t>> arrow_local(q.arrow_count());
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& arr = q.arrow(k);
    if (local[arr.source] && local[arr.target]) {
      arrow_local[k] = arrows.size();
      arrows.push_back({arr.name, *local[arr.source], *local[arr.target]});
    }
  }
  Quiver sub(labels, arrows);

  std::size_t expected = 0;
  for (auto s : vertices)
    for (auto t : vertices) expected += a.basis_between(s, t).size();

  auto translate = [&](const std::vector<std::size_t>& path) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> out;
    for (auto k : path) {
      if (!arrow_local[k]) return std::nullopt;
      out.push_back(*arrow_local[k]);
    }
    return out;
  };

  // First try: the relations that live entirely inside the subquiver.
  std::vector<Relation> inherited;
  for (const auto& rel : a.relations()) {
    Relation r;
    bool inside = true;
    for (const auto& t : rel) {
      auto tr = translate(t.arrows);
      if (!tr) {
        inside = false;
        break;
      }
      r.push_back({t.coeff, *tr});
    }
    if (inside) inherited.push_back(std::move(r));
  }
  const std::size_t cap = std::max(a.nilpotency_bound(), std::size_t{1});
  try {
    auto alg = Algebra::build(sub, inherited, cap);
    if (alg->dimension() == expected) return alg;
  } catch (const CapExceeded&) {
  }

  // Otherwise take every linear dependency among subquiver paths in `a`.
  std::vector<Relation> induced;
  const Enumeration en = enumerate_paths(sub, cap);
  for (std::size_t s = 0; s < sub.vertex_count(); ++s) {
    for (std::size_t t = 0; t < sub.vertex_count(); ++t) {
      std::vector<const Path*> paths;
      for (auto id : en.by_source[s])
        if (en.paths[id].target == t && en.paths[id].length() >= 2) paths.push_back(&en.paths[id]);
      if (paths.empty()) continue;
      Mat coords(a.dimension(), paths.size());
      for (std::size_t c = 0; c < paths.size(); ++c) {
        std::vector<std::size_t> global;
        for (auto k : paths[c]->arrows)
          for (std::size_t g = 0; g < q.arrow_count(); ++g)
            if (arrow_local[g] == k) global.push_back(g);
        const Element e = a.reduce_arrows(vertices[s], global);
        for (std::size_t r = 0; r < e.size(); ++r) coords(r, c) = e[r];
      }
      const Mat ker = kernel_basis(coords);
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        Relation r;
        for (std::size_t i = 0; i < paths.size(); ++i)
          if (sgn(ker(i, c)) != 0) r.push_back({ker(i, c), paths[i]->arrows});
        induced.push_back(std::move(r));
      }
    }
  }
  auto alg = Algebra::build(sub, induced, cap);
  if (alg->dimension() != expected)
    throw InternalError("full subalgebra has dimension " + std::to_string(alg->dimension()) + ", expected " +
                        std::to_string(expected));
  return alg;
}

std::optional<std::array<std::size_t, 3>> find_associativity_failure(const Algebra& a) {
  const std::size_t dim = a.dimension();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        const Element bi = a.basis_element(i), bj = a.basis_element(j), bk = a.basis_element(k);
        if (a.multiply(a.multiply(bi, bj), bk) != a.multiply(bi, a.multiply(bj, bk)))
          return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

}  // namespace rectilt

namespace rectilt {

namespace {

// Every relation of `from`, transported along `arrow_map`, vanishes in `to`.
bool relations_vanish(const Algebra& from, const Algebra& to, const std::vector<std::size_t>& arrow_map) {
  for (const auto& rel : from.relations()) {
    Element sum(to.dimension());
    for (const auto& t : rel) {
      if (t.arrows.empty()) return false;
      std::vector<std::size_t> path;
      for (auto k : t.arrows) path.push_back(arrow_map[k]);
      const Element e = to.reduce_arrows(to.quiver().arrow(path.front()).source, path);
      for (std::size_t i = 0; i < e.size(); ++i) sum[i] += t.coeff * e[i];
    }
    for (const auto& x : sum)
      if (sgn(x) != 0) return false;
  }
  return true;
}

}  // namespace

std::optional<PresentationIsomorphism> find_presentation_isomorphism(const Algebra& a, const Algebra& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  const std::size_t n = qa.vertex_count();
  if (n != qb.vertex_count() || qa.arrow_count() != qb.arrow_count() || a.dimension() != b.dimension())
    return std::nullopt;
  if (n > 8) throw CapExceeded("presentation isomorphism search limited to 8 vertices");

  std::vector<std::size_t> vmap(n);
  for (std::size_t v = 0; v < n; ++v) vmap[v] = v;
  do {
    // Arrows of `a` grouped by endpoints; each group must map onto the
    // parallel arrows of `b` between the image vertices.
    std::vector<std::vector<std::size_t>> groups_a, groups_b;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> group_of;
    bool ok = true;
    for (std::size_t k = 0; k < qa.arrow_count(); ++k) {
      const auto key = std::make_pair(qa.arrow(k).source, qa.arrow(k).target);
      auto [it, fresh] = group_of.emplace(key, groups_a.size());
      if (fresh) groups_a.emplace_back();
      groups_a[it->second].push_back(k);
    }
    for (const auto& [key, g] : group_of) {
      std::vector<std::size_t> targets;
      for (std::size_t k = 0; k < qb.arrow_count(); ++k)
        if (qb.arrow(k).source == vmap[key.first] && qb.arrow(k).target == vmap[key.second]) targets.push_back(k);
      if (groups_b.size() <= g) groups_b.resize(g + 1);
      groups_b[g] = targets;
      if (targets.size() != groups_a[g].size()) ok = false;
    }
    if (!ok) continue;

    std::vector<std::size_t> amap(qa.arrow_count());
    std::optional<PresentationIsomorphism> found;
    auto search = [&](auto&& self, std::size_t g) -> void {
      if (found) return;
      if (g == groups_a.size()) {
        std::vector<std::size_t> inv(amap.size());
        for (std::size_t k = 0; k < amap.size(); ++k) inv[amap[k]] = k;
        if (relations_vanish(a, b, amap) && relations_vanish(b, a, inv)) found = PresentationIsomorphism{vmap, amap};
        return;
      }
      std::vector<std::size_t> perm = groups_b[g];
      std::sort(perm.begin(), perm.end());
      do {
        for (std::size_t i = 0; i < perm.size(); ++i) amap[groups_a[g][i]] = perm[i];
        self(self, g + 1);
      } while (!found && std::next_permutation(perm.begin(), perm.end()));
    };
    search(search, 0);
    if (found) return found;
  } while (std::next_permutation(vmap.begin(), vmap.end()));
  return std::nullopt;
}

}  // namespace rectilt
