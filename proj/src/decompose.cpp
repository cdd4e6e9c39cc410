#include "rectilt/decompose.hpp"

#include <algorithm>
#include <random>

#include "rectilt/errors.hpp"
#include "rectilt/polynomial.hpp"

namespace rectilt {

namespace {

constexpr int kRandomAttempts = 64;

// Small signed integers in [-5, 5]; the modulo mapping keeps the stream
// identical across standard library implementations.
class SmallIntStream {
 public:
  explicit SmallIntStream(std::uint64_t seed) : gen_(seed) {}
  long next() { return static_cast<long>(gen_() % 11) - 5; }

 private:
  std::mt19937_64 gen_;
};

struct Endomorphisms {
  std::vector<Morphism> basis;
  std::vector<Mat> totals;
  std::size_t top_dim = 0;
};

Rational trace_of_product(const Mat& x, const Mat& y) {
  Rational t = 0;
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = 0; b < x.cols(); ++b)
      if (sgn(x(a, b)) != 0 && sgn(y(b, a)) != 0) t += x(a, b) * y(b, a);
  return t;
}

Endomorphisms endomorphisms(const Rep& m) {
  Endomorphisms e;
  e.basis = hom_basis(m, m);
  for (const auto& f : e.basis) e.totals.push_back(f.total());
  const std::size_t d = e.basis.size();
  Mat gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      gram(i, j) = trace_of_product(e.totals[i], e.totals[j]);
      gram(j, i) = gram(i, j);
    }
  e.top_dim = rank(gram);
  return e;
}

Mat matrix_power(Mat base, std::size_t exp) {
  Mat acc = Mat::identity(base.rows());
  while (exp > 0) {
    if (exp & 1U) acc = acc * base;
    exp >>= 1U;
    if (exp > 0) base = base * base;
  }
  return acc;
}

struct Split {
  Subrep first;
  Subrep second;
};

std::optional<Split> try_split(const Rep& m, const Mat& x) {
  const std::size_t n = m.total_dim();
  const Poly s = squarefree_part(minimal_polynomial(x));
  if (s.degree() <= 1) return std::nullopt;
  for (const auto& r : rational_roots(s)) {
    const Mat k = matrix_power(x - Mat::identity(n) * r, n);
    if (k.is_zero() || rank(k) == n) continue;
    const auto off = m.offsets();
    std::vector<Mat> ker, img;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      const Mat kv = k.block(off[v], off[v], m.dim(v), m.dim(v));
      ker.push_back(kernel_basis(kv));
      img.push_back(column_space_basis(kv));
    }
    return Split{subrepresentation(m, ker), subrepresentation(m, img)};
  }
  return std::nullopt;
}

Morphism complement_projection(const Rep& m, const Subrep& keep, const Subrep& other) {
  std::vector<Mat> comps;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    const Mat b = hstack(keep.inclusion.component(v), other.inclusion.component(v));
    auto inv = inverse(b);
    if (!inv) throw InternalError("Fitting decomposition is not a direct sum");
    comps.push_back(inv->row_range(0, keep.rep.dim(v)));
  }
  return Morphism(m, keep.rep, std::move(comps));
}

std::vector<Summand> split_recursive(const Rep& m, SmallIntStream& rng) {
  if (m.is_zero()) return {};
  const Endomorphisms end = endomorphisms(m);
  if (end.top_dim == 1) return {Summand{m, Morphism::identity(m), Morphism::identity(m)}};

  auto attempt = [&](const Mat& x) -> std::optional<std::vector<Summand>> {
    auto split = try_split(m, x);
    if (!split) return std::nullopt;
    std::vector<Summand> out;
    for (int side = 0; side < 2; ++side) {
      const Subrep& keep = side == 0 ? split->first : split->second;
      const Subrep& other = side == 0 ? split->second : split->first;
      const Morphism proj = complement_projection(m, keep, other);
      for (auto& s : split_recursive(keep.rep, rng))
        out.push_back(Summand{s.module, keep.inclusion * s.inclusion, s.projection * proj});
    }
    return out;
  };

  for (const auto& x : end.totals)
    if (auto out = attempt(x)) return std::move(*out);
  const std::size_t n = m.total_dim();
  for (int t = 0; t < kRandomAttempts; ++t) {
    Mat x(n, n);
    for (const auto& b : end.totals) x += b * Rational(rng.next());
    if (auto out = attempt(x)) return std::move(*out);
  }
  throw PossibleDivisionAlgebra("End/rad has dimension " + std::to_string(end.top_dim) +
                                " but no endomorphism with a splitting rational eigenvalue was found");
}

std::optional<Morphism> random_isomorphism(const Rep& m, const Rep& n, SmallIntStream& rng) {
  if (m.algebra_ptr() != n.algebra_ptr() || m.dims() != n.dims()) return std::nullopt;
  if (m.is_zero()) return Morphism::zero(m, n);
  const auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  for (const auto& f : basis)
    if (f.is_isomorphism()) return f;
  std::vector<Mat> flat;
  for (const auto& f : basis) flat.push_back(flatten(f));
  for (int t = 0; t < kRandomAttempts; ++t) {
    Mat c(flat.front().rows(), 1);
    for (const auto& f : flat) c += f * Rational(rng.next());
    Morphism f = unflatten(m, n, c);
    if (f.is_isomorphism()) return f;
  }
  return std::nullopt;
}

}  // namespace

std::size_t endomorphism_top_dimension(const Rep& m) { return endomorphisms(m).top_dim; }

bool is_indecomposable(const Rep& m) { return !m.is_zero() && endomorphism_top_dimension(m) == 1; }

Decomposition decompose(const Rep& m, std::uint64_t seed) {
  SmallIntStream rng(seed);
  Decomposition d;
  d.summands = split_recursive(m, rng);
  std::stable_sort(d.summands.begin(), d.summands.end(),
                   [](const Summand& a, const Summand& b) { return canonical_less(a.module, b.module); });
  std::vector<const Rep*> reps;
  for (const auto& s : d.summands) {
    std::optional<std::size_t> cls;
    for (std::size_t c = 0; c < reps.size() && !cls; ++c)
      if (random_isomorphism(*reps[c], s.module, rng)) cls = c;
    if (!cls) {
      cls = reps.size();
      reps.push_back(&s.module);
      d.multiplicities.push_back(0);
    }
    d.class_of.push_back(*cls);
    ++d.multiplicities[*cls];
  }
  return d;
}

std::optional<Morphism> find_isomorphism(const Rep& m, const Rep& n, std::uint64_t seed) {
  SmallIntStream rng(seed);
  if (m.algebra_ptr() != n.algebra_ptr() || m.dims() != n.dims()) return std::nullopt;
  if (auto f = random_isomorphism(m, n, rng)) return f;

  // Fallback: match indecomposable summands one by one and assemble.
  const Decomposition dm = decompose(m, seed);
  const Decomposition dn = decompose(n, seed);
  if (dm.summands.size() != dn.summands.size()) return std::nullopt;
  std::vector<bool> used(dn.summands.size(), false);
  std::optional<Morphism> witness;
  for (const auto& s : dm.summands) {
    bool matched = false;
    for (std::size_t j = 0; j < dn.summands.size() && !matched; ++j) {
      if (used[j]) continue;
      if (auto phi = random_isomorphism(s.module, dn.summands[j].module, rng)) {
        used[j] = true;
        matched = true;
        Morphism piece = dn.summands[j].inclusion * (*phi * s.projection);
        witness = witness ? *witness + piece : piece;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!witness || !witness->is_isomorphism()) return std::nullopt;
  return witness;
}

bool is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed) { return find_isomorphism(m, n, seed).has_value(); }

std::vector<Rep> basic_summands(const Rep& m, std::uint64_t seed) {
  const Decomposition d = decompose(m, seed);
  std::vector<Rep> out;
  for (std::size_t i = 0; i < d.summands.size(); ++i)
    if (d.class_of[i] == out.size()) out.push_back(d.summands[i].module);
  return out;
}

Rep basic(const Rep& m, std::uint64_t seed) { return direct_sum_rep(m.algebra_ptr(), basic_summands(m, seed)); }

std::optional<std::size_t> find_isomorphic(const std::vector<Rep>& list, const Rep& m, std::uint64_t seed) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].dims() == m.dims() && is_isomorphic(list[i], m, seed)) return i;
  return std::nullopt;
}

void merge_unique(std::vector<Rep>& into, const std::vector<Rep>& items, std::uint64_t seed) {
  for (const auto& item : items) {
    for (const auto& s : decompose(item, seed).summands)
      if (!find_isomorphic(into, s.module, seed)) into.push_back(s.module);
  }
}

bool in_add(const Rep& m, const std::vector<Rep>& indecomposables, std::uint64_t seed) {
  for (const auto& s : decompose(m, seed).summands)
    if (!find_isomorphic(indecomposables, s.module, seed)) return false;
  return true;
}

bool add_equal(const std::vector<Rep>& a, const std::vector<Rep>& b, std::uint64_t seed) {
  std::vector<Rep> ua, ub;
  merge_unique(ua, a, seed);
  merge_unique(ub, b, seed);
  if (ua.size() != ub.size()) return false;
  for (const auto& x : ua)
    if (!find_isomorphic(ub, x, seed)) return false;
  return true;
}

}  // namespace rectilt
