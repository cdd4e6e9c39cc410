#pragma once

// Shared fixtures for the test suites: the algebras of the running example,
// built directly in code so the unit tests do not depend on the JSON loader.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rectilt/algebra.hpp"
#include "rectilt/decompose.hpp"
#include "rectilt/homological.hpp"
#include "rectilt/representation.hpp"

namespace rectilt::testing {

inline Term term(long c, std::vector<std::size_t> arrows) { return Term{Rational(c), std::move(arrows)}; }

/// 1 --a--> 2
inline AlgebraPtr a2() { return Algebra::build(Quiver::from_labels({"1", "2"}, {{"a", "1", "2"}}), {}); }

/// 3 --alpha--> 4 --beta--> 5, beta*alpha = 0
inline AlgebraPtr a3_zero_relation() {
  auto q = Quiver::from_labels({"3", "4", "5"}, {{"alpha", "3", "4"}, {"beta", "4", "5"}});
  return Algebra::build(q, {{term(1, {0, 1})}});
}

/// The glued 5-vertex algebra: delta: 1->2, alpha: 3->4, beta: 4->5,
/// gamma: 4->2, epsilon: 3->1 with gamma*alpha = delta*epsilon and beta*alpha = 0.
inline AlgebraPtr glued_lambda() {
  auto q = Quiver::from_labels({"1", "2", "3", "4", "5"}, {{"delta", "1", "2"},
                                                           {"alpha", "3", "4"},
                                                           {"beta", "4", "5"},
                                                           {"gamma", "4", "2"},
                                                           {"epsilon", "3", "1"}});
  // arrow indices: delta 0, alpha 1, beta 2, gamma 3, epsilon 4
  return Algebra::build(q, {{term(1, {1, 3}), term(-1, {4, 0})}, {term(1, {1, 2})}});
}

/// Disjoint union of A2 (1->2) and A3/(beta*alpha) (3->4->5).
inline AlgebraPtr product_lambda() {
  auto q = Quiver::from_labels({"1", "2", "3", "4", "5"},
                               {{"delta", "1", "2"}, {"alpha", "3", "4"}, {"beta", "4", "5"}});
  return Algebra::build(q, {{term(1, {1, 2})}});
}

/// Product algebra plus kappa: 4 -> 1 with kappa*alpha = 0: the bimodule
/// e Lambda f is not flat over the outer part.
inline AlgebraPtr mutated_lambda() {
  auto q = Quiver::from_labels({"1", "2", "3", "4", "5"},
                               {{"delta", "1", "2"}, {"alpha", "3", "4"}, {"beta", "4", "5"}, {"kappa", "4", "1"}});
  return Algebra::build(q, {{term(1, {1, 2})}, {term(1, {1, 3})}});
}

inline std::size_t vx(const AlgebraPtr& a, const std::string& label) { return a->quiver().vertex(label); }
inline Rep P(const AlgebraPtr& a, const std::string& v) { return projective(a, vx(a, v)); }
inline Rep S(const AlgebraPtr& a, const std::string& v) { return simple(a, vx(a, v)); }
inline Rep I(const AlgebraPtr& a, const std::string& v) { return injective(a, vx(a, v)); }

/// A thin module: dimension 0/1 at each vertex, every arrow between two
/// supported vertices acting by 1. Valid for the fixtures used here.
inline Rep thin(const AlgebraPtr& a, const std::vector<std::size_t>& dims) {
  std::vector<Mat> maps;
  for (const auto& arr : a->quiver().arrows()) {
    Mat m(dims[arr.target], dims[arr.source]);
    if (dims[arr.target] == 1 && dims[arr.source] == 1) m(0, 0) = 1;
    maps.push_back(m);
  }
  return Rep(a, dims, maps);
}

inline Rep sum(const AlgebraPtr& a, const std::vector<Rep>& parts) { return direct_sum_rep(a, parts); }

/// The indecomposable (X, Y) of the glued algebra with X over {1, 2} and Y
/// over {3, 4, 5}, e.g. pair("S2", "P4"); all of them are thin.
inline Rep pair(const AlgebraPtr& lambda, const std::string& x, const std::string& y) {
  static const std::map<std::string, std::vector<std::size_t>> inner{
      {"0", {0, 0}}, {"S1", {1, 0}}, {"S2", {0, 1}}, {"P1", {1, 1}}};
  static const std::map<std::string, std::vector<std::size_t>> outer{
      {"0", {0, 0, 0}}, {"S3", {1, 0, 0}}, {"S4", {0, 1, 0}}, {"P3", {1, 1, 0}}, {"P4", {0, 1, 1}}, {"P5", {0, 0, 1}}};
  std::vector<std::size_t> dims = inner.at(x);
  for (auto d : outer.at(y)) dims.push_back(d);
  return thin(lambda, dims);
}

/// The 15 indecomposables of the glued algebra as (X, Y) labels, in roster order.
inline const std::vector<std::pair<std::string, std::string>>& example_labels() {
  static const std::vector<std::pair<std::string, std::string>> labels{
      {"P1", "0"},  {"S2", "0"},  {"P1", "P3"}, {"S2", "P4"}, {"0", "P5"}, {"0", "P4"}, {"P1", "P4"}, {"P1", "S4"},
      {"S2", "S4"}, {"0", "S4"},  {"S1", "P3"}, {"S1", "0"},  {"S1", "S3"}, {"0", "S3"}, {"0", "P3"}};
  return labels;
}

/// Rosters are expensive enough to share between test cases.
inline const std::vector<Rep>& roster_of(const AlgebraPtr& a) {
  static std::map<const Algebra*, std::pair<AlgebraPtr, std::vector<Rep>>> cache;
  auto it = cache.find(a.get());
  if (it == cache.end()) it = cache.emplace(a.get(), std::make_pair(a, enumerate_roster(a).modules())).first;
  return it->second.second;
}

/// Shared fixture algebras, so rosters and contexts are computed once.
inline const AlgebraPtr& lambda() {
  static const AlgebraPtr a = glued_lambda();
  return a;
}

inline Mat random_invertible(std::mt19937_64& gen, std::size_t n) {
  for (;;) {
    Mat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(gen() % 5) - 2;
    if (inverse(m)) return m;
  }
}

/// An isomorphic copy of m in a random basis at every vertex.
inline Rep random_conjugate(std::mt19937_64& gen, const Rep& m) {
  std::vector<Mat> change, back;
  for (auto d : m.dims()) {
    change.push_back(random_invertible(gen, d));
    back.push_back(*inverse(change.back()));
  }
  std::vector<Mat> maps;
  for (std::size_t k = 0; k < m.algebra().arrow_count(); ++k) {
    const Arrow& arr = m.algebra().quiver().arrow(k);
    maps.push_back(change[arr.target] * m.map(k) * back[arr.source]);
  }
  return Rep(m.algebra_ptr(), m.dims(), maps);
}

/// A random direct sum of 1..max_parts roster members.
inline std::vector<std::size_t> random_parts(std::mt19937_64& gen, std::size_t roster_size, std::size_t max_parts) {
  std::vector<std::size_t> parts(1 + gen() % max_parts);
  for (auto& p : parts) p = gen() % roster_size;
  return parts;
}

}  // namespace rectilt::testing
