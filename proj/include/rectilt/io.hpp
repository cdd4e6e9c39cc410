#pragma once

// JSON formats for algebras, modules, morphisms, sequences and rosters, and
// the module expressions accepted on the command line.
//
// Algebra file:
//   {"vertices": [...], "arrows": [{"name", "source", "target"}],
//    "relations": [[{"coeff", "path": [arrow names, first applied first]}]],
//    "modules": {name: module}}                                  (optional)
// Module:
//   {"algebra": <path>, "dims": {vertex: n}, "maps": {arrow: [[...]]}}
// A named module may instead be {"expr": "P(1)+S(1)"}, and may carry
// "part": "inner" | "outer" when it lives on one side of a vertex split.
// Matrices are arrays of rows of "p/q" strings; missing maps are zero.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rectilt/algebra.hpp"
#include "rectilt/homological.hpp"
#include "rectilt/representation.hpp"

namespace rectilt::io {

using Json = nlohmann::ordered_json;

/// Parses a file; InputError with file, line and column on malformed JSON.
Json read_json(const std::filesystem::path& path);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where);

AlgebraPtr algebra_from_json(const Json& j, std::size_t length_cap = Algebra::kDefaultLengthCap,
                             const std::string& where = "algebra");
/// Quiver and relations in input form, plus the computed basis.
Json algebra_to_json(const Algebra& a);

/// Dims and maps keyed by vertex label and arrow name.
Json module_to_json(const Rep& m);
Rep module_from_json(const Json& j, const AlgebraPtr& algebra, const std::string& where = "module");
std::vector<std::size_t> dims_of(const Json& module_json, const Algebra& a);
Json dims_to_json(const Rep& m);

Json morphism_to_json(const Morphism& f);
Json ses_to_json(const SES& s);

enum class Part { Whole, Inner, Outer };
std::string to_string(Part p);

/// An algebra file with its named modules.
class AlgebraFile {
 public:
  AlgebraFile(std::filesystem::path path, std::size_t length_cap = Algebra::kDefaultLengthCap);

  const std::filesystem::path& path() const noexcept { return path_; }
  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Json& document() const noexcept { return doc_; }
  /// Names of the modules declared for `part`, in file order.
  std::vector<std::string> module_names(Part part) const;

  /// Evaluates a module expression over `target`, the algebra of `part`:
  /// '+'-separated terms, each P(v), S(v), I(v), a declared name or a path
  /// to a module file. InputError for unknown names.
  Rep parse_module(const std::string& expr, const AlgebraPtr& target, Part part = Part::Whole) const;

 private:
  Rep parse_term(const std::string& term, const AlgebraPtr& target, Part part, int depth) const;
  Rep parse_expr(const std::string& expr, const AlgebraPtr& target, Part part, int depth) const;

  std::filesystem::path path_;
  Json doc_;
  AlgebraPtr algebra_;
};

/// Names indecomposables: declared names first, then P(v), S(v), I(v).
class Namer {
 public:
  Namer(const AlgebraFile* file, const AlgebraPtr& algebra, Part part, std::uint64_t seed = 0);
  std::optional<std::string> name(const Rep& m) const;
  /// {"name"?, "dims": [...]} without the maps.
  Json brief(const Rep& m) const;
  /// module_to_json with the name in front.
  Json full(const Rep& m) const;

 private:
  std::vector<std::pair<std::string, Rep>> known_;
  std::uint64_t seed_;
};

Json roster_to_json(const Roster& r, const Namer& namer);
/// Accepts roster_to_json output or a plain array of modules.
std::vector<Rep> roster_from_json(const Json& j, const AlgebraPtr& algebra, const std::string& where = "roster");

}  // namespace rectilt::io
