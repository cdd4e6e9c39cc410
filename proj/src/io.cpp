#include "rectilt/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"

namespace rectilt::io {

namespace {

constexpr int kMaxExpressionDepth = 16;

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_of(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError(where + ": expected a string");
}

std::size_t count_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json to_json(const Rational& q) { return rectilt::to_string(q); }

Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a rational as \"p/q\" or an integer");
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of rows");
  if (j.size() != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw InputError(at(where, r) + ": expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[c], at(at(where, r), c));
  }
  return m;
}

AlgebraPtr algebra_from_json(const Json& j, std::size_t length_cap, const std::string& where) {
  const Json& vs = field(j, "vertices", where);
  if (!vs.is_array()) throw InputError(at(where, "vertices") + ": expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(string_of(vs[i], at(at(where, "vertices"), i)));

  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  if (auto it = j.find("arrows"); it != j.end()) {
    if (!it->is_array()) throw InputError(at(where, "arrows") + ": expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = at(at(where, "arrows"), i);
      const Json& a = (*it)[i];
      arrows.emplace_back(string_of(field(a, "name", w), at(w, "name")), string_of(field(a, "source", w), at(w, "source")),
                          string_of(field(a, "target", w), at(w, "target")));
      for (const auto& [key, label] : {std::pair{"source", std::get<1>(arrows.back())}, {"target", std::get<2>(arrows.back())}})
        if (std::find(vertices.begin(), vertices.end(), label) == vertices.end())
          throw InputError(at(w, key) + ": unknown vertex \"" + label + "\"");
    }
  }
  Quiver q = [&] {
    try {
      return Quiver::from_labels(vertices, arrows);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }();

  std::vector<Relation> relations;
  if (auto it = j.find("relations"); it != j.end()) {
    if (!it->is_array()) throw InputError(at(where, "relations") + ": expected an array");
    for (std::size_t r = 0; r < it->size(); ++r) {
      const std::string w = at(at(where, "relations"), r);
      const Json& rel = (*it)[r];
      if (!rel.is_array() || rel.empty()) throw RelationIllFormed(w + ": expected a nonempty array of terms");
      Relation out;
      for (std::size_t t = 0; t < rel.size(); ++t) {
        const std::string wt = at(w, t);
        const Json& path = field(rel[t], "path", wt);
        if (!path.is_array()) throw RelationIllFormed(at(wt, "path") + ": expected an array of arrow names");
        Term term{rational_from_json(field(rel[t], "coeff", wt), at(wt, "coeff")), {}};
        for (std::size_t k = 0; k < path.size(); ++k) {
          const std::string name = string_of(path[k], at(at(wt, "path"), k));
          auto a = q.find_arrow(name);
          if (!a) throw RelationIllFormed(at(at(wt, "path"), k) + ": unknown arrow \"" + name + "\"");
          term.arrows.push_back(*a);
        }
        out.push_back(std::move(term));
      }
      relations.push_back(std::move(out));
    }
  }
  try {
    return Algebra::build(std::move(q), std::move(relations), length_cap);
  } catch (const RelationIllFormed& e) {
    throw RelationIllFormed(where + ": " + e.what());
  }
}

Json algebra_to_json(const Algebra& a) {
  const Quiver& q = a.quiver();
  Json j;
  j["vertices"] = q.vertices();
  j["arrows"] = Json::array();
  for (const auto& arr : q.arrows())
    j["arrows"].push_back({{"name", arr.name}, {"source", q.label(arr.source)}, {"target", q.label(arr.target)}});
  j["relations"] = Json::array();
  for (const auto& rel : a.relations()) {
    Json r = Json::array();
    for (const auto& t : rel) {
      Json path = Json::array();
      for (auto k : t.arrows) path.push_back(q.arrow(k).name);
      r.push_back({{"coeff", to_json(t.coeff)}, {"path", path}});
    }
    j["relations"].push_back(std::move(r));
  }
  j["dimension"] = a.dimension();
  j["basis"] = Json::array();
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const Path& p = a.basis()[i];
    j["basis"].push_back({{"element", a.describe(i)}, {"source", q.label(p.source)}, {"target", q.label(p.target)}});
  }
  return j;
}

Json dims_to_json(const Rep& m) {
  Json d = Json::object();
  for (std::size_t v = 0; v < m.dims().size(); ++v) d[m.algebra().quiver().label(v)] = m.dim(v);
  return d;
}

Json module_to_json(const Rep& m) {
  const Quiver& q = m.algebra().quiver();
  Json j;
  j["dims"] = dims_to_json(m);
  j["maps"] = Json::object();
  for (std::size_t k = 0; k < q.arrow_count(); ++k) j["maps"][q.arrow(k).name] = matrix_to_json(m.map(k));
  return j;
}

std::vector<std::size_t> dims_of(const Json& j, const Algebra& a) {
  const Quiver& q = a.quiver();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  if (auto it = j.find("dims"); it != j.end()) {
    if (!it->is_object()) throw InputError("module/dims: expected an object keyed by vertex");
    for (const auto& [label, n] : it->items()) {
      auto v = q.find_vertex(label);
      if (!v) throw InputError("module/dims/" + label + ": unknown vertex");
      dims[*v] = count_of(n, "module/dims/" + label);
    }
  }
  return dims;
}

Rep module_from_json(const Json& j, const AlgebraPtr& algebra, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a module object");
  const Quiver& q = algebra->quiver();
  std::vector<std::size_t> dims;
  try {
    dims = dims_of(j, *algebra);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  std::vector<Mat> maps;
  for (const auto& arr : q.arrows()) maps.emplace_back(dims[arr.target], dims[arr.source]);
  if (auto it = j.find("maps"); it != j.end()) {
    if (!it->is_object()) throw InputError(at(where, "maps") + ": expected an object keyed by arrow");
    for (const auto& [name, m] : it->items()) {
      auto k = q.find_arrow(name);
      if (!k) throw InputError(at(at(where, "maps"), name) + ": unknown arrow");
      const Arrow& arr = q.arrow(*k);
      maps[*k] = matrix_from_json(m, dims[arr.target], dims[arr.source], at(at(where, "maps"), name));
    }
  }
  try {
    return Rep(algebra, std::move(dims), std::move(maps));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

Json morphism_to_json(const Morphism& f) {
  Json c = Json::object();
  const Quiver& q = f.source().algebra().quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) c[q.label(v)] = matrix_to_json(f.component(v));
  return {{"components", c}};
}

Json ses_to_json(const SES& s) {
  return {{"left", module_to_json(s.left)},
          {"middle", module_to_json(s.middle)},
          {"right", module_to_json(s.right)},
          {"inject", morphism_to_json(s.inject)},
          {"project", morphism_to_json(s.project)}};
}

std::string to_string(Part p) {
  switch (p) {
    case Part::Inner:
      return "inner";
    case Part::Outer:
      return "outer";
    default:
      return "whole";
  }
}

namespace {

Part part_of(const Json& entry, const std::string& where) {
  auto it = entry.find("part");
  if (it == entry.end()) return Part::Whole;
  const std::string p = string_of(*it, at(where, "part"));
  if (p == "inner") return Part::Inner;
  if (p == "outer") return Part::Outer;
  if (p == "whole") return Part::Whole;
  throw InputError(at(where, "part") + ": expected \"inner\", \"outer\" or \"whole\"");
}

std::vector<std::string> split_terms(const std::string& expr) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : expr) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == '+' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

AlgebraFile::AlgebraFile(std::filesystem::path path, std::size_t length_cap)
    : path_(std::move(path)), doc_(read_json(path_)) {
  algebra_ = algebra_from_json(doc_, length_cap, path_.string());
  if (auto it = doc_.find("modules"); it != doc_.end() && !it->is_object())
    throw InputError(path_.string() + "/modules: expected an object keyed by name");
}

std::vector<std::string> AlgebraFile::module_names(Part part) const {
  std::vector<std::string> out;
  if (auto it = doc_.find("modules"); it != doc_.end())
    for (const auto& [name, entry] : it->items())
      if (part_of(entry, path_.string() + "/modules/" + name) == part) out.push_back(name);
  return out;
}

Rep AlgebraFile::parse_module(const std::string& expr, const AlgebraPtr& target, Part part) const {
  return parse_expr(expr, target, part, 0);
}

Rep AlgebraFile::parse_expr(const std::string& expr, const AlgebraPtr& target, Part part, int depth) const {
  if (depth > kMaxExpressionDepth) throw InputError("module expression nests too deeply: \"" + expr + "\"");
  std::vector<Rep> parts;
  for (const auto& term : split_terms(expr)) {
    if (term.empty()) throw InputError("empty term in module expression \"" + expr + "\"");
    parts.push_back(parse_term(term, target, part, depth));
  }
  return parts.size() == 1 ? parts.front() : direct_sum_rep(target, parts);
}

Rep AlgebraFile::parse_term(const std::string& term, const AlgebraPtr& target, Part part, int depth) const {
  const Quiver& q = target->quiver();
  if (term.size() > 3 && term[1] == '(' && term.back() == ')' && std::string("PSI").find(term[0]) != std::string::npos) {
    const std::string label = trim(term.substr(2, term.size() - 3));
    auto v = q.find_vertex(label);
    if (!v) throw InputError("unknown vertex \"" + label + "\" in \"" + term + "\"");
    if (term[0] == 'P') return projective(target, *v);
    if (term[0] == 'S') return simple(target, *v);
    return injective(target, *v);
  }
  if (auto it = doc_.find("modules"); it != doc_.end()) {
    if (auto m = it->find(term); m != it->end()) {
      const std::string where = path_.string() + "/modules/" + term;
      if (part_of(*m, where) != part)
        throw InputError("module \"" + term + "\" lives on the " + to_string(part_of(*m, where)) + " part, not the " +
                         to_string(part) + " part");
      if (auto e = m->find("expr"); e != m->end()) return parse_expr(string_of(*e, at(where, "expr")), target, part, depth + 1);
      return module_from_json(*m, target, where);
    }
  }
  std::filesystem::path file(term);
  if (file.extension() == ".json") {
    if (!std::filesystem::exists(file) && std::filesystem::exists(path_.parent_path() / file))
      file = path_.parent_path() / file;
    return module_from_json(read_json(file), target, file.string());
  }
  throw InputError("unknown module \"" + term + "\"");
}

Namer::Namer(const AlgebraFile* file, const AlgebraPtr& algebra, Part part, std::uint64_t seed) : seed_(seed) {
  if (file)
    for (const auto& name : file->module_names(part)) {
      Rep m = file->parse_module(name, algebra, part);
      if (is_indecomposable(m)) known_.emplace_back(name, std::move(m));
    }
  const Quiver& q = algebra->quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) known_.emplace_back("P(" + q.label(v) + ")", projective(algebra, v));
  for (std::size_t v = 0; v < q.vertex_count(); ++v) known_.emplace_back("S(" + q.label(v) + ")", simple(algebra, v));
  for (std::size_t v = 0; v < q.vertex_count(); ++v) known_.emplace_back("I(" + q.label(v) + ")", injective(algebra, v));
}

std::optional<std::string> Namer::name(const Rep& m) const {
  for (const auto& [name, k] : known_)
    if (k.dims() == m.dims() && is_isomorphic(k, m, seed_)) return name;
  return std::nullopt;
}

Json Namer::brief(const Rep& m) const {
  Json j;
  if (auto n = name(m)) j["name"] = *n;
  j["dims"] = m.dims();
  return j;
}

Json Namer::full(const Rep& m) const {
  Json j;
  if (auto n = name(m)) j["name"] = *n;
  const Json body = module_to_json(m);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Json roster_to_json(const Roster& r, const Namer& namer) {
  Json mods = Json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const RosterEntry& e = r.entries[i];
    Json j;
    j["index"] = i;
    if (auto n = namer.name(e.module)) j["name"] = *n;
    j["origin"] = e.origin;
    j["generation"] = e.generation;
    if (e.parent) j["parent"] = *e.parent;
    const Json body = module_to_json(e.module);
    for (auto& [k, v] : body.items()) j[k] = v;
    mods.push_back(std::move(j));
  }
  return {{"size", r.size()}, {"modules", mods}};
}

std::vector<Rep> roster_from_json(const Json& j, const AlgebraPtr& algebra, const std::string& where) {
  const Json* list = &j;
  std::string w = where;
  if (j.is_object()) {
    list = &field(j, "modules", where);
    w = at(where, "modules");
  }
  if (!list->is_array()) throw InputError(w + ": expected an array of modules");
  std::vector<Rep> out;
  for (std::size_t i = 0; i < list->size(); ++i) out.push_back(module_from_json((*list)[i], algebra, at(w, i)));
  return out;
}

}  // namespace rectilt::io
