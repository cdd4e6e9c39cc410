#include "rectilt/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "rectilt/decompose.hpp"
#include "rectilt/errors.hpp"
#include "rectilt/gluing.hpp"
#include "rectilt/homological.hpp"
#include "rectilt/io.hpp"
#include "rectilt/recollement.hpp"
#include "rectilt/tilting.hpp"

namespace rectilt::cli {

namespace {

using io::Json;
using io::Part;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Options {
  std::uint64_t seed = 0;
  std::size_t length_cap = Algebra::kDefaultLengthCap;
  std::size_t roster_cap = 200;
  std::string algebra;
  std::string first, second;  // module expressions
  std::size_t degree = 1;
  std::string output;
  std::string roster;
  std::string outer;
  std::string functor;
  std::string inner_tilting, outer_tilting, tilting;
  std::string side = "right";
  std::string expect_inner, expect_outer;
  std::string fixtures = "fixtures";
  std::string golden_out = "tests/golden";
};

struct Session {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;

  int emit(const Json& j, int code) const {
    out << j.dump(2) << "\n";
    return code;
  }
};

std::vector<std::size_t> parse_vertices(const Algebra& a, const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string label;
  while (std::getline(ss, label, ',')) {
    if (label.empty()) throw InputError("empty vertex label in \"" + list + "\"");
    out.push_back(a.quiver().vertex(label));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> labels(const Algebra& a, const std::vector<std::size_t>& vs) {
  std::vector<std::string> out;
  for (auto v : vs) out.push_back(a.quiver().label(v));
  return out;
}

std::vector<Rep> load_roster(const Session& s, const AlgebraPtr& alg) {
  if (!s.opt.roster.empty()) return io::roster_from_json(io::read_json(s.opt.roster), alg, s.opt.roster);
  return enumerate_roster(alg, s.opt.roster_cap, s.opt.seed).modules();
}

Json indexed(const io::Namer& namer, const std::vector<Rep>& roster, const std::vector<std::size_t>& idx) {
  Json list = Json::array();
  for (auto i : idx) {
    Json j{{"index", i}};
    const Json body = namer.brief(roster[i]);
    for (auto& [k, v] : body.items()) j[k] = v;
    list.push_back(std::move(j));
  }
  return list;
}

Json briefs(const io::Namer& namer, const std::vector<Rep>& ms) {
  Json list = Json::array();
  for (const auto& m : ms) list.push_back(namer.brief(m));
  return list;
}

Json fulls(const io::Namer& namer, const std::vector<Rep>& ms) {
  Json list = Json::array();
  for (const auto& m : ms) list.push_back(namer.full(m));
  return list;
}

std::string summary(const io::Namer& namer, const std::vector<Rep>& ms) {
  std::string s;
  for (const auto& m : ms) {
    if (!s.empty()) s += " + ";
    if (auto n = namer.name(m)) {
      s += *n;
    } else {
      s += "dims(";
      for (std::size_t v = 0; v < m.dims().size(); ++v) s += (v ? "," : "") + std::to_string(m.dim(v));
      s += ")";
    }
  }
  return s.empty() ? "0" : s;
}

std::vector<Rep> decompose_list(const Rep& m, std::uint64_t seed) {
  std::vector<Rep> out;
  for (const auto& x : decompose(m, seed).summands) out.push_back(x.module);
  return out;
}

Json partition_json(const io::Namer& namer, const std::vector<Rep>& roster, const RosterPartition& p) {
  return {{"torsion", indexed(namer, roster, p.torsion)},
          {"free", indexed(namer, roster, p.free)},
          {"neither", indexed(namer, roster, p.neither)}};
}

// algebra ---------------------------------------------------------------

int algebra_info(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const AlgebraPtr& a = f.algebra();
  Json j = io::algebra_to_json(*a);
  j["nilpotency_bound"] = a->nilpotency_bound();
  Json proj = Json::object(), inj = Json::object();
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    proj[a->quiver().label(v)] = projective(a, v).dims();
    inj[a->quiver().label(v)] = injective(a, v).dims();
  }
  j["projective_dims"] = proj;
  j["injective_dims"] = inj;
  j["modules"] = f.module_names(Part::Whole);
  s.err << "algebra of dimension " << a->dimension() << " on " << a->vertex_count() << " vertices\n";
  return s.emit(j, kOk);
}

int algebra_check(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Algebra& a = *f.algebra();
  Json j;
  j["dimension"] = a.dimension();
  const auto failure = find_associativity_failure(a);
  j["associative"] = !failure;
  if (failure) j["associativity_witness"] = {a.describe((*failure)[0]), a.describe((*failure)[1]), a.describe((*failure)[2])};
  bool unit = true;
  for (std::size_t i = 0; i < a.dimension() && unit; ++i) {
    const Element b = a.basis_element(i);
    unit = a.multiply(a.unit(), b) == b && a.multiply(b, a.unit()) == b;
  }
  j["unit"] = unit;
  Json named = Json::array();
  for (const auto& name : f.module_names(Part::Whole)) {
    f.parse_module(name, f.algebra());
    named.push_back(name);
  }
  j["valid_modules"] = named;
  const bool ok = !failure && unit;
  j["passes"] = ok;
  s.err << (ok ? "algebra checks pass" : "algebra checks FAIL") << "\n";
  return s.emit(j, ok ? kOk : kFalse);
}

// module ----------------------------------------------------------------

int module_hom(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep m = f.parse_module(s.opt.first, f.algebra());
  const Rep n = f.parse_module(s.opt.second, f.algebra());
  const auto basis = hom_basis(m, n);
  Json list = Json::array();
  for (const auto& h : basis) list.push_back(io::morphism_to_json(h));
  s.err << "dim Hom = " << basis.size() << "\n";
  return s.emit({{"dimension", basis.size()}, {"basis", list}}, kOk);
}

int module_ext(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep m = f.parse_module(s.opt.first, f.algebra());
  const Rep n = f.parse_module(s.opt.second, f.algebra());
  Json j{{"degree", s.opt.degree}};
  if (s.opt.degree != 1) {
    const std::size_t d = ext_k(m, n, s.opt.degree);
    j["dimension"] = d;
    s.err << "dim Ext^" << s.opt.degree << " = " << d << "\n";
    return s.emit(j, kOk);
  }
  const ExtSpace e = ext1(m, n);
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  j["dimension"] = e.dimension();
  Json exts = Json::array();
  for (const auto& c : e.cocycles) {
    const SES seq = realize_cocycle(e, c);
    Json x;
    x["middle"] = namer.brief(seq.middle);
    x["split"] = is_split(seq);
    x["sequence"] = io::ses_to_json(seq);
    exts.push_back(std::move(x));
  }
  j["extensions"] = exts;
  s.err << "dim Ext^1 = " << e.dimension() << "\n";
  return s.emit(j, kOk);
}

int module_decompose(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep m = f.parse_module(s.opt.first, f.algebra());
  const Decomposition d = decompose(m, s.opt.seed);
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  Json classes = Json::array();
  std::vector<Rep> reps;
  for (std::size_t c = 0; c < d.class_count(); ++c)
    for (std::size_t i = 0; i < d.summands.size(); ++i)
      if (d.class_of[i] == c) {
        Json x = namer.full(d.summands[i].module);
        x["multiplicity"] = d.multiplicities[c];
        classes.push_back(std::move(x));
        reps.push_back(d.summands[i].module);
        break;
      }
  s.err << "summands: " << summary(namer, reps) << "\n";
  return s.emit({{"summand_count", d.summands.size()}, {"classes", classes}}, kOk);
}

int module_iso(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep m = f.parse_module(s.opt.first, f.algebra());
  const Rep n = f.parse_module(s.opt.second, f.algebra());
  const auto iso = find_isomorphism(m, n, s.opt.seed);
  Json j{{"isomorphic", iso.has_value()}};
  if (iso) j["witness"] = io::morphism_to_json(*iso);
  else j["witness"] = {{"dims", {m.dims(), n.dims()}}};
  s.err << (iso ? "isomorphic" : "not isomorphic") << "\n";
  return s.emit(j, iso ? kOk : kFalse);
}

// ar --------------------------------------------------------------------

int ar_roster(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Roster r = enumerate_roster(f.algebra(), s.opt.roster_cap, s.opt.seed);
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  const Json j = io::roster_to_json(r, namer);
  s.err << "roster of " << r.size() << " indecomposables\n";
  if (!s.opt.output.empty()) {
    std::ofstream o(s.opt.output);
    if (!o) throw InputError(s.opt.output + ": cannot write");
    o << j.dump(2) << "\n";
    return s.emit({{"size", r.size()}, {"written", s.opt.output}}, kOk);
  }
  return s.emit(j, kOk);
}

// tilting / torsion -----------------------------------------------------

Json tilting_json(const TiltingCertificate& c, const io::Namer& namer) {
  Json j;
  j["tilting"] = c.passes;
  j["partial_tilting"] = c.partial.passes;
  j["proj_dim"] = c.partial.proj_dim;
  j["self_ext"] = c.partial.self_ext;
  j["summand_count"] = c.summands.size();
  j["simple_count"] = c.simple_count;
  j["count_criterion"] = c.count_criterion;
  j["summands"] = fulls(namer, c.summands);
  Json a{{"injective", c.approximation_injective}, {"cokernel_in_add", c.cokernel_in_add}};
  if (c.sequence) a["sequence"] = io::ses_to_json(*c.sequence);
  j["approximation"] = a;
  return j;
}

int tilting_check(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep t = f.parse_module(s.opt.first, f.algebra());
  const TiltingCertificate c = is_tilting(t, s.opt.seed);
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  s.err << (c.passes ? "tilting: " : "not tilting: ") << summary(namer, c.summands) << " (pd " << c.partial.proj_dim
        << ", Ext^1(T,T) " << c.partial.self_ext << ")\n";
  return s.emit(tilting_json(c, namer), c.passes ? kOk : kFalse);
}

int torsion_partition(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep t = f.parse_module(s.opt.first, f.algebra());
  const TorsionProfile profile(t, s.opt.seed);
  const std::vector<Rep> roster = load_roster(s, f.algebra());
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  const RosterPartition p = profile.partition(roster);

  std::vector<Rep> torsion, free;
  for (auto i : p.torsion) torsion.push_back(roster[i]);
  for (auto i : p.free) free.push_back(roster[i]);
  const TorsionPairCheck pair = is_torsion_pair(torsion, free, roster, s.opt.seed);
  std::vector<std::size_t> projective_idx;
  std::vector<Rep> projectives;
  for (auto k : ext_projective_indices(torsion)) {
    projective_idx.push_back(p.torsion[k]);
    projectives.push_back(torsion[k]);
  }
  const bool projectives_match = add_equal(projectives, profile.certificate().summands, s.opt.seed);
  const bool tilting_pair = is_tilting_torsion_pair(profile.module());

  Json j;
  j["tilting"] = briefs(namer, profile.certificate().summands);
  j["roster_size"] = roster.size();
  j["partition"] = partition_json(namer, roster, p);
  Json tp{{"passes", pair.passes}};
  if (pair.witness) {
    Json w{{"kind", pair.witness->kind}};
    if (pair.witness->kind == "hom") {
      w["torsion"] = namer.brief(torsion[pair.witness->torsion_index]);
      w["free"] = namer.brief(free[pair.witness->free_index]);
      if (pair.witness->map) w["map"] = io::morphism_to_json(*pair.witness->map);
    } else {
      w["roster_index"] = pair.witness->roster_index;
    }
    tp["witness"] = w;
  }
  j["torsion_pair"] = tp;
  j["tilting_torsion_pair"] = tilting_pair;
  j["ext_projectives"] = projective_idx;
  j["ext_projectives_match"] = projectives_match;
  const bool ok = pair.passes && p.neither.empty() && tilting_pair && projectives_match;
  j["passes"] = ok;
  s.err << p.torsion.size() << " torsion, " << p.free.size() << " free, " << p.neither.size() << " neither\n";
  return s.emit(j, ok ? kOk : kFalse);
}

int torsion_decompose_cmd(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  const Rep t = f.parse_module(s.opt.first, f.algebra());
  const Rep m = f.parse_module(s.opt.second, f.algebra());
  const SES seq = torsion_decompose(t, m);
  io::Namer namer(&f, f.algebra(), Part::Whole, s.opt.seed);
  Json j;
  j["torsion"] = briefs(namer, basic_summands(seq.left, s.opt.seed));
  j["free"] = briefs(namer, basic_summands(seq.right, s.opt.seed));
  j["exact"] = is_exact(seq);
  j["sequence"] = io::ses_to_json(seq);
  s.err << "torsion part dims " << seq.left.total_dim() << ", free part dims " << seq.right.total_dim() << "\n";
  return s.emit(j, kOk);
}

// rec -------------------------------------------------------------------

struct Split {
  io::AlgebraFile file;
  RecollementContext ctx;
};

Split load_split(const Session& s) {
  io::AlgebraFile f(s.opt.algebra, s.opt.length_cap);
  if (s.opt.outer.empty()) throw InputError("--outer is required");
  RecollementContext ctx = split_context(f.algebra(), parse_vertices(*f.algebra(), s.opt.outer));
  return {std::move(f), std::move(ctx)};
}

Json expectation(const std::string& path, const Algebra& part, std::size_t cap) {
  io::AlgebraFile e(path, cap);
  const auto iso = find_presentation_isomorphism(part, *e.algebra());
  Json j{{"file", path}, {"isomorphic", iso.has_value()}};
  if (iso) {
    Json vm = Json::object(), am = Json::object();
    for (std::size_t v = 0; v < iso->vertices.size(); ++v)
      vm[part.quiver().label(v)] = e.algebra()->quiver().label(iso->vertices[v]);
    for (std::size_t k = 0; k < iso->arrows.size(); ++k)
      am[part.quiver().arrow(k).name] = e.algebra()->quiver().arrow(iso->arrows[k]).name;
    j["vertex_map"] = vm;
    j["arrow_map"] = am;
  }
  return j;
}

int rec_split(const Session& s) {
  const Split sp = load_split(s);
  const RecollementContext& ctx = sp.ctx;
  const Algebra& a = *ctx.algebra;
  Json j;
  j["inner"] = labels(a, ctx.inner);
  j["outer"] = labels(a, ctx.outer);
  j["triangular"] = true;
  j["inner_algebra"] = io::algebra_to_json(*ctx.inner_algebra);
  j["outer_algebra"] = io::algebra_to_json(*ctx.outer_algebra);
  Json rows = Json::array();
  for (std::size_t i = 0; i < ctx.inner.size(); ++i)
    rows.push_back({{"row", a.quiver().label(ctx.inner[i])}, {"dims", io::dims_to_json(ctx.bimodule_rows[i])}});
  j["bimodule"] = rows;
  bool ok = true;
  if (!s.opt.expect_inner.empty()) {
    j["inner_expected"] = expectation(s.opt.expect_inner, *ctx.inner_algebra, s.opt.length_cap);
    ok = ok && j["inner_expected"]["isomorphic"].get<bool>();
  }
  if (!s.opt.expect_outer.empty()) {
    j["outer_expected"] = expectation(s.opt.expect_outer, *ctx.outer_algebra, s.opt.length_cap);
    ok = ok && j["outer_expected"]["isomorphic"].get<bool>();
  }
  s.err << "split: inner dimension " << ctx.inner_algebra->dimension() << ", outer dimension "
        << ctx.outer_algebra->dimension() << "\n";
  return s.emit(j, ok ? kOk : kFalse);
}

int rec_apply(const Session& s) {
  const Split sp = load_split(s);
  const RecollementContext& ctx = sp.ctx;
  const Functor fn = parse_functor(s.opt.functor);
  Part from = Part::Whole, to = Part::Whole;
  AlgebraPtr source = ctx.algebra, target = ctx.algebra;
  switch (fn) {
    case Functor::ILowerStar:
      from = Part::Inner;
      source = ctx.inner_algebra;
      break;
    case Functor::JShriek:
    case Functor::JLowerStar:
      from = Part::Outer;
      source = ctx.outer_algebra;
      break;
    case Functor::IUpperStar:
    case Functor::IShriek:
      to = Part::Inner;
      target = ctx.inner_algebra;
      break;
    case Functor::JUpperStar:
      to = Part::Outer;
      target = ctx.outer_algebra;
      break;
  }
  const Rep m = sp.file.parse_module(s.opt.first, source, from);
  const Rep r = apply(ctx, fn, m);
  io::Namer in_namer(&sp.file, source, from, s.opt.seed), out_namer(&sp.file, target, to, s.opt.seed);
  Json j;
  j["functor"] = functor_name(fn);
  j["input"] = in_namer.brief(m);
  j["result"] = out_namer.full(r);
  j["summands"] = briefs(out_namer, decompose_list(r, s.opt.seed));
  s.err << functor_name(fn) << "(" << summary(in_namer, {m}) << ") = " << summary(out_namer, decompose_list(r, s.opt.seed))
        << "\n";
  return s.emit(j, kOk);
}

Json exactness_json(const Algebra& a, const ExactnessReport& r) {
  Json list = Json::array();
  for (const auto& e : r.functors) {
    Json j{{"functor", functor_name(e.functor)}, {"exact", e.exact}, {"method", e.method}};
    if (e.witness)
      j["witness"] = {{"row", a.quiver().label(e.witness->row)},
                      {"simple", a.quiver().label(e.witness->simple)},
                      {"tor1_dimension", e.witness->dim}};
    list.push_back(std::move(j));
  }
  return list;
}

int rec_check(const Session& s) {
  const Split sp = load_split(s);
  const RecollementContext& ctx = sp.ctx;
  const ExactnessReport ex = check_exactness(ctx);
  const std::vector<Rep> roster = load_roster(s, ctx.algebra);
  const std::vector<Rep> inner = enumerate_roster(ctx.inner_algebra, s.opt.roster_cap, s.opt.seed).modules();
  const std::vector<Rep> outer = enumerate_roster(ctx.outer_algebra, s.opt.roster_cap, s.opt.seed).modules();
  const IdentityReport ids = verify_recollement_identities(ctx, inner, outer, roster, s.opt.seed);
  std::size_t exact = 0;
  for (const auto& m : roster) exact += is_exact(canonical_sequence(ctx, m)) ? 1 : 0;

  Json j;
  j["inner"] = labels(*ctx.algebra, ctx.inner);
  j["outer"] = labels(*ctx.algebra, ctx.outer);
  j["exactness"] = exactness_json(*ctx.algebra, ex);
  Json idl = Json::array();
  for (const auto& c : ids.checks) idl.push_back({{"identity", c.name}, {"checked", c.checked}, {"failures", c.failures}});
  j["identities"] = idl;
  j["samples"] = {{"modules", roster.size()}, {"inner", inner.size()}, {"outer", outer.size()}};
  j["canonical_sequences"] = {{"checked", roster.size()}, {"exact", exact}};
  const bool ok = ids.passes() && exact == roster.size();
  j["passes"] = ok;
  for (const auto& e : ex.functors) s.err << functor_name(e.functor) << (e.exact ? " exact" : " not exact") << "\n";
  s.err << (ok ? "identities hold" : "identities FAIL") << "\n";
  return s.emit(j, ok ? kOk : kFalse);
}

int rec_glue(const Session& s) {
  const Split sp = load_split(s);
  const RecollementContext& ctx = sp.ctx;
  if (s.opt.inner_tilting.empty() || s.opt.outer_tilting.empty())
    throw InputError("--inner-tilting and --outer-tilting are required");
  const Rep t1 = sp.file.parse_module(s.opt.inner_tilting, ctx.inner_algebra, Part::Inner);
  const Rep t2 = sp.file.parse_module(s.opt.outer_tilting, ctx.outer_algebra, Part::Outer);
  const std::vector<Rep> roster = load_roster(s, ctx.algebra);
  const GlueCertificate c = glue_tilting({&ctx, t1, t2}, roster, {s.opt.seed, std::nullopt});

  io::Namer namer(&sp.file, ctx.algebra, Part::Whole, s.opt.seed);
  io::Namer inner(&sp.file, ctx.inner_algebra, Part::Inner, s.opt.seed);
  io::Namer outer(&sp.file, ctx.outer_algebra, Part::Outer, s.opt.seed);
  Json j;
  j["inner_tilting"] = briefs(inner, basic_summands(t1, s.opt.seed));
  j["outer_tilting"] = briefs(outer, basic_summands(t2, s.opt.seed));
  j["ext_dimension"] = c.ext_dimension;
  j["universal_extension"] = {{"middle", briefs(namer, decompose_list(c.universal.middle, s.opt.seed))},
                              {"sequence", io::ses_to_json(c.universal)}};
  j["residual_ext"] = c.residual_ext;
  j["summands"] = fulls(namer, c.summands);
  j["checks"] = {{"proj_dim", c.proj_dim},
                 {"self_ext", c.self_ext},
                 {"summand_count", c.summands.size()},
                 {"simple_count", ctx.algebra->vertex_count()},
                 {"tilting", c.tilting.passes},
                 {"partition_matches", c.partition_matches},
                 {"ext_projectives_match", c.ext_projectives_match}};
  j["partition"] = partition_json(namer, roster, c.partition);
  Json glued = Json::array();
  for (auto m : c.glued) glued.push_back(to_string(m));
  j["glued_membership"] = glued;
  j["ext_projectives"] = c.ext_projectives;
  j["passes"] = c.passes;
  s.err << "glued T = " << summary(namer, c.summands) << "\n"
        << c.partition.torsion.size() << " torsion, " << c.partition.free.size() << " free; "
        << (c.passes ? "certificate passes" : "certificate FAILS") << "\n";
  return s.emit(j, c.passes ? kOk : kFalse);
}

int rec_restrict(const Session& s) {
  const Split sp = load_split(s);
  const RecollementContext& ctx = sp.ctx;
  if (s.opt.tilting.empty()) throw InputError("--tilting is required");
  const Side side = s.opt.side == "left"    ? Side::Left
                    : s.opt.side == "right" ? Side::Right
                                            : throw InputError("--side must be left or right");
  const Rep t = sp.file.parse_module(s.opt.tilting, ctx.algebra, Part::Whole);
  const std::vector<Rep> roster = load_roster(s, ctx.algebra);
  const AlgebraPtr& part_alg = side == Side::Left ? ctx.inner_algebra : ctx.outer_algebra;
  const Part part = side == Side::Left ? Part::Inner : Part::Outer;
  const std::vector<Rep> part_roster = enumerate_roster(part_alg, s.opt.roster_cap, s.opt.seed).modules();
  const RestrictionResult r = side == Side::Left ? restrict_left(ctx, t, roster, part_roster, s.opt.seed)
                                                 : restrict_right(ctx, t, roster, part_roster, s.opt.seed);

  io::Namer namer(&sp.file, ctx.algebra, Part::Whole, s.opt.seed);
  io::Namer pn(&sp.file, part_alg, part, s.opt.seed);
  Json j;
  j["side"] = s.opt.side;
  j["summands"] = fulls(pn, r.summands);
  j["tilting"] = r.tilting.passes;
  Json h{{"hold", r.hypotheses_hold}};
  if (r.failed_hypothesis) h["failed"] = *r.failed_hypothesis;
  if (r.right_hypotheses) {
    const auto& rh = *r.right_hypotheses;
    auto witness = [&](std::size_t i) {
      return Json{{"index", i},
                  {"module", namer.brief(roster[i])},
                  {"image", namer.brief(j_star_lower(ctx, j_star_upper(ctx, roster[i])))}};
    };
    h["free_closed"] = rh.free_closed;
    if (rh.free_witness) h["free_witness"] = witness(*rh.free_witness);
    h["torsion_closed"] = rh.torsion_closed;
    if (rh.torsion_witness) h["torsion_witness"] = witness(*rh.torsion_witness);
    h["j_lower_exact"] = rh.j_lower_exact;
  }
  j["hypotheses"] = h;
  j["restricted_pair"] = {{"torsion", briefs(pn, r.pair.torsion)}, {"free", briefs(pn, r.pair.free)}};
  std::vector<Rep> pair_torsion = r.pair.torsion, pair_free = r.pair.free;
  const TorsionPairCheck pc = is_torsion_pair(pair_torsion, pair_free, part_roster, s.opt.seed);
  Json pcj{{"passes", pc.passes}};
  if (pc.witness && pc.witness->kind == "hom")
    pcj["witness"] = {{"kind", "hom"},
                      {"torsion", pn.brief(pair_torsion[pc.witness->torsion_index])},
                      {"free", pn.brief(pair_free[pc.witness->free_index])}};
  else if (pc.witness)
    pcj["witness"] = {{"kind", pc.witness->kind}, {"roster_index", pc.witness->roster_index}};
  j["restricted_pair_is_torsion_pair"] = pcj;
  j["partition_matches"] = r.partition_matches;
  s.err << "restricted T = " << summary(pn, r.summands) << (r.tilting.passes ? " (tilting)" : " (not tilting)") << "; "
        << (r.hypotheses_hold ? "hypotheses hold" : "hypothesis fails: " + r.failed_hypothesis.value_or("?")) << "\n";

  if (side == Side::Left && !r.hypotheses_hold) {
    Json e{{"error", {{"kind", "HypothesisFailed"}, {"culprit", *r.failed_hypothesis},
                      {"message", "i* is not exact"}}},
           {"result", j}};
    return s.emit(e, kInputError);
  }
  const bool ok = r.tilting.passes && r.hypotheses_hold && r.partition_matches;
  return s.emit(j, ok ? kOk : kFalse);
}

// golden ----------------------------------------------------------------

int golden_regen(const Session& s) {
  const std::filesystem::path fixtures(s.opt.fixtures), dir(s.opt.golden_out);
  Json written = Json::array();
  for (const auto& c : golden_cases()) {
    if (!std::filesystem::exists(fixtures / c.fixture)) continue;
    std::ostringstream out, err;
    const int code = run(golden_arguments(c, fixtures), out, err);
    if (code != c.exit_code)
      throw InternalError(c.file + ": expected exit " + std::to_string(c.exit_code) + ", got " +
                          std::to_string(code) + ": " + err.str());
    std::filesystem::create_directories(dir);
    std::ofstream o(dir / c.file, std::ios::binary);
    o << out.str();
    written.push_back(c.file);
  }
  s.err << "wrote " << written.size() << " golden files\n";
  return s.emit({{"written", written}}, kOk);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RelationIllFormed*>(&e)) return "RelationIllFormed";
  if (dynamic_cast<const NotTriangular*>(&e)) return "NotTriangular";
  if (dynamic_cast<const InputError*>(&e)) return "InputError";
  if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
  if (dynamic_cast<const PossibleDivisionAlgebra*>(&e)) return "PossibleDivisionAlgebra";
  if (dynamic_cast<const HypothesisFailed*>(&e)) return "HypothesisFailed";
  if (dynamic_cast<const InternalError*>(&e)) return "InternalError";
  return "Error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Tilting modules and recollements over bound quiver algebras", "rectilt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "Seed for every randomized search");
  app.add_option("--length-cap", opt.length_cap, "Longest path considered while reducing relations");

  auto alg_arg = [&](CLI::App* c) { c->add_option("algebra", opt.algebra, "Algebra JSON file")->required(); };
  auto mod_arg = [&](CLI::App* c, std::string& into, const char* name) {
    c->add_option(name, into, "Module: P(v), S(v), I(v), a declared name, a module file, or a '+'-sum")->required();
  };
  auto roster_opt = [&](CLI::App* c) {
    c->add_option("--roster", opt.roster, "Roster JSON file instead of the tau-inverse enumeration");
    c->add_option("--cap", opt.roster_cap, "Largest roster to enumerate");
  };
  auto outer_opt = [&](CLI::App* c) {
    c->add_option("--outer", opt.outer, "Comma-separated vertex labels of the outer part")->required();
  };

  CLI::App* algebra = app.add_subcommand("algebra", "Bound quiver algebras")->require_subcommand(1);
  CLI::App* a_info = algebra->add_subcommand("info", "Basis, projectives and injectives");
  alg_arg(a_info);
  CLI::App* a_check = algebra->add_subcommand("check", "Associativity, unit and declared modules");
  alg_arg(a_check);

  CLI::App* module = app.add_subcommand("module", "Modules")->require_subcommand(1);
  CLI::App* m_hom = module->add_subcommand("hom", "Basis of Hom(M, N)");
  alg_arg(m_hom);
  mod_arg(m_hom, opt.first, "M");
  mod_arg(m_hom, opt.second, "N");
  CLI::App* m_ext = module->add_subcommand("ext", "Ext^k(M, N) with realized extensions for k = 1");
  alg_arg(m_ext);
  mod_arg(m_ext, opt.first, "M");
  mod_arg(m_ext, opt.second, "N");
  m_ext->add_option("--degree", opt.degree, "Degree k");
  CLI::App* m_dec = module->add_subcommand("decompose", "Krull-Schmidt decomposition");
  alg_arg(m_dec);
  mod_arg(m_dec, opt.first, "M");
  CLI::App* m_iso = module->add_subcommand("iso", "Isomorphism test with witness");
  alg_arg(m_iso);
  mod_arg(m_iso, opt.first, "M");
  mod_arg(m_iso, opt.second, "N");

  CLI::App* ar = app.add_subcommand("ar", "Auslander-Reiten theory")->require_subcommand(1);
  CLI::App* ar_r = ar->add_subcommand("roster", "Indecomposables from the tau-inverse orbits of the projectives");
  alg_arg(ar_r);
  ar_r->add_option("--cap", opt.roster_cap, "Largest roster to enumerate");
  ar_r->add_option("-o,--output", opt.output, "Write the roster to this file");

  CLI::App* tilting = app.add_subcommand("tilting", "Tilting modules")->require_subcommand(1);
  CLI::App* t_check = tilting->add_subcommand("check", "Tilting certificate");
  alg_arg(t_check);
  mod_arg(t_check, opt.first, "T");

  CLI::App* torsion = app.add_subcommand("torsion", "Torsion pairs")->require_subcommand(1);
  CLI::App* tp = torsion->add_subcommand("partition", "Partition the roster by (Gen T, T-perp)");
  alg_arg(tp);
  mod_arg(tp, opt.first, "T");
  roster_opt(tp);
  CLI::App* td = torsion->add_subcommand("decompose", "Canonical sequence of M for (Gen T, T-perp)");
  alg_arg(td);
  mod_arg(td, opt.first, "T");
  mod_arg(td, opt.second, "M");

  CLI::App* rec = app.add_subcommand("rec", "Recollements from a triangular vertex split")->require_subcommand(1);
  CLI::App* r_split = rec->add_subcommand("split", "The two parts and the bimodule");
  alg_arg(r_split);
  outer_opt(r_split);
  r_split->add_option("--expect-inner", opt.expect_inner, "Algebra file the inner part must match");
  r_split->add_option("--expect-outer", opt.expect_outer, "Algebra file the outer part must match");
  CLI::App* r_apply = rec->add_subcommand("apply", "Apply one of the six functors");
  alg_arg(r_apply);
  outer_opt(r_apply);
  r_apply->add_option("functor", opt.functor, "i*, i_*, i!, j_!, j*, j_*")->required();
  mod_arg(r_apply, opt.first, "M");
  CLI::App* r_check = rec->add_subcommand("check", "Exactness and identity report");
  alg_arg(r_check);
  outer_opt(r_check);
  roster_opt(r_check);
  CLI::App* r_glue = rec->add_subcommand("glue", "Glue tilting modules of the two parts");
  alg_arg(r_glue);
  outer_opt(r_glue);
  r_glue->add_option("--inner-tilting", opt.inner_tilting, "Tilting module over the inner part")->required();
  r_glue->add_option("--outer-tilting", opt.outer_tilting, "Tilting module over the outer part")->required();
  r_glue->add_option("-o,--output", opt.output, "Also write the certificate to this file");
  roster_opt(r_glue);
  CLI::App* r_restrict = rec->add_subcommand("restrict", "Restrict a tilting module to one part");
  alg_arg(r_restrict);
  outer_opt(r_restrict);
  r_restrict->add_option("--tilting", opt.tilting, "Tilting module over the whole algebra")->required();
  r_restrict->add_option("--side", opt.side, "left or right")->check(CLI::IsMember({"left", "right"}));
  roster_opt(r_restrict);

  CLI::App* golden = app.add_subcommand("golden", "Regression corpus")->require_subcommand(1);
  CLI::App* g_regen = golden->add_subcommand("regen", "Rewrite the golden files");
  g_regen->add_option("--fixtures", opt.fixtures, "Fixture directory");
  g_regen->add_option("--out", opt.golden_out, "Golden directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    out << Json{{"error", {{"kind", "UsageError"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kInputError;
  }

  Session s{opt, out, err};
  try {
    if (*a_info) return algebra_info(s);
    if (*a_check) return algebra_check(s);
    if (*m_hom) return module_hom(s);
    if (*m_ext) return module_ext(s);
    if (*m_dec) return module_decompose(s);
    if (*m_iso) return module_iso(s);
    if (*ar_r) return ar_roster(s);
    if (*t_check) return tilting_check(s);
    if (*tp) return torsion_partition(s);
    if (*td) return torsion_decompose_cmd(s);
    if (*r_split) return rec_split(s);
    if (*r_apply) return rec_apply(s);
    if (*r_check) return rec_check(s);
    if (*r_glue) {
      std::ostringstream buffer;
      const int code = rec_glue(Session{opt, buffer, err});
      out << buffer.str();
      if (!opt.output.empty()) {
        std::ofstream o(opt.output);
        if (!o) throw InputError(opt.output + ": cannot write");
        o << buffer.str();
      }
      return code;
    }
    if (*r_restrict) return rec_restrict(s);
    if (*g_regen) return golden_regen(s);
  } catch (const Error& e) {
    Json j{{"kind", error_kind(e)}, {"message", e.what()}};
    if (const auto* h = dynamic_cast<const HypothesisFailed*>(&e)) j["culprit"] = h->culprit();
    std::string msg = e.what();
    if (const auto* h = dynamic_cast<const HypothesisFailed*>(&e); h && h->culprit() == "tilting") msg = "not tilting";
    err << "error: " << msg << "\n";
    out << Json{{"error", j}}.dump(2) << "\n";
    return dynamic_cast<const InternalError*>(&e) ? kInternalError : kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    out << Json{{"error", {{"kind", "InternalError"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kInternalError;
  }
  return kInputError;
}

std::vector<GoldenCase> golden_cases() {
  const std::string lambda = "{fixtures}/lambda.json";
  const std::string product = "{fixtures}/product.json";
  const std::string mutated = "{fixtures}/mutated.json";
  return {
      {"lambda_roster.json", "lambda.json", {"ar", "roster", lambda}, 0},
      {"lambda_exactness.json", "lambda.json", {"rec", "check", lambda, "--outer", "3,4,5"}, 0},
      {"case1_glue.json",
       "lambda.json",
       {"rec", "glue", lambda, "--outer", "3,4,5", "--inner-tilting", "T_prime", "--outer-tilting", "T_dprime_case1"},
       0},
      {"case2_glue.json",
       "lambda.json",
       {"rec", "glue", lambda, "--outer", "3,4,5", "--inner-tilting", "T_prime", "--outer-tilting", "T_dprime_case2"},
       0},
      {"case3_restrict.json",
       "lambda.json",
       {"rec", "restrict", lambda, "--outer", "3,4,5", "--tilting", "T_case3", "--side", "right"},
       1},
      {"case4_restrict.json",
       "lambda.json",
       {"rec", "restrict", lambda, "--outer", "3,4,5", "--tilting", "T_case4", "--side", "right"},
       0},
      {"product_exactness.json", "product.json", {"rec", "check", product, "--outer", "3,4,5"}, 0},
      {"product_glue.json",
       "product.json",
       {"rec", "glue", product, "--outer", "3,4,5", "--inner-tilting", "P(1)+P(2)", "--outer-tilting",
        "P(3)+P(4)+P(5)"},
       0},
      {"mutated_glue.json",
       "mutated.json",
       {"rec", "glue", mutated, "--outer", "3,4,5", "--inner-tilting", "P(1)+P(2)", "--outer-tilting",
        "P(3)+P(4)+P(5)"},
       2},
  };
}

std::vector<std::string> golden_arguments(const GoldenCase& c, const std::filesystem::path& fixtures) {
  std::vector<std::string> out;
  for (auto a : c.args) {
    if (auto p = a.find("{fixtures}"); p != std::string::npos) a.replace(p, 10, fixtures.string());
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace rectilt::cli
