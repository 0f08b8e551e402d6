#include "cylop/io.hpp"

#include <fstream>
#include <sstream>

namespace cylop {

namespace {

const char* color_name(Color c) { return c == Color::Alpha ? "alpha" : "beta"; }

Color parse_color(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "alpha") return Color::Alpha;
  if (s == "beta") return Color::Beta;
  throw InvalidInput("unknown color '" + s + "'");
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Alpha: return "alpha";
    case Kind::Beta: return "beta";
    default: return "mixed";
  }
}

Kind parse_kind(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "alpha") return Kind::Alpha;
  if (s == "beta") return Kind::Beta;
  if (s == "mixed") return Kind::Mixed;
  throw InvalidInput("unknown vertex kind '" + s + "'");
}

const char* flavor_name(Flavor f) { return f == Flavor::Cobar ? "cobar" : "cyl"; }

Flavor parse_flavor(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "cobar") return Flavor::Cobar;
  if (s == "cyl") return Flavor::Cyl;
  throw InvalidInput("unknown flavor '" + s + "'");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

int get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InvalidInput(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Json basis_to_json(const GradedBasis& b) {
  Json out = Json::array();
  for (const auto& e : b.entries()) out.push_back({{"label", e.label}, {"degree", e.degree}});
  return out;
}

GradedBasis basis_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("basis must be an array");
  std::vector<BasisEntry> entries;
  for (const auto& e : j) entries.push_back({get_string(e, "label"), get_int(e, "degree")});
  return GradedBasis(entries);
}

// Sparse columns as [{from, to, coeff}] over labels.
Json columns_to_json(const std::vector<SparseVector>& cols, const GradedBasis& src, const GradedBasis& tgt) {
  Json out = Json::array();
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c])
      out.push_back({{"from", src[c].label}, {"to", tgt[static_cast<std::size_t>(r)].label}, {"coeff", scalar_to_json(v)}});
  return out;
}

std::vector<SparseVector> columns_from_json(const Json& j, const GradedBasis& src, const GradedBasis& tgt) {
  if (!j.is_array()) throw InvalidInput("sparse entries must be an array");
  std::vector<SparseVector> cols(src.size());
  for (const auto& e : j) {
    auto c = src.find(get_string(e, "from"));
    auto r = tgt.find(get_string(e, "to"));
    if (!c || !r) throw InvalidInput("sparse entry refers to an unknown label");
    axpy(cols[*c], scalar_from_json(field(e, "coeff")), SparseVector{{static_cast<int>(*r), Scalar(1)}});
  }
  return cols;
}

Json node_to_json(const Cooperad& C, const Tree& t, int v, const std::vector<Color>& leaf_colors) {
  const Vertex& x = t.vertices[v];
  Json kids = Json::array();
  for (int c : x.children) {
    if (c >= 0)
      kids.push_back(node_to_json(C, t, c, leaf_colors));
    else
      kids.push_back({{"leaf", -c}, {"color", color_name(leaf_colors[-c - 1])}});
  }
  return {{"kind", kind_name(x.kind)},
          {"suspended", x.kind != Kind::Mixed},
          {"color", color_name(output_color(x.kind))},
          {"generator", C.label(x.arity(), x.gen)},
          {"children", kids}};
}

int node_from_json(const Cooperad& C, const Json& j, Tree& t) {
  if (j.contains("leaf")) return -get_int(j, "leaf");
  const Kind k = parse_kind(field(j, "kind"));
  const Json& kids = field(j, "children");
  if (!kids.is_array() || kids.empty()) throw InvalidInput("tree vertex needs children");
  const int arity = static_cast<int>(kids.size());
  if (arity > C.cap()) throw InvalidInput("tree vertex beyond the arity cap");
  if (arity == 1 && k != Kind::Mixed) throw InvalidInput("only mixed vertices may have arity 1");
  if (j.contains("suspended") && j.at("suspended").get<bool>() != (k != Kind::Mixed))
    throw InvalidInput("suspension flag does not match the vertex kind");
  const int idx = t.num_vertices();
  t.vertices.push_back(Vertex{k, C.find_label(arity, get_string(j, "generator")), {}});
  std::vector<int> children;
  for (const auto& c : kids) children.push_back(node_from_json(C, c, t));
  t.vertices[idx].children = children;
  return idx;
}

Json gen_fields(const Cooperad& C, const Gen& g) {
  return {{"arity", g.arity}, {"color_profile", kind_name(g.kind)}, {"generator_label", C.label(g.arity, g.idx)}};
}

Json values_to_json(const Cooperad& C, const std::map<Gen, MultiMap>& values) {
  Json out = Json::array();
  for (const auto& [g, f] : values) {
    Json e = gen_fields(C, g);
    e["matrix"] = matrix_to_json(f);
    out.push_back(e);
  }
  return out;
}

std::map<Gen, MultiMap> values_from_json(const CylContext& ctx, const EndTarget& T, const Json& j) {
  if (!j.is_array()) throw InvalidInput("values must be an array");
  std::map<Gen, MultiMap> out;
  for (const auto& e : j) {
    Gen g = gen_from_json(ctx.cooperad(), e);
    out[g] = matrix_from_json(T, g, field(e, "matrix"));
  }
  return out;
}

Json derivation_values(const CylContext& ctx, const std::map<Gen, OperadElement>& values) {
  Json out = Json::array();
  for (const auto& [g, v] : values) {
    Json e = gen_fields(ctx.cooperad(), g);
    e["value"] = element_to_json(ctx, v);
    out.push_back(e);
  }
  return out;
}

}  // namespace

Json scalar_to_json(const Scalar& q) { return to_string(q); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw InvalidInput("rational must be a \"p/q\" string or an integer");
}

Json cooperad_to_json(const Cooperad& C) {
  Json comps = Json::array();
  for (int m = 2; m <= C.cap(); ++m) {
    Json comp;
    comp["arity"] = m;
    comp["basis"] = basis_to_json(C.basis(m));
    std::vector<SparseVector> d;
    for (int g = 0; g < C.dim(m); ++g) d.push_back(C.differential(m, g));
    comp["differential"] = columns_to_json(d, C.basis(m), C.basis(m));
    Json coins = Json::array();
    for (int n = 1; n <= m; ++n) {
      const int k = m - n + 1;
      for (int i = 1; i <= n; ++i) {
        if (!C.has_coinsertion(n, k, i)) continue;
        Json entries = Json::array();
        for (int g = 0; g < C.dim(m); ++g)
          for (const auto& t : C.coinsertion(n, k, i, g))
            entries.push_back({{"source", C.label(m, g)},
                               {"lower", C.label(n, t.lower)},
                               {"upper", C.label(k, t.upper)},
                               {"coeff", scalar_to_json(t.coeff)}});
        coins.push_back({{"n", n}, {"k", k}, {"i", i}, {"entries", entries}});
      }
    }
    comp["coinsertions"] = coins;
    Json action = Json::array();
    if (!C.trivial_action(m))
      for (const auto& [p, M] : C.action_generators(m))
        action.push_back({{"perm", p}, {"matrix", columns_to_json(M, C.basis(m), C.basis(m))}});
    comp["symmetric_action"] = action;
    comps.push_back(comp);
  }
  return {{"name", C.name()}, {"arity_cap", C.cap()}, {"components", comps}};
}

Cooperad cooperad_from_json(const Json& j) {
  const int cap = get_int(j, "arity_cap");
  Cooperad C(j.contains("name") ? get_string(j, "name") : std::string("custom"), cap);
  const Json& comps = field(j, "components");
  if (!comps.is_array()) throw InvalidInput("components must be an array");
  std::map<int, const Json*> by_arity;
  for (const auto& c : comps) {
    const int m = get_int(c, "arity");
    if (m < 2 || m > cap) throw InvalidInput("component arity " + std::to_string(m) + " out of range");
    if (!by_arity.emplace(m, &c).second) throw InvalidInput("duplicate component of arity " + std::to_string(m));
    C.set_basis(m, basis_from_json(field(c, "basis")));
  }
  for (const auto& [m, c] : by_arity) {
    const GradedBasis& b = C.basis(m);
    if (c->contains("differential")) {
      auto cols = columns_from_json(c->at("differential"), b, b);
      for (int g = 0; g < C.dim(m); ++g) C.set_differential(m, g, cols[g]);
    }
    if (c->contains("coinsertions")) {
      for (const auto& e : c->at("coinsertions")) {
        const int n = get_int(e, "n"), k = get_int(e, "k"), i = get_int(e, "i");
        if (n + k - 1 != m) throw InvalidInput("coinsertion (n, k) does not match the component arity");
        std::vector<std::vector<CoTerm>> table(C.dim(m));
        for (const auto& t : field(e, "entries")) {
          const int g = C.find_label(m, get_string(t, "source"));
          table[g].push_back(CoTerm{scalar_from_json(field(t, "coeff")), C.find_label(n, get_string(t, "lower")),
                                    C.find_label(k, get_string(t, "upper"))});
        }
        for (int g = 0; g < C.dim(m); ++g) C.set_coinsertion(n, k, i, g, table[g]);
      }
    }
    if (c->contains("symmetric_action") && !c->at("symmetric_action").empty()) {
      std::vector<std::pair<Perm, std::vector<SparseVector>>> gens;
      for (const auto& a : c->at("symmetric_action")) {
        Perm p = field(a, "perm").get<Perm>();
        if (static_cast<int>(p.size()) != m) throw InvalidInput("action permutation has wrong length");
        gens.emplace_back(p, columns_from_json(field(a, "matrix"), b, b));
      }
      C.set_action(m, gens);
    }
  }
  C.finalize();
  return C;
}

Cooperad truncate_cooperad(const Cooperad& C, int cap) {
  if (cap == C.cap()) return C;
  if (cap < 2 || cap > C.cap())
    throw InvalidInput("cap " + std::to_string(cap) + " outside [2, " + std::to_string(C.cap()) + "]");
  Json j = cooperad_to_json(C);
  j["arity_cap"] = cap;
  Json comps = Json::array();
  for (const auto& c : j["components"])
    if (c["arity"].get<int>() <= cap) comps.push_back(c);
  j["components"] = comps;
  return cooperad_from_json(j);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

Cooperad load_cooperad(const std::string& spec) {
  std::ifstream probe(spec);
  if (probe.good()) {
    try {
      return cooperad_from_json(read_json_file(spec));
    } catch (const Json::exception& e) {
      throw InvalidInput("invalid cooperad JSON: " + std::string(e.what()));
    }
  }
  return builtin_by_name(spec);
}

Json tree_to_json(const Cooperad& C, const Tree& t) {
  const std::vector<Color> colors = t.leaf_colors();
  if (t.bare()) return {{"leaf", -t.root}, {"color", color_name(colors.at(0))}};
  return node_to_json(C, t, t.root, colors);
}

Tree tree_from_json(const Cooperad& C, const Json& j) {
  Tree t;
  t.root = node_from_json(C, j, t);
  if (t.bare()) return bare_leaf(-t.root);
  check_well_formed(t);
  return t;
}

Json element_to_json(const CylContext& ctx, const OperadElement& e) {
  bool alpha_only = e.out == Color::Alpha;
  for (Color c : e.in) alpha_only = alpha_only && c == Color::Alpha;
  Json in = Json::array();
  for (Color c : e.in) in.push_back(color_name(c));
  Json terms = Json::array();
  for (const auto& [t, c] : e.terms)
    terms.push_back({{"tree", tree_to_json(ctx.cooperad(), t)}, {"coeff", scalar_to_json(c)}});
  return {{"arity", e.arity},
          {"flavor", alpha_only ? "cobar" : "cyl"},
          {"output", color_name(e.out)},
          {"inputs", in},
          {"terms", terms}};
}

OperadElement element_from_json(const CylContext& ctx, const Json& j) {
  const int arity = get_int(j, "arity");
  std::vector<Color> in;
  if (j.contains("inputs"))
    for (const auto& c : j.at("inputs")) in.push_back(parse_color(c));
  else
    in.assign(arity, Color::Alpha);
  Color out = j.contains("output") ? parse_color(j.at("output")) : Color::Alpha;
  if (static_cast<int>(in.size()) != arity) throw InvalidInput("input colors do not match the arity");
  OperadElement e = OperadElement::zero(arity, out, in);
  for (const auto& term : field(j, "terms")) {
    Tree t = tree_from_json(ctx.cooperad(), field(term, "tree"));
    if (t.arity() != arity || t.output() != out || t.leaf_colors() != in)
      throw InvalidInput("tree does not match the element's color profile");
    e += ctx.free().element(t, scalar_from_json(field(term, "coeff")));
  }
  return e;
}

Json gen_to_json(const Cooperad& C, const Gen& g) { return gen_fields(C, g); }

Gen gen_from_json(const Cooperad& C, const Json& j) {
  Gen g;
  g.arity = get_int(j, "arity");
  g.kind = parse_kind(field(j, "color_profile"));
  if (g.arity < 1 || g.arity > C.cap()) throw InvalidInput("generator arity out of range");
  if (g.arity == 1 && g.kind != Kind::Mixed) throw InvalidInput("arity-1 generators must be mixed");
  g.idx = C.find_label(g.arity, get_string(j, "generator_label"));
  return g;
}

Json derivation_to_json(const CylContext& ctx, const Derivation& D) {
  return {{"flavor", flavor_name(D.flavor)}, {"degree", D.degree}, {"values", derivation_values(ctx, D.values)}};
}

Derivation derivation_from_json(const CylContext& ctx, const Json& j) {
  Derivation D;
  D.flavor = parse_flavor(field(j, "flavor"));
  D.degree = get_int(j, "degree");
  for (const auto& e : field(j, "values")) {
    Gen g = gen_from_json(ctx.cooperad(), e);
    if (g.trivial()) throw InvalidInput("derivations annihilate the trivial generator");
    if (D.flavor == Flavor::Cobar && g.kind != Kind::Alpha)
      throw InvalidInput("cobar derivations have values on alpha generators only");
    OperadElement v = element_from_json(ctx, field(e, "value"));
    const std::vector<Color> in = input_profile(g.kind, g.arity);
    if (v.arity != g.arity || v.out != output_color(g.kind) || v.in != in)
      throw InvalidInput("derivation value does not match the generator's color profile");
    auto deg = ctx.free().degree(v);
    if (!v.is_zero() && (!deg || *deg != ctx.gen_degree(g) + D.degree))
      throw InvalidInput("derivation value has the wrong degree");
    D.values[g] = v;
  }
  D.prune();
  return D;
}

Json space_to_json(const GradedSpace& V) {
  return {{"basis", basis_to_json(V.basis)}, {"differential", columns_to_json(V.d.columns, V.basis, V.basis)}};
}

GradedSpace space_from_json(const Json& j) {
  GradedBasis b = basis_from_json(field(j, "basis"));
  LinearMapRep d(b, b, 1);
  if (j.contains("differential")) d.columns = columns_from_json(j.at("differential"), b, b);
  return GradedSpace(b, d);
}

Json matrix_to_json(const MultiMap& f) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.cols; ++c) row.push_back(scalar_to_json(f.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

MultiMap matrix_from_json(const EndTarget& T, const Gen& g, const Json& j) {
  MultiMap f = T.zero(g.arity, output_color(g.kind), input_profile(g.kind, g.arity));
  if (!j.is_array() || j.size() != f.rows)
    throw InvalidInput("matrix for generator of arity " + std::to_string(g.arity) + " needs " +
                       std::to_string(f.rows) + " rows");
  for (std::size_t r = 0; r < f.rows; ++r) {
    if (!j[r].is_array() || j[r].size() != f.cols)
      throw InvalidInput("matrix row " + std::to_string(r) + " needs " + std::to_string(f.cols) + " entries");
    for (std::size_t c = 0; c < f.cols; ++c) f.at(r, c) = scalar_from_json(j[r][c]);
  }
  return f;
}

Json structure_to_json(const CylContext& ctx, const AlgebraStructure& F) {
  Json spaces = Json::array({space_to_json(F.V)});
  if (F.flavor == Flavor::Cyl) spaces.push_back(space_to_json(F.W));
  return {{"flavor", flavor_name(F.flavor)}, {"spaces", spaces}, {"values", values_to_json(ctx.cooperad(), F.values)}};
}

AlgebraStructure structure_from_json(const CylContext& ctx, const Json& j) {
  AlgebraStructure F;
  F.flavor = j.contains("flavor") ? parse_flavor(j.at("flavor")) : Flavor::Cobar;
  const Json& spaces = field(j, "spaces");
  const std::size_t need = F.flavor == Flavor::Cyl ? 2 : 1;
  if (!spaces.is_array() || spaces.size() != need)
    throw InvalidInput(std::string(flavor_name(F.flavor)) + " structures need " + std::to_string(need) + " space(s)");
  F.V = space_from_json(spaces[0]);
  F.W = need == 2 ? space_from_json(spaces[1]) : GradedSpace(GradedBasis{});
  F.values = values_from_json(ctx, F.target(), field(j, "values"));
  for (const auto& [g, f] : F.values)
    if (F.flavor == Flavor::Cobar && g.kind != Kind::Alpha)
      throw InvalidInput("cobar structures have values on alpha generators only");
  // Unlisted generators act by zero.
  AlgebraStructure full = zero_structure(ctx, F.flavor, F.V, F.W);
  for (auto& [g, f] : F.values) full.values[g] = f;
  return full;
}

Json report_to_json(const Report& r) {
  return {{"ok", r.ok}, {"checks", r.checks}, {"failures", r.failures}};
}

Json certificate_to_json(const CylContext& ctx, const TransportCertificate& c) {
  Json checks = Json::array();
  for (const auto& n : c.checks) checks.push_back({{"name", n.name}, {"report", report_to_json(n.report)}});
  Json lift = {{"lifted", derivation_to_json(ctx, c.lift.lifted)},
               {"t_alpha", derivation_to_json(ctx, c.lift.t_alpha)},
               {"t_beta", derivation_to_json(ctx, c.lift.t_beta)},
               {"joint_fallback", c.lift.joint_fallback},
               {"notes", c.lift.notes}};
  Json out = {{"green", c.green()}, {"checks", checks}, {"lift", lift}};
  if (c.green()) out["output"] = structure_to_json(ctx, assemble_cyl_algebra(ctx, c.output));
  return out;
}

Json ranks_to_json(const ComplexSlice& c) {
  Json rows = Json::array();
  for (const auto& [deg, r] : ranks(c)) rows.push_back({{"arity", c.arity}, {"degree", deg}, {"rank", r}});
  return {{"complex", c.which == Which::Cobar ? "cobar" : "cyl"}, {"weight0", c.weight0}, {"ranks", rows}};
}

ConvInput conv_from_json(const CylContext& ctx, const Json& j) {
  ConvInput c;
  c.flavor = j.contains("flavor") ? parse_flavor(j.at("flavor")) : Flavor::Cyl;
  c.degree = j.contains("degree") ? get_int(j, "degree") : (c.flavor == Flavor::Cobar ? 1 : 0);
  // A structure file is read as an element with values in its End operad.
  const Json target = j.contains("target") ? j.at("target") : Json{{"kind", "end"}, {"spaces", field(j, "spaces")}};
  const std::string kind = get_string(target, "kind");
  if (kind == "end") {
    c.end_target = true;
    const Json& spaces = field(target, "spaces");
    if (!spaces.is_array() || spaces.empty() || spaces.size() > 2)
      throw InvalidInput("end target needs one or two spaces");
    c.V = space_from_json(spaces[0]);
    c.W = spaces.size() == 2 ? space_from_json(spaces[1]) : GradedSpace(GradedBasis{});
  } else if (kind != "free") {
    throw InvalidInput("unknown target kind '" + kind + "'");
  }
  for (const auto& e : field(j, "values")) {
    Gen g = gen_from_json(ctx.cooperad(), e);
    if (c.flavor == Flavor::Cobar && g.kind != Kind::Alpha)
      throw InvalidInput("cobar elements have values on alpha generators only");
    if (c.end_target)
      c.end_values[g] = matrix_from_json(EndTarget(c.V, c.W), g, field(e, "matrix"));
    else
      c.free_values[g] = element_from_json(ctx, field(e, "value"));
  }
  return c;
}

Json conv_to_json(const CylContext& ctx, const ConvInput& c) {
  Json target = {{"kind", c.end_target ? "end" : "free"}};
  if (c.end_target) {
    Json spaces = Json::array({space_to_json(c.V)});
    if (c.flavor == Flavor::Cyl) spaces.push_back(space_to_json(c.W));
    target["spaces"] = spaces;
  }
  Json values = c.end_target ? values_to_json(ctx.cooperad(), c.end_values) : derivation_values(ctx, c.free_values);
  return {{"flavor", flavor_name(c.flavor)}, {"degree", c.degree}, {"target", target}, {"values", values}};
}

}  // namespace cylop
