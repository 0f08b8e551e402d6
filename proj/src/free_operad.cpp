#include "cylop/free_operad.hpp"

#include <algorithm>
#include <functional>

namespace cylop {

void add_term(Terms& terms, const Tree& t, const Scalar& c) {
  if (c == 0) return;
  auto it = terms.find(t);
  if (it == terms.end()) {
    terms.emplace(t, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

OperadElement OperadElement::zero(int arity, Color out, std::vector<Color> in) {
  OperadElement e;
  e.arity = arity;
  e.out = out;
  e.in = std::move(in);
  return e;
}

OperadElement OperadElement::zero(int arity, Color out, Color in) {
  return zero(arity, out, std::vector<Color>(static_cast<std::size_t>(arity), in));
}

namespace {

void check_profile(const OperadElement& a, const OperadElement& b) {
  if (a.arity != b.arity || a.out != b.out || a.in != b.in)
    throw InvalidInput("operad elements with different profiles");
}

}  // namespace

OperadElement& OperadElement::operator+=(const OperadElement& o) {
  check_profile(*this, o);
  for (const auto& [t, c] : o.terms) add_term(terms, t, c);
  return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& o) {
  check_profile(*this, o);
  for (const auto& [t, c] : o.terms) add_term(terms, t, -c);
  return *this;
}

OperadElement& OperadElement::operator*=(const Scalar& s) {
  if (s == 0) {
    terms.clear();
    return *this;
  }
  for (auto& kv : terms) kv.second *= s;
  return *this;
}

std::string OperadElement::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")*" + t.str();
  }
  return s;
}

std::vector<Color> input_profile(Kind k, int arity) {
  return std::vector<Color>(static_cast<std::size_t>(arity), input_color(k));
}

int FreeOperad::vertex_degree(const Vertex& v) const {
  if (v.trivial()) return 0;
  int d = C_->degree(v.arity(), v.gen);
  return v.kind == Kind::Mixed ? d : d + 1;
}

int FreeOperad::degree(const Tree& t) const {
  int d = 0;
  for (const auto& v : t.vertices) d += vertex_degree(v);
  return d;
}

std::optional<int> FreeOperad::degree(const OperadElement& e) const {
  std::optional<int> d;
  for (const auto& kv : e.terms) {
    int x = degree(kv.first);
    if (d && *d != x) return std::nullopt;
    d = x;
  }
  return d;
}

void FreeOperad::canonicalize_into(const Tree& raw, const Scalar& coeff, Terms& out) const {
  if (coeff == 0) return;
  if (raw.bare()) {
    add_term(out, bare_leaf(-raw.root), coeff);
    return;
  }
  const int V = raw.num_vertices();
  const auto minl = min_leaves(raw);
  Tree sorted = raw;
  std::vector<SparseVector> decs(V);
  for (int u = 0; u < V; ++u) {
    Vertex& v = sorted.vertices[u];
    const int k = v.arity();
    if (k > C_->cap()) throw InvalidInput("vertex arity exceeds the cooperad cap");
    if (v.gen < 0 || v.gen >= C_->dim(k)) throw InvalidInput("decoration index out of range in " + raw.str());
    Perm sigma = identity_perm(k);
    auto key = [&](int c) { return c < 0 ? -c : minl[c]; };
    std::stable_sort(sigma.begin(), sigma.end(),
                     [&](int a, int b) { return key(v.children[a]) < key(v.children[b]); });
    if (is_identity(sigma) || v.trivial()) {
      decs[u] = SparseVector{{v.gen, Scalar(1)}};
      continue;
    }
    std::vector<int> kids(k);
    for (int j = 0; j < k; ++j) kids[j] = v.children[sigma[j]];
    v.children = kids;
    decs[u] = C_->act(sigma, v.gen);
  }
  std::vector<int> order;
  Tree pre = to_preorder(sorted, &order);
  if (static_cast<int>(order.size()) != V) throw InvalidInput("malformed tree: unreachable vertices");
  std::vector<int> degs(V);
  for (int u = 0; u < V; ++u) degs[u] = vertex_degree(raw.vertices[u]);
  Scalar base = koszul_parity(order, degs) ? Scalar(-coeff) : coeff;
  // Expand the product of decoration combinations.
  std::function<void(int, const Scalar&)> go = [&](int j, const Scalar& c) {
    if (j == V) {
      add_term(out, pre, c);
      return;
    }
    for (const auto& [g, a] : decs[order[j]]) {
      pre.vertices[j].gen = g;
      go(j + 1, c * a);
    }
  };
  go(0, base);
}

Terms FreeOperad::canonicalize(const Tree& raw) const {
  Terms t;
  canonicalize_into(raw, 1, t);
  return t;
}

OperadElement FreeOperad::element(const Tree& raw, const Scalar& coeff) const {
  check_well_formed(raw);
  OperadElement e = OperadElement::zero(raw.arity(), raw.output(), raw.leaf_colors());
  canonicalize_into(raw, coeff, e.terms);
  return e;
}

OperadElement FreeOperad::corolla(Kind kind, int arity, int gen) const {
  if (arity == 1 && kind != Kind::Mixed) throw InvalidInput("single-color generators need arity >= 2");
  if (gen < 0 || gen >= C_->dim(arity)) throw InvalidInput("generator index out of range");
  return element(corolla_tree(kind, arity, gen));
}

OperadElement FreeOperad::unit(Color c) const {
  OperadElement e = OperadElement::zero(1, c, c);
  e.add(bare_leaf(1), 1);
  return e;
}

OperadElement FreeOperad::compose(const OperadElement& a, int i, const OperadElement& b) const {
  if (i < 1 || i > a.arity) throw InvalidInput("composition index out of range");
  if (a.in[i - 1] != b.out) throw InvalidInput("color mismatch in composition");
  std::vector<Color> in;
  in.insert(in.end(), a.in.begin(), a.in.begin() + (i - 1));
  in.insert(in.end(), b.in.begin(), b.in.end());
  in.insert(in.end(), a.in.begin() + i, a.in.end());
  OperadElement r = OperadElement::zero(a.arity + b.arity - 1, a.out, in);
  for (const auto& [ta, ca] : a.terms)
    for (const auto& [tb, cb] : b.terms) canonicalize_into(graft(ta, i, tb), ca * cb, r.terms);
  return r;
}

OperadElement FreeOperad::relabel(const OperadElement& e, const Perm& perm) const {
  if (static_cast<int>(perm.size()) != e.arity) throw InvalidInput("relabelling of wrong size");
  std::vector<Color> in(e.in.size());
  for (std::size_t j = 0; j < perm.size(); ++j) in[perm[j]] = e.in[j];
  OperadElement r = OperadElement::zero(e.arity, e.out, in);
  for (const auto& [t, c] : e.terms) canonicalize_into(relabel_leaves(t, perm), c, r.terms);
  return r;
}

namespace {

// Raw tree obtained by replacing vertices of t; repl[u] == nullptr keeps u.
Tree build_substitution(const Tree& t, const std::vector<const Tree*>& repl) {
  const int V = t.num_vertices();
  std::vector<int> off(V, -1);
  int size = 0;
  for (int u = 0; u < V; ++u) {
    if (!repl[u]) {
      off[u] = size++;
    } else if (!repl[u]->bare()) {
      off[u] = size;
      size += repl[u]->num_vertices();
    }
  }
  std::function<int(int)> resolve = [&](int c) -> int {
    if (c < 0) return c;
    if (!repl[c]) return off[c];
    if (repl[c]->bare()) return resolve(t.vertices[c].children.at(0));
    return off[c] + repl[c]->root;
  };
  Tree raw;
  raw.vertices.resize(size);
  for (int u = 0; u < V; ++u) {
    const Vertex& orig = t.vertices[u];
    if (!repl[u]) {
      Vertex v = orig;
      for (int& c : v.children) c = resolve(c);
      raw.vertices[off[u]] = std::move(v);
      continue;
    }
    const Tree& r = *repl[u];
    if (r.arity() != orig.arity()) throw InvalidInput("substituted value has the wrong arity");
    if (r.bare()) continue;
    for (int j = 0; j < r.num_vertices(); ++j) {
      Vertex v = r.vertices[j];
      for (int& c : v.children) c = c >= 0 ? c + off[u] : resolve(orig.children.at(-c - 1));
      raw.vertices[off[u] + j] = std::move(v);
    }
  }
  raw.root = resolve(t.root);
  return raw;
}

}  // namespace

OperadElement FreeOperad::substitute(const Tree& t, int v, const OperadElement& value) const {
  std::vector<const OperadElement*> values(t.vertices.size(), nullptr);
  values.at(v) = &value;
  return substitute_all(t, values);
}

OperadElement FreeOperad::substitute_all(const Tree& t, const std::vector<const OperadElement*>& values) const {
  if (values.size() != t.vertices.size()) throw InvalidInput("one value per vertex expected");
  // Leaf colors of the result: inputs of the replaced vertices.
  std::vector<Color> in = t.leaf_colors();
  for (int u = 0; u < t.num_vertices(); ++u) {
    if (!values[u]) continue;
    const auto& kids = t.vertices[u].children;
    if (values[u]->arity != static_cast<int>(kids.size())) throw InvalidInput("value arity mismatch");
    for (std::size_t j = 0; j < kids.size(); ++j)
      if (kids[j] < 0) in[-kids[j] - 1] = values[u]->in[j];
  }
  Color out = t.output();
  if (!t.bare() && values[t.root]) out = values[t.root]->out;
  OperadElement r = OperadElement::zero(t.arity(), out, in);
  std::vector<const Tree*> repl(t.vertices.size(), nullptr);
  std::vector<int> active;
  for (int u = 0; u < t.num_vertices(); ++u)
    if (values[u]) {
      if (values[u]->is_zero()) return r;
      active.push_back(u);
    }
  std::function<void(std::size_t, const Scalar&)> go = [&](std::size_t j, const Scalar& c) {
    if (j == active.size()) {
      canonicalize_into(build_substitution(t, repl), c, r.terms);
      return;
    }
    for (const auto& [tt, cc] : values[active[j]]->terms) {
      repl[active[j]] = &tt;
      go(j + 1, c * cc);
    }
    repl[active[j]] = nullptr;
  };
  go(0, Scalar(1));
  return r;
}

OperadElement FreeOperad::mu_tree(const Tree& shape, const std::vector<OperadElement>& decorations) const {
  std::vector<const OperadElement*> v;
  for (const auto& d : decorations) v.push_back(&d);
  return substitute_all(shape, v);
}

OperadElement FreeOperad::weight_part(const OperadElement& e, int w) const {
  OperadElement r = OperadElement::zero(e.arity, e.out, e.in);
  for (const auto& [t, c] : e.terms)
    if (t.weight() == w) r.terms.emplace(t, c);
  return r;
}

OperadElement FreeOperad::recolor(const OperadElement& e, Kind from, Kind to, Color in, Color out) const {
  OperadElement r = OperadElement::zero(e.arity, out, in);
  for (const auto& [t, c] : e.terms) r.terms.emplace(cylop::recolor(t, from, to), c);
  return r;
}

}  // namespace cylop
