#include "cylop/tree.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "cylop/combinatorics.hpp"
#include "cylop/linear.hpp"

namespace cylop {

Color output_color(Kind k) { return k == Kind::Alpha ? Color::Alpha : Color::Beta; }
Color input_color(Kind k) { return k == Kind::Beta ? Color::Beta : Color::Alpha; }
char kind_char(Kind k) { return k == Kind::Alpha ? 'a' : (k == Kind::Beta ? 'b' : 'm'); }

bool operator<(const Vertex& a, const Vertex& b) {
  return std::tie(a.kind, a.gen, a.children) < std::tie(b.kind, b.gen, b.children);
}

bool operator<(const Tree& a, const Tree& b) {
  return std::tie(a.root, a.vertices) < std::tie(b.root, b.vertices);
}

int Tree::arity() const {
  if (bare()) return 1;
  int n = 0;
  for (const auto& v : vertices)
    for (int c : v.children)
      if (c < 0) ++n;
  return n;
}

std::vector<int> Tree::reading_order() const {
  if (bare()) return {-root};
  std::vector<int> out;
  std::function<void(int)> walk = [&](int v) {
    for (int c : vertices[v].children) {
      if (c < 0)
        out.push_back(-c);
      else
        walk(c);
    }
  };
  walk(root);
  return out;
}

std::vector<Color> Tree::leaf_colors() const {
  std::vector<Color> out(arity(), Color::Alpha);
  for (const auto& v : vertices)
    for (int c : v.children)
      if (c < 0) out[-c - 1] = input_color(v.kind);
  return out;
}

Color Tree::output() const { return bare() ? Color::Alpha : output_color(vertices[root].kind); }

int Tree::weight() const {
  int w = 0;
  for (const auto& v : vertices)
    if (!v.trivial()) ++w;
  return w;
}

std::string Tree::str() const {
  if (bare()) return std::to_string(-root);
  std::function<std::string(int)> go = [&](int i) {
    const Vertex& v = vertices[i];
    std::string s;
    if (v.trivial())
      s = "1";
    else
      s = std::string(1, kind_char(v.kind)) + std::to_string(v.arity()) + "." + std::to_string(v.gen);
    s += "(";
    for (std::size_t j = 0; j < v.children.size(); ++j) {
      if (j) s += ",";
      int c = v.children[j];
      s += c < 0 ? std::to_string(-c) : go(c);
    }
    return s + ")";
  };
  return go(root);
}

std::vector<int> min_leaves(const Tree& t) {
  std::vector<int> m(t.vertices.size(), 0);
  std::function<int(int)> go = [&](int v) {
    int best = 1 << 30;
    for (int c : t.vertices[v].children) best = std::min(best, c < 0 ? -c : go(c));
    return m[v] = best;
  };
  if (!t.bare()) go(t.root);
  return m;
}

Tree to_preorder(const Tree& t, std::vector<int>* order) {
  Tree out;
  if (t.bare()) {
    out.root = t.root;
    if (order) order->clear();
    return out;
  }
  std::vector<int> ord, pos(t.vertices.size(), -1);
  std::function<void(int)> walk = [&](int v) {
    pos[v] = static_cast<int>(ord.size());
    ord.push_back(v);
    for (int c : t.vertices[v].children)
      if (c >= 0) walk(c);
  };
  walk(t.root);
  out.root = 0;
  for (int old : ord) {
    Vertex v = t.vertices[old];
    for (int& c : v.children)
      if (c >= 0) c = pos[c];
    out.vertices.push_back(std::move(v));
  }
  if (order) *order = ord;
  return out;
}

Tree canonical_shape(const Tree& t) {
  if (t.bare()) return t;
  Tree s = t;
  auto m = min_leaves(s);
  for (auto& v : s.vertices) {
    std::stable_sort(v.children.begin(), v.children.end(), [&](int a, int b) {
      return (a < 0 ? -a : m[a]) < (b < 0 ? -b : m[b]);
    });
  }
  return to_preorder(s);
}

bool is_canonical(const Tree& t) {
  Tree c = canonical_shape(t);
  return c.root == t.root && c.vertices == t.vertices;
}

void check_well_formed(const Tree& t) {
  if (t.bare()) {
    if (t.root != -1) throw InvalidInput("bare leaf must carry label 1");
    return;
  }
  const int nv = t.num_vertices();
  if (t.root >= nv) throw InvalidInput("root index out of range");
  std::vector<int> refs(nv, 0);
  std::vector<int> labels;
  for (const auto& v : t.vertices) {
    if (v.children.empty()) throw InvalidInput("vertex without inputs");
    for (int c : v.children) {
      if (c >= 0) {
        if (c >= nv) throw InvalidInput("child index out of range");
        ++refs[c];
        if (output_color(t.vertices[c].kind) != input_color(v.kind))
          throw InvalidInput("edge color mismatch in " + t.str());
      } else {
        labels.push_back(-c);
      }
    }
  }
  for (int i = 0; i < nv; ++i)
    if (refs[i] != (i == t.root ? 0 : 1)) throw InvalidInput("vertex graph is not a rooted tree");
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1) throw InvalidInput("leaf labels are not a bijection");
  std::vector<int> order;
  to_preorder(t, &order);
  if (static_cast<int>(order.size()) != nv) throw InvalidInput("disconnected vertices");
}

Tree corolla_tree(Kind kind, int arity, int gen) {
  Tree t;
  t.root = 0;
  Vertex v{kind, gen, {}};
  for (int i = 1; i <= arity; ++i) v.children.push_back(-i);
  t.vertices.push_back(std::move(v));
  return t;
}

Tree bare_leaf(int label) {
  Tree t;
  t.root = -label;
  return t;
}

Tree join(Kind kind, int gen, const std::vector<Tree>& kids) {
  Tree t;
  t.root = 0;
  t.vertices.push_back(Vertex{kind, gen, {}});
  for (const auto& k : kids) {
    if (k.bare()) {
      t.vertices[0].children.push_back(k.root);
      continue;
    }
    int off = t.num_vertices();
    t.vertices[0].children.push_back(off + k.root);
    for (Vertex v : k.vertices) {
      for (int& c : v.children)
        if (c >= 0) c += off;
      t.vertices.push_back(std::move(v));
    }
  }
  return t;
}

Tree graft(const Tree& outer, int position, const Tree& inner) {
  const int n = outer.arity();
  if (position < 1 || position > n) throw InvalidInput("graft position out of range");
  if (outer.bare()) return inner;
  if (inner.bare()) return outer;
  const int k = inner.arity();
  Tree t;
  t.root = outer.root;
  t.vertices = outer.vertices;
  const int off = outer.num_vertices();
  for (auto& v : t.vertices)
    for (int& c : v.children) {
      if (c >= 0) continue;
      int l = -c;
      if (l == position)
        c = off + inner.root;
      else if (l > position)
        c = -(l + k - 1);
    }
  for (Vertex v : inner.vertices) {
    for (int& c : v.children) c = c >= 0 ? c + off : -(-c + position - 1);
    t.vertices.push_back(std::move(v));
  }
  return t;
}

Tree relabel_leaves(const Tree& t, const std::vector<int>& perm) {
  Tree r = t;
  if (r.bare()) {
    r.root = -(perm[-r.root - 1] + 1);
    return r;
  }
  for (auto& v : r.vertices)
    for (int& c : v.children)
      if (c < 0) c = -(perm[-c - 1] + 1);
  return r;
}

Tree recolor(const Tree& t, Kind from, Kind to) {
  Tree r = t;
  for (auto& v : r.vertices)
    if (v.kind == from) v.kind = to;
  return r;
}

namespace {

Tree leaves_vertex(Kind kind, const std::vector<int>& block) {
  Vertex v{kind, 0, {}};
  for (int l : block) v.children.push_back(-(l + 1));
  Tree t;
  t.root = 0;
  t.vertices.push_back(v);
  return t;
}

}  // namespace

std::vector<Tree> enumerate_tree2(int n, bool colored) {
  std::vector<Tree> out;
  if (n < 3) return out;
  const Kind low = colored ? Kind::Mixed : Kind::Alpha;
  for (const auto& s : subsets(n, 2, n - 1)) {
    std::vector<Tree> kids;
    for (int l = 0; l < n; ++l) {
      if (l == s.front())
        kids.push_back(leaves_vertex(Kind::Alpha, s));
      else if (!std::binary_search(s.begin(), s.end(), l))
        kids.push_back(bare_leaf(l + 1));
    }
    out.push_back(join(low, 0, kids));
  }
  return out;
}

std::vector<Tree> enumerate_pitchforks(int n, int k, bool colored) {
  std::vector<Tree> out;
  if (n < 1 || k < 1) return out;
  const Kind top = colored ? Kind::Mixed : Kind::Alpha;
  const Kind low = colored ? Kind::Beta : Kind::Alpha;
  for (const auto& p : set_partitions(n, k)) {
    std::vector<Tree> kids;
    for (const auto& b : p) kids.push_back(leaves_vertex(top, b));
    out.push_back(join(low, 0, kids));
  }
  return out;
}

std::vector<Tree> enumerate_reduced_shapes(const std::vector<int>& labels, Kind kind) {
  std::vector<Tree> out;
  const int n = static_cast<int>(labels.size());
  if (n < 2) return out;
  for (const auto& p : set_partitions_at_least(n, 2)) {
    // Cartesian product over blocks of (leaf | shape on block).
    std::vector<std::vector<Tree>> options;
    for (const auto& b : p) {
      std::vector<int> sub;
      for (int i : b) sub.push_back(labels[i]);
      if (sub.size() == 1)
        options.push_back({bare_leaf(sub[0])});
      else
        options.push_back(enumerate_reduced_shapes(sub, kind));
    }
    std::vector<std::size_t> idx(options.size(), 0);
    while (true) {
      std::vector<Tree> kids;
      for (std::size_t j = 0; j < options.size(); ++j) kids.push_back(options[j][idx[j]]);
      out.push_back(join(kind, 0, kids));
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == options[j].size()) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  }
  return out;
}

}  // namespace cylop
