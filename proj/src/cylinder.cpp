#include "cylop/cylinder.hpp"

#include <algorithm>
#include <functional>

namespace cylop {

Gen gen_of(const Vertex& v) { return Gen{v.kind, v.arity(), v.gen}; }

namespace {

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

// Cartesian product of option lists, each combination passed to f.
void for_each_product(const std::vector<std::vector<Tree>>& options,
                      const std::function<void(const std::vector<Tree>&)>& f) {
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<std::size_t> idx(options.size(), 0);
  while (true) {
    std::vector<Tree> kids;
    for (std::size_t j = 0; j < options.size(); ++j) kids.push_back(options[j][idx[j]]);
    f(kids);
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == options[j].size()) idx[j++] = 0;
    if (j == idx.size()) break;
  }
}

std::vector<int> block_labels(const std::vector<int>& labels, const std::vector<int>& block) {
  std::vector<int> sub;
  for (int i : block) sub.push_back(labels[i]);
  return sub;
}

// Decorated single-color trees on the given labels (a bare leaf for one label).
std::vector<Tree> decorated_trees(const Cooperad& C, const std::vector<int>& labels, Kind kind) {
  const int n = static_cast<int>(labels.size());
  if (n == 1) return {bare_leaf(labels[0])};
  std::vector<Tree> out;
  for (const auto& p : set_partitions_at_least(n, 2)) {
    const int k = static_cast<int>(p.size());
    if (k > C.cap()) continue;
    std::vector<std::vector<Tree>> options;
    for (const auto& b : p) options.push_back(decorated_trees(C, block_labels(labels, b), kind));
    for (int g = 0; g < C.dim(k); ++g)
      for_each_product(options, [&](const std::vector<Tree>& kids) { out.push_back(join(kind, g, kids)); });
  }
  return out;
}

// Decorated 2-colored trees with alpha inputs and beta output.
std::vector<Tree> beta_trees(const Cooperad& C, const std::vector<int>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<Tree> out;
  for (const auto& t : decorated_trees(C, labels, Kind::Alpha)) out.push_back(join(Kind::Mixed, 0, {t}));
  if (n == 1) return out;
  for (const auto& p : set_partitions_at_least(n, 2)) {
    const int k = static_cast<int>(p.size());
    if (k > C.cap()) continue;
    std::vector<std::vector<Tree>> alpha_opts, beta_opts;
    for (const auto& b : p) {
      auto sub = block_labels(labels, b);
      alpha_opts.push_back(decorated_trees(C, sub, Kind::Alpha));
      beta_opts.push_back(beta_trees(C, sub));
    }
    for (int g = 0; g < C.dim(k); ++g) {
      for_each_product(alpha_opts, [&](const std::vector<Tree>& kids) { out.push_back(join(Kind::Mixed, g, kids)); });
      for_each_product(beta_opts, [&](const std::vector<Tree>& kids) { out.push_back(join(Kind::Beta, g, kids)); });
    }
  }
  return out;
}

Tree leaves_corolla(Kind kind, int gen, const std::vector<int>& leaves) {
  std::vector<Tree> kids;
  for (int l : leaves) kids.push_back(bare_leaf(l));
  return join(kind, gen, kids);
}

}  // namespace

CylContext::CylContext(const Cooperad& C) : C_(&C), F_(C) {
  for (const Gen& g : generators(Flavor::Cyl)) {
    OperadElement d = compute_diff(g);
    diff0_.emplace(g, F_.weight_part(d, 1));
    diff_.emplace(g, std::move(d));
  }
}

std::vector<Gen> CylContext::generators(Flavor f, int max_arity) const {
  const int top = max_arity < 0 ? C_->cap() : std::min(max_arity, C_->cap());
  std::vector<Gen> out;
  for (int n = 2; n <= top; ++n)
    for (Kind k : {Kind::Alpha, Kind::Beta, Kind::Mixed}) {
      if (f == Flavor::Cobar && k != Kind::Alpha) continue;
      for (int g = 0; g < C_->dim(n); ++g) out.push_back(Gen{k, n, g});
    }
  return out;
}

int CylContext::gen_degree(const Gen& g) const {
  if (g.trivial()) return 0;
  int d = C_->degree(g.arity, g.idx);
  return g.kind == Kind::Mixed ? d : d + 1;
}

OperadElement CylContext::gen_element(const Gen& g) const { return F_.corolla(g.kind, g.arity, g.idx); }

OperadElement CylContext::zero_like(const Gen& g) const {
  return OperadElement::zero(g.arity, output_color(g.kind), input_color(g.kind));
}

const OperadElement& CylContext::gen_diff(const Gen& g, bool weight0) const {
  const auto& m = weight0 ? diff0_ : diff_;
  auto it = m.find(g);
  if (it == m.end()) throw InvalidInput("no generator differential for this generator");
  return it->second;
}

OperadElement CylContext::compute_diff(const Gen& g) const {
  const int n = g.arity;
  const int x = g.idx;
  OperadElement r = zero_like(g);
  if (g.kind == Kind::Alpha || g.kind == Kind::Beta) {
    // d(s x) = -s dx - sum_S (-1)^{|x1|} (s x1; s x2)
    for (const auto& [h, c] : C_->differential(n, x)) r.add(corolla_tree(g.kind, n, h), -c);
    for (const auto& S : subsets(n, 2, n - 1)) {
      for (const auto& t : C_->split(n, x, S)) {
        std::vector<int> up;
        for (int s : S) up.push_back(s + 1);
        std::vector<Tree> kids;
        for (int l = 0; l < n; ++l) {
          if (l == S.front())
            kids.push_back(leaves_corolla(g.kind, t.upper, up));
          else if (!std::binary_search(S.begin(), S.end(), l))
            kids.push_back(bare_leaf(l + 1));
        }
        Scalar c = (C_->degree(n - static_cast<int>(S.size()) + 1, t.lower) & 1) ? Scalar(1) : Scalar(-1);
        F_.canonicalize_into(join(g.kind, t.lower, kids), c * t.coeff, r.terms);
      }
    }
    return r;
  }
  // Mixed generator x^{ab}.
  for (const auto& [h, c] : C_->differential(n, x)) r.add(corolla_tree(Kind::Mixed, n, h), c);
  for (const auto& S : subsets(n, 2, n)) {
    for (const auto& t : C_->split(n, x, S)) {
      std::vector<int> up;
      for (int s : S) up.push_back(s + 1);
      std::vector<Tree> kids;
      for (int l = 0; l < n; ++l) {
        if (l == S.front())
          kids.push_back(leaves_corolla(Kind::Alpha, t.upper, up));
        else if (!std::binary_search(S.begin(), S.end(), l))
          kids.push_back(bare_leaf(l + 1));
      }
      const int lo_arity = n - static_cast<int>(S.size()) + 1;
      Scalar c = (C_->degree(lo_arity, t.lower) & 1) ? Scalar(-1) : Scalar(1);
      F_.canonicalize_into(join(Kind::Mixed, t.lower, kids), c * t.coeff, r.terms);
    }
  }
  for (int k = 2; k <= n; ++k)
    for (const auto& shape : enumerate_pitchforks(n, k, true)) {
      for (const auto& [decs, c] : C_->delta_tree(n, x, shape)) {
        Tree t = shape;
        for (int u = 0; u < t.num_vertices(); ++u) t.vertices[u].gen = decs[u];
        F_.canonicalize_into(t, -c, r.terms);
      }
    }
  return r;
}

OperadElement CylContext::extend(const ValueFn& values, int degree, const OperadElement& e) const {
  OperadElement r = OperadElement::zero(e.arity, e.out, e.in);
  for (const auto& [t, c] : e.terms) {
    int before = 0;
    for (int v = 0; v < t.num_vertices(); ++v) {
      const Vertex& vx = t.vertices[v];
      const OperadElement* val = values(gen_of(vx));
      const int dv = F_.vertex_degree(vx);
      if (val && !val->is_zero()) {
        Scalar s = ((degree & 1) && (before & 1)) ? Scalar(-c) : c;
        OperadElement part = F_.substitute(t, v, *val);
        for (const auto& [tt, cc] : part.terms) add_term(r.terms, tt, s * cc);
      }
      before += dv;
    }
  }
  return r;
}

OperadElement CylContext::diff(const OperadElement& e, bool weight0) const {
  const auto& m = weight0 ? diff0_ : diff_;
  return extend(
      [&](const Gen& g) -> const OperadElement* {
        if (g.trivial()) return nullptr;
        auto it = m.find(g);
        if (it == m.end()) throw InvalidInput("generator beyond the arity cap");
        return &it->second;
      },
      1, e);
}

const std::vector<Tree>& CylContext::cobar_basis(int n) const {
  auto it = cobar_basis_.find(n);
  if (it != cobar_basis_.end()) return it->second;
  std::vector<Tree> b = n >= 2 ? decorated_trees(*C_, iota(n), Kind::Alpha) : std::vector<Tree>{};
  std::sort(b.begin(), b.end());
  return cobar_basis_[n] = std::move(b);
}

const std::vector<Tree>& CylContext::cyl_basis(int n) const {
  auto it = cyl_basis_.find(n);
  if (it != cyl_basis_.end()) return it->second;
  std::vector<Tree> b = n >= 1 ? beta_trees(*C_, iota(n)) : std::vector<Tree>{};
  std::sort(b.begin(), b.end());
  return cyl_basis_[n] = std::move(b);
}

const std::vector<Tree>& CylContext::target_basis(const Gen& g) const {
  if (g.kind == Kind::Alpha) return cobar_basis(g.arity);
  if (g.kind == Kind::Mixed) return cyl_basis(g.arity);
  auto it = beta_basis_.find(g.arity);
  if (it != beta_basis_.end()) return it->second;
  std::vector<Tree> b;
  for (const auto& t : cobar_basis(g.arity)) b.push_back(recolor(t, Kind::Alpha, Kind::Beta));
  std::sort(b.begin(), b.end());
  return beta_basis_[g.arity] = std::move(b);
}

OperadElement CylContext::to_beta(const OperadElement& X) const {
  return F_.recolor(X, Kind::Alpha, Kind::Beta, Color::Beta, Color::Beta);
}

OperadElement CylContext::to_alpha(const OperadElement& X) const {
  return F_.recolor(X, Kind::Beta, Kind::Alpha, Color::Alpha, Color::Alpha);
}

OperadElement CylContext::iota_alpha(const OperadElement& X) const {
  OperadElement r = OperadElement::zero(X.arity, Color::Beta, Color::Alpha);
  for (const auto& [t, c] : X.terms) F_.canonicalize_into(join(Kind::Mixed, 0, {t}), c, r.terms);
  return r;
}

OperadElement CylContext::iota_beta(const OperadElement& X) const {
  OperadElement r = OperadElement::zero(X.arity, Color::Beta, Color::Alpha);
  for (const auto& [t, c] : X.terms) {
    Tree b = recolor(t, Kind::Alpha, Kind::Beta);
    const int V = b.num_vertices();
    for (int u = 0; u < V; ++u)
      for (int j = 0; j < b.vertices[u].arity(); ++j) {
        int ch = b.vertices[u].children[j];
        if (ch >= 0) continue;
        b.vertices.push_back(Vertex{Kind::Mixed, 0, {ch}});
        b.vertices[u].children[j] = b.num_vertices() - 1;
      }
    if (b.bare()) b = join(Kind::Mixed, 0, {b});
    F_.canonicalize_into(b, c, r.terms);
  }
  return r;
}

OperadElement CylContext::homotopy_h(const OperadElement& X) const {
  OperadElement r = OperadElement::zero(X.arity, Color::Beta, Color::Alpha);
  for (const auto& [t, c] : X.terms) {
    const int V = t.num_vertices();
    int before = 0;
    for (int i = 0; i < V; ++i) {
      Tree b = t;
      for (int j = 0; j < V; ++j)
        b.vertices[j].kind = j < i ? Kind::Beta : (j == i ? Kind::Mixed : Kind::Alpha);
      for (int j = 0; j < i; ++j)
        for (int q = 0; q < b.vertices[j].arity(); ++q) {
          const int ch = b.vertices[j].children[q];
          if (ch >= 0 && b.vertices[ch].kind != Kind::Alpha) continue;
          b.vertices.push_back(Vertex{Kind::Mixed, 0, {ch}});
          b.vertices[j].children[q] = b.num_vertices() - 1;
        }
      Scalar s = (before & 1) ? Scalar(-c) : c;
      F_.canonicalize_into(b, s, r.terms);
      before += F_.vertex_degree(t.vertices[i]);
    }
  }
  return r;
}

OperadElement CylContext::projection_pi(const OperadElement& e) const {
  OperadElement r = OperadElement::zero(e.arity, Color::Alpha, Color::Alpha);
  const OperadElement unit = F_.unit(Color::Alpha);
  for (const auto& [t, c] : e.terms) {
    bool killed = false;
    for (const auto& v : t.vertices)
      if (v.kind == Kind::Mixed && !v.trivial()) killed = true;
    if (killed) continue;
    Tree a = recolor(t, Kind::Beta, Kind::Alpha);
    std::vector<const OperadElement*> values(a.vertices.size(), nullptr);
    for (int u = 0; u < a.num_vertices(); ++u)
      if (a.vertices[u].trivial()) values[u] = &unit;
    OperadElement p = F_.substitute_all(a, values);
    for (const auto& [tt, cc] : p.terms) add_term(r.terms, tt, c * cc);
  }
  return r;
}

OperadElement cobar_diff(const CylContext& ctx, const OperadElement& e) { return ctx.diff(e, false); }
OperadElement cyl_diff(const CylContext& ctx, const OperadElement& e) { return ctx.diff(e, false); }
OperadElement cyl_diff0(const CylContext& ctx, const OperadElement& e) { return ctx.diff(e, true); }

Report d_squared_check(const CylContext& ctx, int n) {
  Report r;
  for (const Gen& g : ctx.generators(Flavor::Cyl, n)) {
    if (g.arity != n) continue;
    for (bool w0 : {false, true}) {
      OperadElement dd = ctx.diff(ctx.gen_diff(g, w0), w0);
      r.check(dd.is_zero(), std::string(w0 ? "weight-0 " : "") + "d^2 != 0 on generator " +
                                std::string(1, kind_char(g.kind)) + std::to_string(g.arity) + "." + std::to_string(g.idx) + ": " + dd.str());
    }
  }
  return r;
}

Report d_squared_basis_check(const CylContext& ctx, int n) {
  Report r;
  auto run = [&](const std::vector<Tree>& basis, const char* what) {
    for (const auto& t : basis) {
      OperadElement e = ctx.free().element(t);
      for (bool w0 : {false, true}) {
        OperadElement dd = ctx.diff(ctx.diff(e, w0), w0);
        r.check(dd.is_zero(), std::string(w0 ? "weight-0 " : "") + what + " d^2 != 0 on " + t.str());
      }
    }
  };
  run(ctx.cobar_basis(n), "cobar");
  run(ctx.cyl_basis(n), "cylinder");
  return r;
}

}  // namespace cylop
