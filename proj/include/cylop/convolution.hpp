#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cylop/cylinder.hpp"

namespace cylop {

// A target operad for convolution algebras must provide:
//   using Elem;
//   Elem zero(int arity, Color out, const std::vector<Color>& in) const;
//   Elem diff(const Elem&) const;
//   Elem compose_tree(const Tree& t, const std::vector<const Elem*>& values) const;
//   Elem relabel(const Elem&, const Perm&) const;
//   void axpy(Elem& y, const Scalar& a, const Elem& x) const;
//   bool is_zero(const Elem&) const;
//   bool equal(const Elem&, const Elem&) const;
//   std::vector<Elem> component_basis(int arity, Color out, const std::vector<Color>& in, int degree) const;
//   std::string str(const Elem&) const;
// compose_tree evaluates mu_t on one value per vertex, in factor order.

// Cobar(C) or Cyl(C) as a target.
class FreeTarget {
 public:
  using Elem = OperadElement;
  explicit FreeTarget(const CylContext& ctx) : ctx_(&ctx) {}

  Elem zero(int arity, Color out, const std::vector<Color>& in) const { return OperadElement::zero(arity, out, in); }
  Elem diff(const Elem& e) const { return ctx_->diff(e); }
  Elem compose_tree(const Tree& t, const std::vector<const Elem*>& values) const {
    return ctx_->free().substitute_all(t, values);
  }
  Elem relabel(const Elem& e, const Perm& p) const { return ctx_->free().relabel(e, p); }
  void axpy(Elem& y, const Scalar& a, const Elem& x) const {
    for (const auto& [t, c] : x.terms) y.add(t, a * c);
  }
  bool is_zero(const Elem& e) const { return e.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::vector<Elem> component_basis(int arity, Color out, const std::vector<Color>& in, int degree) const;
  std::string str(const Elem& e) const { return e.str(); }
  const CylContext& context() const { return *ctx_; }

 private:
  const CylContext* ctx_;
};

template <class T>
struct ConvElement {
  int degree = 0;
  std::map<Gen, typename T::Elem> values;
};

// Number of inputs of the generator with the given color (nullptr: all).
int color_inputs(const Gen& g, const Color* color);

// Shared operations on convolution elements over a fixed domain.
template <class T>
class ConvBase {
 public:
  using Elem = typename T::Elem;
  using Element = ConvElement<T>;

  ConvBase(const Cooperad& C, const T& target) : C_(&C), T_(&target) {}
  virtual ~ConvBase() = default;

  virtual std::vector<Gen> domain() const = 0;
  virtual int gen_degree(const Gen& g) const = 0;
  virtual Color gen_output(const Gen& g) const = 0;
  virtual std::vector<Color> gen_inputs(const Gen& g) const = 0;

  const T& target() const { return *T_; }
  const Cooperad& cooperad() const { return *C_; }

  Elem zero_value(const Gen& g) const { return T_->zero(g.arity, gen_output(g), gen_inputs(g)); }
  Element zero(int degree) const {
    Element e;
    e.degree = degree;
    return e;
  }
  const Elem* value(const Element& f, const Gen& g) const {
    auto it = f.values.find(g);
    return it == f.values.end() ? nullptr : &it->second;
  }
  void add_value(Element& f, const Gen& g, const Scalar& a, const Elem& v) const {
    if (T_->is_zero(v) || a == 0) return;
    auto it = f.values.find(g);
    if (it == f.values.end()) it = f.values.emplace(g, zero_value(g)).first;
    T_->axpy(it->second, a, v);
    if (T_->is_zero(it->second)) f.values.erase(it);
  }
  Element add(const Element& a, const Element& b, const Scalar& cb = 1) const {
    Element r = a;
    if (a.values.empty()) r.degree = b.degree;
    for (const auto& [g, v] : b.values) add_value(r, g, cb, v);
    return r;
  }
  Element scale(const Element& a, const Scalar& s) const {
    Element r = zero(a.degree);
    for (const auto& [g, v] : a.values) add_value(r, g, s, v);
    return r;
  }
  bool is_zero(const Element& f) const {
    for (const auto& kv : f.values)
      if (!T_->is_zero(kv.second)) return false;
    return true;
  }
  bool equal(const Element& a, const Element& b) const { return is_zero(add(a, b, -1)); }

  // Largest m with f vanishing on all generators with at most m inputs (of
  // the given color); a large sentinel for zero.
  int filtration_level(const Element& f, const Color* color = nullptr) const {
    int lvl = 1 << 20;
    for (const auto& [g, v] : f.values)
      if (!T_->is_zero(v)) lvl = std::min(lvl, color_inputs(g, color) - 1);
    return lvl;
  }
  int min_arity(const Element& f) const {
    int a = 1 << 20;
    for (const auto& [g, v] : f.values)
      if (!T_->is_zero(v)) a = std::min(a, g.arity);
    return a;
  }

  // f(act(p) x) = relabel(f(x), p^{-1}) on adjacent transpositions.
  bool is_equivariant(const Element& f) const {
    for (const Gen& g : domain())
      for (int i = 0; i + 1 < g.arity; ++i) {
        Perm t = adjacent_transposition(g.arity, i);
        Elem d = zero_value(g);
        for (const auto& [h, c] : C_->act(t, g.idx))
          if (const Elem* v = value(f, Gen{g.kind, g.arity, h})) T_->axpy(d, c, *v);
        if (const Elem* v = value(f, g)) T_->axpy(d, -1, T_->relabel(*v, inverse(t)));
        if (!T_->is_zero(d)) return false;
      }
    return true;
  }

  // Reynolds average making f equivariant.
  Element symmetrize(const Element& f) const {
    Element r = zero(f.degree);
    for (const Gen& g : domain()) {
      if (g.arity == 1) {
        if (const Elem* v = value(f, g)) add_value(r, g, 1, *v);
        continue;
      }
      const auto perms = all_perms(g.arity);
      const Scalar w(1, static_cast<long>(perms.size()));
      for (const auto& p : perms) {
        Elem acc = zero_value(g);
        for (const auto& [h, c] : C_->act(p, g.idx))
          if (const Elem* v = value(f, Gen{g.kind, g.arity, h})) T_->axpy(acc, c, *v);
        add_value(r, g, w, T_->relabel(acc, p));
      }
    }
    return r;
  }

  // Random equivariant element of the given degree supported on arities in
  // [min_arity, max_arity], with at most `terms` basis terms per generator.
  Element random_element(std::mt19937_64& rng, int degree, int min_arity = 1, int max_arity = 1 << 20,
                         int terms = 2, int spread = 2) const {
    Element f = zero(degree);
    std::uniform_int_distribution<int> coef(-spread, spread);
    for (const Gen& g : domain()) {
      if (g.arity < min_arity || g.arity > max_arity) continue;
      auto basis = T_->component_basis(g.arity, gen_output(g), gen_inputs(g), gen_degree(g) + degree);
      if (basis.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
      for (int k = 0; k < terms; ++k) add_value(f, g, coef(rng), basis[pick(rng)]);
    }
    return symmetrize(f);
  }

  std::string str(const Element& f) const {
    std::string s;
    for (const auto& [g, v] : f.values)
      s += std::string(1, kind_char(g.kind)) + ":" +
           (g.trivial() ? std::string("1") : C_->label(g.arity, g.idx)) + " -> " + T_->str(v) + "\n";
    return s.empty() ? "0\n" : s;
  }

 protected:
  const Cooperad* C_;
  const T* T_;
};

// The convolution dg Lie algebra Conv(C_o, O) for a single-colored target:
// elements send x in C(n) (unsuspended) to O(n).
template <class T>
class LieConvolution : public ConvBase<T> {
 public:
  using Base = ConvBase<T>;
  using typename Base::Elem;
  using typename Base::Element;

  LieConvolution(const Cooperad& C, const T& target) : Base(C, target) {}

  std::vector<Gen> domain() const override {
    std::vector<Gen> out;
    for (int n = 2; n <= this->C_->cap(); ++n)
      for (int g = 0; g < this->C_->dim(n); ++g) out.push_back(Gen{Kind::Alpha, n, g});
    return out;
  }
  int gen_degree(const Gen& g) const override { return this->C_->degree(g.arity, g.idx); }
  Color gen_output(const Gen&) const override { return Color::Alpha; }
  std::vector<Color> gen_inputs(const Gen& g) const override { return std::vector<Color>(g.arity, Color::Alpha); }

  // (f . g)(x) = sum over splits of (-1)^{|g||x1|} mu(f(x1), g(x2)).
  Element pre_lie(const Element& f, const Element& g) const {
    Element r = this->zero(f.degree + g.degree);
    const Cooperad& C = *this->C_;
    for (const Gen& x : domain()) {
      const int n = x.arity;
      Elem acc = this->zero_value(x);
      for (const auto& S : subsets(n, 2, n - 1)) {
        const int lo_arity = n - static_cast<int>(S.size()) + 1;
        for (const auto& t : C.split(n, x.idx, S)) {
          const Elem* a = this->value(f, Gen{Kind::Alpha, lo_arity, t.lower});
          const Elem* b = this->value(g, Gen{Kind::Alpha, static_cast<int>(S.size()), t.upper});
          if (!a || !b) continue;
          Scalar c = t.coeff;
          if ((g.degree & 1) && (C.degree(lo_arity, t.lower) & 1)) c = -c;
          this->T_->axpy(acc, c, this->T_->compose_tree(split_tree(n, S), {a, b}));
        }
      }
      this->add_value(r, x, 1, acc);
    }
    return r;
  }

  Element bracket(const Element& f, const Element& g) const {
    Element r = pre_lie(f, g);
    const bool odd = (f.degree & 1) && (g.degree & 1);
    return this->add(r, pre_lie(g, f), odd ? Scalar(1) : Scalar(-1));
  }

  // d f = d_O f - (-1)^{|f|} f delta_C.
  Element diff(const Element& f) const {
    Element r = this->zero(f.degree + 1);
    const Cooperad& C = *this->C_;
    for (const Gen& x : domain()) {
      Elem acc = this->zero_value(x);
      if (const Elem* v = this->value(f, x)) this->T_->axpy(acc, 1, this->T_->diff(*v));
      for (const auto& [h, c] : C.differential(x.arity, x.idx))
        if (const Elem* v = this->value(f, Gen{Kind::Alpha, x.arity, h}))
          this->T_->axpy(acc, (f.degree & 1) ? c : Scalar(-c), *v);
      this->add_value(r, x, 1, acc);
    }
    return r;
  }

  // d(alpha) + 1/2 [alpha, alpha].
  Element mc_curvature(const Element& a) const { return this->add(diff(a), bracket(a, a), Scalar(1, 2)); }

  static Tree split_tree(int n, const std::vector<int>& S) {
    std::vector<Tree> kids;
    std::vector<Tree> up;
    for (int s : S) up.push_back(bare_leaf(s + 1));
    for (int l = 0; l < n; ++l) {
      if (l == S.front())
        kids.push_back(join(Kind::Alpha, 0, up));
      else if (!std::binary_search(S.begin(), S.end(), l))
        kids.push_back(bare_leaf(l + 1));
    }
    return join(Kind::Alpha, 0, kids);
  }
};

// The colored convolution algebra Hom(C~, O~) with the shifted L-infinity
// (Lambda^{-1} Lie-infinity) structure: graded-symmetric brackets l_m of
// degree +1 built from the m-vertex part of the Cyl(C) differential. Degrees
// are |f(g)| - |g| with |s x| = |x| + 1, so Maurer-Cartan elements have
// degree 0 and correspond to operad maps Cyl(C) -> O~.
template <class T>
class ColoredConvolution : public ConvBase<T> {
 public:
  using Base = ConvBase<T>;
  using typename Base::Elem;
  using typename Base::Element;

  // Global sign of the brackets of arity >= 2.
  static constexpr int kBracketSign = -1;

  ColoredConvolution(const CylContext& ctx, const T& target) : Base(ctx.cooperad(), target), ctx_(&ctx) {
    for (const Gen& g : domain()) {
      if (g.trivial()) continue;
      for (const auto& [t, c] : ctx.gen_diff(g).terms) {
        const int m = t.num_vertices();
        parts_[g][m].emplace_back(t, c);
        max_vertices_ = std::max(max_vertices_, m);
      }
    }
  }

  std::vector<Gen> domain() const override {
    std::vector<Gen> out{Gen{Kind::Mixed, 1, 0}};
    for (const Gen& g : ctx_->generators(Flavor::Cyl)) out.push_back(g);
    return out;
  }
  int gen_degree(const Gen& g) const override { return ctx_->gen_degree(g); }
  Color gen_output(const Gen& g) const override { return output_color(g.kind); }
  std::vector<Color> gen_inputs(const Gen& g) const override { return input_profile(g.kind, g.arity); }
  int max_bracket_arity() const { return max_vertices_; }
  const CylContext& context() const { return *ctx_; }

  // l_1 f = d_O f - (-1)^{|f|} f delta_lin.
  Element l1(const Element& f) const {
    Element r = this->zero(f.degree + 1);
    for (const Gen& g : domain()) {
      Elem acc = this->zero_value(g);
      if (const Elem* v = this->value(f, g)) this->T_->axpy(acc, 1, this->T_->diff(*v));
      const Scalar s = (f.degree & 1) ? Scalar(1) : Scalar(-1);
      for (const auto& [t, c] : part(g, 1)) accumulate(acc, t, s * c, {&f});
      this->add_value(r, g, 1, acc);
    }
    return r;
  }

  // l_m(f_1, ..., f_m) for m >= 1.
  Element bracket(const std::vector<const Element*>& fs) const {
    const int m = static_cast<int>(fs.size());
    if (m == 0) throw InvalidInput("brackets need at least one argument");
    if (m == 1) return l1(*fs[0]);
    int deg = 1;
    for (const auto* f : fs) deg += f->degree;
    Element r = this->zero(deg);
    if (m > max_vertices_) return r;
    std::vector<int> degs(m);
    int total = 0;
    for (int i = 0; i < m; ++i) total += degs[i] = fs[i]->degree;
    // D passes the arguments.
    const int base = (total & 1) ? -kBracketSign : kBracketSign;
    for (const Gen& g : domain()) {
      const auto& terms = part(g, m);
      if (terms.empty()) continue;
      Elem acc = this->zero_value(g);
      for (const auto& sigma : all_perms(m)) {
        Scalar eps = koszul_parity(sigma, degs) ? Scalar(-base) : Scalar(base);
        std::vector<const Element*> ordered(m);
        for (int i = 0; i < m; ++i) ordered[i] = fs[sigma[i]];
        for (const auto& [t, c] : terms) accumulate(acc, t, eps * c, ordered);
      }
      this->add_value(r, g, 1, acc);
    }
    return r;
  }

  Element bracket(std::initializer_list<const Element*> fs) const {
    return bracket(std::vector<const Element*>(fs));
  }

  // sum_{m >= 1} 1/m! l_m(a, ..., a).
  Element mc_curvature(const Element& a) const { return twisted_curvature(this->zero(0), a); }

  // Curvature of b in the algebra twisted by a:
  // sum_{m >= 1} sum_{r >= 0} 1/(r! m!) l_{r+m}(a^r, b^m).
  Element twisted_curvature(const Element& a, const Element& b) const {
    Element r = this->zero(b.degree + 1);
    for (int m = 1; m <= std::max(1, max_vertices_); ++m)
      for (int k = 0; k + m <= std::max(1, max_vertices_); ++k) {
        std::vector<const Element*> args;
        for (int i = 0; i < k; ++i) args.push_back(&a);
        for (int i = 0; i < m; ++i) args.push_back(&b);
        r = this->add(r, bracket(args), Scalar(1, static_cast<long>(factorial(k) * factorial(m))));
      }
    return r;
  }

  // l^a_m(v_1, ..., v_m) = sum_r 1/r! l_{r+m}(a^r, v_1, ..., v_m).
  Element twisted_bracket(const Element& a, const std::vector<const Element*>& vs) const {
    int deg = 1;
    for (const auto* v : vs) deg += v->degree;
    Element r = this->zero(deg);
    for (int k = 0; k + static_cast<int>(vs.size()) <= std::max(1, max_vertices_); ++k) {
      std::vector<const Element*> args;
      for (int i = 0; i < k; ++i) args.push_back(&a);
      args.insert(args.end(), vs.begin(), vs.end());
      r = this->add(r, bracket(args), Scalar(1, static_cast<long>(factorial(k))));
    }
    return r;
  }

  // Maurer-Cartan check: degree 0 and vanishing curvature; failing
  // generators are named with their arity.
  Report mc_check(const Element& a) const {
    Report rep;
    if (!this->is_zero(a)) rep.check(a.degree == 0, "Maurer-Cartan elements have degree 0");
    if (!rep.ok) return rep;
    Element c = mc_curvature(a);
    for (const Gen& g : domain()) {
      const Elem* v = this->value(c, g);
      rep.check(!v || this->T_->is_zero(*v), "Maurer-Cartan equation fails at arity " + std::to_string(g.arity) +
                                                 " on " + gen_name(g));
    }
    return rep;
  }

  // Operad map Cyl(C) -> O~ with the element's generator values.
  Elem evaluate(const Element& F, const OperadElement& e) const {
    Elem r = this->T_->zero(e.arity, e.out, e.in);
    for (const auto& [t, c] : e.terms) accumulate(r, t, c, {&F}, true);
    return r;
  }
  // F(d g) = d F(g) on every generator.
  Report chain_map_check(const Element& F) const {
    Report rep;
    for (const Gen& g : domain()) {
      if (g.trivial()) {
        const Elem* v = this->value(F, g);
        rep.check(!v || this->T_->is_zero(this->T_->diff(*v)), "map is not a chain map on the trivial generator");
        continue;
      }
      Elem lhs = evaluate(F, ctx_->gen_diff(g));
      Elem rhs = this->zero_value(g);
      if (const Elem* v = this->value(F, g)) rhs = this->T_->diff(*v);
      rep.check(this->T_->equal(lhs, rhs), "map is not a chain map at arity " + std::to_string(g.arity) + " on " +
                                               gen_name(g));
    }
    return rep;
  }

  // Both directions of the MC <-> operad map correspondence are the
  // identity on generator values; the checks are what is contractual.
  Element operad_map_to_mc(const Element& F) const {
    Report r = chain_map_check(F);
    if (!r.ok) throw InvalidInput(r.failures.front());
    return F;
  }
  Element mc_to_operad_map(const Element& a) const {
    Report r = mc_check(a);
    if (!r.ok) throw InvalidInput(r.failures.front());
    return a;
  }

  // Shifted L-infinity identity on the given arguments (all bracket arities
  // up to fs.size()); returns the sum, which must vanish.
  Element identity_defect(const std::vector<const Element*>& fs) const {
    const int n = static_cast<int>(fs.size());
    std::vector<int> degs(n);
    int deg = 2;
    for (int i = 0; i < n; ++i) {
      degs[i] = fs[i]->degree;
      deg += degs[i];
    }
    Element r = this->zero(deg);
    for (int j = 1; j <= n; ++j)
      for (const auto& sigma : unshuffles(n, j)) {
        std::vector<const Element*> inner, outer;
        for (int i = 0; i < j; ++i) inner.push_back(fs[sigma[i]]);
        Element in = bracket(inner);
        outer.push_back(&in);
        for (int i = j; i < n; ++i) outer.push_back(fs[sigma[i]]);
        const Scalar eps = koszul_parity(sigma, degs) ? Scalar(-1) : Scalar(1);
        r = this->add(r, bracket(outer), eps);
      }
    return r;
  }

  // Gauge action by lambda (degree -1): the time-1 flow of
  // da/dt = sum_m 1/m! l_{m+1}(a^m, lambda), computed as an exact power series.
  Element gauge_act(const Element& lambda, const Element& a) const {
    if (!this->is_zero(lambda)) {
      if (lambda.degree != -1) throw InvalidInput("gauge parameters have degree -1");
      if (this->filtration_level(lambda) < 1) throw InvalidInput("gauge parameters must vanish in arity 1");
    }
    std::vector<Element> coeffs{a};
    Element result = a;
    const int K = this->C_->cap() + 1;
    for (int k = 0; k < K; ++k) {
      // coefficient of t^k in sum_m 1/m! l_{m+1}(a(t)^m, lambda)
      Element rhs = this->zero(0);
      for (int m = 0; m + 1 <= std::max(1, max_vertices_); ++m) {
        std::vector<int> parts(m, 0);
        std::function<void(int, int)> go = [&](int i, int left) {
          if (i == m) {
            if (left != 0) return;
            std::vector<const Element*> args;
            for (int p : parts) args.push_back(&coeffs[p]);
            args.push_back(&lambda);
            rhs = this->add(rhs, bracket(args), Scalar(1, static_cast<long>(factorial(m))));
            return;
          }
          for (int p = 0; p <= left; ++p) {
            parts[i] = p;
            go(i + 1, left - p);
          }
        };
        go(0, k);
      }
      Element next = this->scale(rhs, Scalar(1, k + 1));
      next.degree = 0;
      coeffs.push_back(next);
      result = this->add(result, next);
    }
    if (!this->is_zero(coeffs.back())) throw std::logic_error("gauge series does not terminate within the cap");
    return result;
  }

  std::string gen_name(const Gen& g) const {
    if (g.trivial()) return "1^ab";
    std::string l = this->C_->label(g.arity, g.idx);
    switch (g.kind) {
      case Kind::Alpha: return "s" + l + "^a";
      case Kind::Beta: return "s" + l + "^b";
      default: return l + "^ab";
    }
  }

  // The unshifted L-infinity view: degrees +1 and brackets multiplied by
  // (-1)^{sum_i (m-i)|f_i|} (shifted degrees); for m = 2 on single-color
  // elements this is the convolution Lie bracket.
  Element linf_bracket(const std::vector<const Element*>& fs) const {
    int e = 0;
    const int m = static_cast<int>(fs.size());
    for (int i = 0; i < m; ++i) e += (m - 1 - i) * fs[i]->degree;
    Element r = bracket(fs);
    if (e & 1) r = this->scale(r, -1);
    return r;
  }

 private:
  using TermList = std::vector<std::pair<Tree, Scalar>>;

  const TermList& part(const Gen& g, int m) const {
    static const TermList empty;
    auto it = parts_.find(g);
    if (it == parts_.end()) return empty;
    auto jt = it->second.find(m);
    return jt == it->second.end() ? empty : jt->second;
  }

  // acc += c * mu_t(f_1(v_1), ..., f_m(v_m)) with the Koszul sign of the f's
  // passing earlier vertex decorations. With one function given, it is used
  // at every vertex (as an operad map, no signs).
  void accumulate(Elem& acc, const Tree& t, const Scalar& c, const std::vector<const Element*>& fs,
                  bool as_map = false) const {
    const int V = t.num_vertices();
    if (t.bare()) throw InvalidInput("cannot evaluate the unit");
    std::vector<const Elem*> vals(V, nullptr);
    int parity = 0, before = 0;
    for (int u = 0; u < V; ++u) {
      const Element* f = (as_map || fs.size() == 1) ? fs[0] : fs[u];
      const Gen g = gen_of(t.vertices[u]);
      vals[u] = this->value(*f, g);
      if (!vals[u]) return;
      if (!as_map) parity += f->degree * before;
      before += ctx_->gen_degree(g);
    }
    this->T_->axpy(acc, (parity & 1) ? Scalar(-c) : c, this->T_->compose_tree(t, vals));
  }

  const CylContext* ctx_;
  std::map<Gen, std::map<int, TermList>> parts_;
  int max_vertices_ = 1;
};

}  // namespace cylop
