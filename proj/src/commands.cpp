#include "cylop/commands.hpp"

#include <random>
#include <sstream>

namespace cylop {

namespace {

void report_text(std::ostringstream& s, const std::string& name, const Report& r) {
  s << name << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.checks << " checks)\n";
  for (const auto& f : r.failures) s << "  " << f << "\n";
}

Derivation load_or_draw(const CylContext& ctx, const std::optional<Json>& j, std::uint64_t seed) {
  if (j) return derivation_from_json(ctx, *j);
  std::mt19937_64 rng(seed);
  auto basis = derivation_space(ctx, Flavor::Cobar, 0, 1, true);
  return random_combination(basis, rng, Flavor::Cobar, 0);
}

template <class Conv>
Report curvature_report(const Conv& conv, const typename Conv::Element& a, int expected_degree) {
  Report rep;
  if (!conv.is_zero(a))
    rep.check(a.degree == expected_degree,
              "Maurer-Cartan elements have degree " + std::to_string(expected_degree));
  if (!rep.ok) return rep;
  auto c = conv.mc_curvature(a);
  for (const Gen& g : conv.domain()) {
    const auto* v = conv.value(c, g);
    rep.check(!v || conv.target().is_zero(*v), "Maurer-Cartan equation fails at arity " + std::to_string(g.arity) +
                                                   " on generator " + conv.cooperad().label(g.arity, g.idx));
  }
  return rep;
}

template <class T>
Report mc_report(const CylContext& ctx, const T& target, Flavor f, int degree,
                 const std::map<Gen, typename T::Elem>& values) {
  ConvElement<T> a;
  a.degree = degree;
  a.values = values;
  if (f == Flavor::Cobar) return curvature_report(LieConvolution<T>(ctx.cooperad(), target), a, 1);
  return ColoredConvolution<T>(ctx, target).mc_check(a);
}

}  // namespace

Cooperad load_truncated(const std::string& spec, int cap) {
  Cooperad C = load_cooperad(spec);
  return cap < 0 ? C : truncate_cooperad(C, cap);
}

CommandResult run_validate(const Cooperad& C) {
  CommandResult out;
  std::ostringstream s;
  Json reports = Json::array();
  auto add = [&](const std::string& name, const Report& r) {
    reports.push_back({{"name", name}, {"report", report_to_json(r)}});
    report_text(s, name, r);
    out.ok = out.ok && r.ok;
  };
  Report v = validate(C);
  add("cooperad axioms", v);
  if (v.ok) {
    CylContext ctx(C);
    for (int n = 2; n <= C.cap(); ++n)
      add("d^2 = 0 in arity " + std::to_string(n) + " (cobar and cyl, full and weight 0)",
          d_squared_basis_check(ctx, n));
  }
  out.json = {{"command", "validate"}, {"cooperad", C.name()}, {"arity_cap", C.cap()}, {"ok", out.ok},
              {"reports", reports}};
  out.text = s.str();
  return out;
}

CommandResult run_cohomology(const Cooperad& C, int n, bool weight0) {
  if (n < 2 || n > C.cap())
    throw InvalidInput("arity " + std::to_string(n) + " outside [2, " + std::to_string(C.cap()) + "]");
  CylContext ctx(C);
  CommandResult out;
  std::ostringstream s;
  Json tables = Json::array();
  for (Which w : {Which::Cobar, Which::CylBeta}) {
    ComplexSlice slice = assemble(ctx, n, w, weight0);
    tables.push_back(ranks_to_json(slice));
    for (const auto& [deg, r] : ranks(slice))
      s << (w == Which::Cobar ? "cobar" : "cyl") << " arity " << n << " degree " << deg << " rank " << r << "\n";
  }
  out.json = {{"command", "cohomology"}, {"cooperad", C.name()}, {"arity", n}, {"weight0", weight0},
              {"tables", tables}};
  out.text = s.str();
  return out;
}

CommandResult run_lift(const Cooperad& C, const std::optional<Json>& derivation, std::uint64_t seed) {
  CylContext ctx(C);
  Derivation D = load_or_draw(ctx, derivation, seed);
  LiftResult r = lift_derivation(ctx, D);
  Report check = check_lift(ctx, D, r);
  CommandResult out;
  out.ok = check.ok;
  out.json = {{"command", "lift"},
              {"input", derivation_to_json(ctx, D)},
              {"lifted", derivation_to_json(ctx, r.lifted)},
              {"t_alpha", derivation_to_json(ctx, r.t_alpha)},
              {"t_beta", derivation_to_json(ctx, r.t_beta)},
              {"joint_fallback", r.joint_fallback},
              {"notes", r.notes},
              {"report", report_to_json(check)}};
  std::ostringstream s;
  s << "input D:\n" << str(D, C) << "lifted D~:\n" << str(r.lifted, C) << "T_alpha:\n" << str(r.t_alpha, C)
    << "T_beta:\n" << str(r.t_beta, C);
  report_text(s, "lift postconditions", check);
  out.text = s.str();
  return out;
}

CommandResult run_transport(const Cooperad& C, const Json& triple, const std::optional<Json>& derivation,
                            std::uint64_t seed) {
  CylContext ctx(C);
  AlgebraStructure F = structure_from_json(ctx, triple);
  if (F.flavor != Flavor::Cyl) throw InvalidInput("a triple is given as a cyl structure");
  Derivation D = load_or_draw(ctx, derivation, seed);
  TransportCertificate cert = transport_pipeline(ctx, split_cyl_algebra(F), D);
  CommandResult out;
  out.ok = cert.green();
  out.json = {{"command", "transport"}, {"derivation", derivation_to_json(ctx, D)},
              {"certificate", certificate_to_json(ctx, cert)}};
  std::ostringstream s;
  for (const auto& c : cert.checks) report_text(s, c.name, c.report);
  s << "certificate: " << (cert.green() ? "green" : "FAILED") << "\n";
  out.text = s.str();
  return out;
}

CommandResult run_mc_check(const Cooperad& C, const Json& element) {
  CylContext ctx(C);
  ConvInput in = conv_from_json(ctx, element);
  Report rep = in.end_target ? mc_report(ctx, EndTarget(in.V, in.W), in.flavor, in.degree, in.end_values)
                             : mc_report(ctx, FreeTarget(ctx), in.flavor, in.degree, in.free_values);
  CommandResult out;
  out.ok = rep.ok;
  out.json = {{"command", "mc-check"}, {"report", report_to_json(rep)}};
  std::ostringstream s;
  s << "Maurer-Cartan: " << (rep.ok ? "ok" : "FAILED") << " (" << rep.checks << " checks)\n";
  for (const auto& f : rep.failures) s << "  " << f << "\n";
  out.text = s.str();
  return out;
}

}  // namespace cylop
