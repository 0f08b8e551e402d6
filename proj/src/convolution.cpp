#include "cylop/convolution.hpp"

namespace cylop {

std::vector<OperadElement> FreeTarget::component_basis(int arity, Color out, const std::vector<Color>& in,
                                                       int degree) const {
  std::vector<OperadElement> result;
  if (in.empty()) return result;
  Kind kind;
  if (out == Color::Alpha && in.front() == Color::Alpha)
    kind = Kind::Alpha;
  else if (out == Color::Beta && in.front() == Color::Beta)
    kind = Kind::Beta;
  else if (out == Color::Beta && in.front() == Color::Alpha)
    kind = Kind::Mixed;
  else
    return result;
  if (arity == 1 && kind != Kind::Mixed) return result;
  const FreeOperad& F = ctx_->free();
  for (const Tree& t : ctx_->target_basis(Gen{kind, arity, 0}))
    if (F.degree(t) == degree) result.push_back(F.element(t));
  return result;
}

int color_inputs(const Gen& g, const Color* color) {
  if (!color) return g.arity;
  return input_color(g.kind) == *color ? g.arity : 0;
}

}  // namespace cylop
