#include "mcmdeg/ring.hpp"

#include "mcmdeg/errors.hpp"
#include "mcmdeg/parse.hpp"

namespace mcmdeg {

HypersurfaceRing::HypersurfaceRing(std::string label, Variables vars, Polynomial f)
    : label_(std::move(label)), vars_(std::move(vars)), f_(f.rebase(vars_)) {
  if (vars_.size() == 0) throw UnsupportedRing("ring needs at least one variable");
  if (f_.is_zero()) throw UnsupportedRing("f must be nonzero");
  if (!f_.constant_term().is_zero()) throw UnsupportedRing("f must lie in the maximal ideal");
}

HypersurfaceRing HypersurfaceRing::parse(std::string label, std::vector<std::string> vars, std::string_view f) {
  Variables v(std::move(vars));
  return HypersurfaceRing(std::move(label), v, parse_polynomial(f, v));
}

}  // namespace mcmdeg
