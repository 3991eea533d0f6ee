#pragma once

#include <map>
#include <string>
#include <string_view>

#include "mcmdeg/poly_matrix.hpp"
#include "mcmdeg/polynomial.hpp"

namespace mcmdeg {

/// Integer bindings for template parameters such as `n` in `y^(n+1)`.
using ParamBindings = std::map<std::string, long, std::less<>>;

/// Parses `x^2*y - 3/2*z + (1 + 2*i)*u^(n+1)`. `i` is the imaginary unit unless it is a
/// variable; identifiers bound in `params` act as integer constants (also inside exponents).
Polynomial parse_polynomial(std::string_view text, const Variables& vars, const ParamBindings& params = {});

/// Parses a nested bracket list `[[x, y^n], [0, -x]]`.
PolyMatrix parse_matrix(std::string_view text, const Variables& vars, const ParamBindings& params = {});

/// Evaluates an integer expression over parameters, e.g. `n+2`.
long parse_int_expr(std::string_view text, const ParamBindings& params = {});

}  // namespace mcmdeg
