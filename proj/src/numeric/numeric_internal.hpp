#pragma once

#include <vector>

#include "weylsym/numeric.hpp"

namespace weylsym::numeric::detail {

/// Values array with every named parameter set.
Values bind(const ParamValues& params);
std::vector<CompiledExpr> compile_rhs(const models::VectorFieldSystem& system);

}  // namespace weylsym::numeric::detail
