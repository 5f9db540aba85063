#pragma once

#include <string>
#include <vector>

#include "bfgslab/types.hpp"

namespace bfgslab {

/// Comma-separated list of reals, e.g. "1,0.4".
std::vector<double> parse_number_list(const std::string& text);

/// Matrix spec grammar: `identity` | `diag:a,b,...` | `full:a11,a12,...` with
/// the row-major upper triangle a11,a12,...,a1n,a22,... . `identity` takes
/// its size from `dim`; the other forms carry their own size, checked against
/// `dim` when dim > 0. The result is validated finite and exactly symmetric.
Matrix parse_matrix_spec(const std::string& spec, Index dim = 0);

}  // namespace bfgslab
