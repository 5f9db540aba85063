#pragma once

#include <cstdint>
#include <iosfwd>

namespace bfgslab {

/// Property suite for the smoothing constructions at one delta: branch
/// agreement of value and both derivatives at |t| = delta, finite-difference
/// gradient checks, sampled midpoint convexity, exact agreement with the
/// unsmoothed functions outside the band, and a finite-difference Hessian
/// positive-semidefiniteness spot check. Prints one line per check to `os`
/// and returns true iff all pass.
bool smooth_check(double delta, int samples, std::uint64_t seed, std::ostream& os);

}  // namespace bfgslab
