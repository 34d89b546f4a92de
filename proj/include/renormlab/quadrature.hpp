#pragma once

#include <functional>
#include <vector>

#include "renormlab/numeric.hpp"

namespace rlab {

struct QuadResult {
    ext value = 0;
    ext error = 0;  // summed Kronrod error estimates
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7, 15) on [a, b]; the integrand is never
/// evaluated at the endpoints. Subdivides until the local estimate is below
/// max(abs_tol, rel_tol |I|, roundoff of int |f|, noise (b - a)) or the depth
/// cap is hit. `noise` is the absolute evaluation noise of f.
QuadResult integrate(const std::function<ext(ext)>& f, ext a, ext b, ext abs_tol = 1e-17L,
                     ext rel_tol = 1e-15L, int max_depth = 48, ext noise = 0);

/// One (7, 15) panel; error is |K15 - G7|.
QuadResult gauss_kronrod(const std::function<ext(ext)>& f, ext a, ext b);

struct QuadLeaf {
    ext a = 0, b = 0;
    ext value = 0;
};

/// Leaves of the adaptive subdivision used by integrate, left to right.
std::vector<QuadLeaf> adaptive_leaves(const std::function<ext(ext)>& f, ext a, ext b, ext abs_tol = 1e-17L,
                                      ext rel_tol = 1e-15L, int max_depth = 48, ext noise = 0);

} // namespace rlab
