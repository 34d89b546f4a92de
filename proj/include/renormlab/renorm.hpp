#pragma once

#include <string>
#include <vector>

#include "renormlab/map.hpp"

namespace rlab {

/// One period-doubling step: I01 = [f^2 c, f^4 c], I11 = [f^3 c, f c],
/// h orientation reversing onto I01, c' = h^{-1}(c).
struct RenormStep {
    Interval I01;
    Interval I11;
    Affine h;
    ext c_next = 0;
    ext f4c = 0;
};

struct RenormCheck {
    bool ok = false;
    std::string failed;  // "c_in_I01", "image_is_I11" or "disjoint"; empty when ok
    RenormStep step;
};

/// Tests the three conditions on the critical orbit; touching intervals fail.
RenormCheck check_renormalizable(const UnimodalMap& f);

/// Rf as a flattened RenormalizedView. Throws NotRenormalizable.
UnimodalMap renormalize(const UnimodalMap& f);

/// R^n f; the failing level is named in the error message.
UnimodalMap renormalize_n(const UnimodalMap& f, int n, Precision precision = Precision::Extended);

struct FeigenbaumResult {
    double c_F = 0;
    ext c_F_precise = 0;              // extended-precision value used by the reference
    std::vector<double> superstable;  // s_k, period 2^(k+1); s_0 = 0 is the degenerate boundary root
    std::vector<double> gaps;         // s_k - s_{k-1}, k >= 1
    std::vector<double> delta;        // gaps[k-1] / gaps[k]
};

/// Superstable cascade of q_c up to level cap (<= 14) and its accumulation point.
FeigenbaumResult feigenbaum_parameter(double tol, int cap = 13);

struct ReferenceMap {
    UnimodalMap map;     // composite phi o q_{c_D}
    DiffeoPiece phi;     // Chebyshev fit of phi on [0,1]
    int depth = 0;
    double c = 0;
    double c_F = 0;        // quad-precision accumulation point, rounded
    double fit_error = 0;  // max |phi_fit - phi| at the midpoints of the fit nodes
};

/// R^depth q_{c_F} resampled as phi o q_c with a Chebyshev phi; the orbit
/// arithmetic behind the samples runs in quad precision. Cached per depth.
const ReferenceMap& reference_fixed_point(int depth);

/// Default reference depth.
inline constexpr int kReferenceDepth = 12;

struct TrajectoryRow {
    int n = 0;
    double dist0 = 0;
    double dist1 = 0;
    Interval I01;
    double c_n = 0;
    int covered = 0;
};

struct RenormDiagnostics {
    std::vector<TrajectoryRow> rows;
    int grid = 0;
    int reference_depth = 0;
    bool monotone = true;      // dist0 strictly decreasing
    double rate = 0;           // geometric mean of dist0 ratios
};

/// d_n = dist(R^n f, reference) for n = 0..N.
RenormDiagnostics renorm_trajectory(const UnimodalMap& f, int N, int grid,
                                    const UnimodalMap& reference, int reference_depth = 0,
                                    Precision precision = Precision::Extended);

} // namespace rlab
