#pragma once

#include <string>
#include <vector>

#include "renormlab/map.hpp"
#include "renormlab/scaling_data.hpp"

namespace rlab {

/// Tower I0[k], I1[k], x[k], y[k] for k <= depth. Throws ImproperScalingData.
IntervalTower interval_tower(const ScalingData& sigma, int depth);

struct CriticalPointEstimate {
    ext c = 0;
    double error = 0;  // |I0[N]|
    int level = 0;     // N
};

/// Midpoint of the first I0[N] shorter than tol.
CriticalPointEstimate critical_point(const ScalingData& sigma, double tol);

/// f_sigma on the union of I1^n, n <= depth.
UnimodalMap build_piecewise_map(const ScalingData& sigma, int depth,
                                BranchRule rule = BranchRule::Interpolate);

ScalingData shift_scaling(const ScalingData& sigma, int n);

struct InfRenormVerdict {
    bool ok = true;
    int levels_checked = 0;
    int failed_level = 0;          // 0 when ok
    std::string reason;            // empty when ok
    std::vector<Interval> witness; // orbit segment of the failing level
};

/// Traces [f(x_{n-1}), 1] through 2^n - 1 affine branches for n <= depth.
InfRenormVerdict check_inf_renorm(const ScalingData& sigma, int depth);

/// The conjugacies of one renormalization step of a piecewise-affine map:
/// R f = hhat^{-1} o f o h on the shared domain.
struct PiecewiseConjugacy {
    Affine h;
    Affine hhat;
};

PiecewiseConjugacy piecewise_conjugacy(const UnimodalMap& f_sigma);

/// f_{s(sigma)} with depth reduced by one.
UnimodalMap renormalize_piecewise(const UnimodalMap& f_sigma);

} // namespace rlab
