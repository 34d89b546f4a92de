#pragma once

#include <vector>

#include "renormlab/map.hpp"
#include "renormlab/piece.hpp"
#include "renormlab/scaling_data.hpp"

namespace rlab {

struct ScalingFactors {
    double A0 = 0;
    double A1 = 0;
    double Rc = 0;
};

/// A0(c) = q_c^2(0), A1(c) = 1 - q_c(0), R(c) = 1 - c / A0(c) for c in (0, 1/2).
ScalingFactors scaling_factors(double c);
ext scaling_A0(ext c);
ext scaling_A1(ext c);
ext scaling_R(ext c);

struct FeasibleDomain {
    Interval domain;        // [0, c_max]; c = 0 itself is not admissible
    double residual = 0;    // |A0 + A1 - 1| at c_max
};

/// [0, c_max] with A0(c_max) + A1(c_max) = 1 (first crossing in (0, 1/2)).
FeasibleDomain feasible_domain(double tol);

struct FixedPointCertificate {
    double c_star = 0;
    ScalingBiFactor sigma_star;
    double residual = 0;         // |R(c*) - c*|
    double dRdc = 0;             // central difference, step 1e-6
    double identity_defect = 0;  // |sigma0*^2 - sigma1*|
    Interval domain;
};

/// Bisection for R(c) = c inside the feasible domain.
FixedPointCertificate solve_fixed_point(double tol);

/// Endpoint data of a monotone gap interpolant on [x0, x1].
struct GapData {
    double x0 = 0, x1 = 1;
    double v0 = 0, v1 = 0;  // values
    double d0 = 0, d1 = 0;  // slopes
};

struct GapPiece {
    DiffeoPiece piece;
    double theta = 0;  // common offset of the endpoint second derivatives
    double lip = 0;    // max |p''|, exact
};

/// Cubic Hermite plus (theta / 2) (x - x0)^2 (x1 - x)^2 / |gap|^2: matches
/// (value, slope) at both ends and shifts both endpoint second derivatives by
/// theta. Throws InfeasibleData when the result is not strictly monotone or its
/// derivative Lipschitz constant exceeds lip_budget.
GapPiece gap_interpolant(const GapData& data, double theta, double lip_budget);

/// Range of theta for which gap_interpolant is strictly monotone.
Interval admissible_theta(const GapData& data);

/// Junction data of the level-k gap of a self-similar extension, in the
/// normalized coordinates of level k (uses sigma(k+1..k+3)).
GapData junction_data(const ScalingData& sigma, int k);

struct ExtensionResult {
    UnimodalMap map;
    ScalingBiFactor sigma;
    int depth = 0;
    std::vector<double> lip;  // Lip_n in the original coordinates
    bool lip_nonincreasing = true;
};

/// Self-similar extension of f_{sigma*} with the given gap piece on
/// [x1, y1] = [sigma0*, 1 - sigma1*]. Throws JunctionMismatch.
ExtensionResult build_extension(const DiffeoPiece& gap, int depth);

/// Extension over arbitrary scaling data with one gap piece per level.
ExtensionResult build_extension_levels(const ScalingData& sigma, const std::vector<DiffeoPiece>& gaps,
                                       int depth);

/// f_omega: level-k gap piece is pieces[omega_k] (0 past the end of the word).
ExtensionResult two_symbol_family(const std::vector<DiffeoPiece>& pieces, const std::vector<int>& word,
                                  int depth);

/// The two default gap pieces of the fixed-point extension (theta = 0 and a
/// second admissible shape).
std::vector<DiffeoPiece> default_gap_pieces(int count = 2);

/// Relative slack used when comparing successive Lipschitz constants.
inline constexpr double kLipSlack = 4 * 2.220446049250313e-16;

} // namespace rlab
