#pragma once

#include <vector>

#include "renormlab/fixedpoint.hpp"
#include "renormlab/map.hpp"
#include "renormlab/scaling_data.hpp"

namespace rlab {

/// Finite prefix of a one-sided sequence over {0, 1}.
using SymbolWord = std::vector<int>;

struct EpsRenorm {
    double sigma0 = 0;
    double sigma1 = 0;
    double Rce = 0;
};

/// sigma1 = 1 - q_c(0), sigma0 = eps q_c^2(0), R(c, eps) = 1 - c / (eps q_c^2(0)).
EpsRenorm eps_renorm_map(double c, double eps);

/// Two expanding branches R_i = R(., eps_i) on [c0*, c1*].
struct HorseshoeSpec {
    double eps0 = 1;
    double eps1 = 1;
    double c0_star = 0;
    double c1_star = 0;
    Interval A0;        // [c0*, a0], R0(a0) = c1*
    Interval A1;        // [a1, c1*], R1(a1) = c0*
    double lambda = 0;  // min dR/dc over both branch domains
    double dRdc0 = 0;   // dR/dc(c0*, eps0)
    double margin = 0;  // smallest triangle-boundary distance of sigma over [c0*, c1*]
};

/// Solves both fixed points to tol and the branch domains. Throws NotExpanding,
/// ImproperScalingData, Domain.
HorseshoeSpec branch_fixed_points(double eps0, double eps1, double tol);

/// Smallest admissible triangle-boundary distance of the induced scaling data.
inline constexpr double kProperMargin = 1e-2;

struct CodedPoint {
    double c = 0;
    ext c_precise = 0;
    double error_bound = 0;  // lambda^{-|w|} |c1* - c0*|
    double residual = 0;     // |R(c(w), eps_{w0}) - c(tau w)|, quad arithmetic
};

/// c(w) by backward iteration of the inverse branches from the tail fixed point
/// c_tail* (tail symbol 0 or 1, repeated forever). accuracy > 0 requests a
/// bound; WordTooShort is thrown when the length cannot deliver it.
CodedPoint code_point(const HorseshoeSpec& spec, const SymbolWord& w, double accuracy = 0, int tail = 0);

/// c(tau^n w) for n = 0..|w|, zero tail; the last entry is c0*.
std::vector<ext> code_orbit(const HorseshoeSpec& spec, const SymbolWord& w);

/// sigma(n) = sigma(c(tau^{n-1} w), eps_{w_{n-1}}), n >= 1; the eps0 fixed point past the word.
ScalingData chaotic_scaling_data(const HorseshoeSpec& spec, const SymbolWord& w);

struct ChaoticMap {
    ExtensionResult extension;
    ScalingData sigma;
    std::vector<double> c_n;        // critical points of R^n g, n = 0..depth-1
    std::vector<double> coded;      // c(tau^n w)
    std::vector<double> renorm_check;  // |c(R^n g) - c_n| by direct renormalization, small n
    std::vector<double> ratio;      // |hat I0^n| / |I0^n|^2, n = 1..depth
    double K = 0;                   // max(ratio, 1/ratio)
    double K0 = 0;                  // max Lip_n |I0^n|^2 / |hat I0^n|
    double theta_fraction = 0;
};

/// g_w from the chaotic scaling data with gap pieces from the monotone
/// interpolant family; theta_fraction in [-1, 1] picks the shape inside the
/// admissible range of each level.
ChaoticMap chaotic_map(const HorseshoeSpec& spec, const SymbolWord& w, int depth, double theta_fraction = 0);

/// All binary words of lengths 1..m concatenated in lexicographic order, m
/// minimal with total length >= depth.
SymbolWord dense_word(int depth);

/// Total length of dense_word for cylinder depth m.
int dense_word_length(int m);

struct DensityReport {
    int m = 0;
    int orbit_length = 0;
    double max_distance = 0;  // max over codes v of min_n |c_n - mid(v)|
    double min_diameter = 0;  // smallest cylinder diameter
    double max_diameter = 0;
    bool dense = false;
};

/// Density of {c(tau^n w)} for w = dense_word of cylinder depth m.
DensityReport density_check(const HorseshoeSpec& spec, int m);

} // namespace rlab
