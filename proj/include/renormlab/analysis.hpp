#pragma once

#include <cstdint>
#include <vector>

#include "renormlab/map.hpp"
#include "renormlab/piece.hpp"

namespace rlab {

struct RegularityOptions {
    int grid = 257;
    double window0 = 0;        // first excluded half-width around c; 0 picks min(c, 1-c) / 8
    int refinements = 6;       // window halvings
    double stable_ratio = 0.75;
    double flat_threshold = 1e-8;
    double noise = 0;          // absolute evaluation noise of eps, passed to the quadrature
};

/// Regularity profiles on a grid avoiding c:
/// eps = D^2 f / E - 1, eps_bar = (1/(x-c)) int_c^x eps, delta = eps - eps_bar,
/// beta = int_c^x delta / (t-c), beta_hat = int_c^x |delta| / |t-c|.
struct RegularityProfile {
    std::vector<double> x;
    std::vector<double> eps, eps_bar, delta, beta, beta_hat;
    double E = 0;                 // D^2 f(c)
    double identity_residual = 0; // max |eps - delta - beta|
    double center_defect = 0;     // max |eps|, |eps_bar|, |delta| at the innermost window
    double l1_delta = 0;          // beta_hat at 0 plus beta_hat at 1
    std::vector<double> windows;  // w_k
    std::vector<double> partial;  // int over |t-c| >= w_k of |delta| / |t-c|
    std::vector<double> increments;
    double ratio = 0;             // geometric mean of successive increment ratios
    bool stable = false;          // C^{2+|.|} plausible
};

/// Throws FlatCritical when |D^2 f(c)| is below the threshold.
RegularityProfile regularity_profiles(const UnimodalMap& f, const RegularityOptions& options = {});

/// f = phi_plus o q_c on [c, 1] and phi_minus o q_c on [0, c].
struct PhiDecomposition {
    DiffeoPiece phi_plus;   // on [0, 1]
    DiffeoPiece phi_minus;  // on [q_c(0), 1]
    double c = 0;
    double l1_plus = 0;     // int |eta_{phi_plus}| by the eps/eps_bar substitution
    double l1_minus = 0;
    double direct_plus = 0; // int |phi''/phi'| du, direct quadrature
    double direct_minus = 0;
    bool exact = false;     // taken from a composite representation
    double l1() const { return l1_plus + l1_minus; }
    /// 2 (l1_plus + l1_minus)
    double K() const { return 2 * (l1_plus + l1_minus); }
};

/// prefer_exact uses the outer pieces of a composite map instead of inverting q_c.
PhiDecomposition decompose_phi(const UnimodalMap& f, bool prefer_exact = true);

/// D(T, J) = |J| |T| / (|L| |R|). Throws DegenerateConfiguration.
double cross_ratio(Interval T, Interval J);

/// Image of an interval; monotone pieces map endpoints, an interval around c maps to [min, 1].
Interval image(const UnimodalMap& f, Interval I);

/// Largest number of closed intervals sharing a point (exact sweep).
int intersection_multiplicity(const std::vector<Interval>& intervals);

struct CrossRatioDistortion {
    double B = 0;      // prod_i B(f, f^i T, f^i J)
    int m = 0;         // intersection multiplicity of {f^i T : i < n}
    double K = 0;
    double bound = 0;  // exp(-K m)
};

/// Throws NotMonotoneOnT when some f^i(T), i < n, has c in its interior.
/// K < 0 computes it from decompose_phi.
CrossRatioDistortion cr_distortion(const UnimodalMap& f, Interval T, Interval J, int n, double K = -1);

/// Level-n cycle I_j^n = f^j(I_0^n), I_0^n = [f^{2^n} c, f^{2^{n+1}} c].
struct TowerCycle {
    int level = 0;
    std::vector<Interval> I;     // j = 0..2^n - 1
    std::vector<Interval> next;  // level n+1, j = 0..2^{n+1} - 1
    std::vector<Interval> gaps;  // I_j^n minus the two next-level intervals (middle part)
    std::vector<int> left, right;  // direct neighbours, -1 at the ends
    double measure = 0;          // |Lambda_n|
    double measure_ratio = 0;    // |Lambda_n| / |Lambda_{n-1}|, 0 at n = 0
    bool disjoint = false;
    bool nested = false;
};

/// Throws NotRenormalizable.
TowerCycle cycle_tower(const UnimodalMap& f, int n);

/// f^{j-i}: T -> U = [I_l^n, I_r^n] monotone and onto, T containing I_i^n.
struct PullbackTower {
    int level = 0, i = 0, j = 0;
    Interval U, T;
    std::vector<Interval> images;  // f^k(T), k < j - i
    int multiplicity = 0;
};

/// 1 <= i < j <= 2^n; throws DegenerateConfiguration when I_j lacks a neighbour.
PullbackTower pullback_tower(const UnimodalMap& f, const TowerCycle& cycle, int i, int j);

struct MultiplicityReport {
    int level = 0;
    int towers = 0;
    int skipped = 0;  // pairs without two neighbours
    int max_multiplicity = 0;
};

/// All pairs when 2^n <= exhaustive_limit, otherwise `samples` random pairs.
MultiplicityReport multiplicity_survey(const UnimodalMap& f, int n, int samples, std::uint64_t seed,
                                       int exhaustive_limit = 16);

struct CrossRatioSample {
    int level = 0, i = 0, j = 0;
    CrossRatioDistortion d;
};

/// Random admissible configurations: T from pullback towers, J = I_i^n.
std::vector<CrossRatioSample> cross_ratio_survey(const UnimodalMap& f, int max_level, int count,
                                                 std::uint64_t seed, double K);

struct AprioriLevel {
    int n = 0;
    double min_ratio = 0;  // min_j of |I_j^{n+1}| / |I_j^n| and |I_{j+2^n}^{n+1}| / |I_j^n|
    double min_gap = 0;    // min_j |gap_j| / |I_j^n|
    double max_Df = 0;     // max |D f^{2^n}| on a grid in I_0^n
    double measure = 0;
    double measure_ratio = 0;
};

struct AprioriBounds {
    std::vector<AprioriLevel> levels;
    double tau = 0;        // min over levels of min_ratio and min_gap
    double df_spread = 0;  // max / min of max_Df across levels
};

AprioriBounds apriori_bounds(const UnimodalMap& f, int N);

struct Factorization {
    int level = 0;
    std::vector<double> phi_norms;  // |phi_j^n|, j = 1..2^n - 1
    std::vector<double> q_norms;    // |q_j^n| = |I_j^n| / dist(I_j^n, c)
    double sum_phi = 0;
    double sum_q = 0;
};

Factorization quadratic_factorization(const UnimodalMap& f, int n, const PhiDecomposition& phi);

struct PureQuadraticModel {
    UnimodalMap fn;       // E_out o q_{2^n-1} o ... o q_1 o q_{c_n}
    bool flip = false;    // E_out is x -> 1 - x
    double c1_gap = 0;    // |R^n f - f_n|_1 on the grid
};

PureQuadraticModel pure_quadratic_model(const UnimodalMap& f, int n, int grid);

struct SandwichReport {
    std::vector<double> t;
    std::vector<double> change;  // |psi1 - psi2|_1
    std::vector<double> ratio;   // change / t
    double B = 0;
    bool linear = false;         // ratios within a factor 1.5
};

/// Deletes one Mobius factor with |phi| = t from a composition of `pieces` factors.
SandwichReport sandwich_check(const std::vector<double>& ts, int pieces, std::uint64_t seed);

} // namespace rlab
