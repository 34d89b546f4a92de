#pragma once

#include <string>
#include <vector>

#include "renormlab/analysis.hpp"
#include "renormlab/map.hpp"
#include "renormlab/piece.hpp"
#include "renormlab/renorm.hpp"

namespace rlab {

/// phi_t(x) = x + t w(x), w(x) = x^3 (1-x)^3 (1+x).
struct BumpSpec {
    double t = 0;
    double t_max = 0;  // 1 / (2 max |w'|)
    double C1 = 0;     // dist_0(phi_t, id) / t, measured
    double C2 = 0;     // |eta_{phi_t}|_0 / t, measured (max |w''| at t = 0)
    DiffeoPiece piece;
};

/// Throws TooLarge when t > t_max, Domain when t < 0.
BumpSpec bump_family(double t);

/// Perturbed gaps of the reference map. Level n lives at U_n, the part of
/// q_c(G_n) that misses q_c of both level-(n+1) intervals inside I_0^n.
struct GapSchedule {
    std::vector<double> d;
    std::vector<double> t;
    std::vector<Interval> G;         // gaps in the coordinates of the reference map
    std::vector<Interval> U;         // supports of the bumps, in the u = q_c(x) coordinate
    std::vector<double> mismatch;    // relative length defect of U_n rescaled to level 0
    double m = 0;                    // min D phi
    double C1 = 0;
    double U0 = 0;                   // |U_0|
    int reference_depth = 0;
};

/// Gaps 0..depth with t_n = d_n / (m C1 |U_0|). Throws GapOverlap, TooLarge.
GapSchedule gap_schedule(const std::vector<double>& d, int depth, int reference_depth = kReferenceDepth);

/// Largest d_0 the bump family can realize (t_0 = t_max).
double max_amplitude(int reference_depth = kReferenceDepth);

struct SlowMap {
    UnimodalMap map;       // phi o psi o q_c
    DiffeoPiece psi;
    GapSchedule schedule;
    double orbit_defect = 0;  // max |f^k(c) - ref^k(c)|, k <= 2^depth
    int depth = 0;
};

/// Throws TooLarge, GapOverlap, NotRenormalizable.
SlowMap build_slow_map(const std::vector<double>& d, int depth, int reference_depth = kReferenceDepth);

struct SlowRow {
    int n = 0;
    double measured = 0;  // dist_0(R^n f, reference)
    double d = 0;
    double budget = 0;    // dist_0(R^n reference, reference) plus chart mismatch
    double chain = 0;     // max over U_0 of |phi(1_0 phi_t 1_0^{-1} u) - phi(u)|
    double margin = 0;    // measured - (d - budget)
    bool inconclusive = false;
};

struct SlowReport {
    std::vector<SlowRow> rows;
    bool ok = true;            // every conclusive margin >= 0 and every chain >= d
    bool inconclusive = false;
};

SlowReport verify_slow(const SlowMap& s, int N, int grid);

/// beta_hat verdict with windows aligned to the level-2 gap.
RegularityProfile slow_regularity(const SlowMap& s, int grid = 129);

/// d-spec: "harmonic[:k]" (k / (n+1)), "geometric[:k]" (k 2^-n), "zero".
/// k = "max" uses max_amplitude.
std::vector<double> d_sequence(const std::string& spec, int count);

} // namespace rlab
