// Acceptance run: one PASS/FAIL line per criterion, exit 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "renormlab/renormlab.hpp"

using namespace rlab;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const ReferenceMap& ref() { return reference_fixed_point(kReferenceDepth); }

Verdict c1_fixed_point(double& limit)
{
    limit = 1;
    const FixedPointCertificate c = solve_fixed_point(1e-12);
    const bool ok = c.residual < 1e-12 && c.identity_defect < 1e-10 && c.dRdc > 2;
    return {ok, "c*=" + fmt("%.17g", c.c_star) + " residual=" + fmt("%.3g", c.residual) +
                    " identity=" + fmt("%.3g", c.identity_defect) + " dR/dc=" + fmt("%.6g", c.dRdc)};
}

Verdict c2_cmax(double&)
{
    const double cmax = feasible_domain(1e-14).domain.hi;
    return {std::abs(cmax - 0.35) <= 0.01, "c_max=" + fmt("%.17g", cmax)};
}

Verdict c3_extension(double& limit)
{
    limit = 10;
    const ExtensionResult e = build_extension(default_gap_pieces(2)[0], 40);
    const DistanceResult d = distance(renormalize(e.map), e.map, 0, 1025);
    const bool ok = d.value < 1e-10 && d.covered == 1025 && e.lip_nonincreasing;
    return {ok, "dist0(Rg,g)=" + fmt("%.3g", d.value) + " covered=" + std::to_string(d.covered) +
                    " lip_nonincreasing=" + (e.lip_nonincreasing ? "1" : "0")};
}

Verdict c4_shift_family(double& limit)
{
    limit = 60;
    const int L = 6, depth = 40, grid = 1025;
    const std::vector<DiffeoPiece> pieces = default_gap_pieces(2);
    const std::vector<double> xs = chebyshev_grid(grid);
    std::vector<std::vector<double>> samples;
    double worst = 0;
    for (int m = 0; m < (1 << L); ++m) {
        std::vector<int> w(L);
        for (int i = 0; i < L; ++i) w[i] = (m >> (L - 1 - i)) & 1;
        const ExtensionResult f = two_symbol_family(pieces, w, depth);
        const ExtensionResult ft = two_symbol_family(pieces, std::vector<int>(w.begin() + 1, w.end()), depth - 1);
        worst = std::max(worst, distance(renormalize(f.map), ft.map, 0, grid).value);
        std::vector<double> v;
        for (double x : xs) v.push_back(f.map(x));
        samples.push_back(std::move(v));
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < samples.size(); ++a)
        for (std::size_t b = a + 1; b < samples.size(); ++b) {
            double d = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) d = std::max(d, std::abs(samples[a][i] - samples[b][i]));
            nearest = std::min(nearest, d);
        }
    return {worst < 1e-10 && nearest > 0,
            "max dist0(Rf_w,f_tw)=" + fmt("%.3g", worst) + " min pair distance=" + fmt("%.3g", nearest)};
}

Verdict c5_horseshoe(double&)
{
    const HorseshoeSpec h = branch_fixed_points(1, 0.995, 1e-15);
    const DensityReport dens = density_check(h, 5);
    std::mt19937_64 rng(1);
    const double bound = std::pow(h.lambda, -30.0) * std::abs(h.c1_star - h.c0_star);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        SymbolWord w(30);
        for (int& s : w) s = static_cast<int>(rng() & 1);
        worst = std::max(worst, code_point(h, w).residual);
    }
    return {dens.dense && worst < bound, std::string("dense=") + (dens.dense ? "1" : "0") +
                                             " max residual=" + fmt("%.3g", worst) + " bound=" + fmt("%.3g", bound)};
}

Verdict c6_multiplicity(double&)
{
    int worst = 0;
    for (int n = 1; n <= 8; ++n) worst = std::max(worst, multiplicity_survey(ref().map, n, 200, 1 + n).max_multiplicity);
    return {worst <= 7, "max multiplicity=" + std::to_string(worst)};
}

Verdict c7_cross_ratio(double&)
{
    const double K = decompose_phi(ref().map).K();
    const std::vector<CrossRatioSample> s = cross_ratio_survey(ref().map, 8, 200, 1, K);
    double worst = std::numeric_limits<double>::infinity();
    for (const CrossRatioSample& x : s) worst = std::min(worst, x.d.B / x.d.bound);
    return {s.size() == 200 && worst >= 1,
            "configurations=" + std::to_string(s.size()) + " K=" + fmt("%.4g", K) + " min B/bound=" + fmt("%.4g", worst)};
}

Verdict c8_apriori(double&)
{
    const AprioriBounds b = apriori_bounds(ref().map, 8);
    return {b.tau > 0 && b.df_spread < 2, "tau=" + fmt("%.4g", b.tau) + " Df spread=" + fmt("%.4g", b.df_spread)};
}

Verdict c9_factorization(double&)
{
    const PhiDecomposition phi = decompose_phi(ref().map);
    std::vector<double> sphi, sq, gap;
    for (int n = 1; n <= 8; ++n) {
        const Factorization f = quadratic_factorization(ref().map, n, phi);
        sphi.push_back(f.sum_phi);
        sq.push_back(f.sum_q);
        gap.push_back(pure_quadratic_model(ref().map, n, 1025).c1_gap);
    }
    bool phi_dec = true, gap_dec = true;
    double r = 0;
    for (std::size_t k = 1; k < sphi.size(); ++k) {
        phi_dec = phi_dec && sphi[k] < sphi[k - 1];
        gap_dec = gap_dec && gap[k] < gap[k - 1];
        if (k >= 2) r = std::max(r, (sq[k] - sq[k - 1]) / (sq[k - 1] - sq[k - 2]));
    }
    return {phi_dec && r < 1 && gap_dec, std::string("sum_phi decreasing=") + (phi_dec ? "1" : "0") +
                                             " sum_q increment ratio=" + fmt("%.4g", r) +
                                             " |R^n f - f_n|_1 decreasing=" + (gap_dec ? "1" : "0")};
}

Verdict c10_convergence(double&)
{
    const FeigenbaumResult fr = feigenbaum_parameter(1e-15);
    const RenormDiagnostics d =
        renorm_trajectory(make_quadratic(fr.c_F_precise), 10, 1025, ref().map, kReferenceDepth);
    const double last = d.rows.back().dist0;
    const double delta = fr.delta.at(7);
    const bool ok = d.monotone && last < 1e-4 && std::abs(delta - 4.669) / 4.669 < 0.01;
    std::string s = std::string("monotone=") + (d.monotone ? "1" : "0") + " d10=" + fmt("%.3g", last) +
                    " delta8=" + fmt("%.6g", delta) + " d_n:";
    for (const TrajectoryRow& r : d.rows) s += " " + fmt("%.2g", r.dist0);
    return {ok, s};
}

/// Margins and beta_hat verdict for one d-spec; empty detail on success.
std::string slow_run(const std::string& spec, bool& margins, bool& stable)
{
    const int depth = 8;
    const SlowMap s = build_slow_map(d_sequence(spec, depth + 1), depth);
    const SlowReport rep = verify_slow(s, depth, 1025);
    const RegularityProfile p = slow_regularity(s);
    margins = rep.ok && !rep.inconclusive;
    stable = p.stable;
    return spec + ": margins_ok=" + (margins ? "1" : "0") + " beta_hat ratio=" + fmt("%.3g", p.ratio) +
           " stable=" + (stable ? "1" : "0");
}

Verdict c11_slow(double&)
{
    std::string detail;
    bool ok = true;
    bool margins = false, stable = false;
    for (const char* spec : {"harmonic", "geometric"}) {
        try {
            detail += slow_run(spec, margins, stable) + "; ";
            ok = ok && (std::string(spec) == "harmonic" ? margins && !stable : stable);
        } catch (const Error& e) {
            ok = false;
            detail += std::string(spec) + ": " + e.what() + "; ";
        }
    }
    // the same schedules at the largest realizable amplitude, reported only
    for (const char* spec : {"harmonic:max", "geometric:max"}) detail += "[" + slow_run(spec, margins, stable) + "] ";
    return {ok, detail};
}

Verdict c12_identity(double& limit)
{
    limit = 10;
    const RegularityProfile p = regularity_profiles(ref().map);
    return {p.identity_residual < 1e-8, "max|eps - delta - beta|=" + fmt("%.3g", p.identity_residual)};
}

} // namespace

int main()
{
    using Check = Verdict (*)(double&);
    const std::vector<std::pair<const char*, Check>> checks = {
        {"fixed point certificate", c1_fixed_point},
        {"c_max", c2_cmax},
        {"fixed-point extension", c3_extension},
        {"two-symbol shift family", c4_shift_family},
        {"horseshoe density and coding", c5_horseshoe},
        {"intersection multiplicity", c6_multiplicity},
        {"cross-ratio distortion", c7_cross_ratio},
        {"a priori bounds", c8_apriori},
        {"quadratic factorization", c9_factorization},
        {"convergence to the reference", c10_convergence},
        {"slow convergence", c11_slow},
        {"regularity identity", c12_identity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        double limit = std::numeric_limits<double>::infinity();
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = checks[i].second(limit);
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= limit) {
            v.pass = false;
            v.detail += " runtime over " + fmt("%g", limit) + " s";
        }
        failed += !v.pass;
        std::printf("%s %2zu %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, checks[i].first, secs,
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", checks.size() - failed, checks.size());
    return failed ? 1 : 0;
}
