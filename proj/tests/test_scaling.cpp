#include <doctest.h>

#include <cmath>
#include <random>

#include "renormlab/error.hpp"
#include "renormlab/fixedpoint.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/scaling.hpp"

using namespace rlab;

namespace {

ScalingBiFactor random_bifactor(std::mt19937_64& rng, double margin)
{
    std::uniform_real_distribution<double> U(margin, 1 - margin);
    while (true) {
        const ScalingBiFactor b{U(rng), U(rng)};
        if (b.boundary_distance() >= margin) return b;
    }
}

} // namespace

TEST_CASE("tower worked values for (1/3, 1/3)")
{
    const ScalingData s = ScalingData::constant({1.0 / 3, 1.0 / 3});
    const IntervalTower t1 = interval_tower(s, 1);
    CHECK(t1.I0[1].lo == doctest::Approx(0.0));
    CHECK(t1.I0[1].hi == doctest::Approx(1.0 / 3));
    CHECK(t1.I1[1].lo == doctest::Approx(2.0 / 3));
    CHECK(t1.I1[1].hi == doctest::Approx(1.0));
    const IntervalTower t2 = interval_tower(s, 2);
    CHECK(t2.I0[2].lo == doctest::Approx(2.0 / 9));
    CHECK(t2.I0[2].hi == doctest::Approx(1.0 / 3));
}

TEST_CASE("critical point of constant data is the fixed point of the reversing chart")
{
    // oracle: t = s0 (1 - t)  =>  t = s0 / (1 + s0)
    const CriticalPointEstimate e = critical_point(ScalingData::constant({1.0 / 3, 1.0 / 3}), 1e-15);
    CHECK(static_cast<double>(e.c) == doctest::Approx(0.25).epsilon(1e-14));
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const double s0 = cert.sigma_star.s0;
    const CriticalPointEstimate f = critical_point(ScalingData::constant(cert.sigma_star), 1e-16);
    CHECK(static_cast<double>(f.c) == doctest::Approx(s0 / (1 + s0)).epsilon(1e-13));
    CHECK(std::abs(static_cast<double>(f.c) - cert.c_star) < 1e-10);
}

TEST_CASE("property: tower invariants on random proper data")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<ScalingBiFactor> cycle;
        const int period = 1 + trial % 3;
        for (int i = 0; i < period; ++i) cycle.push_back(random_bifactor(rng, 0.05));
        const ScalingData s = period == 1 ? ScalingData::constant(cycle[0]) : ScalingData::periodic(cycle);
        const int depth = 12;
        const IntervalTower t = interval_tower(s, depth);
        const double eps = s.properness_margin(depth);
        long double prod = 1;
        for (int k = 1; k <= depth; ++k) {
            const ScalingBiFactor b = s.at(k);
            CHECK(t.I0[k - 1].contains(t.I0[k]));
            CHECK(t.I0[k - 1].contains(t.I1[k]));
            CHECK(!t.I0[k].intersects(t.I1[k]));
            CHECK(t.I1[k].length() == doctest::Approx(static_cast<double>(b.s1 * prod)).epsilon(1e-13));
            prod *= b.s0;
            CHECK(t.I0[k].length() == doctest::Approx(static_cast<double>(prod)).epsilon(1e-13));
            CHECK(t.I0[k].length() <= std::pow(1 - eps, k) + 1e-15);
            // x_k is the new endpoint of I0[k], y_k the endpoint of I1[k] inside I0[k-1]
            CHECK((t.x[k] == t.I0[k].lo || t.x[k] == t.I0[k].hi));
            CHECK(t.x[k] != t.I0[k - 1].lo);
            CHECK((t.y[k] == t.I1[k].lo || t.y[k] == t.I1[k].hi));
            CHECK(t.I0[k].contains(t.c));
        }
    }
}

TEST_CASE("improper data is rejected")
{
    CHECK_THROWS_AS(interval_tower(ScalingData::constant({0.6, 0.5}), 3), Error);
    CHECK_THROWS_AS(interval_tower(ScalingData::constant({0.0, 0.5}), 3), Error);
}

TEST_CASE("piecewise map interpolates q_c at the ends of every branch")
{
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const ScalingData s = ScalingData::constant(cert.sigma_star);
    const UnimodalMap f = build_piecewise_map(s, 20);
    const auto* rep = f.as<PiecewiseAffineRep>();
    REQUIRE(rep != nullptr);
    const ext c = rep->c;
    REQUIRE(rep->branches.size() == 20);
    for (const AffineBranch& br : rep->branches) {
        const int n = br.level;
        // the branch domain is I1^n of the tower
        CHECK(std::abs(static_cast<double>(br.lo) - rep->tower.I1[n].lo) < 1e-15);
        CHECK(std::abs(static_cast<double>(br.hi) - rep->tower.I1[n].hi) < 1e-15);
        const ext scale = std::abs(br.hi - br.lo);
        CHECK(std::abs(static_cast<double>((br.map(br.lo) - quadratic(c, br.lo)) / scale)) < 1e-9);
        CHECK(std::abs(static_cast<double>((br.map(br.hi) - quadratic(c, br.hi)) / scale)) < 1e-9);
        const ext mid = (br.lo + br.hi) / 2;
        CHECK(f(mid) == br.map(mid));
    }
    CHECK_THROWS_AS(f(rep->c), Error);
}

TEST_CASE("at the fixed point the box-scaling branches agree with q_c*")
{
    // the scaling-rule construction only sees sigma*, yet its branch ends lie on q_{c*}
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const ScalingData s = ScalingData::constant(cert.sigma_star);
    const UnimodalMap box = build_piecewise_map(s, 24, BranchRule::BoxScaling);
    const auto* rep = box.as<PiecewiseAffineRep>();
    REQUIRE(rep != nullptr);
    const ext c = rep->c;
    for (const AffineBranch& br : rep->branches) {
        for (const ext x : {br.lo, br.hi}) {
            const double got = static_cast<double>(br.map(x));
            CHECK(got == doctest::Approx(static_cast<double>(quadratic(c, x))).epsilon(1e-9));
        }
    }
    // the quadratic tip: (f(x) - 1) / (x - c)^2 -> -1 / (1 - c)^2
    const double target = static_cast<double>(-1 / ((1 - c) * (1 - c)));
    for (const AffineBranch& br : rep->branches) {
        if (br.level < 6 || br.level > 14) continue;  // deeper levels lose f(x) - 1 to cancellation
        const ext x = br.hi;
        const double r = static_cast<double>((br.map(x) - 1) / ((x - c) * (x - c)));
        CHECK(r == doctest::Approx(target).epsilon(1e-6));
    }
}

TEST_CASE("shift_scaling")
{
    const ScalingBiFactor a{0.3, 0.2}, b{0.25, 0.35};
    const ScalingData k = ScalingData::constant(a);
    CHECK(shift_scaling(k, 3).at(1) == a);
    const ScalingData p = ScalingData::periodic({a, b});
    CHECK(shift_scaling(p, 1).at(1) == b);
    CHECK(shift_scaling(p, 1).at(2) == a);
    const ScalingData w = ScalingData::symbol_driven({0, 1, 1}, {a, b, b}, a);
    const ScalingData ws = shift_scaling(w, 1);
    CHECK(ws.word() == std::vector<int>{1, 1});
    CHECK(ws.at(1) == b);
    CHECK(ws.at(3) == a);
}

TEST_CASE("check_inf_renorm singles out the fixed point")
{
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const ScalingData star = ScalingData::constant(cert.sigma_star);
    CHECK(check_inf_renorm(star, 10).ok);
    const InfRenormVerdict third = check_inf_renorm(ScalingData::constant({1.0 / 3, 1.0 / 3}), 10);
    CHECK_FALSE(third.ok);
    CHECK(third.failed_level >= 1);
    CHECK(!third.witness.empty());
    const InfRenormVerdict pert =
        check_inf_renorm(star.with_prefix({{cert.sigma_star.s0 + 1e-2, cert.sigma_star.s1}}), 10);
    CHECK_FALSE(pert.ok);
    CHECK(pert.failed_level <= 4);
}

TEST_CASE("renormalize_piecewise: R f_sigma = f_{s(sigma)}")
{
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const UnimodalMap f = build_piecewise_map(ScalingData::constant(cert.sigma_star), 20);
    const UnimodalMap Rf = renormalize_piecewise(f);
    CHECK(distance(Rf, build_piecewise_map(ScalingData::constant(cert.sigma_star), 19), 0, 1025).value < 1e-12);

    // periodic data: pointwise identity hhat^{-1} o f o h = f_{s(sigma)}
    const ScalingData p = ScalingData::periodic({{0.40, 0.16}, {0.41, 0.17}});
    const UnimodalMap fp = build_piecewise_map(p, 16);
    const PiecewiseConjugacy cj = piecewise_conjugacy(fp);
    const UnimodalMap target = build_piecewise_map(shift_scaling(p, 1), 15);
    const UnimodalMap direct = renormalize_piecewise(fp);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0, 1);
    int checked = 0;
    while (checked < 100) {
        const ext x = U(rng);
        ext lhs, rhs;
        try {
            lhs = cj.hhat.inverse(fp(cj.h(x)));
            rhs = target(x);
        } catch (const Error&) {
            continue;  // outside the truncated domain
        }
        CHECK(std::abs(static_cast<double>(lhs - rhs)) < 1e-12);
        CHECK(std::abs(static_cast<double>(direct(x) - rhs)) < 1e-12);
        ++checked;
    }
}
