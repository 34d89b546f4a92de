#include <doctest.h>

#include <cmath>

#include "renormlab/analysis.hpp"
#include "renormlab/error.hpp"
#include "renormlab/renorm.hpp"

using namespace rlab;

TEST_CASE("cross ratio worked values and affine invariance")
{
    CHECK(cross_ratio({0, 1}, {0.25, 0.75}) == doctest::Approx(8.0));
    for (double a : {0.5, 2.0, 7.0}) {
        for (double b : {-1.0, 0.3}) {
            const Interval T{a * 0 + b, a * 1 + b}, J{a * 0.2 + b, a * 0.6 + b};
            CHECK(cross_ratio(T, J) == doctest::Approx(cross_ratio({0, 1}, {0.2, 0.6})).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(cross_ratio({0, 1}, {0, 0.5}), Error);
}

TEST_CASE("cross-ratio distortion of q_c on a monotone branch is an expansion")
{
    const UnimodalMap q = make_quadratic(0.3);
    const CrossRatioDistortion d = cr_distortion(q, {0.5, 0.9}, {0.6, 0.7}, 1, 0.0);
    // one application: B = D(qT, qJ) / D(T, J)
    const double expected = cross_ratio(image(q, {0.5, 0.9}), image(q, {0.6, 0.7})) / cross_ratio({0.5, 0.9}, {0.6, 0.7});
    CHECK(d.B == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.B > 1);
    CHECK(d.bound == doctest::Approx(1.0));
    CHECK_THROWS_AS(cr_distortion(q, {0.2, 0.5}, {0.3, 0.4}, 1, 0.0), Error);
}

TEST_CASE("image of an interval around the critical point")
{
    const UnimodalMap q = make_quadratic(0.3);
    const Interval I = image(q, {0.2, 0.5});
    CHECK(I.hi == 1.0);
    CHECK(I.lo == doctest::Approx(std::min(q(0.2), q(0.5))));
}

TEST_CASE("intersection multiplicity worked values")
{
    CHECK(intersection_multiplicity({}) == 0);
    CHECK(intersection_multiplicity({{0, 1}, {2, 3}}) == 1);
    CHECK(intersection_multiplicity({{0, 1}, {1, 2}}) == 2);  // closed intervals touch
    CHECK(intersection_multiplicity({{0, 1}, {0.5, 2}, {0.9, 3}}) == 3);
    CHECK(intersection_multiplicity({{0, 1}, {0.5, 2}, {1.5, 3}, {2.5, 4}}) == 2);
}

TEST_CASE("regularity profiles: q_c has eps = 0 and the identity holds on the reference")
{
    const RegularityProfile pq = regularity_profiles(make_quadratic(0.3));
    for (double e : pq.eps) CHECK(std::abs(e) < 1e-12);
    CHECK(pq.l1_delta < 1e-10);
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    const RegularityProfile pr = regularity_profiles(ref.map);
    CHECK(pr.identity_residual < 1e-8);
    CHECK(pr.E < 0);
    CHECK(pr.stable);
}

TEST_CASE("decompose_phi")
{
    const PhiDecomposition d = decompose_phi(make_quadratic(0.3));
    CHECK(d.c == doctest::Approx(0.3));
    CHECK(d.K() < 1e-10);
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    const PhiDecomposition r = decompose_phi(ref.map);
    CHECK(r.K() > 0);
    CHECK(r.l1_plus == doctest::Approx(r.direct_plus).epsilon(1e-6));
    CHECK(r.l1_minus == doctest::Approx(r.direct_minus).epsilon(1e-6));
    // the exact and inverted decompositions agree
    const PhiDecomposition inv = decompose_phi(ref.map, false);
    CHECK(inv.l1() == doctest::Approx(r.l1()).epsilon(1e-6));
}

TEST_CASE("cycle tower of the reference map")
{
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    double prev = 1;
    for (int n = 1; n <= 5; ++n) {
        const TowerCycle t = cycle_tower(ref.map, n);
        CHECK(t.I.size() == (1u << n));
        CHECK(t.disjoint);
        CHECK(t.nested);
        CHECK(t.measure < prev);
        prev = t.measure;
    }
    CHECK_THROWS_AS(cycle_tower(make_quadratic(0.1), 2), Error);
}

TEST_CASE("a priori bounds, multiplicity and cross-ratio survey")
{
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    const AprioriBounds a = apriori_bounds(ref.map, 8);
    REQUIRE(a.levels.size() == 8);
    CHECK(a.tau > 0);
    CHECK(a.df_spread < 2);
    for (int n = 2; n <= 6; ++n) CHECK(multiplicity_survey(ref.map, n, 50, 3).max_multiplicity <= 7);
    const double K = decompose_phi(ref.map).K();
    for (const CrossRatioSample& s : cross_ratio_survey(ref.map, 6, 40, 5, K)) CHECK(s.d.B >= s.d.bound);
}

TEST_CASE("quadratic factorization and the pure quadratic model")
{
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    const PhiDecomposition phi = decompose_phi(ref.map);
    double prev_phi = INFINITY, prev_gap = INFINITY;
    for (int n = 1; n <= 6; ++n) {
        const Factorization f = quadratic_factorization(ref.map, n, phi);
        CHECK(f.phi_norms.size() == (1u << n) - 1);
        CHECK(f.sum_phi < prev_phi);
        prev_phi = f.sum_phi;
        const PureQuadraticModel m = pure_quadratic_model(ref.map, n, 257);
        CHECK(m.c1_gap < prev_gap);
        prev_gap = m.c1_gap;
    }
}

TEST_CASE("sandwich: deleting a factor changes the composition linearly in t")
{
    const SandwichReport r = sandwich_check({1e-2, 5e-3, 2.5e-3, 1.25e-3}, 6, 7);
    REQUIRE(r.ratio.size() == 4);
    CHECK(r.linear);
    for (double x : r.ratio) CHECK(x <= r.B * (1 + 1e-12));
}
