#include <doctest.h>

#include <cmath>
#include <random>

#include "renormlab/error.hpp"
#include "renormlab/horseshoe.hpp"

using namespace rlab;

namespace {

using LD = long double;

LD q(LD c, LD x)
{
    const LD s = (x - c) / (1 - c);
    return 1 - s * s;
}

/// Root of R(c, eps) = c by bisection on [0.2, 0.35].
LD eps_fixed_point(LD eps)
{
    auto g = [eps](LD c) { return 1 - c / (eps * q(c, q(c, 0))) - c; };
    LD lo = 0.2L, hi = 0.35L;
    const bool up = g(lo) > 0;
    for (int i = 0; i < 200; ++i) {
        const LD m = (lo + hi) / 2;
        if ((g(m) > 0) == up) lo = m;
        else hi = m;
    }
    return (lo + hi) / 2;
}

constexpr double kC0 = 0.28683344713476278;
constexpr double kC1 = 0.28786731765332391;

} // namespace

TEST_CASE("branch fixed points against the bisection oracle")
{
    CHECK(static_cast<double>(eps_fixed_point(1)) == doctest::Approx(kC0).epsilon(1e-15));
    CHECK(static_cast<double>(eps_fixed_point(0.995L)) == doctest::Approx(kC1).epsilon(1e-15));
    const HorseshoeSpec h = branch_fixed_points(1, 0.995, 1e-15);
    CHECK(std::abs(h.c0_star - kC0) < 1e-14);
    CHECK(std::abs(h.c1_star - kC1) < 1e-14);
    CHECK(h.lambda > 2);
    CHECK(h.margin >= kProperMargin);
    // branch domains are disjoint and map across the whole interval
    CHECK(h.A0.lo == doctest::Approx(h.c0_star));
    CHECK(h.A1.hi == doctest::Approx(h.c1_star));
    CHECK(h.A0.hi < h.A1.lo);
    CHECK(eps_renorm_map(h.A0.hi, 1).Rce == doctest::Approx(h.c1_star).epsilon(1e-12));
    CHECK(eps_renorm_map(h.A1.lo, 0.995).Rce == doctest::Approx(h.c0_star).epsilon(1e-12));
}

TEST_CASE("eps = 1 reduces to the scaling renormalization")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.1, 0.34);
    for (int i = 0; i < 50; ++i) {
        const double c = U(rng);
        const EpsRenorm e = eps_renorm_map(c, 1);
        CHECK(e.Rce == doctest::Approx(static_cast<double>(scaling_R(c))).epsilon(1e-14));
        CHECK(e.sigma1 == doctest::Approx(static_cast<double>(1 - q(c, 0))).epsilon(1e-14));
        CHECK(e.sigma0 == doctest::Approx(static_cast<double>(q(c, q(c, 0)))).epsilon(1e-14));
    }
}

TEST_CASE("equal eps collapses both branches onto c*")
{
    const HorseshoeSpec h = branch_fixed_points(1, 1, 1e-15);
    CHECK(h.c0_star == doctest::Approx(kC0).epsilon(1e-14));
    CHECK(h.c1_star == doctest::Approx(kC0).epsilon(1e-14));
}

TEST_CASE("dense words")
{
    CHECK(dense_word_length(1) == 2);
    CHECK(dense_word_length(2) == 10);
    CHECK(dense_word_length(5) == 258);
    CHECK(dense_word(10) == SymbolWord{0, 1, 0, 0, 0, 1, 1, 0, 1, 1});
    CHECK(dense_word(3).size() == 10);
}

TEST_CASE("coding: orbit shifts, residuals and bounds")
{
    const HorseshoeSpec h = branch_fixed_points(1, 0.995, 1e-15);
    CHECK(code_point(h, {0, 0, 0}).c == doctest::Approx(h.c0_star).epsilon(1e-14));
    CHECK(code_point(h, {1, 1, 1}, 0, 1).c == doctest::Approx(h.c1_star).epsilon(1e-14));
    std::mt19937_64 rng(8);
    const double bound = std::pow(h.lambda, -30.0) * std::abs(h.c1_star - h.c0_star);
    for (int t = 0; t < 20; ++t) {
        SymbolWord w(30);
        for (int& s : w) s = static_cast<int>(rng() & 1);
        const CodedPoint p = code_point(h, w);
        CHECK(p.residual < bound);
        CHECK(p.error_bound == doctest::Approx(bound).epsilon(1e-12));
        // the first symbol picks the branch domain
        CHECK((w[0] == 0 ? h.A0 : h.A1).contains(p.c));
        const std::vector<ext> orbit = code_orbit(h, w);
        REQUIRE(orbit.size() == w.size() + 1);
        CHECK(static_cast<double>(orbit.back()) == doctest::Approx(h.c0_star).epsilon(1e-14));
        for (std::size_t n = 0; n + 1 < orbit.size(); ++n) {
            const double eps = w[n] == 0 ? h.eps0 : h.eps1;
            const double next = eps_renorm_map(static_cast<double>(orbit[n]), eps).Rce;
            CHECK(std::abs(next - static_cast<double>(orbit[n + 1])) < 1e-12);
        }
    }
    CHECK_THROWS_AS(code_point(h, {0, 1}, 1e-20), Error);
}

TEST_CASE("density of the dense-word orbit")
{
    const HorseshoeSpec h = branch_fixed_points(1, 0.995, 1e-15);
    const DensityReport d = density_check(h, 5);
    CHECK(d.dense);
    CHECK(d.m == 5);
    CHECK(d.orbit_length >= dense_word_length(5));
    CHECK(d.max_distance <= d.max_diameter);
}

TEST_CASE("chaotic map renormalizes along the coded orbit")
{
    const HorseshoeSpec h = branch_fixed_points(1, 0.995, 1e-15);
    const SymbolWord w{0, 1, 1, 0, 1, 0, 0, 1};
    const ChaoticMap g = chaotic_map(h, w, 30);
    REQUIRE(g.coded.size() >= w.size());
    for (std::size_t n = 0; n < w.size(); ++n) CHECK(std::abs(g.c_n[n] - g.coded[n]) < 1e-10);
    for (double r : g.renorm_check) CHECK(r < 1e-10);
    CHECK(g.K >= 1);
    CHECK(std::isfinite(g.K0));
}
