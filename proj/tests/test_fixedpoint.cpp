#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "renormlab/error.hpp"
#include "renormlab/fixedpoint.hpp"
#include "renormlab/renorm.hpp"

using namespace rlab;

namespace {

using LD = long double;

LD q(LD c, LD x)
{
    const LD s = (x - c) / (1 - c);
    return 1 - s * s;
}
LD A0(LD c) { return q(c, q(c, 0)); }
LD A1(LD c) { return 1 - q(c, 0); }

template <class F>
LD bisect(F f, LD lo, LD hi)
{
    LD flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const LD m = (lo + hi) / 2;
        const LD fm = f(m);
        if ((fm > 0) == (flo > 0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return (lo + hi) / 2;
}

// Oracle values, frozen from the bisections above.
constexpr double kCStar = 0.28683344713476278;
constexpr double kCMax = 0.35220112873895754;

} // namespace

TEST_CASE("oracle values are reproduced by the test-local bisection")
{
    const LD cmax = bisect([](LD c) { return A0(c) + A1(c) - 1; }, 0.2L, 0.45L);
    CHECK(static_cast<double>(cmax) == doctest::Approx(kCMax).epsilon(1e-15));
    const LD cs = bisect([](LD c) { return 1 - c / A0(c) - c; }, 0.2L, cmax);
    CHECK(static_cast<double>(cs) == doctest::Approx(kCStar).epsilon(1e-15));
}

TEST_CASE("scaling factors worked values")
{
    CHECK(scaling_factors(1.0 / 3).A1 == doctest::Approx(0.25).epsilon(1e-15));
    const ScalingFactors small = scaling_factors(1e-6);
    CHECK(small.A0 < 1e-10);
    CHECK(small.A1 < 1e-10);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.05, 0.45);
    for (int i = 0; i < 100; ++i) {
        const double c = U(rng);
        const ScalingFactors f = scaling_factors(c);
        // q_c(0) = 1 - sigma1 and q_c(1 - sigma1) = sigma0
        CHECK(std::abs(static_cast<double>(q(c, 0)) - (1 - f.A1)) < 1e-14);
        CHECK(std::abs(static_cast<double>(q(c, 1 - LD(f.A1))) - f.A0) < 1e-14);
        CHECK(f.Rc == doctest::Approx(static_cast<double>(1 - c / A0(c))).epsilon(1e-13));
    }
}

TEST_CASE("feasible domain")
{
    const FeasibleDomain d = feasible_domain(1e-14);
    CHECK(d.domain.hi == doctest::Approx(kCMax).epsilon(1e-12));
    CHECK(std::abs(d.domain.hi - 0.35) <= 0.01);
    CHECK(d.residual < 1e-12);
    const ScalingFactors mid = scaling_factors(d.domain.hi / 2);
    CHECK(mid.A0 + mid.A1 < 1);
}

TEST_CASE("solve_fixed_point certificate")
{
    const FixedPointCertificate cert = solve_fixed_point(1e-12);
    CHECK(cert.residual < 1e-12);
    CHECK(cert.identity_defect < 1e-10);
    CHECK(cert.dRdc > 2);
    CHECK(std::abs(cert.c_star - kCStar) < 1e-10);
    CHECK(cert.sigma_star.s0 * cert.sigma_star.s0 == doctest::Approx(cert.sigma_star.s1).epsilon(1e-10));
    CHECK_THROWS_AS(solve_fixed_point(0.0), Error);
}

TEST_CASE("gap interpolant")
{
    // data sampled from a quadratic is reproduced exactly at theta = 0
    const LD c = kCStar;
    GapData d;
    d.x0 = 0.5;
    d.x1 = 0.7;
    d.v0 = static_cast<double>(q(c, d.x0));
    d.v1 = static_cast<double>(q(c, d.x1));
    d.d0 = static_cast<double>(-2 * (LD(d.x0) - c) / ((1 - c) * (1 - c)));
    d.d1 = static_cast<double>(-2 * (LD(d.x1) - c) / ((1 - c) * (1 - c)));
    const GapPiece g = gap_interpolant(d, 0.0, std::numeric_limits<double>::infinity());
    for (int i = 0; i <= 100; ++i) {
        const double x = d.x0 + (d.x1 - d.x0) * i / 100.0;
        CHECK(std::abs(g.piece(x) - static_cast<double>(q(c, x))) < 1e-10);
    }
    const Interval th = admissible_theta(d);
    CHECK(th.lo < 0);
    CHECK(th.hi > 0);
    const GapPiece other = gap_interpolant(d, 0.5 * th.hi, std::numeric_limits<double>::infinity());
    double dev = 0;
    for (int i = 0; i <= 100; ++i) {
        const double x = d.x0 + (d.x1 - d.x0) * i / 100.0;
        dev = std::max(dev, std::abs(other.piece(x) - g.piece(x)));
        // endpoint data is kept
    }
    CHECK(dev > 0);
    CHECK(other.piece(d.x0) == doctest::Approx(d.v0).epsilon(1e-14));
    CHECK(other.piece(d.x1) == doctest::Approx(d.v1).epsilon(1e-14));
    // Lipschitz budget is a contract
    CHECK(other.lip <= other.lip * (1 + 1e-15));
    CHECK_THROWS_AS(gap_interpolant(d, 0.5 * th.hi, 0.5 * other.lip), Error);
    CHECK_THROWS_AS(gap_interpolant(d, 2 * th.hi, std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("property: admissible shapes are strictly monotone with the prescribed ends")
{
    const FixedPointCertificate cert = solve_fixed_point(1e-15);
    const GapData d = junction_data(ScalingData::constant(cert.sigma_star), 0);
    const Interval th = admissible_theta(d);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.02, 0.98);
    for (int i = 0; i < 30; ++i) {
        const double theta = th.lo + (th.hi - th.lo) * U(rng);
        const GapPiece g = gap_interpolant(d, theta, std::numeric_limits<double>::infinity());
        const int sign = d.v1 > d.v0 ? 1 : -1;
        for (int k = 0; k <= 200; ++k) {
            const double x = d.x0 + (d.x1 - d.x0) * k / 200.0;
            CHECK(sign * g.piece.jet(x).d1 > 0);
        }
        CHECK(static_cast<double>(g.piece.jet(d.x0).d1) == doctest::Approx(d.d0).epsilon(1e-12));
        CHECK(static_cast<double>(g.piece.jet(d.x1).d1) == doctest::Approx(d.d1).epsilon(1e-12));
    }
}

TEST_CASE("fixed-point extension: Rg = g and Lipschitz constants")
{
    const std::vector<DiffeoPiece> pieces = default_gap_pieces(2);
    const ExtensionResult e = build_extension(pieces[0], 40);
    const UnimodalMap& g = e.map;
    CHECK(g(g.critical_point()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(g(1.0)) < 1e-15);
    const DistanceResult d = distance(renormalize(g), g, 0, 1025);
    CHECK(d.value < 1e-10);
    CHECK(d.covered == 1025);
    CHECK(e.lip_nonincreasing);
    for (std::size_t k = 1; k < e.lip.size(); ++k) CHECK(e.lip[k] <= e.lip[k - 1] * (1 + kLipSlack));
    // a shallow extension also satisfies the identity
    CHECK(distance(renormalize(build_extension(pieces[0], 20).map), build_extension(pieces[0], 20).map, 0, 1025)
              .value < 1e-10);
}

TEST_CASE("two-symbol family: constant word, injectivity, shift")
{
    const std::vector<DiffeoPiece> pieces = default_gap_pieces(2);
    const int depth = 30;
    const ExtensionResult zero = two_symbol_family(pieces, {0, 0, 0}, depth);
    const ExtensionResult ext0 = build_extension(pieces[0], depth);
    CHECK(distance(zero.map, ext0.map, 0, 513).value < 1e-15);
    const std::vector<std::vector<int>> words = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                                 {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
    std::vector<UnimodalMap> maps;
    for (const auto& w : words) {
        const ExtensionResult f = two_symbol_family(pieces, w, depth);
        const ExtensionResult ft = two_symbol_family(pieces, std::vector<int>(w.begin() + 1, w.end()), depth - 1);
        CHECK(distance(renormalize(f.map), ft.map, 0, 1025).value < 1e-10);
        maps.push_back(f.map);
    }
    for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = a + 1; b < maps.size(); ++b) CHECK(distance(maps[a], maps[b], 0, 1025).value > 0);
}
