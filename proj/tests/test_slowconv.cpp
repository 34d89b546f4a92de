#include <doctest.h>

#include <cmath>

#include "renormlab/error.hpp"
#include "renormlab/slowconv.hpp"

using namespace rlab;

namespace {

double w(double x) { return x * x * x * std::pow(1 - x, 3) * (1 + x); }

/// max |w'| and max |w| by dense sampling with a central difference.
std::pair<double, double> bump_oracle()
{
    double dmax = 0, vmax = 0;
    const int n = 200000;
    const double h = 1e-7;
    for (int i = 1; i < n; ++i) {
        const double x = double(i) / n;
        dmax = std::max(dmax, std::abs((w(x + h) - w(x - h)) / (2 * h)));
        vmax = std::max(vmax, std::abs(w(x)));
    }
    return {dmax, vmax};
}

} // namespace

TEST_CASE("bump family: t_max, boundary data, C1")
{
    const auto [dmax, vmax] = bump_oracle();
    const BumpSpec b = bump_family(1.0);
    CHECK(b.t_max == doctest::Approx(1 / (2 * dmax)).epsilon(1e-6));
    CHECK(b.t_max == doctest::Approx(5.83257).epsilon(1e-5));
    CHECK(b.C1 == doctest::Approx(vmax).epsilon(1e-6));
    CHECK(static_cast<double>(b.piece(0.0)) == 0.0);
    CHECK(static_cast<double>(b.piece(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(static_cast<double>(b.piece.jet(0.0L).d1) == doctest::Approx(1.0));
    CHECK(static_cast<double>(b.piece.jet(1.0L).d1) == doctest::Approx(1.0));
    // C1 is linear in t
    CHECK(bump_family(0.01).C1 == doctest::Approx(b.C1).epsilon(1e-9));
    CHECK(bump_family(b.t_max).C1 == doctest::Approx(b.C1).epsilon(1e-9));
    CHECK_THROWS_AS(bump_family(b.t_max * 1.01), Error);
    CHECK_THROWS_AS(bump_family(-1), Error);
}

TEST_CASE("d-spec parsing")
{
    const std::vector<double> h = d_sequence("harmonic", 4);
    REQUIRE(h.size() == 4);
    for (int n = 0; n < 4; ++n) CHECK(h[n] == doctest::Approx(1.0 / (n + 1)));
    const std::vector<double> g = d_sequence("geometric:0.5", 3);
    CHECK(g == std::vector<double>{0.5, 0.25, 0.125});
    for (double x : d_sequence("zero", 5)) CHECK(x == 0.0);
    const std::vector<double> m = d_sequence("harmonic:max", 3);
    CHECK(m[0] == doctest::Approx(max_amplitude()));
    CHECK_THROWS_AS(d_sequence("cubic", 3), Error);
}

TEST_CASE("harmonic schedule at full amplitude is too large")
{
    try {
        build_slow_map(d_sequence("harmonic", 9), 8);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("zero schedule reproduces the reference map")
{
    const SlowMap s = build_slow_map(d_sequence("zero", 5), 4);
    const ReferenceMap& ref = reference_fixed_point(kReferenceDepth);
    CHECK(distance(s.map, ref.map, 0, 513).value < 1e-14);
    CHECK(s.orbit_defect < 1e-14);
}

TEST_CASE("geometric schedule: supports, orbit and slow convergence margins")
{
    const SlowMap s = build_slow_map(d_sequence("geometric:max", 6), 5);
    const GapSchedule& g = s.schedule;
    REQUIRE(g.U.size() == 6);
    for (std::size_t n = 1; n < g.U.size(); ++n) {
        CHECK(!g.U[n].intersects(g.U[n - 1]));
        CHECK(g.t[n] == doctest::Approx(g.t[0] * std::pow(0.5, n)).epsilon(1e-12));
    }
    CHECK(s.orbit_defect < 1e-10);
    const SlowReport r = verify_slow(s, 4, 129);
    REQUIRE(r.rows.size() == 5);
    for (const SlowRow& row : r.rows) {
        if (!row.inconclusive) CHECK(row.margin >= 0);
    }
}
