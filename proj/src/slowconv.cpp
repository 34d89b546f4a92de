#include "renormlab/slowconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "renormlab/error.hpp"

namespace rlab {

namespace {

ext w0(ext x) { return x * x * x * (1 - x) * (1 - x) * (1 - x) * (1 + x); }

ext w1(ext x)
{
    // d/dx of x^3 - 2x^4 + 2x^6 - x^7
    return 3 * x * x - 8 * x * x * x + 12 * x * x * x * x * x - 7 * x * x * x * x * x * x;
}

ext w2(ext x) { return 6 * x - 24 * x * x + 60 * x * x * x * x - 42 * x * x * x * x * x; }

ext w3(ext x) { return 6 - 48 * x + 240 * x * x * x - 210 * x * x * x * x; }

struct BumpConstants {
    ext max_w = 0, max_w1 = 0, max_w2 = 0, max_w3 = 0, argmax = 0;
};

const BumpConstants& bump_constants()
{
    static const BumpConstants k = [] {
        BumpConstants b;
        const int n = 1 << 16;
        for (int i = 0; i <= n; ++i) {
            const ext x = ext(i) / n;
            if (w0(x) > b.max_w) {
                b.max_w = w0(x);
                b.argmax = x;
            }
            b.max_w1 = std::max(b.max_w1, std::abs(w1(x)));
            b.max_w2 = std::max(b.max_w2, std::abs(w2(x)));
            b.max_w3 = std::max(b.max_w3, std::abs(w3(x)));
        }
        // polish the interior maximum: w1 = 0
        for (int it = 0; it < 20; ++it) b.argmax -= w1(b.argmax) / w2(b.argmax);
        b.max_w = w0(b.argmax);
        return b;
    }();
    return k;
}

/// Largest component of a minus b.
Interval subtract(Interval a, Interval b)
{
    if (!a.intersects(b)) return a;
    const Interval left{a.lo, std::max(a.lo, std::min(a.hi, b.lo))};
    const Interval right{std::min(a.hi, std::max(a.lo, b.hi)), a.hi};
    return left.length() >= right.length() ? left : right;
}

double q(ext c, double x) { return static_cast<double>(quadratic(c, ext(x))); }

Interval q_image(ext c, Interval I)
{
    if (I.lo < c && c < I.hi) return {std::min(q(c, I.lo), q(c, I.hi)), 1.0};
    return Interval::hull(q(c, I.lo), q(c, I.hi));
}

} // namespace

BumpSpec bump_family(double t)
{
    const BumpConstants& k = bump_constants();
    BumpSpec b;
    b.t = t;
    b.t_max = static_cast<double>(1 / (2 * k.max_w1));
    if (!(t >= 0)) throw Error(ErrorKind::Domain, "bump amplitude must be non-negative");
    if (t > b.t_max) throw Error(ErrorKind::TooLarge, "bump amplitude " + std::to_string(t) + " exceeds t_max");
    const ext T = t;
    b.piece = DiffeoPiece::polynomial({0.0, 1.0}, {0, 1, 0, T, -2 * T, 0, 2 * T, -T});
    b.C1 = static_cast<double>(k.max_w);
    b.C2 = static_cast<double>(k.max_w2);
    if (t > 0) {
        ext dev = 0, eta = 0;
        const int n = 4096;
        for (int i = 0; i <= n; ++i) {
            const ext x = ext(i) / n;
            const Jet<ext> j = b.piece.jet(x);
            dev = std::max(dev, std::abs(j.v - x));
            eta = std::max(eta, std::abs(j.d2 / j.d1));
        }
        b.C1 = static_cast<double>(dev / T);
        b.C2 = static_cast<double>(eta / T);
    }
    return b;
}

GapSchedule gap_schedule(const std::vector<double>& d, int depth, int reference_depth)
{
    if (depth < 0 || depth > 10) throw Error(ErrorKind::Domain, "slow depth must lie in [0, 10]");
    if (static_cast<int>(d.size()) < depth + 1) throw Error(ErrorKind::Domain, "d needs depth + 1 entries");
    const ReferenceMap& ref = reference_fixed_point(reference_depth);
    const ext c = ref.c;
    GapSchedule s;
    s.reference_depth = reference_depth;
    s.d.assign(d.begin(), d.begin() + depth + 1);
    s.m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4096; ++i) s.m = std::min(s.m, static_cast<double>(ref.phi.jet(ext(i) / 4096).d1));

    for (int n = 0; n <= depth; ++n) {
        const UnimodalMap g = renormalize_n(ref.map, n);
        Affine H;
        if (n > 0) H = g.as<RenormalizedViewRep>()->H;
        const std::vector<ext> o = critical_orbit(g, 5);
        const double x1 = static_cast<double>(o[4]), y1 = static_cast<double>(o[3]);
        const Interval G = Interval::hull(static_cast<double>(H(ext(x1))), static_cast<double>(H(ext(y1))));
        const Interval child0 = Interval::hull(static_cast<double>(H(ext(0))), static_cast<double>(H(ext(x1))));
        const Interval child1 = Interval::hull(static_cast<double>(H(ext(y1))), static_cast<double>(H(ext(1))));
        Interval U = subtract(subtract(q_image(c, G), q_image(c, child0)), q_image(c, child1));
        if (!(U.length() > 0)) throw Error(ErrorKind::GapOverlap, "gap " + std::to_string(n) + " is covered by the Cantor set image");
        s.G.push_back(G);
        s.U.push_back(U);
        // U_n seen from level n: 1 - u = kappa (1 - u'), kappa = (H.b (1 - c_n) / (1 - c))^2
        const ext cn = g.critical_point();
        const ext kap = (H.b * (1 - cn) / (1 - c)) * (H.b * (1 - cn) / (1 - c));
        const ext lo = 1 - (1 - ext(U.lo)) / kap, hi = 1 - (1 - ext(U.hi)) / kap;
        const ext L0 = s.U.front().length();
        s.mismatch.push_back(static_cast<double>((std::abs((hi - lo) - L0) + std::abs(lo - s.U.front().lo)) / L0));
    }
    std::vector<Interval> sorted = s.U;
    std::sort(sorted.begin(), sorted.end(), [](Interval a, Interval b) { return a.lo < b.lo; });
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
        if (!(sorted[k].hi < sorted[k + 1].lo)) throw Error(ErrorKind::GapOverlap, "perturbed gaps intersect");

    const BumpConstants& k = bump_constants();
    s.C1 = static_cast<double>(k.max_w);
    s.U0 = s.U.front().length();
    for (double dn : s.d) {
        if (!(dn >= 0)) throw Error(ErrorKind::Domain, "d_n must be non-negative");
        s.t.push_back(dn / (s.m * s.C1 * s.U0));
    }
    return s;
}

double max_amplitude(int reference_depth)
{
    const GapSchedule s = gap_schedule({0.0}, 0, reference_depth);
    return bump_family(0).t_max * s.m * s.C1 * s.U0;
}

SlowMap build_slow_map(const std::vector<double>& d, int depth, int reference_depth)
{
    SlowMap out;
    out.depth = depth;
    out.schedule = gap_schedule(d, depth, reference_depth);
    std::vector<DiffeoPiece> bumps;
    for (double t : out.schedule.t) bumps.push_back(bump_family(t).piece);
    const std::vector<Interval> U = out.schedule.U;
    out.psi = DiffeoPiece::function({0.0, 1.0}, [U, bumps](ext u) {
        for (std::size_t k = 0; k < U.size(); ++k) {
            if (u > U[k].lo && u < U[k].hi) {
                const ext L = ext(U[k].hi) - U[k].lo;
                const Jet<ext> j = bumps[k].jet((u - U[k].lo) / L);
                return Jet<ext>{U[k].lo + L * j.v, j.d1, j.d2 / L};
            }
        }
        return Jet<ext>{u, 1, 0};
    });
    const ReferenceMap& ref = reference_fixed_point(reference_depth);
    out.map = make_composite({out.psi, ref.phi}, ref.c, "slow(depth=" + std::to_string(depth) + ")");
    renormalize_n(out.map, depth);
    const int len = (1 << depth) + 1;
    const std::vector<ext> a = critical_orbit(out.map, len), b = critical_orbit(ref.map, len);
    for (int k = 0; k < len; ++k) out.orbit_defect = std::max(out.orbit_defect, static_cast<double>(std::abs(a[k] - b[k])));
    return out;
}

SlowReport verify_slow(const SlowMap& s, int N, int grid)
{
    if (N < 0 || N > s.depth) throw Error(ErrorKind::Domain, "N must lie in [0, depth]");
    const ReferenceMap& ref = reference_fixed_point(s.schedule.reference_depth);
    const BumpConstants& k = bump_constants();
    const Interval U0 = s.schedule.U.front();
    const ext ustar = U0.lo + ext(U0.length()) * k.argmax;
    SlowReport rep;
    for (int n = 0; n <= N; ++n) {
        const UnimodalMap g = renormalize_n(s.map, n);
        const UnimodalMap gr = renormalize_n(ref.map, n);
        const ext cg = g.critical_point();
        std::vector<double> xs = chebyshev_grid_split(grid, static_cast<double>(cg));
        const ext r = (1 - cg) * std::sqrt(1 - ustar);
        xs.push_back(static_cast<double>(cg + r));
        if (cg - r > 0) xs.push_back(static_cast<double>(cg - r));
        std::sort(xs.begin(), xs.end());
        SlowRow row;
        row.n = n;
        row.d = s.schedule.d[n];
        row.measured = distance_on(g, ref.map, 0, xs).c0;
        row.budget = distance(gr, ref.map, 0, grid).c0 + row.d * s.schedule.mismatch[n] + 1e-15;
        const BumpSpec b = bump_family(s.schedule.t[n]);
        ext chain = 0;
        for (int i = 0; i <= 2048; ++i) {
            const ext sv = ext(i) / 2048;
            const ext u = U0.lo + ext(U0.length()) * sv, v = U0.lo + ext(U0.length()) * b.piece(sv);
            chain = std::max(chain, std::abs(ref.phi(v) - ref.phi(u)));
        }
        row.chain = static_cast<double>(chain);
        row.margin = row.measured - (row.d - row.budget);
        row.inconclusive = row.budget >= row.d && row.d > 0;
        if (row.inconclusive) rep.inconclusive = true;
        else if (row.margin < 0) rep.ok = false;
        if (row.chain < row.d * (1 - 1e-12)) rep.ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

RegularityProfile slow_regularity(const SlowMap& s, int grid)
{
    RegularityOptions o;
    o.grid = grid;
    // u = q_c(x) is stored to one ulp near 1; through the bump on U_n that moves
    // eps by about 2 (1 - u) t_n max|w3| / |U_n|^2 per unit of u
    const BumpConstants& k = bump_constants();
    for (std::size_t n = 0; n < s.schedule.U.size(); ++n) {
        const Interval U = s.schedule.U[n];
        const ext slope = 2 * (1 - ext(U.lo)) * s.schedule.t[n] * k.max_w3 / (ext(U.length()) * U.length());
        o.noise = std::max(o.noise, static_cast<double>(4 * std::numeric_limits<ext>::epsilon() * slope));
    }
    const double c = static_cast<double>(s.map.critical_point());
    if (s.schedule.G.size() > 2) {
        const Interval G2 = s.schedule.G[2];
        o.window0 = std::max(std::abs(G2.lo - c), std::abs(G2.hi - c));
    }
    return regularity_profiles(s.map, o);
}

std::vector<double> d_sequence(const std::string& spec, int count)
{
    if (count < 1) throw Error(ErrorKind::Domain, "count must be positive");
    std::string name = spec, arg;
    if (const auto p = spec.find(':'); p != std::string::npos) {
        name = spec.substr(0, p);
        arg = spec.substr(p + 1);
    }
    double k = 1;
    if (arg == "max") k = max_amplitude();
    else if (!arg.empty()) {
        std::size_t used = 0;
        try {
            k = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size() || !(k >= 0)) throw Error(ErrorKind::Domain, "bad amplitude in d-spec '" + spec + "'");
    }
    std::vector<double> d;
    for (int n = 0; n < count; ++n) {
        if (name == "harmonic") d.push_back(k / (n + 1));
        else if (name == "geometric") d.push_back(k * std::ldexp(1.0, -n));
        else if (name == "zero") d.push_back(0);
        else throw Error(ErrorKind::Domain, "unknown d-spec '" + spec + "'");
    }
    return d;
}

} // namespace rlab
