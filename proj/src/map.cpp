#include "renormlab/map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renormlab/error.hpp"

namespace rlab {

const char* to_string(MapKind kind)
{
    switch (kind) {
    case MapKind::Quadratic: return "quadratic";
    case MapKind::PiecewiseAffine: return "piecewise-affine";
    case MapKind::Extended: return "extended";
    case MapKind::Composite: return "composite";
    case MapKind::RenormalizedView: return "renormalized-view";
    }
    return "?";
}

double eval_quadratic(double c, double x)
{
    if (!(c > 0 && c < 1)) throw Error(ErrorKind::Domain, "critical point must lie in (0,1)");
    return quadratic(c, x);
}

Jet<ext> QuadraticRep::jet(ext x) const
{
    const ext k = (1 - c) * (1 - c);
    return {quadratic(c, x), -2 * (x - c) / k, -2 / k};
}

std::string QuadraticRep::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "quadratic(" << static_cast<double>(c) << ")";
    return os.str();
}

UnimodalMap make_quadratic(double c)
{
    if (!(c > 0 && c < 1)) throw Error(ErrorKind::Domain, "critical point must lie in (0,1)");
    auto r = std::make_shared<QuadraticRep>();
    r->c = c;
    return UnimodalMap(r);
}

const AffineBranch& PiecewiseAffineRep::branch_at(ext x) const
{
    auto it = std::upper_bound(branches.begin(), branches.end(), x,
                               [](ext v, const AffineBranch& b) { return v < b.lo; });
    if (it != branches.begin()) {
        const AffineBranch& b = *std::prev(it);
        if (x <= b.hi) return b;
    }
    const Interval core = tower.I0[depth];
    if (core.contains(static_cast<double>(x)))
        throw Error(ErrorKind::DepthExceeded, "point lies in the unresolved core I0[depth]");
    throw Error(ErrorKind::OutsideDomain, "point lies in a gap of the piecewise-affine domain");
}

Jet<ext> PiecewiseAffineRep::jet(ext x) const
{
    const AffineBranch& b = branch_at(x);
    return {b.map(x), b.map.b, 0};
}

std::string PiecewiseAffineRep::describe() const
{
    std::ostringstream os;
    os << "piecewise(" << sigma.describe() << ", depth=" << depth << ")";
    return os.str();
}

Jet<ext> ExtendedRep::jet_impl(ext x, bool derivatives) const
{
    ext xn = x, P = 1, A = 1;
    Jet<ext> y{};
    bool done = false;
    for (const ExtensionLevel& lv : levels) {
        const ext s0 = lv.s0, s1 = lv.s1;
        if (xn >= 1 - s1) {
            y = {s0 * (1 - xn) / s1, -s0 / s1, 0};
            done = true;
            break;
        }
        if (xn > s0) {
            y = derivatives ? lv.gap.jet(xn) : Jet<ext>{lv.gap(xn), 0, 0};
            done = true;
            break;
        }
        A *= -1 / s0;
        xn = 1 - xn / s0;
        P *= s1;
    }
    if (!done) {
        const ext k = (1 - c_tail) * (1 - c_tail);
        y = {quadratic(c_tail, xn), -2 * (xn - c_tail) / k, -2 / k};
    }
    return {1 - P * (1 - y.v), P * y.d1 * A, P * y.d2 * A * A};
}

std::string ExtendedRep::describe() const
{
    std::ostringstream os;
    os << "extension(" << sigma.describe() << ", depth=" << levels.size() << ")";
    return os.str();
}

ext CompositeRep::eval(ext x) const
{
    ext u = quadratic(c, x);
    for (const auto& p : outer) u = p(u);
    return u;
}

Jet<ext> CompositeRep::jet(ext x) const
{
    const ext k = (1 - c) * (1 - c);
    Jet<ext> j{quadratic(c, x), -2 * (x - c) / k, -2 / k};
    for (const auto& p : outer) {
        const Jet<ext> g = p.jet(j.v);
        j = {g.v, g.d1 * j.d1, g.d2 * j.d1 * j.d1 + g.d1 * j.d2};
    }
    return j;
}

UnimodalMap make_composite(std::vector<DiffeoPiece> outer, ext c, std::string label)
{
    if (!(c > 0 && c < 1)) throw Error(ErrorKind::Domain, "critical point must lie in (0,1)");
    auto r = std::make_shared<CompositeRep>();
    r->outer = std::move(outer);
    r->c = c;
    r->label = std::move(label);
    return UnimodalMap(r);
}

ext RenormalizedViewRep::eval(ext x) const
{
    ext y = H(x);
    const long n = 1L << level;
    if (precision == Precision::Double) {
        for (long i = 0; i < n; ++i) y = static_cast<double>(base(y));
    } else {
        for (long i = 0; i < n; ++i) y = base(y);
    }
    return H.inverse(y);
}

Jet<ext> RenormalizedViewRep::jet(ext x) const
{
    Jet<ext> j{H(x), 1, 0};
    const long n = 1L << level;
    for (long i = 0; i < n; ++i) {
        const Jet<ext> g = base.jet(j.v);
        j = {g.v, g.d1 * j.d1, g.d2 * j.d1 * j.d1 + g.d1 * j.d2};
        if (precision == Precision::Double) j.v = static_cast<double>(j.v);
    }
    return {H.inverse(j.v), j.d1, j.d2 * H.b};
}

std::string RenormalizedViewRep::describe() const
{
    std::ostringstream os;
    os << "R^" << level << "[" << base.describe() << "]";
    return os.str();
}

UnimodalMap make_view(UnimodalMap base, int level, Affine H, ext c, Precision p)
{
    auto r = std::make_shared<RenormalizedViewRep>();
    r->base = std::move(base);
    r->level = level;
    r->H = H;
    r->c = c;
    r->precision = p;
    return UnimodalMap(r);
}

double eval_map(const UnimodalMap& f, double x) { return f(x); }

std::vector<double> chebyshev_grid(int n)
{
    if (n < 2) throw Error(ErrorKind::Domain, "grid needs at least two points");
    std::vector<double> g(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) g[i] = 0.5 * (1 - std::cos(pi * i / (n - 1)));
    g.front() = 0;
    g.back() = 1;
    return g;
}

std::vector<double> chebyshev_grid_split(int n, double c)
{
    if (n < 3) throw Error(ErrorKind::Domain, "split grid needs at least three points");
    if (!(c > 0 && c < 1)) throw Error(ErrorKind::Domain, "split point must lie in (0,1)");
    const int nl = (n + 1) / 2 + ((n % 2 == 0) ? 1 : 0);
    const int nr = n - nl + 1;
    std::vector<double> g;
    g.reserve(n);
    for (double t : chebyshev_grid(nl)) g.push_back(c * t);
    const auto right = chebyshev_grid(nr);
    for (int i = 1; i < nr; ++i) g.push_back(c + (1 - c) * right[i]);
    g.back() = 1;
    return g;
}

namespace {

bool undefined(const Error& e)
{
    return e.kind() == ErrorKind::OutsideDomain || e.kind() == ErrorKind::DepthExceeded;
}

} // namespace

DistanceResult distance_on(const UnimodalMap& f, const UnimodalMap& g, int order,
                           const std::vector<double>& grid)
{
    if (order != 0 && order != 1) throw Error(ErrorKind::Domain, "distance order must be 0 or 1");
    DistanceResult r;
    r.grid = static_cast<int>(grid.size());
    const double cf = static_cast<double>(f.critical_point());
    const double cg = static_cast<double>(g.critical_point());
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid[i];
        Jet<ext> a, b;
        try {
            if (order == 0) {
                a.v = f(ext(x));
                b.v = g(ext(x));
            } else {
                a = f.jet(x);
                b = g.jet(x);
            }
        } catch (const Error& e) {
            if (undefined(e)) continue;
            throw;
        }
        ++r.covered;
        r.c0 = std::max(r.c0, static_cast<double>(std::abs(a.v - b.v)));
        if (order == 1) {
            const double lo = grid[i == 0 ? 0 : i - 1], hi = grid[i + 1 < n ? i + 1 : i];
            if ((lo <= cf && cf <= hi) || (lo <= cg && cg <= hi)) {
                ++r.excluded;
                continue;
            }
            r.c1 = std::max(r.c1, static_cast<double>(std::abs(a.d1 - b.d1)));
        }
    }
    r.value = r.c0 + r.c1;
    return r;
}

DistanceResult distance(const UnimodalMap& f, const UnimodalMap& g, int order, int grid)
{
    return distance_on(f, g, order, chebyshev_grid_split(grid, static_cast<double>(f.critical_point())));
}

DiffeoPiece rescale_restriction(const UnimodalMap& f, Interval ab)
{
    const double c = static_cast<double>(f.critical_point());
    if (ab.lo < c && c < ab.hi) throw Error(ErrorKind::NotMonotone, "interval contains the critical point");
    auto piece = DiffeoPiece::function(ab, [f](ext x) { return f.jet(x); });
    return rescale_restriction(piece, ab);
}

std::vector<ext> critical_orbit(const UnimodalMap& f, int length)
{
    std::vector<ext> orbit;
    orbit.reserve(length);
    if (length > 0) orbit.push_back(f.critical_point());
    if (length > 1) orbit.push_back(1);
    while (static_cast<int>(orbit.size()) < length) orbit.push_back(f(orbit.back()));
    return orbit;
}

} // namespace rlab
