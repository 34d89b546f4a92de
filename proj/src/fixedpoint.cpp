#include "renormlab/fixedpoint.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <mutex>

#include "renormlab/error.hpp"
#include "renormlab/scaling.hpp"

namespace rlab {

namespace {

void check_c(ext c)
{
    if (!(c > 0 && c < 0.5L)) throw Error(ErrorKind::Domain, "c must lie in (0, 1/2)");
}

ext pow6(ext v)
{
    const ext v2 = v * v;
    return v2 * v2 * v2;
}

} // namespace

ext scaling_A0(ext c)
{
    check_c(c);
    const ext c2 = c * c;
    return (2 * c2 - 6 * c2 * c + 5 * c2 * c2 - 2 * c2 * c2 * c) / pow6(c - 1);
}

ext scaling_A1(ext c)
{
    check_c(c);
    return c * c / ((c - 1) * (c - 1));
}

ext scaling_R(ext c)
{
    check_c(c);
    const ext num = ((((((c - 6) * c + 17) * c - 25) * c + 21) * c - 8) * c + 1);
    const ext den = (((2 * c - 5) * c + 6) * c - 2) * c;
    if (std::abs(den) < 1e-300L) throw Error(ErrorKind::PoleError, "denominator of R vanishes");
    return num / den;
}

ScalingFactors scaling_factors(double c)
{
    return {static_cast<double>(scaling_A0(c)), static_cast<double>(scaling_A1(c)),
            static_cast<double>(scaling_R(c))};
}

FeasibleDomain feasible_domain(double tol)
{
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
    auto F = [](ext c) { return scaling_A0(c) + scaling_A1(c) - 1; };
    // A0 + A1 = 1 has a second root at c = 1/2, so locate the first crossing by scanning
    const int n = 1000;
    ext lo = 0, hi = 0;
    bool found = false;
    ext prev_c = 0.5L / n, prev = F(prev_c);
    for (int i = 2; i < n; ++i) {
        const ext c = 0.5L * i / n;
        const ext v = F(c);
        if (prev < 0 && v >= 0) {
            lo = prev_c;
            hi = c;
            found = true;
            break;
        }
        prev_c = c;
        prev = v;
    }
    if (!found) throw Error(ErrorKind::NoRootFound, "A0 + A1 - 1 has no sign change in (0, 1/2)");
    ext mid = hi;
    for (int it = 0; it < 200; ++it) {
        mid = (lo + hi) / 2;
        const ext v = F(mid);
        if (std::abs(v) < tol && hi - lo < tol) break;
        if (v < 0) lo = mid;
        else hi = mid;
        if (hi - lo <= LDBL_EPSILON * hi) break;
    }
    return {{0.0, static_cast<double>(mid)}, static_cast<double>(std::abs(F(mid)))};
}

FixedPointCertificate solve_fixed_point(double tol)
{
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
    const FeasibleDomain dom = feasible_domain(1e-15);
    auto G = [](ext c) { return scaling_R(c) - c; };
    ext lo = 1e-3L, hi = dom.domain.hi;
    if (!(G(lo) < 0 && G(hi) > 0)) throw Error(ErrorKind::NoRootFound, "R(c) - c does not change sign on C");
    ext mid = lo;
    for (int it = 0; it < 200; ++it) {
        mid = (lo + hi) / 2;
        const ext g = G(mid);
        if (g < 0) lo = mid;
        else hi = mid;
        if (hi - lo <= LDBL_EPSILON * hi) break;
    }
    const ext c = (lo + hi) / 2;
    FixedPointCertificate cert;
    cert.c_star = static_cast<double>(c);
    cert.residual = static_cast<double>(std::abs(G(c)));
    if (!(cert.residual < tol)) throw Error(ErrorKind::NoRootFound, "bisection did not reach the tolerance");
    const ext A0 = scaling_A0(c), A1 = scaling_A1(c);
    cert.sigma_star = {static_cast<double>(A0), static_cast<double>(A1)};
    const ext h = 1e-6L;
    cert.dRdc = static_cast<double>((scaling_R(c + h) - scaling_R(c - h)) / (2 * h));
    cert.identity_defect = static_cast<double>(std::abs(A0 * A0 - A1));
    cert.domain = dom.domain;
    return cert;
}

namespace {

struct Quartic {
    ext c[5];  // p(s) = sum c[k] s^k
    ext L;

    ext dp(ext s) const { return c[1] + 2 * c[2] * s + 3 * c[3] * s * s + 4 * c[4] * s * s * s; }
    ext ddp(ext s) const { return 2 * c[2] + 6 * c[3] * s + 12 * c[4] * s * s; }
};

Quartic hermite(const GapData& d, double theta)
{
    Quartic q;
    const ext L = ext(d.x1) - d.x0;
    const ext v0 = d.v0, v1 = d.v1, m0 = L * d.d0, m1 = L * d.d1, t = ext(theta) * L * L;
    q.L = L;
    q.c[0] = v0;
    q.c[1] = m0;
    q.c[2] = -3 * v0 - 2 * m0 + 3 * v1 - m1 + t / 2;
    q.c[3] = 2 * v0 + m0 - 2 * v1 + m1 - t;
    q.c[4] = t / 2;
    return q;
}

/// Points of [0,1] where p' can attain its extrema.
std::vector<ext> critical_s(const Quartic& q)
{
    std::vector<ext> s{0, 1};
    const ext a = 12 * q.c[4], b = 6 * q.c[3], c = 2 * q.c[2];
    if (a == 0) {
        if (b != 0) s.push_back(-c / b);
    } else {
        const ext disc = b * b - 4 * a * c;
        if (disc >= 0) {
            const ext r = std::sqrt(disc);
            s.push_back((-b - r) / (2 * a));
            s.push_back((-b + r) / (2 * a));
        }
    }
    std::vector<ext> out;
    for (ext v : s)
        if (v >= 0 && v <= 1) out.push_back(v);
    return out;
}

ext second_derivative_max(const Quartic& q)
{
    std::vector<ext> s{0, 1};
    if (q.c[4] != 0) s.push_back(-6 * q.c[3] / (24 * q.c[4]));
    ext m = 0;
    for (ext v : s)
        if (v >= 0 && v <= 1) m = std::max(m, std::abs(q.ddp(v)));
    return m / (q.L * q.L);
}

bool strictly_monotone(const Quartic& q, int sign)
{
    for (ext s : critical_s(q))
        if (!(sign * q.dp(s) > 0)) return false;
    return true;
}

int data_sign(const GapData& d)
{
    if (!(d.x1 > d.x0)) throw Error(ErrorKind::InfeasibleData, "empty gap");
    const int sign = d.v1 > d.v0 ? 1 : (d.v1 < d.v0 ? -1 : 0);
    if (sign == 0 || !(sign * d.d0 > 0) || !(sign * d.d1 > 0))
        throw Error(ErrorKind::InfeasibleData, "slopes are inconsistent with a strictly monotone interpolant");
    return sign;
}

} // namespace

GapPiece gap_interpolant(const GapData& data, double theta, double lip_budget)
{
    const int sign = data_sign(data);
    const Quartic q = hermite(data, theta);
    if (!strictly_monotone(q, sign))
        throw Error(ErrorKind::InfeasibleData, "no strictly monotone interpolant for this shape parameter");
    GapPiece g;
    g.theta = theta;
    g.lip = static_cast<double>(second_derivative_max(q));
    if (g.lip > lip_budget) throw Error(ErrorKind::InfeasibleData, "derivative Lipschitz constant exceeds the budget");
    g.piece = DiffeoPiece::polynomial({data.x0, data.x1}, {q.c[0], q.c[1], q.c[2], q.c[3], q.c[4]});
    return g;
}

Interval admissible_theta(const GapData& data)
{
    const int sign = data_sign(data);
    const Quartic base = hermite(data, 0.0);
    const ext L = base.L;
    ext lo = -std::numeric_limits<ext>::infinity(), hi = std::numeric_limits<ext>::infinity();
    const int n = 4000;
    for (int i = 1; i < n; ++i) {
        const ext s = ext(i) / n;
        const ext g = s * (1 - s) * (1 - 2 * s) * L * L;  // d/ds of L^2 s^2 (1-s)^2 / 2
        if (g == 0) continue;
        // sign * (base' + theta g) > 0
        const ext bound = -base.dp(s) / g;
        if (sign * g > 0) lo = std::max(lo, bound);
        else hi = std::min(hi, bound);
    }
    if (!(lo < 0 && hi > 0) && !strictly_monotone(base, sign))
        throw Error(ErrorKind::InfeasibleData, "cubic Hermite data is not monotone");
    // stay clear of the boundary where p' touches zero
    const ext shrink = 0.98L;
    return {static_cast<double>(lo * shrink), static_cast<double>(hi * shrink)};
}

GapData junction_data(const ScalingData& sigma, int k)
{
    const ScalingBiFactor a = sigma.at(k + 1), b = sigma.at(k + 2), c = sigma.at(k + 3);
    GapData d;
    d.x0 = a.s0;
    d.x1 = 1 - a.s1;
    d.v0 = 1 - a.s1 * b.s1;
    d.d0 = -(a.s1 * b.s1 * c.s0) / (a.s0 * b.s0 * c.s1);
    d.v1 = a.s0;
    d.d1 = -a.s0 / a.s1;
    return d;
}

namespace {

double sampled_second_derivative_max(const DiffeoPiece& p)
{
    const Interval d = p.domain();
    const int n = 1025;
    double m = 0;
    for (int i = 0; i < n; ++i) {
        const ext x = ext(d.lo) + (ext(d.hi) - d.lo) * i / (n - 1);
        m = std::max(m, static_cast<double>(std::abs(p.jet(x).d2)));
    }
    return m;
}

void check_junction(const DiffeoPiece& gap, const GapData& jd, int level)
{
    const Jet<ext> l = gap.jet(jd.x0), r = gap.jet(jd.x1);
    auto close = [](ext a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
    if (!close(l.v, jd.v0, 1e-9) || !close(r.v, jd.v1, 1e-9) || !close(l.d1, jd.d0, 1e-7) ||
        !close(r.d1, jd.d1, 1e-7))
        throw Error(ErrorKind::JunctionMismatch, "gap piece does not glue C^1 at level " + std::to_string(level));
}

const FixedPointCertificate& fixed_point_cached()
{
    static std::once_flag once;
    static FixedPointCertificate cert;
    std::call_once(once, [] { cert = solve_fixed_point(1e-15); });
    return cert;
}

} // namespace

ExtensionResult build_extension_levels(const ScalingData& sigma, const std::vector<DiffeoPiece>& gaps,
                                       int depth)
{
    if (depth < 1) throw Error(ErrorKind::Domain, "extension depth must be at least 1");
    if (static_cast<int>(gaps.size()) < depth) throw Error(ErrorKind::Domain, "one gap piece per level is required");
    auto rep = std::make_shared<ExtendedRep>();
    rep->sigma = sigma;
    ExtensionResult res;
    res.depth = depth;
    res.sigma = sigma.at(1);
    ext P = 1, A = 1;
    for (int k = 0; k < depth; ++k) {
        const ScalingBiFactor b = sigma.at(k + 1);
        if (!b.in_triangle()) throw Error(ErrorKind::ImproperScalingData, "sigma leaves the triangle");
        const GapData jd = junction_data(sigma, k);
        check_junction(gaps[k], jd, k);
        ExtensionLevel lv;
        lv.s0 = b.s0;
        lv.s1 = b.s1;
        lv.gap = gaps[k];
        lv.lip = sampled_second_derivative_max(gaps[k]);
        rep->levels.push_back(lv);
        res.lip.push_back(static_cast<double>(ext(lv.lip) * P * A * A));
        P *= b.s1;
        A /= b.s0;
    }
    rep->c_tail = critical_point(sigma.shifted(depth), 1e-30).c;
    ext t = rep->c_tail;
    for (int k = depth; k >= 1; --k) t = ext(sigma.at(k).s0) * (1 - t);
    rep->c = t;
    for (std::size_t n = 1; n < res.lip.size(); ++n)
        if (res.lip[n] > res.lip[n - 1] * (1 + kLipSlack)) res.lip_nonincreasing = false;
    res.map = UnimodalMap(rep);
    return res;
}

ExtensionResult build_extension(const DiffeoPiece& gap, int depth)
{
    const FixedPointCertificate& cert = fixed_point_cached();
    const ScalingData sigma = ScalingData::constant(cert.sigma_star);
    return build_extension_levels(sigma, std::vector<DiffeoPiece>(static_cast<std::size_t>(depth), gap), depth);
}

ExtensionResult two_symbol_family(const std::vector<DiffeoPiece>& pieces, const std::vector<int>& word, int depth)
{
    if (pieces.empty()) throw Error(ErrorKind::Domain, "at least one gap piece is required");
    std::vector<DiffeoPiece> gaps;
    for (int k = 0; k < depth; ++k) {
        const int s = k < static_cast<int>(word.size()) ? word[k] : 0;
        if (s < 0 || s >= static_cast<int>(pieces.size())) throw Error(ErrorKind::Domain, "symbol out of range");
        gaps.push_back(pieces[s]);
    }
    const FixedPointCertificate& cert = fixed_point_cached();
    ExtensionResult r = build_extension_levels(ScalingData::constant(cert.sigma_star), gaps, depth);
    auto rep = std::make_shared<ExtendedRep>(*r.map.as<ExtendedRep>());
    rep->word = word;
    r.map = UnimodalMap(rep);
    return r;
}

std::vector<DiffeoPiece> default_gap_pieces(int count)
{
    if (count < 1) throw Error(ErrorKind::Domain, "count must be positive");
    const FixedPointCertificate& cert = fixed_point_cached();
    const GapData jd = junction_data(ScalingData::constant(cert.sigma_star), 0);
    const Interval th = admissible_theta(jd);
    const double span = th.hi > -th.lo ? th.hi : th.lo;
    std::vector<DiffeoPiece> out;
    for (int i = 0; i < count; ++i) {
        const double theta = span * 0.8 * i / count;
        out.push_back(gap_interpolant(jd, theta, std::numeric_limits<double>::infinity()).piece);
    }
    return out;
}

} // namespace rlab
