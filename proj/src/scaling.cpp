#include "renormlab/scaling.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "renormlab/error.hpp"

namespace rlab {

namespace {

Affine tilde0(const ScalingBiFactor& b) { return {b.s0, -ext(b.s0)}; }
Affine tilde1(const ScalingBiFactor& b) { return {1 - ext(b.s1), b.s1}; }

ScalingBiFactor checked(const ScalingData& sigma, int n)
{
    const ScalingBiFactor b = sigma.at(n);
    if (!b.in_triangle())
        throw Error(ErrorKind::ImproperScalingData, "sigma(" + std::to_string(n) + ") is outside the triangle");
    return b;
}

Interval hull_of(const Affine& a, ext t0, ext t1)
{
    const ext u = a(t0), v = a(t1);
    return u <= v ? Interval{static_cast<double>(u), static_cast<double>(v)}
                  : Interval{static_cast<double>(v), static_cast<double>(u)};
}

} // namespace

IntervalTower interval_tower(const ScalingData& sigma, int depth)
{
    if (depth < 1) throw Error(ErrorKind::Domain, "tower depth must be at least 1");
    IntervalTower t;
    t.depth = depth;
    t.I0.resize(depth + 1);
    t.I1.resize(depth + 1);
    t.x.resize(depth + 1);
    t.y.resize(depth + 1);
    t.H.resize(depth + 1);
    t.orientation.resize(depth + 1);
    t.H[0] = Affine{0, 1};
    t.I0[0] = {0, 1};
    t.x[0] = 0;
    t.orientation[0] = 1;
    for (int k = 1; k <= depth; ++k) {
        const ScalingBiFactor b = checked(sigma, k);
        t.H[k] = t.H[k - 1].after(tilde0(b));
        t.I0[k] = hull_of(t.H[k], 0, 1);
        t.I1[k] = hull_of(t.H[k - 1], 1 - ext(b.s1), 1);
        t.x[k] = static_cast<double>(t.H[k](ext(0)));
        t.y[k] = static_cast<double>(t.H[k - 1](1 - ext(b.s1)));
        t.orientation[k] = t.H[k].b > 0 ? 1 : -1;
    }
    t.c = static_cast<double>(t.H[depth](ext(0.5)));
    t.c_error = static_cast<double>(std::abs(t.H[depth].b));
    return t;
}

CriticalPointEstimate critical_point(const ScalingData& sigma, double tol)
{
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
    Affine H{0, 1};
    const int cap = 100000;
    for (int n = 1; n <= cap; ++n) {
        H = H.after(tilde0(checked(sigma, n)));
        if (std::abs(H.b) < tol || std::abs(H.b) < LDBL_EPSILON) {
            return {H(ext(0.5)), static_cast<double>(std::abs(H.b)), n};
        }
    }
    throw Error(ErrorKind::ImproperScalingData, "tower does not shrink below the tolerance");
}

UnimodalMap build_piecewise_map(const ScalingData& sigma, int depth, BranchRule rule)
{
    auto rep = std::make_shared<PiecewiseAffineRep>();
    rep->sigma = sigma;
    rep->depth = depth;
    rep->rule = rule;
    rep->tower = interval_tower(sigma, depth);
    rep->c = critical_point(sigma, 1e-30).c;
    const ext c = rep->c;
    Affine V{0, 1};
    for (int n = 1; n <= depth; ++n) {
        const ScalingBiFactor b = sigma.at(n);
        const Affine& H = rep->tower.H[n - 1];
        AffineBranch br;
        br.level = n;
        const ext a0 = H(1 - ext(b.s1)), a1 = H(ext(1));
        br.lo = std::min(a0, a1);
        br.hi = std::max(a0, a1);
        if (rule == BranchRule::Interpolate) {
            const ext qa = quadratic(c, br.lo), qb = quadratic(c, br.hi);
            const ext slope = (qb - qa) / (br.hi - br.lo);
            br.map = Affine{qa - slope * br.lo, slope};
        } else {
            const Affine top{ext(b.s0) / b.s1, -ext(b.s0) / b.s1};
            br.map = V.after(top).after(H.inverted());
        }
        rep->branches.push_back(br);
        V = V.after(tilde1(b));
    }
    std::sort(rep->branches.begin(), rep->branches.end(),
              [](const AffineBranch& a, const AffineBranch& b) { return a.lo < b.lo; });
    return UnimodalMap(rep);
}

ScalingData shift_scaling(const ScalingData& sigma, int n) { return sigma.shifted(n); }

namespace {

const AffineBranch* find_branch(const PiecewiseAffineRep& f, ext x, ext tol)
{
    for (const auto& b : f.branches)
        if (x >= b.lo - tol && x <= b.hi + tol) return &b;
    return nullptr;
}

} // namespace

InfRenormVerdict check_inf_renorm(const ScalingData& sigma, int depth)
{
    if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");
    const UnimodalMap fm = build_piecewise_map(sigma, depth + 2);
    const auto& f = *fm.as<PiecewiseAffineRep>();
    const IntervalTower& tw = f.tower;
    InfRenormVerdict v;
    for (int n = 1; n <= depth; ++n) {
        const long steps = (1L << n) - 1;
        const ext tol = 10 * ext(DBL_EPSILON) * ext(1L << n);
        const ext x_prev = (n == 1) ? ext(0) : tw.H[n - 1](ext(0));
        const AffineBranch* b0 = find_branch(f, x_prev, tol);
        if (b0 == nullptr) throw Error(ErrorKind::DepthExceeded, "x_{n-1} is not covered by the branches");
        ext lo = b0->map(x_prev), hi = 1;
        ext free_pt = lo;  // the endpoint not pinned at 1
        bool maximal = false;
        std::vector<Interval> orbit;
        orbit.push_back(Interval::hull(static_cast<double>(lo), static_cast<double>(hi)));
        std::string failure;
        for (long k = 0; k < steps; ++k) {
            const ext a = std::min(lo, hi), b = std::max(lo, hi);
            const AffineBranch* br = find_branch(f, a, tol);
            if (br == nullptr || b > br->hi + tol) {
                const Interval core = tw.I0[depth + 2];
                if (core.intersects(Interval::hull(static_cast<double>(a), static_cast<double>(b))) &&
                    br == nullptr)
                    throw Error(ErrorKind::DepthExceeded, "orbit entered the unresolved core");
                failure = "orbit interval is not contained in a single affine branch at step " + std::to_string(k);
                break;
            }
            if (std::abs(free_pt - br->lo) <= tol || std::abs(free_pt - br->hi) <= tol) maximal = true;
            lo = br->map(lo);
            hi = br->map(hi);
            free_pt = br->map(free_pt);
            orbit.push_back(Interval::hull(static_cast<double>(lo), static_cast<double>(hi)));
        }
        if (failure.empty()) {
            const ext a = std::min(lo, hi), b = std::max(lo, hi);
            const ext t0 = tw.H[n](ext(0)), t1 = tw.H[n](ext(1));
            const ext I0lo = std::min(t0, t1), I0hi = std::max(t0, t1);
            if (std::abs(a - I0lo) > tol || std::abs(b - I0hi) > tol)
                failure = "image of [f(x_{n-1}),1] is not I0^n";
            else if (!maximal)
                failure = "affine domain is not maximal";
        }
        v.levels_checked = n;
        if (!failure.empty()) {
            v.ok = false;
            v.failed_level = n;
            v.reason = failure;
            v.witness = std::move(orbit);
            return v;
        }
    }
    return v;
}

PiecewiseConjugacy piecewise_conjugacy(const UnimodalMap& f_sigma)
{
    const auto* rep = f_sigma.as<PiecewiseAffineRep>();
    if (rep == nullptr) throw Error(ErrorKind::Domain, "not a piecewise-affine map");
    const ScalingBiFactor b = rep->sigma.at(1);
    PiecewiseConjugacy pc;
    pc.h = tilde0(b);
    if (rep->rule == BranchRule::Interpolate) {
        const ext q0 = quadratic(rep->c, ext(0));
        pc.hhat = Affine{q0, 1 - q0};
    } else {
        pc.hhat = tilde1(b);
    }
    return pc;
}

UnimodalMap renormalize_piecewise(const UnimodalMap& f_sigma)
{
    const auto* rep = f_sigma.as<PiecewiseAffineRep>();
    if (rep == nullptr) throw Error(ErrorKind::Domain, "not a piecewise-affine map");
    if (rep->depth < 2) throw Error(ErrorKind::DepthExceeded, "renormalization needs depth at least 2");
    return build_piecewise_map(rep->sigma.shifted(1), rep->depth - 1, rep->rule);
}

} // namespace rlab
