#include "renormlab/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quad.hpp"
#include "renormlab/error.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/scaling.hpp"

namespace rlab {

using detail::quad;

namespace {

quad A0q(quad c) { return detail::qquadratic(c, detail::qquadratic(c, 0)); }

quad Rq(quad c, quad eps) { return 1 - c / (eps * A0q(c)); }

quad dRq(quad c, quad eps)
{
    const quad h = 1e-15L;
    return (Rq(c + h, eps) - Rq(c - h, eps)) / (2 * h);
}

/// Root of F in [lo, hi] by bisection, F(lo) and F(hi) of opposite sign.
template <class Fn>
quad bisect_q(Fn F, quad lo, quad hi)
{
    quad flo = F(lo);
    if ((flo < 0) == (F(hi) < 0)) throw Error(ErrorKind::NoRootFound, "bracket has no sign change");
    for (int it = 0; it < 200; ++it) {
        const quad mid = (lo + hi) / 2;
        if (!(mid > lo && mid < hi)) break;
        const quad fm = F(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

/// Quad-precision state behind a spec; recomputed from (eps0, eps1), which is cheap.
struct Branches {
    quad eps[2];
    quad fix[2];
    quad lo, hi;  // common bracket for the inverse branches
};

Branches branches_of(double eps0, double eps1)
{
    if (!(eps0 > 0 && eps0 <= 1 && eps1 > 0 && eps1 <= 1))
        throw Error(ErrorKind::Domain, "eps values must lie in (0, 1]");
    if (eps1 > eps0) throw Error(ErrorKind::Domain, "eps0 >= eps1 is required");
    const quad cmax = static_cast<long double>(feasible_domain(1e-15).domain.hi);
    Branches b;
    b.eps[0] = eps0;
    b.eps[1] = eps1;
    for (int i = 0; i < 2; ++i) {
        const quad e = b.eps[i];
        b.fix[i] = bisect_q([e](quad c) { return Rq(c, e) - c; }, quad(1e-3L), cmax);
    }
    const quad w = std::max<long double>(static_cast<long double>(b.fix[1] - b.fix[0]), 1e-6L);
    b.lo = b.fix[0] - w;
    b.hi = b.fix[1] + w;
    return b;
}

quad inverse_branch(const Branches& b, int symbol, quad y)
{
    const quad e = b.eps[symbol];
    return bisect_q([e, y](quad c) { return Rq(c, e) - y; }, b.lo, b.hi);
}

void check_word(const SymbolWord& w)
{
    for (int s : w)
        if (s != 0 && s != 1) throw Error(ErrorKind::Domain, "symbols must be 0 or 1");
}

ScalingBiFactor sigma_at(quad c, quad eps)
{
    const quad s1 = 1 - detail::qquadratic(c, 0);
    return {static_cast<double>(eps * A0q(c)), static_cast<double>(s1)};
}

} // namespace

EpsRenorm eps_renorm_map(double c, double eps)
{
    if (!(c > 0 && c < 0.5)) throw Error(ErrorKind::Domain, "c must lie in (0, 1/2)");
    if (!(eps > 0 && eps <= 1)) throw Error(ErrorKind::Domain, "eps must lie in (0, 1]");
    const quad cq = c, e = eps;
    EpsRenorm r;
    r.sigma0 = static_cast<double>(e * A0q(cq));
    r.sigma1 = static_cast<double>(1 - detail::qquadratic(cq, 0));
    r.Rce = static_cast<double>(Rq(cq, e));
    return r;
}

HorseshoeSpec branch_fixed_points(double eps0, double eps1, double tol)
{
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
    const Branches b = branches_of(eps0, eps1);
    HorseshoeSpec s;
    s.eps0 = eps0;
    s.eps1 = eps1;
    s.c0_star = static_cast<double>(b.fix[0]);
    s.c1_star = static_cast<double>(b.fix[1]);
    for (int i = 0; i < 2; ++i)
        if (static_cast<double>(detail::qabs(Rq(b.fix[i], b.eps[i]) - b.fix[i])) > tol)
            throw Error(ErrorKind::NoRootFound, "branch fixed point not resolved to tolerance");

    quad a0 = b.fix[0], a1 = b.fix[1];
    if (b.fix[1] > b.fix[0]) {
        a0 = inverse_branch(b, 0, b.fix[1]);
        a1 = inverse_branch(b, 1, b.fix[0]);
        if (!(a0 < a1)) throw Error(ErrorKind::NotExpanding, "branch domains overlap");
    }
    s.A0 = {static_cast<double>(b.fix[0]), static_cast<double>(a0)};
    s.A1 = {static_cast<double>(a1), static_cast<double>(b.fix[1])};

    const int samples = 512;
    quad lam = std::numeric_limits<double>::infinity();
    const quad ends[2][2] = {{b.fix[0], a0}, {a1, b.fix[1]}};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k <= samples; ++k) {
            const quad c = ends[i][0] + (ends[i][1] - ends[i][0]) * k / samples;
            lam = std::min(lam, dRq(c, b.eps[i]));
        }
    s.lambda = static_cast<double>(lam);
    s.dRdc0 = static_cast<double>(dRq(b.fix[0], b.eps[0]));
    if (!(s.lambda > 1)) throw Error(ErrorKind::NotExpanding, "branch derivative does not exceed 1");

    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k <= 64; ++k) {
            const quad c = b.fix[0] + (b.fix[1] - b.fix[0]) * k / 64;
            margin = std::min(margin, sigma_at(c, b.eps[i]).boundary_distance());
        }
    s.margin = margin;
    if (!(margin > kProperMargin))
        throw Error(ErrorKind::ImproperScalingData, "induced scaling data is too close to the triangle boundary");
    return s;
}

namespace {

/// Backward pass: out[n] = c(tau^n w) for n = 0..|w|, out[|w|] = tail fixed point.
std::vector<quad> backward(const Branches& b, const SymbolWord& w, int tail)
{
    std::vector<quad> out(w.size() + 1);
    out[w.size()] = b.fix[tail];
    for (std::size_t k = w.size(); k-- > 0;) out[k] = inverse_branch(b, w[k], out[k + 1]);
    return out;
}

} // namespace

CodedPoint code_point(const HorseshoeSpec& spec, const SymbolWord& w, double accuracy, int tail)
{
    if (w.empty()) throw Error(ErrorKind::WordTooShort, "coding needs at least one symbol");
    if (tail != 0 && tail != 1) throw Error(ErrorKind::Domain, "tail symbol must be 0 or 1");
    check_word(w);
    const Branches b = branches_of(spec.eps0, spec.eps1);
    CodedPoint p;
    const double width = std::abs(spec.c1_star - spec.c0_star);
    p.error_bound = width * std::pow(spec.lambda, -static_cast<double>(w.size()));
    if (accuracy > 0 && p.error_bound > accuracy)
        throw Error(ErrorKind::WordTooShort, "word of length " + std::to_string(w.size()) +
                                                 " cannot reach the requested accuracy");
    const std::vector<quad> orbit = backward(b, w, tail);
    p.c_precise = static_cast<ext>(orbit[0]);
    p.c = static_cast<double>(orbit[0]);
    p.residual = static_cast<double>(detail::qabs(Rq(orbit[0], b.eps[w[0]]) - orbit[1]));
    return p;
}

std::vector<ext> code_orbit(const HorseshoeSpec& spec, const SymbolWord& w)
{
    check_word(w);
    const std::vector<quad> orbit = backward(branches_of(spec.eps0, spec.eps1), w, 0);
    return std::vector<ext>(orbit.begin(), orbit.end());
}

ScalingData chaotic_scaling_data(const HorseshoeSpec& spec, const SymbolWord& w)
{
    check_word(w);
    const Branches b = branches_of(spec.eps0, spec.eps1);
    const std::vector<quad> orbit = backward(b, w, 0);
    std::vector<ScalingBiFactor> values;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const ScalingBiFactor s = sigma_at(orbit[n], b.eps[w[n]]);
        if (!(s.boundary_distance() > kProperMargin))
            throw Error(ErrorKind::ImproperScalingData, "sigma(" + std::to_string(n + 1) + ") is not proper");
        values.push_back(s);
    }
    return ScalingData::symbol_driven(w, values, sigma_at(b.fix[0], b.eps[0]));
}

ChaoticMap chaotic_map(const HorseshoeSpec& spec, const SymbolWord& w, int depth, double theta_fraction)
{
    if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");
    if (!(theta_fraction >= -1 && theta_fraction <= 1)) throw Error(ErrorKind::Domain, "theta_fraction must lie in [-1, 1]");
    ChaoticMap out;
    out.theta_fraction = theta_fraction;
    out.sigma = chaotic_scaling_data(spec, w);
    std::vector<DiffeoPiece> gaps;
    for (int k = 0; k < depth; ++k) {
        const GapData jd = junction_data(out.sigma, k);
        const Interval th = admissible_theta(jd);
        const double theta = theta_fraction >= 0 ? theta_fraction * th.hi : -theta_fraction * th.lo;
        gaps.push_back(gap_interpolant(jd, theta, std::numeric_limits<double>::infinity()).piece);
    }
    out.extension = build_extension_levels(out.sigma, gaps, depth);
    const auto* rep = out.extension.map.as<ExtendedRep>();

    // c_n: the sigma-tilde-0 chain from the tail critical point, stopped at level n
    std::vector<ext> chain(static_cast<std::size_t>(depth) + 1);
    chain[depth] = rep->c_tail;
    for (int k = depth; k >= 1; --k) chain[k - 1] = ext(out.sigma.at(k).s0) * (1 - chain[k]);
    const std::vector<ext> coded = code_orbit(spec, w);
    for (int n = 0; n < depth; ++n) {
        out.c_n.push_back(static_cast<double>(chain[n]));
        out.coded.push_back(n < static_cast<int>(coded.size()) ? static_cast<double>(coded[n])
                                                                : static_cast<double>(coded.back()));
    }
    for (int n = 0; n <= std::min(3, depth - 1); ++n) {
        const UnimodalMap g = renormalize_n(out.extension.map, n);
        out.renorm_check.push_back(static_cast<double>(std::abs(g.critical_point() - chain[n])));
    }

    const IntervalTower tw = interval_tower(out.sigma, depth);
    const double c = static_cast<double>(rep->c);
    double K = 1, K0 = 0;
    for (int n = 1; n <= depth; ++n) {
        const double t = (tw.x[n - 1] - c) / (1 - c);
        const double hat = t * t;
        const double len = tw.I0[n].length();
        const double r = hat / (len * len);
        out.ratio.push_back(r);
        K = std::max({K, r, 1 / r});
        if (n < depth) K0 = std::max(K0, out.extension.lip[n] * len * len / hat);
    }
    out.K = K;
    out.K0 = K0;
    return out;
}

int dense_word_length(int m)
{
    if (m < 1 || m > 20) throw Error(ErrorKind::Domain, "cylinder depth must lie in [1, 20]");
    return (m - 1) * (1 << (m + 1)) + 2;
}

SymbolWord dense_word(int depth)
{
    if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");
    int m = 1;
    while (dense_word_length(m) < depth) ++m;
    SymbolWord w;
    for (int len = 1; len <= m; ++len)
        for (int v = 0; v < (1 << len); ++v)
            for (int k = len - 1; k >= 0; --k) w.push_back((v >> k) & 1);
    return w;
}

DensityReport density_check(const HorseshoeSpec& spec, int m)
{
    DensityReport r;
    r.m = m;
    const SymbolWord w = dense_word(dense_word_length(m));
    const std::vector<ext> orbit = code_orbit(spec, w);
    r.orbit_length = static_cast<int>(orbit.size());
    r.min_diameter = std::numeric_limits<double>::infinity();
    for (int v = 0; v < (1 << m); ++v) {
        SymbolWord code;
        for (int k = m - 1; k >= 0; --k) code.push_back((v >> k) & 1);
        const ext lo = code_point(spec, code, 0, 0).c_precise;
        const ext hi = code_point(spec, code, 0, 1).c_precise;
        const ext mid = (lo + hi) / 2;
        r.min_diameter = std::min(r.min_diameter, static_cast<double>(std::abs(hi - lo)));
        r.max_diameter = std::max(r.max_diameter, static_cast<double>(std::abs(hi - lo)));
        ext best = std::numeric_limits<ext>::infinity();
        for (ext x : orbit) best = std::min(best, std::abs(x - mid));
        r.max_distance = std::max(r.max_distance, static_cast<double>(best));
    }
    r.dense = r.max_distance < r.min_diameter;
    return r;
}

} // namespace rlab
