#include "renormlab/renorm.hpp"

#include <cfloat>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "renormlab/error.hpp"
#include "renormlab/fixedpoint.hpp"
#include "quad.hpp"

namespace rlab {

RenormCheck check_renormalizable(const UnimodalMap& f)
{
    const std::vector<ext> o = critical_orbit(f, 6);
    const ext c = o[0], f2 = o[2], f3 = o[3], f4 = o[4], f5 = o[5];
    RenormCheck r;
    r.step.I01 = Interval::hull(static_cast<double>(f2), static_cast<double>(f4));
    r.step.I11 = Interval::hull(static_cast<double>(f3), 1.0);
    r.step.h = Affine{f4, f2 - f4};
    r.step.f4c = f4;
    if (!(f2 < c && c < f4)) {
        r.failed = "c_in_I01";
        return r;
    }
    if (!(f4 < f3)) {
        r.failed = "disjoint";
        return r;
    }
    if (!(f5 >= f3)) {
        r.failed = "image_is_I11";
        return r;
    }
    r.step.c_next = r.step.h.inverse(c);
    r.ok = true;
    return r;
}

namespace {

UnimodalMap renormalize_with(const UnimodalMap& f, Precision precision)
{
    const RenormCheck chk = check_renormalizable(f);
    if (!chk.ok) throw Error(ErrorKind::NotRenormalizable, "condition " + chk.failed + " fails");
    if (const auto* v = f.as<RenormalizedViewRep>()) {
        return make_view(v->base, v->level + 1, v->H.after(chk.step.h), chk.step.c_next, v->precision);
    }
    return make_view(f, 1, chk.step.h, chk.step.c_next, precision);
}

} // namespace

UnimodalMap renormalize(const UnimodalMap& f) { return renormalize_with(f, Precision::Extended); }

UnimodalMap renormalize_n(const UnimodalMap& f, int n, Precision precision)
{
    if (n < 0) throw Error(ErrorKind::Domain, "renormalization count must be non-negative");
    UnimodalMap g = f;
    for (int k = 0; k < n; ++k) {
        try {
            g = renormalize_with(g, precision);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotRenormalizable) throw;
            throw Error(ErrorKind::NotRenormalizable, "level " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return g;
}

namespace {

/// q_c^{2^{k+1}}(c) - c
ext superstable_defect(ext c, int k)
{
    ext x = c;
    const long n = 1L << (k + 1);
    for (long i = 0; i < n; ++i) x = quadratic(c, x);
    return x - c;
}

ext bisect(const std::function<ext(ext)>& F, ext lo, ext hi, double tol)
{
    ext flo = F(lo);
    const ext fhi = F(hi);
    if (!((flo < 0) != (fhi < 0))) throw Error(ErrorKind::NoRootFound, "bracket has no sign change");
    for (int it = 0; it < 400; ++it) {
        const ext mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        const ext fm = F(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < tol * 1e-3) break;
    }
    return (lo + hi) / 2;
}

} // namespace

FeigenbaumResult feigenbaum_parameter(double tol, int cap)
{
    if (!(tol > 0)) throw Error(ErrorKind::Domain, "tolerance must be positive");
    if (cap < 3 || cap > 14) throw Error(ErrorKind::Domain, "cascade cap must lie in [3, 14]");
    const ext c_max = feasible_domain(1e-15).domain.hi;
    std::vector<ext> s{0};
    // s_1: q_c^4(c) = c, i.e. A0(c) = c
    s.push_back(bisect([](ext c) { return scaling_A0(c) - c; }, 1e-3L, c_max, tol));
    // s_2: first sign change of the period-8 defect past s_1
    {
        auto F = [](ext c) { return superstable_defect(c, 2); };
        const int n = 400;
        const ext a = s[1] + 1e-4L, b = c_max;
        ext prev = a, fprev = F(a);
        bool found = false;
        for (int i = 1; i <= n && !found; ++i) {
            const ext x = a + (b - a) * i / n;
            const ext fx = F(x);
            if ((fx < 0) != (fprev < 0)) {
                s.push_back(bisect(F, prev, x, tol));
                found = true;
            }
            prev = x;
            fprev = fx;
        }
        if (!found) throw Error(ErrorKind::NoRootFound, "no period-8 superstable parameter found");
    }
    ext delta = 4.6692L;
    for (int k = 3; k <= cap; ++k) {
        const ext step = (s[k - 1] - s[k - 2]) / delta;
        const ext guess = s[k - 1] + step;
        auto F = [k](ext c) { return superstable_defect(c, k); };
        s.push_back(bisect(F, guess - 0.3L * step, guess + 0.3L * step, tol));
        delta = (s[k - 1] - s[k - 2]) / (s[k] - s[k - 1]);
    }
    FeigenbaumResult r;
    for (ext v : s) r.superstable.push_back(static_cast<double>(v));
    for (std::size_t k = 1; k < s.size(); ++k) r.gaps.push_back(static_cast<double>(s[k] - s[k - 1]));
    for (std::size_t k = 2; k < s.size(); ++k)
        r.delta.push_back(static_cast<double>((s[k - 1] - s[k - 2]) / (s[k] - s[k - 1])));
    const std::size_t K = s.size() - 1;
    r.c_F_precise = s[K] + (s[K] - s[K - 1]) / (delta - 1);
    r.c_F = static_cast<double>(r.c_F_precise);
    return r;
}

namespace {

/// Accumulation point of the superstable cascade in quad precision: the
/// extended-precision roots are polished by Newton and the cascade is pushed
/// three levels further before extrapolating.
detail::quad feigenbaum_quad()
{
    using detail::quad;
    const FeigenbaumResult fb = feigenbaum_parameter(1e-22, 13);
    std::vector<quad> s{0};
    for (std::size_t k = 1; k < fb.superstable.size(); ++k) {
        const quad guess = static_cast<long double>(fb.superstable[k]);
        const quad gap = static_cast<long double>(fb.gaps[k - 1]);
        s.push_back(detail::polish_superstable(guess, guess - gap / 10, guess + gap / 10, static_cast<int>(k)));
    }
    const int top = 16;
    quad delta = (s[s.size() - 2] - s[s.size() - 3]) / (s.back() - s[s.size() - 2]);
    for (int k = static_cast<int>(s.size()); k <= top; ++k) {
        const quad step = (s[k - 1] - s[k - 2]) / delta;
        const quad guess = s[k - 1] + step;
        s.push_back(detail::polish_superstable(guess, guess - step * 3 / 10, guess + step * 3 / 10, k));
        delta = (s[k - 1] - s[k - 2]) / (s[k] - s[k - 1]);
    }
    return s[top] + (s[top] - s[top - 1]) / (delta - 1);
}

ReferenceMap build_reference(int depth)
{
    using detail::quad;
    static std::once_flag once;
    static quad cF = 0;
    std::call_once(once, [] { cF = feigenbaum_quad(); });

    // R^depth q_{c_F} as H^{-1} o q^{2^depth} o H, tracked in quad precision
    quad Ha = 0, Hb = 1, c = cF;
    auto F = [&](int level, quad x) {
        quad y = Ha + Hb * x;
        const long n = 1L << level;
        for (long i = 0; i < n; ++i) y = detail::qquadratic(cF, y);
        return (y - Ha) / Hb;
    };
    for (int n = 0; n < depth; ++n) {
        const quad f2 = F(n, 1), f3 = F(n, f2), f4 = F(n, f3), f5 = F(n, f4);
        if (!(f2 < c && c < f4 && f4 < f3 && f5 >= f3))
            throw Error(ErrorKind::NotRenormalizable, "reference level " + std::to_string(n + 1));
        // h(x) = f4 + (f2 - f4) x
        const quad ha = f4, hb = f2 - f4;
        c = (c - ha) / hb;
        Ha = Ha + Hb * ha;
        Hb = Hb * hb;
    }
    auto phi_exact = [&](ext u) {
        const quad r = sqrtq(1 - static_cast<quad>(u) > 0 ? 1 - static_cast<quad>(u) : quad(0));
        return static_cast<ext>(F(depth, c + (1 - c) * r));
    };
    const int degree = 64;
    ReferenceMap ref;
    ref.phi = DiffeoPiece::fit_chebyshev(phi_exact, {0, 1}, degree);
    ref.depth = depth;
    ref.c = static_cast<double>(c);
    ref.c_F = static_cast<double>(cF);
    const ext pi = std::acos(ext(-1));
    for (int j = 0; j < degree; ++j) {
        const ext u = (1 + std::cos(pi * (j + 0.5L) / degree)) / 2;
        ref.fit_error = std::max(ref.fit_error, static_cast<double>(std::abs(ref.phi(u) - phi_exact(u))));
    }
    ref.map = make_composite({ref.phi}, static_cast<ext>(c), "reference(" + std::to_string(depth) + ")");
    return ref;
}

} // namespace

const ReferenceMap& reference_fixed_point(int depth)
{
    if (depth < 1 || depth > 16) throw Error(ErrorKind::Domain, "reference depth must lie in [1, 16]");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<ReferenceMap>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(depth);
    if (it == cache.end()) it = cache.emplace(depth, std::make_unique<ReferenceMap>(build_reference(depth))).first;
    return *it->second;
}

RenormDiagnostics renorm_trajectory(const UnimodalMap& f, int N, int grid, const UnimodalMap& reference,
                                    int reference_depth, Precision precision)
{
    if (N < 0) throw Error(ErrorKind::Domain, "N must be non-negative");
    RenormDiagnostics d;
    d.grid = grid;
    d.reference_depth = reference_depth;
    UnimodalMap g = f;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            try {
                g = renormalize_with(g, precision);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotRenormalizable) throw;
                throw Error(ErrorKind::NotRenormalizable, "level " + std::to_string(n) + ": " + e.what());
            }
        }
        TrajectoryRow row;
        row.n = n;
        const DistanceResult d0 = distance(g, reference, 0, grid);
        const DistanceResult d1 = distance(g, reference, 1, grid);
        row.dist0 = d0.value;
        row.dist1 = d1.value;
        row.covered = d0.covered;
        row.c_n = static_cast<double>(g.critical_point());
        const RenormCheck chk = check_renormalizable(g);
        row.I01 = chk.step.I01;
        d.rows.push_back(row);
    }
    double log_sum = 0;
    int count = 0;
    for (std::size_t i = 1; i < d.rows.size(); ++i) {
        if (!(d.rows[i].dist0 < d.rows[i - 1].dist0)) d.monotone = false;
        if (d.rows[i].dist0 > 0 && d.rows[i - 1].dist0 > 0) {
            log_sum += std::log(d.rows[i].dist0 / d.rows[i - 1].dist0);
            ++count;
        }
    }
    d.rate = count > 0 ? std::exp(log_sum / count) : 0.0;
    return d;
}

} // namespace rlab
