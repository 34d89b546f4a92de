#include "renormlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "renormlab/error.hpp"
#include "renormlab/quadrature.hpp"
#include "renormlab/renorm.hpp"

namespace rlab {

namespace {

constexpr ext kAbsTol = 1e-19L;
constexpr ext kRelTol = 1e-14L;
constexpr int kPanels = 40;
constexpr double kSnap = 1e-12;

/// One side of c in the variable r = |x - c|, with cumulative integrals
/// stored at geometric breakpoints r_k = R 2^{k - kPanels}.
class Side {
public:
    Side(const UnimodalMap& f, ext c, ext E, int sign, ext R, ext noise = 0)
        : f_(f), c_(c), E_(E), s_(sign), R_(R), noise_(noise)
    {
        for (int k = 0; k <= kPanels; ++k) br_.push_back(std::ldexp(R, k - kPanels));
        ext from = 0, acc = 0;
        for (ext r : br_) {
            for (const QuadLeaf& l : adaptive_leaves([&](ext t) { return eps(t); }, from, r, kAbsTol, kRelTol, 40, noise_)) {
                leaf_a_.push_back(l.a);
                leaf_cum_.push_back(acc);
                acc += l.value;
            }
            from = r;
        }
        B_.assign(br_.size(), 0);
        Bh_.assign(br_.size(), 0);
        L1_.assign(br_.size(), 0);
        ext prev = 0;
        ext b = 0, bh = 0, l1 = 0;
        for (std::size_t k = 0; k < br_.size(); ++k) {
            const ext r = br_[k];
            b += quad([&](ext t) { return delta(t) / t; }, prev, r);
            B_[k] = b;
            bh += quad([&](ext t) { return std::abs(delta(t)) / t; }, prev, r);
            Bh_[k] = bh;
            l1 += quad([&](ext t) { return std::abs(delta(t)) / ((1 + eps_bar(t)) * t); }, prev, r);
            L1_[k] = l1;
            prev = r;
        }
    }

    ext eps(ext r) const
    {
        const Jet<ext> j = f_.jet(c_ + s_ * r);
        return j.d2 / E_ - 1;
    }
    ext eps_bar(ext r) const
    {
        // primitive of eps: leaf table plus one Kronrod panel inside the leaf
        const auto it = std::upper_bound(leaf_a_.begin(), leaf_a_.end(), r);
        const std::size_t i = it == leaf_a_.begin() ? 0 : static_cast<std::size_t>(it - leaf_a_.begin()) - 1;
        const ext tail = r > leaf_a_[i] ? gauss_kronrod([&](ext t) { return eps(t); }, leaf_a_[i], r).value : 0;
        return (leaf_cum_[i] + tail) / r;
    }
    ext delta(ext r) const { return eps(r) - eps_bar(r); }
    ext beta(ext r) const { return cumulative(B_, r, [&](ext t) { return delta(t) / t; }); }
    ext beta_hat(ext r) const { return cumulative(Bh_, r, [&](ext t) { return std::abs(delta(t)) / t; }); }
    ext beta_hat_total() const { return Bh_.back(); }
    ext l1_total() const { return L1_.back(); }
    ext R() const { return R_; }

private:
    ext quad(const std::function<ext(ext)>& g, ext a, ext b) const
    {
        // the integrands carry a 1/t factor
        return integrate(g, a, b, kAbsTol, kRelTol, 30, noise_ / (a > 0 ? a : b)).value;
    }
    /// Index k with r in (br_[k-1], br_[k]]; 0 for the innermost panel.
    std::size_t panel(ext r) const
    {
        const auto it = std::lower_bound(br_.begin(), br_.end(), r);
        return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - br_.begin(), br_.size() - 1));
    }
    ext cumulative(const std::vector<ext>& table, ext r, const std::function<ext(ext)>& g) const
    {
        const std::size_t k = panel(r);
        const ext base = k == 0 ? 0 : table[k - 1];
        const ext start = k == 0 ? 0 : br_[k - 1];
        return base + quad(g, start, r);
    }

    const UnimodalMap& f_;
    ext c_, E_;
    int s_;
    ext R_;
    ext noise_;
    std::vector<ext> br_, B_, Bh_, L1_;
    std::vector<ext> leaf_a_, leaf_cum_;
};

ext second_derivative_at_c(const UnimodalMap& f, double threshold)
{
    const ext E = f.jet(f.critical_point()).d2;
    if (!(std::abs(E) >= threshold)) throw Error(ErrorKind::FlatCritical, "second derivative at c is below threshold");
    return E;
}

} // namespace

RegularityProfile regularity_profiles(const UnimodalMap& f, const RegularityOptions& o)
{
    if (o.grid < 3) throw Error(ErrorKind::Domain, "grid must have at least 3 points");
    if (o.refinements < 2) throw Error(ErrorKind::Domain, "at least two window refinements are required");
    const ext c = f.critical_point();
    const ext E = second_derivative_at_c(f, o.flat_threshold);
    RegularityProfile p;
    p.E = static_cast<double>(E);
    const Side right(f, c, E, +1, 1 - c, o.noise), left(f, c, E, -1, c, o.noise);

    for (double x : chebyshev_grid_split(o.grid, static_cast<double>(c))) {
        const ext d = ext(x) - c;
        if (std::abs(d) < 1e-15L) continue;
        const Side& s = d > 0 ? right : left;
        const ext r = std::abs(d);
        const ext e = s.eps(r), eb = s.eps_bar(r), b = s.beta(r);
        p.x.push_back(x);
        p.eps.push_back(static_cast<double>(e));
        p.eps_bar.push_back(static_cast<double>(eb));
        p.delta.push_back(static_cast<double>(e - eb));
        p.beta.push_back(static_cast<double>(b));
        p.beta_hat.push_back(static_cast<double>(s.beta_hat(r)));
        p.identity_residual = std::max(p.identity_residual, static_cast<double>(std::abs(e - (e - eb) - b)));
    }
    for (const Side* s : {&right, &left}) {
        const ext r = s->R() * 1e-9L;
        p.center_defect = std::max({p.center_defect, static_cast<double>(std::abs(s->eps(r))),
                                    static_cast<double>(std::abs(s->eps_bar(r))),
                                    static_cast<double>(std::abs(s->delta(r)))});
    }
    p.l1_delta = static_cast<double>(right.beta_hat_total() + left.beta_hat_total());

    const double w0 = o.window0 > 0 ? o.window0 : std::min(static_cast<double>(c), static_cast<double>(1 - c)) / 8;
    for (int k = 0; k <= o.refinements; ++k) {
        const ext w = std::ldexp(ext(w0), -k);
        p.windows.push_back(static_cast<double>(w));
        ext total = 0;
        for (const Side* s : {&right, &left})
            if (w < s->R()) total += s->beta_hat_total() - s->beta_hat(w);
        p.partial.push_back(static_cast<double>(total));
    }
    for (int k = 1; k <= o.refinements; ++k) p.increments.push_back(p.partial[k] - p.partial[k - 1]);
    const double first = p.increments.front(), last = p.increments.back();
    const double tiny = 1e-15;
    if (std::all_of(p.increments.begin(), p.increments.end(), [&](double v) { return std::abs(v) <= tiny; })) {
        p.ratio = 0;
        p.stable = true;
    } else {
        p.ratio = first > 0 ? std::pow(std::max(last, 0.0) / first, 1.0 / (o.refinements - 1))
                            : std::numeric_limits<double>::infinity();
        p.stable = p.ratio <= o.stable_ratio;
    }
    return p;
}

PhiDecomposition decompose_phi(const UnimodalMap& f, bool prefer_exact)
{
    const ext c = f.critical_point();
    const ext E = second_derivative_at_c(f, 1e-8);
    PhiDecomposition d;
    d.c = static_cast<double>(c);
    const double qc0 = static_cast<double>(quadratic(c, ext(0)));
    const auto* comp = f.as<CompositeRep>();
    if (prefer_exact && comp) {
        d.exact = true;
        d.phi_plus = comp->outer.empty() ? DiffeoPiece::identity() : DiffeoPiece::compose(comp->outer);
        d.phi_minus = d.phi_plus;
    } else {
        const ext k = (1 - c) * (1 - c);
        auto make = [f, c, k](int sign) {
            return [f, c, k, sign](ext u) {
                const ext w = std::min<ext>(u, 1 - 1e-12L);
                const ext x = c + sign * (1 - c) * std::sqrt(std::max<ext>(1 - w, 0));
                const Jet<ext> j = f.jet(x);
                const ext du = -2 * (x - c) / k, ddu = -2 / k;
                const ext d1 = j.d1 / du;
                const ext d2 = (j.d2 - d1 * ddu) / (du * du);
                return Jet<ext>{u == w ? j.v : f.jet(c).v, d1, d2};
            };
        };
        d.phi_plus = DiffeoPiece::function({0.0, 1.0}, make(+1));
        d.phi_minus = DiffeoPiece::function({qc0, 1.0}, make(-1));
    }
    const Side right(f, c, E, +1, 1 - c), left(f, c, E, -1, c);
    d.l1_plus = static_cast<double>(right.l1_total());
    d.l1_minus = static_cast<double>(left.l1_total());
    auto eta_abs = [](const DiffeoPiece& p) {
        return [p](ext u) {
            const Jet<ext> j = p.jet(std::min<ext>(u, 1 - 1e-12L));
            return std::abs(j.d2 / j.d1);
        };
    };
    d.direct_plus = static_cast<double>(integrate(eta_abs(d.phi_plus), 0, 1, 1e-16L, 1e-12L, 30).value);
    d.direct_minus = static_cast<double>(integrate(eta_abs(d.phi_minus), qc0, 1, 1e-16L, 1e-12L, 30).value);
    return d;
}

double cross_ratio(Interval T, Interval J)
{
    const double L = J.lo - T.lo, R = T.hi - J.hi;
    if (!(L > 0 && R > 0 && J.length() > 0))
        throw Error(ErrorKind::DegenerateConfiguration, "J must lie in the interior of T");
    return J.length() * T.length() / (L * R);
}

Interval image(const UnimodalMap& f, Interval I)
{
    const double a = static_cast<double>(f(ext(I.lo))), b = static_cast<double>(f(ext(I.hi)));
    const double c = static_cast<double>(f.critical_point());
    if (I.lo < c && c < I.hi) return {std::min(a, b), 1.0};
    return Interval::hull(a, b);
}

int intersection_multiplicity(const std::vector<Interval>& intervals)
{
    std::vector<std::pair<double, int>> ev;
    ev.reserve(2 * intervals.size());
    for (const Interval& I : intervals) {
        ev.emplace_back(I.lo, 0);  // openings sort before closings at equal points
        ev.emplace_back(I.hi, 1);
    }
    std::sort(ev.begin(), ev.end());
    int cur = 0, best = 0;
    for (const auto& [x, kind] : ev) {
        cur += kind == 0 ? 1 : -1;
        best = std::max(best, cur);
    }
    return best;
}

CrossRatioDistortion cr_distortion(const UnimodalMap& f, Interval T, Interval J, int n, double K)
{
    if (n < 1) throw Error(ErrorKind::Domain, "n must be positive");
    const double c = static_cast<double>(f.critical_point());
    CrossRatioDistortion out;
    out.K = K >= 0 ? K : decompose_phi(f).K();
    std::vector<Interval> Ts;
    ext logB = 0;
    for (int i = 0; i < n; ++i) {
        // an endpoint mapped onto c by construction may land a rounding error across it
        if (T.lo < c && c < T.hi) {
            if (c - T.lo <= kSnap) T.lo = c;
            else if (T.hi - c <= kSnap) T.hi = c;
            else throw Error(ErrorKind::NotMonotoneOnT, "f^" + std::to_string(i) + "(T) contains c");
        }
        Ts.push_back(T);
        const Interval fT = image(f, T), fJ = image(f, J);
        logB += std::log(static_cast<ext>(cross_ratio(fT, fJ))) - std::log(static_cast<ext>(cross_ratio(T, J)));
        T = fT;
        J = fJ;
    }
    out.B = static_cast<double>(std::exp(logB));
    out.m = intersection_multiplicity(Ts);
    out.bound = std::exp(-out.K * out.m);
    return out;
}

namespace {

std::vector<Interval> cycle_intervals(const std::vector<ext>& orb, int n)
{
    const std::size_t N = std::size_t(1) << n;
    std::vector<Interval> I(N);
    I[0] = Interval::hull(static_cast<double>(orb[N]), static_cast<double>(orb[2 * N]));
    if (N == 1) return I;
    const std::size_t low = orb[N + 1] < orb[2 * N + 1] ? N + 1 : 2 * N + 1;
    for (std::size_t j = 1; j < N; ++j)
        I[j] = Interval::hull(static_cast<double>(orb[j]), static_cast<double>(orb[low + j - 1]));
    return I;
}

double measure(const std::vector<Interval>& I)
{
    double m = 0;
    for (const Interval& v : I) m += v.length();
    return m;
}

} // namespace

TowerCycle cycle_tower(const UnimodalMap& f, int n)
{
    if (n < 0 || n > 14) throw Error(ErrorKind::Domain, "cycle level must lie in [0, 14]");
    renormalize_n(f, n);
    bool has_next = true;
    try {
        renormalize_n(f, n + 1);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotRenormalizable) throw;
        has_next = false;
    }
    const std::size_t N = std::size_t(1) << n;
    const std::vector<ext> orb = critical_orbit(f, static_cast<int>(6 * N + 2));
    TowerCycle t;
    t.level = n;
    t.I = cycle_intervals(orb, n);
    if (has_next) t.next = cycle_intervals(orb, n + 1);
    t.measure = measure(t.I);
    if (n > 0) t.measure_ratio = t.measure / measure(cycle_intervals(orb, n - 1));

    std::vector<int> order(N);
    for (std::size_t j = 0; j < N; ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.I[a].lo < t.I[b].lo; });
    t.left.assign(N, -1);
    t.right.assign(N, -1);
    t.disjoint = true;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        t.right[order[k]] = order[k + 1];
        t.left[order[k + 1]] = order[k];
        if (!(t.I[order[k]].hi < t.I[order[k + 1]].lo)) t.disjoint = false;
    }
    if (has_next) {
        t.nested = true;
        const double slack = 1e-15;
        for (std::size_t j = 0; j < N; ++j) {
            const Interval a = t.next[j], b = t.next[j + N], P = t.I[j];
            if (!(a.lo >= P.lo - slack && a.hi <= P.hi + slack && b.lo >= P.lo - slack && b.hi <= P.hi + slack) ||
                a.intersects(b))
                t.nested = false;
            t.gaps.push_back(a.hi < b.lo ? Interval{a.hi, b.lo} : Interval{b.hi, a.lo});
        }
    }
    return t;
}

namespace {

/// Preimage of y under the monotone branch of f on [lo, hi].
double branch_inverse(const UnimodalMap& f, double lo, double hi, double y)
{
    ext a = lo, b = hi;
    const ext fa = f(a), fb = f(b);
    const bool increasing = fb > fa;
    const ext ymin = std::min(fa, fb), ymax = std::max(fa, fb);
    const ext target = std::clamp<ext>(y, ymin, ymax);
    if (target == ymin) return static_cast<double>(increasing ? a : b);
    if (target == ymax) return static_cast<double>(increasing ? b : a);
    for (int it = 0; it < 90; ++it) {
        const ext m = (a + b) / 2;
        if (m <= a || m >= b) break;
        if ((f(m) < target) == increasing) a = m;
        else b = m;
    }
    return static_cast<double>((a + b) / 2);
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

} // namespace

PullbackTower pullback_tower(const UnimodalMap& f, const TowerCycle& cyc, int i, int j)
{
    const int N = static_cast<int>(cyc.I.size());
    if (!(1 <= i && i < j && j <= N)) throw Error(ErrorKind::Domain, "indices must satisfy 1 <= i < j <= 2^n");
    const int jj = j % N;
    const int l = cyc.left[jj], r = cyc.right[jj];
    if (l < 0 || r < 0) throw Error(ErrorKind::DegenerateConfiguration, "I_j has a single neighbour");
    const double c = static_cast<double>(f.critical_point());
    PullbackTower p;
    p.level = static_cast<int>(std::log2(N));
    p.i = i;
    p.j = j;
    p.U = {cyc.I[l].lo, cyc.I[r].hi};
    Interval T = p.U;
    for (int s = j - i - 1; s >= 0; --s) {
        const Interval& I = cyc.I[i + s];
        const bool right_side = I.lo > c;
        const double lo = right_side ? c : 0.0, hi = right_side ? 1.0 : c;
        T = Interval::hull(branch_inverse(f, lo, hi, T.lo), branch_inverse(f, lo, hi, T.hi));
    }
    p.T = T;
    for (int k = 0; k < j - i; ++k) {
        p.images.push_back(T);
        T = image(f, T);
    }
    p.multiplicity = intersection_multiplicity(p.images);
    return p;
}

MultiplicityReport multiplicity_survey(const UnimodalMap& f, int n, int samples, std::uint64_t seed,
                                       int exhaustive_limit)
{
    const TowerCycle cyc = cycle_tower(f, n);
    const int N = static_cast<int>(cyc.I.size());
    MultiplicityReport rep;
    rep.level = n;
    auto visit = [&](int i, int j) {
        try {
            const PullbackTower p = pullback_tower(f, cyc, i, j);
            ++rep.towers;
            rep.max_multiplicity = std::max(rep.max_multiplicity, p.multiplicity);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
            ++rep.skipped;
        }
    };
    if (N <= exhaustive_limit) {
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) visit(i, j);
    } else {
        std::mt19937_64 rng(seed);
        for (int s = 0; s < samples; ++s) {
            const int i = 1 + static_cast<int>(draw(rng, N - 1));
            const int j = i + 1 + static_cast<int>(draw(rng, N - i));
            visit(i, j);
        }
    }
    return rep;
}

std::vector<CrossRatioSample> cross_ratio_survey(const UnimodalMap& f, int max_level, int count, std::uint64_t seed,
                                                 double K)
{
    if (max_level < 2) throw Error(ErrorKind::Domain, "max_level must be at least 2");
    std::vector<TowerCycle> cycles;
    for (int n = 2; n <= max_level; ++n) cycles.push_back(cycle_tower(f, n));
    std::mt19937_64 rng(seed);
    std::vector<CrossRatioSample> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < 50 * count) {
        ++attempts;
        const TowerCycle& cyc = cycles[draw(rng, cycles.size())];
        const int N = static_cast<int>(cyc.I.size());
        const int i = 1 + static_cast<int>(draw(rng, N - 1));
        const int j = i + 1 + static_cast<int>(draw(rng, N - i));
        try {
            const PullbackTower p = pullback_tower(f, cyc, i, j);
            CrossRatioSample s;
            s.level = cyc.level;
            s.i = i;
            s.j = j;
            s.d = cr_distortion(f, p.T, cyc.I[i], j - i, K);
            out.push_back(s);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
        }
    }
    return out;
}

AprioriBounds apriori_bounds(const UnimodalMap& f, int N)
{
    if (N < 1) throw Error(ErrorKind::Domain, "N must be positive");
    AprioriBounds out;
    out.tau = std::numeric_limits<double>::infinity();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0;
    for (int n = 1; n <= N; ++n) {
        const TowerCycle cyc = cycle_tower(f, n);
        if (cyc.next.empty()) throw Error(ErrorKind::NotRenormalizable, "level " + std::to_string(n + 1));
        const std::size_t M = cyc.I.size();
        AprioriLevel lv;
        lv.n = n;
        lv.min_ratio = lv.min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < M; ++j) {
            const double L = cyc.I[j].length();
            const double a = cyc.next[j].length(), b = cyc.next[j + M].length();
            lv.min_ratio = std::min({lv.min_ratio, a / L, b / L});
            lv.min_gap = std::min(lv.min_gap, (L - a - b) / L);
        }
        const Interval I0 = cyc.I[0];
        const int samples = 65;
        for (int k = 0; k < samples; ++k) {
            ext x = I0.lo + (ext(I0.hi) - I0.lo) * k / (samples - 1);
            ext D = 1;
            for (std::size_t s = 0; s < 2 * M; ++s) {
                const Jet<ext> jt = f.jet(x);
                D *= jt.d1;
                x = jt.v;
            }
            lv.max_Df = std::max(lv.max_Df, static_cast<double>(std::abs(D)));
        }
        lv.measure = cyc.measure;
        lv.measure_ratio = cyc.measure_ratio;
        out.tau = std::min({out.tau, lv.min_ratio, lv.min_gap});
        dmin = std::min(dmin, lv.max_Df);
        dmax = std::max(dmax, lv.max_Df);
        out.levels.push_back(lv);
    }
    out.df_spread = dmax / dmin;
    return out;
}

Factorization quadratic_factorization(const UnimodalMap& f, int n, const PhiDecomposition& phi)
{
    const TowerCycle cyc = cycle_tower(f, n);
    const ext c = f.critical_point();
    Factorization out;
    out.level = n;
    for (std::size_t j = 1; j < cyc.I.size(); ++j) {
        const Interval I = cyc.I[j];
        const bool right_side = I.lo > c;
        const double ua = static_cast<double>(quadratic(c, ext(I.lo))), ub = static_cast<double>(quadratic(c, ext(I.hi)));
        const Interval uI = Interval::hull(ua, ub);
        const DiffeoPiece& p = right_side ? phi.phi_plus : phi.phi_minus;
        double sup = 0;
        const int samples = 17;
        for (int k = 0; k < samples; ++k) {
            const ext u = std::min<ext>(uI.lo + (ext(uI.hi) - uI.lo) * k / (samples - 1), 1 - 1e-12L);
            const Jet<ext> jt = p.jet(u);
            sup = std::max(sup, static_cast<double>(std::abs(jt.d2 / jt.d1)));
        }
        const double pn = sup * uI.length();
        const double dist = std::min(std::abs(I.lo - static_cast<double>(c)), std::abs(I.hi - static_cast<double>(c)));
        const double qn = I.length() / dist;
        out.phi_norms.push_back(pn);
        out.q_norms.push_back(qn);
        out.sum_phi += pn;
        out.sum_q += qn;
    }
    return out;
}

PureQuadraticModel pure_quadratic_model(const UnimodalMap& f, int n, int grid)
{
    const TowerCycle cyc = cycle_tower(f, n);
    const UnimodalMap Rn = renormalize_n(f, n);
    const ext c = f.critical_point();
    // chart of I_0^n in the coordinates of f
    Affine H;
    if (n > 0) {
        const auto* v = Rn.as<RenormalizedViewRep>();
        H = v->H;
        if (const auto* fv = f.as<RenormalizedViewRep>()) H = fv->H.inverted().after(v->H);
    }
    std::vector<DiffeoPiece> outer;
    const ext k = (1 - c) * (1 - c);
    for (std::size_t j = 1; j < cyc.I.size(); ++j) {
        const Interval I = cyc.I[j];
        const Affine A = Affine::onto(I.lo, I.hi);
        const ext ua = quadratic(c, ext(I.lo)), ub = quadratic(c, ext(I.hi));
        const Affine B = Affine::onto(std::min(ua, ub), std::max(ua, ub));
        outer.push_back(DiffeoPiece::function({0.0, 1.0}, [A, B, c, k](ext s) {
            const ext x = A(s);
            const ext t = (x - c) / (1 - c);
            return Jet<ext>{B.inverse(1 - t * t), -2 * (x - c) / k * A.b / B.b, -2 / k * A.b * A.b / B.b};
        }));
    }
    PureQuadraticModel m;
    m.flip = H.b < 0;
    if (m.flip) outer.push_back(DiffeoPiece::affine({0.0, 1.0}, Affine{1, -1}));
    m.fn = make_composite(outer, Rn.critical_point(), "pure-quadratic(" + std::to_string(n) + ")");
    m.c1_gap = distance(Rn, m.fn, 1, grid).value;
    return m;
}

SandwichReport sandwich_check(const std::vector<double>& ts, int pieces, std::uint64_t seed)
{
    if (pieces < 2) throw Error(ErrorKind::Domain, "at least two pieces are required");
    std::mt19937_64 rng(seed);
    auto mob = [](ext a) { return DiffeoPiece::mobius({0.0, 1.0}, 1 + a, 0, a, 1); };
    std::vector<DiffeoPiece> base;
    for (int k = 0; k < pieces; ++k) {
        const ext u = static_cast<ext>(rng() >> 11) / 9007199254740992.0L;
        base.push_back(mob(0.6L * u - 0.3L));
    }
    const std::size_t mid = base.size() / 2;
    const DiffeoPiece psi2 = DiffeoPiece::compose(base);
    SandwichReport r;
    for (double t : ts) {
        std::vector<DiffeoPiece> with = base;
        // x (1 + a) / (1 + a x) has |eta| = 2a at 0, its maximum for a > 0
        with.insert(with.begin() + static_cast<std::ptrdiff_t>(mid), mob(ext(t) / 2));
        const DiffeoPiece psi1 = DiffeoPiece::compose(with);
        ext dv = 0, dd = 0;
        for (int i = 0; i <= 1024; ++i) {
            const ext x = ext(i) / 1024;
            const Jet<ext> a = psi1.jet(x), b = psi2.jet(x);
            dv = std::max(dv, std::abs(a.v - b.v));
            dd = std::max(dd, std::abs(a.d1 - b.d1));
        }
        r.t.push_back(t);
        r.change.push_back(static_cast<double>(dv + dd));
        r.ratio.push_back(static_cast<double>((dv + dd) / t));
    }
    const auto [lo, hi] = std::minmax_element(r.ratio.begin(), r.ratio.end());
    r.B = *hi;
    r.linear = *hi <= 1.5 * *lo;
    return r;
}

} // namespace rlab
