#include "renormlab/piece.hpp"

#include <cmath>
#include <numbers>

#include "renormlab/error.hpp"

namespace rlab {

const char* to_string(PieceKind kind)
{
    switch (kind) {
    case PieceKind::Affine: return "affine";
    case PieceKind::Polynomial: return "polynomial";
    case PieceKind::Chebyshev: return "chebyshev";
    case PieceKind::Mobius: return "mobius";
    case PieceKind::Sampled: return "sampled";
    case PieceKind::Function: return "function";
    case PieceKind::Compose: return "compose";
    }
    return "?";
}

namespace {

struct AffinePiece final : DiffeoPiece::Impl {
    Interval dom;
    Affine a;
    PieceKind kind() const override { return PieceKind::Affine; }
    Interval domain() const override { return dom; }
    ext value(ext x) const override { return a(x); }
    Jet<ext> jet(ext x) const override { return {a(x), a.b, 0}; }
};

struct PolynomialPiece final : DiffeoPiece::Impl {
    Interval dom;
    std::vector<ext> c;
    PieceKind kind() const override { return PieceKind::Polynomial; }
    Interval domain() const override { return dom; }
    ext value(ext x) const override
    {
        const ext s = (x - dom.lo) / (ext(dom.hi) - dom.lo);
        ext v = 0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
        return v;
    }
    Jet<ext> jet(ext x) const override
    {
        const ext len = ext(dom.hi) - dom.lo;
        const ext s = (x - dom.lo) / len;
        ext v = 0, d1 = 0, d2 = 0;
        for (std::size_t k = c.size(); k-- > 0;) {
            d2 = d2 * s + 2 * d1;
            d1 = d1 * s + v;
            v = v * s + c[k];
        }
        return {v, d1 / len, d2 / (len * len)};
    }
};

/// Clenshaw evaluation of sum a[k] T_k(s).
ext clenshaw(const std::vector<ext>& a, ext s)
{
    ext b1 = 0, b2 = 0;
    for (std::size_t k = a.size(); k-- > 1;) {
        const ext b0 = 2 * s * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return s * b1 - b2 + (a.empty() ? 0 : a[0]);
}

std::vector<ext> chebyshev_derivative(const std::vector<ext>& a)
{
    const std::size_t n = a.size();
    if (n <= 1) return {0};
    std::vector<ext> b(n + 1, 0);
    for (std::size_t k = n - 1; k >= 1; --k) b[k - 1] = b[k + 1] + 2 * ext(k) * a[k];
    b[0] /= 2;
    b.resize(n - 1);
    return b;
}

struct ChebyshevPiece final : DiffeoPiece::Impl {
    Interval dom;
    std::vector<ext> c, c1, c2;
    PieceKind kind() const override { return PieceKind::Chebyshev; }
    Interval domain() const override { return dom; }
    ext s_of(ext x) const { return 2 * (x - dom.lo) / (ext(dom.hi) - dom.lo) - 1; }
    ext value(ext x) const override { return clenshaw(c, s_of(x)); }
    Jet<ext> jet(ext x) const override
    {
        const ext s = s_of(x);
        const ext k = 2 / (ext(dom.hi) - dom.lo);
        return {clenshaw(c, s), clenshaw(c1, s) * k, clenshaw(c2, s) * k * k};
    }
};

struct MobiusPiece final : DiffeoPiece::Impl {
    Interval dom;
    ext a, b, c, d;
    PieceKind kind() const override { return PieceKind::Mobius; }
    Interval domain() const override { return dom; }
    ext value(ext x) const override { return (a * x + b) / (c * x + d); }
    Jet<ext> jet(ext x) const override
    {
        const ext den = c * x + d;
        const ext det = a * d - b * c;
        return {(a * x + b) / den, det / (den * den), -2 * c * det / (den * den * den)};
    }
};

/// Fritsch-Carlson monotone cubic.
struct SampledPiece final : DiffeoPiece::Impl {
    std::vector<double> x, y, m;
    PieceKind kind() const override { return PieceKind::Sampled; }
    Interval domain() const override { return {x.front(), x.back()}; }
    bool has_second_derivative() const override { return false; }

    std::size_t cell(ext t) const
    {
        auto it = std::upper_bound(x.begin(), x.end(), static_cast<double>(t));
        std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    }
    Jet<ext> jet(ext t) const override
    {
        t = std::clamp<ext>(t, x.front(), x.back());
        const std::size_t i = cell(t);
        const ext h = ext(x[i + 1]) - x[i];
        const ext s = (t - x[i]) / h;
        const ext h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const ext h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        const ext d00 = 6 * s * s - 6 * s, d10 = 3 * s * s - 4 * s + 1;
        const ext d01 = -d00, d11 = 3 * s * s - 2 * s;
        const ext e00 = 12 * s - 6, e10 = 6 * s - 4, e01 = -e00, e11 = 6 * s - 2;
        const ext v = h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
        const ext d1 = (d00 * y[i] + d10 * h * m[i] + d01 * y[i + 1] + d11 * h * m[i + 1]) / h;
        const ext d2 = (e00 * y[i] + e10 * h * m[i] + e01 * y[i + 1] + e11 * h * m[i + 1]) / (h * h);
        return {v, d1, d2};
    }
    ext value(ext t) const override { return jet(t).v; }
};

struct FunctionPiece final : DiffeoPiece::Impl {
    Interval dom;
    std::function<Jet<ext>(ext)> f;
    PieceKind kind() const override { return PieceKind::Function; }
    Interval domain() const override { return dom; }
    ext value(ext x) const override { return f(x).v; }
    Jet<ext> jet(ext x) const override { return f(x); }
};

struct ComposePiece final : DiffeoPiece::Impl {
    std::vector<DiffeoPiece> parts;
    PieceKind kind() const override { return PieceKind::Compose; }
    Interval domain() const override { return parts.front().domain(); }
    bool has_second_derivative() const override
    {
        for (const auto& p : parts)
            if (!p.has_second_derivative()) return false;
        return true;
    }
    ext value(ext x) const override
    {
        for (const auto& p : parts) x = p(x);
        return x;
    }
    Jet<ext> jet(ext x) const override
    {
        Jet<ext> j{x, 1, 0};
        for (const auto& p : parts) {
            const Jet<ext> g = p.jet(j.v);
            j = {g.v, g.d1 * j.d1, g.d2 * j.d1 * j.d1 + g.d1 * j.d2};
        }
        return j;
    }
};

} // namespace

DiffeoPiece::DiffeoPiece() : DiffeoPiece(identity()) {}

DiffeoPiece DiffeoPiece::identity(Interval dom) { return affine(dom, Affine{0, 1}); }

DiffeoPiece DiffeoPiece::affine(Interval dom, Affine a)
{
    auto p = std::make_shared<AffinePiece>();
    p->dom = dom;
    p->a = a;
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::polynomial(Interval dom, std::vector<ext> coeffs)
{
    if (coeffs.empty()) throw Error(ErrorKind::Domain, "polynomial piece needs coefficients");
    auto p = std::make_shared<PolynomialPiece>();
    p->dom = dom;
    p->c = std::move(coeffs);
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::chebyshev(Interval dom, std::vector<ext> coeffs)
{
    if (coeffs.empty()) throw Error(ErrorKind::Domain, "chebyshev piece needs coefficients");
    auto p = std::make_shared<ChebyshevPiece>();
    p->dom = dom;
    p->c = std::move(coeffs);
    p->c1 = chebyshev_derivative(p->c);
    p->c2 = chebyshev_derivative(p->c1);
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::fit_chebyshev(const std::function<ext(ext)>& fn, Interval dom, int degree)
{
    if (degree < 1) throw Error(ErrorKind::Domain, "chebyshev degree must be positive");
    const int n = degree;
    const ext pi = std::numbers::pi_v<long double>;
    std::vector<ext> f(n + 1);
    for (int j = 0; j <= n; ++j) {
        const ext s = std::cos(pi * j / n);
        f[j] = fn(ext(dom.lo) + (s + 1) / 2 * (ext(dom.hi) - dom.lo));
    }
    std::vector<ext> a(n + 1);
    for (int k = 0; k <= n; ++k) {
        ext sum = 0;
        for (int j = 0; j <= n; ++j) {
            const ext w = (j == 0 || j == n) ? 0.5L : 1.0L;
            sum += w * f[j] * std::cos(pi * ext(j) * k / n);
        }
        a[k] = 2 * sum / n;
    }
    a[0] /= 2;
    a[n] /= 2;
    return chebyshev(dom, std::move(a));
}

DiffeoPiece DiffeoPiece::mobius(Interval dom, ext a, ext b, ext c, ext d)
{
    for (double x : {dom.lo, dom.hi})
        if (c * x + d == 0) throw Error(ErrorKind::PoleError, "mobius pole on the domain");
    if (c != 0) {
        const ext pole = -d / c;
        if (pole > dom.lo && pole < dom.hi) throw Error(ErrorKind::PoleError, "mobius pole inside the domain");
    }
    if (a * d - b * c == 0) throw Error(ErrorKind::NotMonotone, "degenerate mobius map");
    auto p = std::make_shared<MobiusPiece>();
    p->dom = dom;
    p->a = a;
    p->b = b;
    p->c = c;
    p->d = d;
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::sampled(std::vector<double> xs, std::vector<double> ys)
{
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw Error(ErrorKind::Domain, "sampled piece needs matching samples");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs[i] > xs[i - 1])) throw Error(ErrorKind::Domain, "sample abscissae must increase");
    }
    const bool inc = ys.back() > ys.front();
    std::vector<double> del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        del[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        if (inc ? del[i] <= 0 : del[i] >= 0) throw Error(ErrorKind::NotMonotone, "samples are not strictly monotone");
    }
    std::vector<double> m(n);
    m[0] = del[0];
    m[n - 1] = del[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (del[i - 1] + del[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = m[i] / del[i], b = m[i + 1] / del[i];
        const double r = a * a + b * b;
        if (r > 9) {
            const double t = 3 / std::sqrt(r);
            m[i] = t * a * del[i];
            m[i + 1] = t * b * del[i];
        }
    }
    auto p = std::make_shared<SampledPiece>();
    p->x = std::move(xs);
    p->y = std::move(ys);
    p->m = std::move(m);
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::function(Interval dom, std::function<Jet<ext>(ext)> jet)
{
    auto p = std::make_shared<FunctionPiece>();
    p->dom = dom;
    p->f = std::move(jet);
    return DiffeoPiece(p);
}

DiffeoPiece DiffeoPiece::compose(std::vector<DiffeoPiece> pieces)
{
    if (pieces.empty()) return identity();
    if (pieces.size() == 1) return pieces.front();
    auto p = std::make_shared<ComposePiece>();
    p->parts = std::move(pieces);
    return DiffeoPiece(p);
}

std::vector<ext> DiffeoPiece::coefficients() const
{
    if (auto* p = dynamic_cast<const PolynomialPiece*>(impl_.get())) return p->c;
    if (auto* p = dynamic_cast<const ChebyshevPiece*>(impl_.get())) return p->c;
    return {};
}

NonlinearityEstimate nonlinearity(const DiffeoPiece& phi, double x)
{
    if (phi.has_second_derivative()) {
        const Jet<ext> j = phi.jet(x);
        if (j.d1 == 0) throw Error(ErrorKind::NotDifferentiable, "vanishing derivative");
        return {static_cast<double>(j.d2 / j.d1), false, 0.0};
    }
    auto* s = dynamic_cast<const SampledPiece*>(&phi.impl());
    if (s == nullptr || s->x.size() < 4)
        throw Error(ErrorKind::NotDifferentiable, "no second-derivative rule and too few samples");
    // step tied to the local sample spacing, kept inside the domain
    const std::size_t i = s->cell(x);
    double h = 0.5 * (s->x[i + 1] - s->x[i]);
    h = std::min({h, x - s->x.front(), s->x.back() - x});
    if (h <= 0) h = 0.5 * (s->x[i + 1] - s->x[i]);
    const double lo = std::max(s->x.front(), x - h), hi = std::min(s->x.back(), x + h);
    const ext dl = s->jet(lo).d1, dh = s->jet(hi).d1;
    if (dl <= 0 && dh <= 0) {
        return {static_cast<double>((std::log(-dh) - std::log(-dl)) / (hi - lo)), true, h};
    }
    return {static_cast<double>((std::log(dh) - std::log(dl)) / (hi - lo)), true, h};
}

double nonlinearity_sup(const DiffeoPiece& phi, int n)
{
    const Interval d = phi.domain();
    double best = 0;
    for (int i = 0; i < n; ++i) {
        const double x = d.lo + (d.hi - d.lo) * i / (n - 1);
        best = std::max(best, std::abs(nonlinearity(phi, x).value));
    }
    return best;
}

DiffeoPiece rescale_restriction(const DiffeoPiece& phi, Interval ab)
{
    const ext a = ab.lo, b = ab.hi;
    const ext fa = phi(a), fb = phi(b);
    if (!(ab.lo < ab.hi) || fa == fb) throw Error(ErrorKind::NotMonotone, "piece is not injective on the interval");
    const int probes = 65;
    ext prev = fa;
    for (int i = 1; i < probes; ++i) {
        const ext v = phi(a + (b - a) * i / (probes - 1));
        if ((fb > fa) ? v <= prev : v >= prev) throw Error(ErrorKind::NotMonotone, "piece is not injective on the interval");
        prev = v;
    }
    if (ab.lo == 0 && ab.hi == 1 && fa == 0 && fb == 1) return phi;
    return DiffeoPiece::function({0, 1}, [phi, a, b, fa, fb](ext s) {
        const Jet<ext> j = phi.jet(a + (b - a) * s);
        const ext k = fb - fa;
        return Jet<ext>{(j.v - fa) / k, j.d1 * (b - a) / k, j.d2 * (b - a) * (b - a) / k};
    });
}

} // namespace rlab
