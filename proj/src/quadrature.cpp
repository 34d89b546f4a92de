#include "renormlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "renormlab/error.hpp"

namespace rlab {

namespace {

// Kronrod abscissae (x >= 0) and weights; odd indices are the Gauss nodes.
constexpr ext kXk[8] = {0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
                        0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
                        0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
                        0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr ext kWk[8] = {0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
                        0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
                        0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
                        0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr ext kWg[4] = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                        0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Panel {
    ext value;
    ext error;
    ext absolute;  // K15 estimate of int |f|
};

Panel gk15(const std::function<ext(ext)>& f, ext a, ext b)
{
    const ext h = (b - a) / 2, m = (a + b) / 2;
    const ext fc = f(m);
    ext k = fc * kWk[7];
    ext g = fc * kWg[3];
    ext ka = std::abs(fc) * kWk[7];
    for (int i = 0; i < 7; ++i) {
        const ext l = f(m - h * kXk[i]), r = f(m + h * kXk[i]);
        k += kWk[i] * (l + r);
        ka += kWk[i] * (std::abs(l) + std::abs(r));
        if (i % 2 == 1) g += kWg[i / 2] * (l + r);
    }
    return {k * h, std::abs((k - g) * h), ka * std::abs(h)};
}

void recurse(const std::function<ext(ext)>& f, ext a, ext b, Panel whole, ext abs_tol, ext rel_tol, int depth,
             ext noise, QuadResult& out, std::vector<QuadLeaf>* leaves)
{
    // roundoff floor: a sign-changing integrand never meets rel_tol, and abs_tol halves per split
    const ext floor = std::max(64 * std::numeric_limits<ext>::epsilon() * whole.absolute, noise * (b - a));
    const ext tol = std::max({abs_tol, rel_tol * std::abs(whole.value), floor});
    if (whole.error <= tol || depth == 0 || !(b - a > 0) || (a + b) / 2 == a || (a + b) / 2 == b) {
        out.value += whole.value;
        out.error += whole.error;
        if (leaves) leaves->push_back({a, b, whole.value});
        return;
    }
    const ext m = (a + b) / 2;
    const Panel l = gk15(f, a, m), r = gk15(f, m, b);
    out.evaluations += 30;
    recurse(f, a, m, l, abs_tol / 2, rel_tol, depth - 1, noise, out, leaves);
    recurse(f, m, b, r, abs_tol / 2, rel_tol, depth - 1, noise, out, leaves);
}

} // namespace

QuadResult integrate(const std::function<ext(ext)>& f, ext a, ext b, ext abs_tol, ext rel_tol, int max_depth,
                     ext noise)
{
    if (!std::isfinite(static_cast<double>(a)) || !std::isfinite(static_cast<double>(b)))
        throw Error(ErrorKind::Domain, "integration limits must be finite");
    QuadResult out;
    if (a == b) return out;
    const bool flip = b < a;
    if (flip) std::swap(a, b);
    const Panel whole = gk15(f, a, b);
    out.evaluations = 15;
    recurse(f, a, b, whole, abs_tol, rel_tol, max_depth, noise, out, nullptr);
    if (flip) out.value = -out.value;
    return out;
}

QuadResult gauss_kronrod(const std::function<ext(ext)>& f, ext a, ext b)
{
    const Panel p = gk15(f, a, b);
    return {p.value, p.error, 15};
}

std::vector<QuadLeaf> adaptive_leaves(const std::function<ext(ext)>& f, ext a, ext b, ext abs_tol, ext rel_tol,
                                      int max_depth, ext noise)
{
    if (!(a < b)) throw Error(ErrorKind::Domain, "adaptive_leaves needs a < b");
    std::vector<QuadLeaf> leaves;
    QuadResult out;
    recurse(f, a, b, gk15(f, a, b), abs_tol, rel_tol, max_depth, noise, out, &leaves);
    return leaves;
}

} // namespace rlab
