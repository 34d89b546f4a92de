#pragma once

// Quad-precision helpers shared by the horseshoe coding and the reference map.

#include <quadmath.h>

#include <string>
#include <vector>

namespace rlab::detail {

using quad = __float128;

inline quad qabs(quad x) { return x < 0 ? -x : x; }

inline quad qquadratic(quad c, quad x)
{
    const quad t = (x - c) / (1 - c);
    return 1 - t * t;
}

inline std::string qstr(quad x, int digits = 34)
{
    char buf[80];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return buf;
}

/// q_c^{2^{k+1}}(c) - c and its c-derivative.
inline void superstable_defect_q(quad c, int k, quad& F, quad& dF)
{
    quad x = c, dx = 1;
    const long n = 1L << (k + 1);
    const quad w = 1 - c;
    for (long i = 0; i < n; ++i) {
        const quad t = (x - c) / w;
        // d/dc of 1 - ((x(c) - c) / (1 - c))^2
        const quad dt = ((dx - 1) * w + (x - c)) / (w * w);
        x = 1 - t * t;
        dx = -2 * t * dt;
    }
    F = x - c;
    dF = dx - 1;
}

/// Newton polish of a superstable root inside [lo, hi]; bisection fallback.
inline quad polish_superstable(quad guess, quad lo, quad hi, int k)
{
    quad c = guess;
    for (int it = 0; it < 30; ++it) {
        quad F, dF;
        superstable_defect_q(c, k, F, dF);
        if (dF == 0) break;
        const quad next = c - F / dF;
        if (!(next > lo && next < hi)) {
            c = guess;
            break;
        }
        if (qabs(next - c) <= 1e-31L * qabs(c)) return next;
        c = next;
    }
    quad Flo, Fhi, d;
    superstable_defect_q(lo, k, Flo, d);
    superstable_defect_q(hi, k, Fhi, d);
    if ((Flo < 0) == (Fhi < 0)) return c;
    for (int it = 0; it < 240; ++it) {
        const quad mid = (lo + hi) / 2;
        quad Fm;
        superstable_defect_q(mid, k, Fm, d);
        if ((Fm < 0) == (Flo < 0)) {
            lo = mid;
            Flo = Fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-33L * hi) break;
    }
    return (lo + hi) / 2;
}

} // namespace rlab::detail
