#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace rlab {

/// Extended precision used for orbit iteration and tower bookkeeping.
using ext = long double;

enum class Precision { Double, Extended };

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return !(o.hi < lo || hi < o.lo); }

    static Interval hull(double a, double b) { return a <= b ? Interval{a, b} : Interval{b, a}; }
};

/// Affine map x -> a + b x.
struct Affine {
    ext a = 0;
    ext b = 1;

    template <class T>
    T operator()(T x) const { return T(a) + T(b) * x; }
    template <class T>
    T inverse(T y) const { return (y - T(a)) / T(b); }

    /// (*this) o g
    Affine after(const Affine& g) const { return {a + b * g.a, b * g.b}; }
    Affine inverted() const { return {-a / b, 1 / b}; }

    /// Orientation preserving or reversing map of [0,1] onto the interval [lo,hi].
    static Affine onto(ext lo, ext hi, bool preserving = true)
    {
        return preserving ? Affine{lo, hi - lo} : Affine{hi, lo - hi};
    }
};

/// Value with first and second derivative.
template <class T>
struct Jet {
    T v = 0;
    T d1 = 0;
    T d2 = 0;
};

/// Chebyshev points on [0,1] including both endpoints, clustered at the endpoints.
std::vector<double> chebyshev_grid(int n);

/// Chebyshev points clustered at 0, c and 1: half the budget on each side of c.
std::vector<double> chebyshev_grid_split(int n, double c);

/// Quadratic family normalized by q(c) = 1, q(1) = 0.
template <class T>
inline T quadratic(T c, T x)
{
    const T t = (x - c) / (T(1) - c);
    return T(1) - t * t;
}

} // namespace rlab
