#pragma once

#include <string>
#include <vector>

#include "renormlab/numeric.hpp"

namespace rlab {

/// A point (s0, s1) of the open triangle s0 > 0, s1 > 0, s0 + s1 < 1.
struct ScalingBiFactor {
    double s0 = 0.0;
    double s1 = 0.0;

    bool in_triangle() const { return s0 > 0 && s1 > 0 && s0 + s1 < 1; }
    /// Euclidean distance to the boundary of the triangle (negative outside).
    double boundary_distance() const;

    /// t -> s0 (1 - t), orientation reversing onto [0, s0].
    template <class T>
    T tilde0(T t) const { return T(s0) * (T(1) - t); }
    /// t -> 1 - s1 (1 - t), orientation preserving onto [1 - s1, 1].
    template <class T>
    T tilde1(T t) const { return T(1) - T(s1) * (T(1) - t); }

    bool operator==(const ScalingBiFactor& o) const { return s0 == o.s0 && s1 == o.s1; }
};

/// Scaling data n -> sigma(n), n >= 1.
///
/// The rule is Constant, Periodic or SymbolDriven. Any rule may carry a finite
/// prefix overriding the first levels (used for perturbed data). SymbolDriven
/// data stores the word, the precomputed bi-factors along the word and the
/// bi-factor used past its end.
class ScalingData {
public:
    enum class Rule { Constant, Periodic, SymbolDriven };

    static ScalingData constant(ScalingBiFactor b);
    static ScalingData periodic(std::vector<ScalingBiFactor> cycle);
    static ScalingData symbol_driven(std::vector<int> word, std::vector<ScalingBiFactor> values,
                                     ScalingBiFactor tail);

    /// Copy of this data with sigma(1..k) replaced by the given prefix.
    ScalingData with_prefix(std::vector<ScalingBiFactor> prefix) const;

    /// sigma(n), 1-based.
    ScalingBiFactor at(int n) const;
    /// s^n(sigma).
    ScalingData shifted(int n) const;

    Rule rule() const { return rule_; }
    const std::vector<int>& word() const { return word_; }
    std::string describe() const;

    /// Smallest distance to the triangle boundary over sigma(1..levels).
    double properness_margin(int levels) const;

private:
    Rule rule_ = Rule::Constant;
    std::vector<ScalingBiFactor> prefix_;
    std::vector<ScalingBiFactor> cycle_;  // Constant: one entry; Periodic: the cycle
    std::size_t offset_ = 0;              // Periodic phase
    std::vector<int> word_;               // SymbolDriven
    std::vector<ScalingBiFactor> values_; // SymbolDriven, aligned with word_
    ScalingBiFactor tail_;                // SymbolDriven past the word
};

/// Nested interval tower of a scaling data truncation.
///
/// Index k runs over 0..depth for I0, x and H (I0[0] = [0,1], x[0] = 0) and over
/// 1..depth for I1 and y (entry 0 unused). H[k] is the composite chart with
/// H[k]([0,1]) = I0[k]; orientation[k] is +1 when H[k] preserves orientation.
struct IntervalTower {
    int depth = 0;
    std::vector<Interval> I0;
    std::vector<Interval> I1;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<Affine> H;
    std::vector<int> orientation;
    double c = 0.0;        // midpoint of I0[depth]
    double c_error = 0.0;  // |I0[depth]|
};

} // namespace rlab
