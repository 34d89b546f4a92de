#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "renormlab/numeric.hpp"

namespace rlab {

enum class PieceKind { Affine, Polynomial, Chebyshev, Mobius, Sampled, Function, Compose };

const char* to_string(PieceKind kind);

/// Result of a nonlinearity query. Sampled pieces have no second-derivative
/// rule and report the central-difference step used.
struct NonlinearityEstimate {
    double value = 0.0;
    bool finite_difference = false;
    double step = 0.0;
};

/// A monotone C^1 (usually C^2) map of an interval.
///
/// Immutable value type; copies share the implementation.
class DiffeoPiece {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual PieceKind kind() const = 0;
        virtual Interval domain() const = 0;
        virtual ext value(ext x) const = 0;
        /// d2 is meaningful only when has_second_derivative().
        virtual Jet<ext> jet(ext x) const = 0;
        virtual bool has_second_derivative() const { return true; }
    };

    DiffeoPiece();  // identity on [0,1]
    explicit DiffeoPiece(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static DiffeoPiece identity(Interval dom = {0.0, 1.0});
    static DiffeoPiece affine(Interval dom, Affine a);
    /// p(s) = sum coeffs[k] s^k with s = (x - lo) / (hi - lo).
    static DiffeoPiece polynomial(Interval dom, std::vector<ext> coeffs);
    /// Chebyshev series in s = 2 (x - lo) / (hi - lo) - 1.
    static DiffeoPiece chebyshev(Interval dom, std::vector<ext> coeffs);
    /// Interpolates fn at the Chebyshev extreme points of dom.
    static DiffeoPiece fit_chebyshev(const std::function<ext(ext)>& fn, Interval dom, int degree);
    /// x -> (a x + b) / (c x + d).
    static DiffeoPiece mobius(Interval dom, ext a, ext b, ext c, ext d);
    /// Monotone piecewise cubic through (xs, ys); ys strictly monotone.
    static DiffeoPiece sampled(std::vector<double> xs, std::vector<double> ys);
    /// Closed-form piece given by its jet.
    static DiffeoPiece function(Interval dom, std::function<Jet<ext>(ext)> jet);
    /// pieces[0] is applied first.
    static DiffeoPiece compose(std::vector<DiffeoPiece> pieces);

    PieceKind kind() const { return impl_->kind(); }
    Interval domain() const { return impl_->domain(); }
    ext operator()(ext x) const { return impl_->value(x); }
    double operator()(double x) const { return static_cast<double>(impl_->value(x)); }
    Jet<ext> jet(ext x) const { return impl_->jet(x); }
    bool has_second_derivative() const { return impl_->has_second_derivative(); }
    const Impl& impl() const { return *impl_; }
    /// Coefficients of Polynomial and Chebyshev pieces, empty otherwise.
    std::vector<ext> coefficients() const;

private:
    std::shared_ptr<const Impl> impl_;
};

/// eta = D^2 phi / D phi at x.
NonlinearityEstimate nonlinearity(const DiffeoPiece& phi, double x);

/// max |eta| over n equally spaced points of the domain.
double nonlinearity_sup(const DiffeoPiece& phi, int n = 513);

/// Rescaled restriction of a piece to [a, b]: the increasing normalized map
/// of [0, 1] with 0 corresponding to a.
DiffeoPiece rescale_restriction(const DiffeoPiece& phi, Interval ab);

} // namespace rlab
