#pragma once

#include <memory>
#include <string>
#include <vector>

#include "renormlab/numeric.hpp"
#include "renormlab/piece.hpp"
#include "renormlab/scaling_data.hpp"

namespace rlab {

enum class MapKind { Quadratic, PiecewiseAffine, Extended, Composite, RenormalizedView };

const char* to_string(MapKind kind);

/// Unimodal map of [0,1] normalized by f(1) = 0, f(c) = 1.
///
/// Immutable handle; the representation is one of the *Rep types below.
class UnimodalMap {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual MapKind kind() const = 0;
        virtual ext critical_point() const = 0;
        virtual ext eval(ext x) const = 0;
        virtual Jet<ext> jet(ext x) const = 0;
        virtual std::string describe() const = 0;
    };

    UnimodalMap() = default;
    explicit UnimodalMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    MapKind kind() const { return impl_->kind(); }
    ext critical_point() const { return impl_->critical_point(); }
    ext operator()(ext x) const { return impl_->eval(x); }
    double operator()(double x) const { return static_cast<double>(impl_->eval(x)); }
    Jet<ext> jet(ext x) const { return impl_->jet(x); }
    std::string describe() const { return impl_->describe(); }
    const Impl& impl() const { return *impl_; }
    std::shared_ptr<const Impl> shared() const { return impl_; }
    bool valid() const { return impl_ != nullptr; }

    template <class T>
    const T* as() const { return dynamic_cast<const T*>(impl_.get()); }

private:
    std::shared_ptr<const Impl> impl_;
};

/// 1 - ((x - c) / (1 - c))^2; throws Domain unless 0 < c < 1.
double eval_quadratic(double c, double x);

struct QuadraticRep final : UnimodalMap::Impl {
    ext c = 0.5L;
    MapKind kind() const override { return MapKind::Quadratic; }
    ext critical_point() const override { return c; }
    ext eval(ext x) const override { return quadratic(c, x); }
    Jet<ext> jet(ext x) const override;
    std::string describe() const override;
};

UnimodalMap make_quadratic(double c);

/// How the affine branch on I1^n is chosen.
///  Interpolate: affine interpolation of q_c at the endpoints of I1^n.
///  BoxScaling: V_{n-1} o top_n o H_{n-1}^{-1}, the rule that is consistent with
///  shifting arbitrary (not only fixed-point) scaling data.
enum class BranchRule { Interpolate, BoxScaling };

struct AffineBranch {
    int level = 0;
    ext lo = 0, hi = 0;
    Affine map;
};

struct PiecewiseAffineRep final : UnimodalMap::Impl {
    ScalingData sigma;
    int depth = 0;
    ext c = 0;
    BranchRule rule = BranchRule::Interpolate;
    IntervalTower tower;
    std::vector<AffineBranch> branches;  // sorted by lo

    MapKind kind() const override { return MapKind::PiecewiseAffine; }
    ext critical_point() const override { return c; }
    const AffineBranch& branch_at(ext x) const;  // throws OutsideDomain / DepthExceeded
    ext eval(ext x) const override { return branch_at(x).map(x); }
    Jet<ext> jet(ext x) const override;
    std::string describe() const override;
};

/// One level of a self-similar extension, in the normalized coordinates of that
/// level: gap on [s0, 1 - s1], affine top on [1 - s1, 1].
struct ExtensionLevel {
    double s0 = 0, s1 = 0;
    DiffeoPiece gap;
    double lip = 0;  // Lipschitz constant of the gap derivative, level coordinates
};

struct ExtendedRep final : UnimodalMap::Impl {
    ScalingData sigma;
    std::vector<ExtensionLevel> levels;
    ext c_tail = 0;  // critical point of the quadratic tail below the last level
    ext c = 0;
    std::vector<int> word;  // gap labels, informational

    MapKind kind() const override { return MapKind::Extended; }
    ext critical_point() const override { return c; }
    ext eval(ext x) const override { return jet_impl(x, false).v; }
    Jet<ext> jet(ext x) const override { return jet_impl(x, true); }
    std::string describe() const override;
    Jet<ext> jet_impl(ext x, bool derivatives) const;
};

/// f = outer[k-1] o ... o outer[0] o q_c.
struct CompositeRep final : UnimodalMap::Impl {
    std::vector<DiffeoPiece> outer;
    ext c = 0;
    std::string label = "composite";

    MapKind kind() const override { return MapKind::Composite; }
    ext critical_point() const override { return c; }
    ext eval(ext x) const override;
    Jet<ext> jet(ext x) const override;
    std::string describe() const override { return label; }
};

UnimodalMap make_composite(std::vector<DiffeoPiece> outer, ext c, std::string label = "composite");

/// R^n f = H^{-1} o f^{2^n} o H with the n conjugacies flattened into H.
struct RenormalizedViewRep final : UnimodalMap::Impl {
    UnimodalMap base;
    int level = 0;
    Affine H;
    ext c = 0;
    Precision precision = Precision::Extended;

    MapKind kind() const override { return MapKind::RenormalizedView; }
    ext critical_point() const override { return c; }
    ext eval(ext x) const override;
    Jet<ext> jet(ext x) const override;
    std::string describe() const override;
};

UnimodalMap make_view(UnimodalMap base, int level, Affine H, ext c, Precision p = Precision::Extended);

/// Delegates to the representation.
double eval_map(const UnimodalMap& f, double x);

struct DistanceResult {
    double value = 0;     // order 0: sup |f-g|; order 1: sup |f-g| + sup |Df-Dg|
    double c0 = 0;        // sup |f-g|
    double c1 = 0;        // sup |Df-Dg| (order 1 only)
    int grid = 0;         // requested grid size
    int covered = 0;      // points where both maps were defined
    int excluded = 0;     // derivative points skipped next to a critical point
};

/// Grid distance on the split Chebyshev grid clustered at 0, c(f), 1.
/// Points where either map is undefined are skipped and counted.
DistanceResult distance(const UnimodalMap& f, const UnimodalMap& g, int order, int grid);
DistanceResult distance_on(const UnimodalMap& f, const UnimodalMap& g, int order,
                           const std::vector<double>& grid);

/// Rescaled restriction of a unimodal map to [a,b] not containing c in its interior.
DiffeoPiece rescale_restriction(const UnimodalMap& f, Interval ab);

/// Orbit of the critical point: orbit[k] = f^k(c) with orbit[1] = 1 by normalization.
std::vector<ext> critical_orbit(const UnimodalMap& f, int length);

} // namespace rlab
