#include "renormlab/registry.hpp"

#include <charconv>
#include <limits>
#include <memory>

#include "renormlab/error.hpp"
#include "renormlab/fixedpoint.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/scaling.hpp"
#include "renormlab/slowconv.hpp"

namespace rlab {

namespace {

double number(const std::string& spec, const std::string& v)
{
    double out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw Error(ErrorKind::Domain, "map spec '" + spec + "': cannot parse number '" + v + "'");
    return out;
}

ScalingBiFactor bifactor(const std::string& spec, const std::string& pair)
{
    const auto colon = pair.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Domain, "map spec '" + spec + "': expected s0:s1");
    return {number(spec, pair.substr(0, colon)), number(spec, pair.substr(colon + 1))};
}

ScalingData sigma_spec(const std::string& spec, const std::string& arg)
{
    if (arg == "fixed") return ScalingData::constant(solve_fixed_point(1e-15).sigma_star);
    std::vector<ScalingBiFactor> cycle;
    std::size_t start = 0;
    while (true) {
        const auto slash = arg.find('/', start);
        cycle.push_back(bifactor(spec, arg.substr(start, slash - start)));
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    return cycle.size() == 1 ? ScalingData::constant(cycle[0]) : ScalingData::periodic(cycle);
}

} // namespace

const std::vector<std::string>& map_families()
{
    static const std::vector<std::string> names = {"quadratic", "reference", "piecewise", "extension", "slow"};
    return names;
}

NamedMap resolve_map(const std::string& spec, const RunConfig& config)
{
    const auto open = spec.find('(');
    if (open == std::string::npos || spec.empty() || spec.back() != ')')
        throw Error(ErrorKind::Domain, "map spec '" + spec + "' must look like family(argument)");
    NamedMap out;
    out.family = spec.substr(0, open);
    out.argument = spec.substr(open + 1, spec.size() - open - 2);
    const std::string& arg = out.argument;

    if (out.family == "quadratic") {
        auto q = std::make_shared<QuadraticRep>();
        if (arg == "feigenbaum") q->c = feigenbaum_parameter(1e-20).c_F_precise;
        else q->c = number(spec, arg);
        if (!(q->c > 0 && q->c < 1)) throw Error(ErrorKind::Domain, "quadratic(c) needs 0 < c < 1");
        out.map = UnimodalMap(q);
    } else if (out.family == "reference") {
        const int depth = arg.empty() ? config.depth_of("reference") : static_cast<int>(number(spec, arg));
        if (depth < 1 || depth > precision_depth_cap(config.precision))
            throw Error(ErrorKind::Domain, "reference depth outside [1, " +
                                               std::to_string(precision_depth_cap(config.precision)) + "]");
        out.map = reference_fixed_point(depth).map;
    } else if (out.family == "piecewise") {
        out.map = build_piecewise_map(sigma_spec(spec, arg), config.depth_of("piecewise"));
    } else if (out.family == "extension") {
        const double fraction = arg.empty() || arg == "default" ? 0.0 : number(spec, arg);
        if (!(fraction >= -1 && fraction <= 1)) throw Error(ErrorKind::Domain, "extension shape must lie in [-1, 1]");
        const FixedPointCertificate cert = solve_fixed_point(1e-15);
        const GapData jd = junction_data(ScalingData::constant(cert.sigma_star), 0);
        const Interval th = admissible_theta(jd);
        const double theta = fraction >= 0 ? fraction * th.hi : -fraction * th.lo;
        const GapPiece gap = gap_interpolant(jd, theta, std::numeric_limits<double>::infinity());
        out.map = build_extension(gap.piece, config.depth_of("extension")).map;
    } else if (out.family == "slow") {
        const int depth = config.depth_of("slow");
        out.map = build_slow_map(d_sequence(arg, depth + 1), depth, config.depth_of("reference")).map;
    } else {
        throw Error(ErrorKind::Domain, "unknown map family '" + out.family + "'");
    }
    return out;
}

} // namespace rlab
