#pragma once

#include <string>
#include <vector>

#include "renormlab/config.hpp"
#include "renormlab/map.hpp"

namespace rlab {

/// Input maps by name:
///   quadratic(c)          q_c; c = "feigenbaum" picks the accumulation point
///   reference(depth)      reference map; empty depth uses depth.reference
///   piecewise(sigma)      f_sigma to depth.piecewise; sigma = "fixed", "s0:s1"
///                         or a period "s0:s1/s0:s1/..."
///   extension(shape)      fixed-point extension to depth.extension; shape is a
///                         fraction in [-1, 1] of the admissible gap range or "default"
///   slow(d-spec)          slow map with depth.slow perturbed gaps
struct NamedMap {
    UnimodalMap map;
    std::string family;
    std::string argument;
};

/// Throws Domain on malformed specs; construction errors pass through.
NamedMap resolve_map(const std::string& spec, const RunConfig& config);

/// Names accepted by resolve_map.
const std::vector<std::string>& map_families();

} // namespace rlab
