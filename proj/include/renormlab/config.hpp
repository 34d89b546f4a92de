#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "renormlab/numeric.hpp"

namespace rlab {

/// Run configuration. File format: one `key = value` per line, `#` comments.
///
/// Keys: precision (double | extended), grid, seed, outdir, depth.<name>,
/// tol.<name>. Only the names listed in depth_ranges() and tol_defaults() are
/// accepted.
struct RunConfig {
    Precision precision = Precision::Extended;
    int grid = 1025;
    std::map<std::string, int> depth;
    std::map<std::string, double> tol;
    std::uint64_t seed = 1;
    std::string outdir = ".";

    static RunConfig defaults();
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    /// Sets one key from its text value; throws Domain on unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    /// Throws Domain when a value lies outside its documented range.
    void validate() const;
    /// Every key, sorted; parse(serialize()) == *this.
    std::string serialize() const;

    int depth_of(const std::string& name) const;
    double tol_of(const std::string& name) const;

    bool operator==(const RunConfig&) const = default;
};

struct DepthRange {
    int fallback = 0;
    int lo = 0, hi = 0;
    const char* meaning = "";
};

/// depth.<name>: default and safe range.
const std::map<std::string, DepthRange>& depth_ranges();
/// tol.<name>: default; every tolerance lies in (0, 1).
const std::map<std::string, double>& tol_defaults();

/// Largest renormalization depth at each precision.
int precision_depth_cap(Precision p);

} // namespace rlab
