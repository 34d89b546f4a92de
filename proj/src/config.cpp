#include "renormlab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "renormlab/error.hpp"

namespace rlab {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v)
{
    T out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw Error(ErrorKind::Domain, "config key '" + key + "': cannot parse '" + v + "'");
    return out;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

const std::map<std::string, DepthRange>& depth_ranges()
{
    static const std::map<std::string, DepthRange> r = {
        {"analysis", {8, 1, 12, "cycle level for apriori, factorize and the multiplicity survey"}},
        {"extension", {40, 1, 60, "levels of the self-similar extension"}},
        {"horseshoe", {5, 1, 7, "cylinder depth of the dense word"}},
        {"piecewise", {30, 1, 60, "levels of a piecewise-affine map"}},
        {"reference", {12, 1, 16, "renormalizations behind the reference map"}},
        {"renorm", {10, 0, 16, "length of the renormalization trajectory"}},
        {"shift", {6, 1, 10, "word length of the two-symbol family"}},
        {"slow", {8, 0, 10, "perturbed gaps of the slow map"}},
    };
    return r;
}

const std::map<std::string, double>& tol_defaults()
{
    static const std::map<std::string, double> t = {
        {"convergence", 1e-4},  // final dist0 of a renorm trajectory
        {"extension", 1e-10},   // dist0(Rg, g)
        {"fixed_point", 1e-12}, // bisection width of the fixed point
        {"horseshoe", 1e-14},   // branch fixed points
        {"identity", 1e-10},    // |sigma0*^2 - sigma1*|
        {"regularity", 1e-8},   // max |eps - delta - beta|
        {"shift", 1e-10},       // dist0(R f_w, f_{tau w})
    };
    return t;
}

int precision_depth_cap(Precision p) { return p == Precision::Double ? 12 : 16; }

RunConfig RunConfig::defaults()
{
    RunConfig c;
    for (const auto& [k, r] : depth_ranges()) c.depth[k] = r.fallback;
    c.tol = tol_defaults();
    return c;
}

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (key == "precision") {
        if (value == "double") precision = Precision::Double;
        else if (value == "extended") precision = Precision::Extended;
        else throw Error(ErrorKind::Domain, "precision must be 'double' or 'extended', got '" + value + "'");
    } else if (key == "grid") {
        grid = parse_number<int>(key, value);
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "outdir") {
        if (value.empty()) throw Error(ErrorKind::Domain, "outdir must not be empty");
        outdir = value;
    } else if (key.rfind("depth.", 0) == 0) {
        const std::string name = key.substr(6);
        if (!depth_ranges().count(name)) throw Error(ErrorKind::Domain, "unknown config key '" + key + "'");
        depth[name] = parse_number<int>(key, value);
    } else if (key.rfind("tol.", 0) == 0) {
        const std::string name = key.substr(4);
        if (!tol_defaults().count(name)) throw Error(ErrorKind::Domain, "unknown config key '" + key + "'");
        tol[name] = parse_number<double>(key, value);
    } else {
        throw Error(ErrorKind::Domain, "unknown config key '" + key + "'");
    }
}

void RunConfig::validate() const
{
    if (grid < 17 || grid > (1 << 16) + 1) throw Error(ErrorKind::Domain, "grid must lie in [17, 65537]");
    for (const auto& [k, r] : depth_ranges()) {
        const int v = depth_of(k);
        if (v < r.lo || v > r.hi)
            throw Error(ErrorKind::Domain, "depth." + k + " = " + std::to_string(v) + " outside [" +
                                               std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
    const int cap = precision_depth_cap(precision);
    if (depth_of("renorm") > cap || depth_of("reference") > cap)
        throw Error(ErrorKind::Domain, "renormalization depth above " + std::to_string(cap) + " at this precision");
    for (const auto& [k, v] : tol)
        if (!(v > 0 && v < 1)) throw Error(ErrorKind::Domain, "tol." + k + " must lie in (0, 1)");
}

std::string RunConfig::serialize() const
{
    std::ostringstream os;
    for (const auto& [k, r] : depth_ranges()) os << "depth." << k << " = " << depth_of(k) << "\n";
    os << "grid = " << grid << "\n";
    os << "outdir = " << outdir << "\n";
    os << "precision = " << (precision == Precision::Double ? "double" : "extended") << "\n";
    os << "seed = " << seed << "\n";
    for (const auto& [k, v] : tol_defaults()) os << "tol." << k << " = " << format_double(tol_of(k)) << "\n";
    return os.str();
}

RunConfig RunConfig::parse(const std::string& text)
{
    RunConfig c = defaults();
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::Domain, "config line " + std::to_string(lineno) + ": expected key = value");
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Domain, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

int RunConfig::depth_of(const std::string& name) const
{
    if (const auto it = depth.find(name); it != depth.end()) return it->second;
    const auto r = depth_ranges().find(name);
    if (r == depth_ranges().end()) throw Error(ErrorKind::Domain, "unknown depth '" + name + "'");
    return r->second.fallback;
}

double RunConfig::tol_of(const std::string& name) const
{
    if (const auto it = tol.find(name); it != tol.end()) return it->second;
    const auto t = tol_defaults().find(name);
    if (t == tol_defaults().end()) throw Error(ErrorKind::Domain, "unknown tolerance '" + name + "'");
    return t->second;
}

} // namespace rlab
