#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "renormlab/renormlab.hpp"

namespace py = pybind11;
using namespace rlab;

namespace {

py::tuple interval(Interval I) { return py::make_tuple(I.lo, I.hi); }

RunConfig config_from(const py::dict& d)
{
    RunConfig c = RunConfig::defaults();
    for (const auto& [k, v] : d) c.set(py::str(k), py::str(v));
    c.validate();
    return c;
}

py::dict regularity_dict(const RegularityProfile& p)
{
    py::dict d;
    d["x"] = p.x;
    d["eps"] = p.eps;
    d["eps_bar"] = p.eps_bar;
    d["delta"] = p.delta;
    d["beta"] = p.beta;
    d["beta_hat"] = p.beta_hat;
    d["E"] = p.E;
    d["identity_residual"] = p.identity_residual;
    d["increments"] = p.increments;
    d["ratio"] = p.ratio;
    d["stable"] = p.stable;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Period-doubling renormalization toolkit";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<UnimodalMap>(m, "Map")
        .def("__call__", [](const UnimodalMap& f, double x) { return static_cast<double>(f(ext(x))); })
        .def("derivative",
             [](const UnimodalMap& f, double x) {
                 const Jet<ext> j = f.jet(x);
                 return py::make_tuple(static_cast<double>(j.d1), static_cast<double>(j.d2));
             })
        .def_property_readonly("critical_point", [](const UnimodalMap& f) { return static_cast<double>(f.critical_point()); })
        .def_property_readonly("kind", [](const UnimodalMap& f) { return std::string(to_string(f.kind())); })
        .def("__repr__", [](const UnimodalMap& f) { return "<Map " + f.describe() + ">"; });

    m.def("quadratic", &make_quadratic, py::arg("c"));
    m.def(
        "resolve_map", [](const std::string& spec, const py::dict& cfg) { return resolve_map(spec, config_from(cfg)).map; },
        py::arg("spec"), py::arg("config") = py::dict(),
        "quadratic(c) | reference(depth) | piecewise(sigma) | extension(shape) | slow(d-spec)");
    m.def("renormalize", &renormalize, py::arg("f"));
    m.def(
        "renormalize_n", [](const UnimodalMap& f, int n) { return renormalize_n(f, n); }, py::arg("f"), py::arg("n"));
    m.def(
        "distance",
        [](const UnimodalMap& f, const UnimodalMap& g, int order, int grid) {
            const DistanceResult d = distance(f, g, order, grid);
            return py::dict(py::arg("value") = d.value, py::arg("covered") = d.covered, py::arg("grid") = d.grid);
        },
        py::arg("f"), py::arg("g"), py::arg("order") = 0, py::arg("grid") = 1025);

    m.def(
        "scaling_factors",
        [](double c) {
            const ScalingFactors s = scaling_factors(c);
            return py::dict(py::arg("A0") = s.A0, py::arg("A1") = s.A1, py::arg("R") = s.Rc);
        },
        py::arg("c"));
    m.def(
        "solve_fixed_point",
        [](double tol) {
            const FixedPointCertificate c = solve_fixed_point(tol);
            return py::dict(py::arg("c_star") = c.c_star, py::arg("sigma0") = c.sigma_star.s0,
                            py::arg("sigma1") = c.sigma_star.s1, py::arg("residual") = c.residual,
                            py::arg("dRdc") = c.dRdc, py::arg("identity_defect") = c.identity_defect,
                            py::arg("domain") = interval(c.domain));
        },
        py::arg("tol") = 1e-12);
    m.def(
        "interval_tower",
        [](double s0, double s1, int depth) {
            const IntervalTower t = interval_tower(ScalingData::constant({s0, s1}), depth);
            py::list levels;
            for (int k = 1; k <= depth; ++k)
                levels.append(py::dict(py::arg("level") = k, py::arg("I0") = interval(t.I0[k]),
                                       py::arg("I1") = interval(t.I1[k]), py::arg("x") = t.x[k], py::arg("y") = t.y[k]));
            return levels;
        },
        py::arg("s0"), py::arg("s1"), py::arg("depth"));
    m.def(
        "extension",
        [](int depth) {
            const ExtensionResult e = build_extension(default_gap_pieces(2)[0], depth);
            return py::make_tuple(e.map, e.lip);
        },
        py::arg("depth") = 40, "fixed-point extension g and its Lipschitz constants");

    m.def(
        "feigenbaum",
        [](double tol) {
            const FeigenbaumResult r = feigenbaum_parameter(tol);
            return py::dict(py::arg("c_F") = r.c_F, py::arg("superstable") = r.superstable,
                            py::arg("delta") = r.delta);
        },
        py::arg("tol") = 1e-15);
    m.def(
        "reference_map", [](int depth) { return reference_fixed_point(depth).map; },
        py::arg("depth") = kReferenceDepth);

    m.def(
        "horseshoe",
        [](double eps0, double eps1) {
            const HorseshoeSpec h = branch_fixed_points(eps0, eps1, 1e-15);
            return py::dict(py::arg("c0_star") = h.c0_star, py::arg("c1_star") = h.c1_star,
                            py::arg("A0") = interval(h.A0), py::arg("A1") = interval(h.A1),
                            py::arg("lambda") = h.lambda);
        },
        py::arg("eps0") = 1.0, py::arg("eps1") = 0.995);
    m.def(
        "code_point",
        [](const std::vector<int>& word, double eps0, double eps1) {
            const CodedPoint p = code_point(branch_fixed_points(eps0, eps1, 1e-15), word);
            return py::dict(py::arg("c") = p.c, py::arg("residual") = p.residual, py::arg("bound") = p.error_bound);
        },
        py::arg("word"), py::arg("eps0") = 1.0, py::arg("eps1") = 0.995);

    m.def(
        "regularity",
        [](const UnimodalMap& f, int grid) {
            RegularityOptions o;
            o.grid = grid;
            return regularity_dict(regularity_profiles(f, o));
        },
        py::arg("f"), py::arg("grid") = 257);
    m.def(
        "apriori",
        [](const UnimodalMap& f, int levels) {
            const AprioriBounds b = apriori_bounds(f, levels);
            return py::dict(py::arg("tau") = b.tau, py::arg("df_spread") = b.df_spread);
        },
        py::arg("f"), py::arg("levels") = 8);
    m.def("d_sequence", &d_sequence, py::arg("spec"), py::arg("count"));
    m.def(
        "max_amplitude", [](int depth) { return max_amplitude(depth); }, py::arg("reference_depth") = kReferenceDepth);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> all{"renormlab"};
            all.insert(all.end(), args.begin(), args.end());
            std::vector<const char*> argv;
            for (const auto& a : all) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "runs one CLI subcommand; returns (exit code, stdout, stderr)");
    m.attr("schema_version") = cli::kSchemaVersion;
}
