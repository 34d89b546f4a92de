#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "renormlab/renormlab.hpp"

namespace rlab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kReferenceNote =
    "the renormalization fixed point is replaced by the reference approximant R^D q_{c_F}; "
    "its self-drift dist0(R^n ref, ref) is the error budget";

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0 ? 0.0 : x);
    return buf;
}

std::string word_string(const std::vector<int>& w)
{
    std::string s;
    for (int b : w) s += static_cast<char>('0' + b);
    return s;
}

/// Comment line with the schema version, header, then rows.
class Csv {
public:
    explicit Csv(std::string command) : command_(std::move(command))
    {
        for (const auto& [name, _] : csv_columns(command_)) header_.push_back(name);
    }
    void row(std::vector<std::string> cells)
    {
        if (cells.size() != header_.size()) throw std::logic_error("csv row width mismatch in " + command_);
        rows_.push_back(std::move(cells));
    }
    std::string str() const
    {
        std::ostringstream os;
        os << "# schema_version: " << kSchemaVersion << ", command: " << command_ << "\n";
        for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
        return os.str();
    }

private:
    std::string command_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

json config_json(const RunConfig& c)
{
    json j;
    j["precision"] = c.precision == Precision::Double ? "double" : "extended";
    j["grid"] = c.grid;
    j["seed"] = c.seed;
    for (const auto& [k, _] : depth_ranges()) j["depth." + k] = c.depth_of(k);
    for (const auto& [k, _] : tol_defaults()) j["tol." + k] = c.tol_of(k);
    return j;
}

json interval_json(Interval I) { return json::array({I.lo, I.hi}); }

struct Outcome {
    json summary;
    std::map<std::string, std::string> files;  // name -> contents
    int status = kSuccess;
};

json envelope(const std::string& command, const RunConfig& cfg)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = config_json(cfg);
    return j;
}

int verdict(bool pass) { return pass ? kSuccess : kFailure; }

// ---- subcommands -----------------------------------------------------------

Outcome cmd_fixed_point(const RunConfig& cfg, int tower_depth)
{
    Outcome o;
    const FixedPointCertificate cert = solve_fixed_point(cfg.tol_of("fixed_point"));
    json& j = o.summary = envelope("fixed-point", cfg);
    j["c_star"] = cert.c_star;
    j["sigma0"] = cert.sigma_star.s0;
    j["sigma1"] = cert.sigma_star.s1;
    j["residual"] = cert.residual;
    j["dRdc"] = cert.dRdc;
    j["identity_defect"] = cert.identity_defect;
    j["domain"] = interval_json(cert.domain);
    const bool residual_ok = cert.residual < cfg.tol_of("fixed_point");
    const bool identity_ok = cert.identity_defect < cfg.tol_of("identity");
    const bool expanding = cert.dRdc > 2;
    j["checks"] = {{"residual_below_tol", residual_ok}, {"identity_below_tol", identity_ok}, {"dRdc_above_2", expanding}};
    o.status = verdict(residual_ok && identity_ok && expanding);
    j["status"] = o.status;
    o.files["certificate.json"] = j.dump(2) + "\n";

    const IntervalTower t = interval_tower(ScalingData::constant(cert.sigma_star), tower_depth);
    json tower;
    tower["schema_version"] = kSchemaVersion;
    tower["sigma0"] = cert.sigma_star.s0;
    tower["sigma1"] = cert.sigma_star.s1;
    tower["levels"] = json::array();
    for (int k = 1; k <= t.depth; ++k)
        tower["levels"].push_back(
            {{"level", k}, {"I0", interval_json(t.I0[k])}, {"I1", interval_json(t.I1[k])}, {"x", t.x[k]}, {"y", t.y[k]}});
    o.files["tower.json"] = tower.dump(2) + "\n";
    return o;
}

Outcome cmd_extend(const RunConfig& cfg, const std::string& shape)
{
    Outcome o;
    const NamedMap nm = resolve_map("extension(" + shape + ")", cfg);
    const auto* rep = nm.map.as<ExtendedRep>();
    const UnimodalMap Rg = renormalize(nm.map);
    const DistanceResult d = distance(Rg, nm.map, 0, cfg.grid);
    Csv csv("extend");
    bool nonincreasing = true;
    for (std::size_t k = 0; k < rep->levels.size(); ++k) {
        const double lip = rep->levels[k].lip;
        const double prev = k ? rep->levels[k - 1].lip : lip;
        const bool ok = k == 0 || lip <= prev * (1 + kLipSlack);
        nonincreasing = nonincreasing && ok;
        csv.row({std::to_string(k + 1), num(rep->levels[k].s0), num(rep->levels[k].s1), num(lip),
                 num(k ? lip / prev : 1.0), num(kLipSlack), ok ? "1" : "0"});
    }
    json& j = o.summary = envelope("extend", cfg);
    j["map"] = "extension(" + shape + ")";
    j["depth"] = cfg.depth_of("extension");
    j["grid"] = cfg.grid;
    j["dist0_Rg_g"] = d.value;
    j["covered"] = d.covered;
    j["tol"] = cfg.tol_of("extension");
    j["lip_nonincreasing"] = nonincreasing;
    o.status = verdict(d.value < cfg.tol_of("extension") && nonincreasing);
    j["status"] = o.status;
    o.files["extend.json"] = j.dump(2) + "\n";
    o.files["extend.csv"] = csv.str();
    return o;
}

Outcome cmd_shift_family(const RunConfig& cfg)
{
    Outcome o;
    const int L = cfg.depth_of("shift");
    const int depth = std::max(cfg.depth_of("extension"), L + 1);
    const std::vector<DiffeoPiece> pieces = default_gap_pieces(2);
    const std::vector<double> xs = chebyshev_grid(cfg.grid);
    const int count = 1 << L;
    std::vector<std::vector<int>> words;
    std::vector<std::vector<double>> samples;
    std::vector<double> shift_dist;
    for (int m = 0; m < count; ++m) {
        std::vector<int> w(L);
        for (int i = 0; i < L; ++i) w[i] = (m >> (L - 1 - i)) & 1;
        const ExtensionResult f = two_symbol_family(pieces, w, depth);
        const ExtensionResult ft = two_symbol_family(pieces, std::vector<int>(w.begin() + 1, w.end()), depth - 1);
        shift_dist.push_back(distance(renormalize(f.map), ft.map, 0, cfg.grid).value);
        std::vector<double> v;
        for (double x : xs) v.push_back(f.map(x));
        words.push_back(w);
        samples.push_back(std::move(v));
    }
    std::vector<double> nearest(count, std::numeric_limits<double>::infinity());
    for (int a = 0; a < count; ++a)
        for (int b = a + 1; b < count; ++b) {
            double d = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) d = std::max(d, std::abs(samples[a][i] - samples[b][i]));
            nearest[a] = std::min(nearest[a], d);
            nearest[b] = std::min(nearest[b], d);
        }
    Csv csv("shift-family");
    double worst = 0, min_pair = std::numeric_limits<double>::infinity();
    for (int m = 0; m < count; ++m) {
        worst = std::max(worst, shift_dist[m]);
        min_pair = std::min(min_pair, nearest[m]);
        csv.row({word_string(words[m]), word_string(std::vector<int>(words[m].begin() + 1, words[m].end())),
                 num(shift_dist[m]), num(cfg.tol_of("shift")), num(nearest[m])});
    }
    json& j = o.summary = envelope("shift-family", cfg);
    j["word_length"] = L;
    j["depth"] = depth;
    j["words"] = count;
    j["grid"] = cfg.grid;
    j["max_dist0_Rf_ftau"] = worst;
    j["min_pair_distance"] = min_pair;
    j["tol"] = cfg.tol_of("shift");
    j["injective"] = min_pair > 0;
    o.status = verdict(worst < cfg.tol_of("shift") && min_pair > 0);
    j["status"] = o.status;
    o.files["shift-family.json"] = j.dump(2) + "\n";
    o.files["shift-family.csv"] = csv.str();
    return o;
}

Outcome cmd_horseshoe(const RunConfig& cfg, double eps0, double eps1, int nwords, int length)
{
    Outcome o;
    const HorseshoeSpec spec = branch_fixed_points(eps0, eps1, cfg.tol_of("horseshoe"));
    const DensityReport dens = density_check(spec, cfg.depth_of("horseshoe"));
    std::mt19937_64 rng(cfg.seed);
    Csv csv("horseshoe");
    double worst = 0, bound = 0;
    for (int k = 0; k < nwords; ++k) {
        SymbolWord w(length);
        for (int& b : w) b = static_cast<int>(rng() & 1);
        const CodedPoint p = code_point(spec, w);
        worst = std::max(worst, p.residual);
        bound = p.error_bound;
        csv.row({word_string(w), num(p.c), num(p.residual), num(p.error_bound)});
    }
    json& j = o.summary = envelope("horseshoe", cfg);
    j["eps0"] = eps0;
    j["eps1"] = eps1;
    j["c0_star"] = spec.c0_star;
    j["c1_star"] = spec.c1_star;
    j["A0"] = interval_json(spec.A0);
    j["A1"] = interval_json(spec.A1);
    j["lambda"] = spec.lambda;
    j["dRdc0"] = spec.dRdc0;
    j["properness_margin"] = spec.margin;
    j["density"] = {{"m", dens.m},
                    {"orbit_length", dens.orbit_length},
                    {"max_distance", dens.max_distance},
                    {"min_diameter", dens.min_diameter},
                    {"max_diameter", dens.max_diameter},
                    {"dense", dens.dense}};
    j["coding"] = {{"words", nwords}, {"length", length}, {"max_residual", worst}, {"bound", bound}};
    o.status = verdict(dens.dense && worst < bound);
    j["status"] = o.status;
    o.files["horseshoe.json"] = j.dump(2) + "\n";
    o.files["horseshoe.csv"] = csv.str();
    return o;
}

/// dist0(R^n ref, ref) for n = 0..N.
std::vector<double> self_drift(const RunConfig& cfg, int N)
{
    const ReferenceMap& ref = reference_fixed_point(cfg.depth_of("reference"));
    std::vector<double> out;
    UnimodalMap g = ref.map;
    for (int n = 0; n <= N; ++n) {
        if (n) g = renormalize_n(g, 1, cfg.precision);
        out.push_back(distance(g, ref.map, 0, cfg.grid).value);
    }
    return out;
}

Outcome cmd_renorm(const RunConfig& cfg, const std::string& spec)
{
    Outcome o;
    const NamedMap nm = resolve_map(spec, cfg);
    const int N = cfg.depth_of("renorm");
    const ReferenceMap& ref = reference_fixed_point(cfg.depth_of("reference"));
    const RenormDiagnostics d = renorm_trajectory(nm.map, N, cfg.grid, ref.map, ref.depth, cfg.precision);
    const std::vector<double> budget = self_drift(cfg, N);
    Csv csv("renorm");
    for (const TrajectoryRow& r : d.rows)
        csv.row({std::to_string(r.n), num(r.dist0), num(r.dist1), num(r.I01.lo), num(r.I01.hi), num(r.c_n),
                 num(budget[r.n])});
    const double last = d.rows.back().dist0;
    const double tol = cfg.tol_of("convergence");
    json& j = o.summary = envelope("renorm", cfg);
    j["map"] = spec;
    j["reference_depth"] = ref.depth;
    j["reference_c_F"] = ref.c_F;
    j["note"] = kReferenceNote;
    j["grid"] = cfg.grid;
    j["levels"] = N;
    j["monotone"] = d.monotone;
    j["rate"] = d.rate;
    j["final_dist0"] = last;
    j["final_budget"] = budget.back();
    j["tol"] = tol;
    if (budget.back() >= tol) o.status = kInconclusive;
    else o.status = verdict(last < tol);
    j["status"] = o.status;
    o.files["renorm.json"] = j.dump(2) + "\n";
    o.files["trajectory.csv"] = csv.str();
    return o;
}

Outcome cmd_diagnose(const RunConfig& cfg, const std::string& spec, int points)
{
    Outcome o;
    const NamedMap nm = resolve_map(spec, cfg);
    RegularityProfile p;
    if (nm.family == "slow") {
        const int depth = cfg.depth_of("slow");
        const SlowMap s = build_slow_map(d_sequence(nm.argument, depth + 1), depth, cfg.depth_of("reference"));
        p = slow_regularity(s, points);
    } else {
        RegularityOptions opt;
        opt.grid = points;
        p = regularity_profiles(nm.map, opt);
    }
    const double tol = cfg.tol_of("regularity");
    Csv csv("diagnose");
    for (std::size_t i = 0; i < p.x.size(); ++i)
        csv.row({num(p.x[i]), num(p.eps[i]), num(p.eps_bar[i]), num(p.delta[i]), num(p.beta[i]), num(p.beta_hat[i]),
                 num(std::abs(p.eps[i] - p.delta[i] - p.beta[i])), num(tol)});
    json& j = o.summary = envelope("diagnose", cfg);
    j["map"] = spec;
    j["points"] = points;
    j["E"] = p.E;
    j["identity_residual"] = p.identity_residual;
    j["center_defect"] = p.center_defect;
    j["l1_delta"] = p.l1_delta;
    j["windows"] = p.windows;
    j["partial"] = p.partial;
    j["increments"] = p.increments;
    j["ratio"] = p.ratio;
    j["stable_ratio"] = RegularityOptions{}.stable_ratio;
    j["stable"] = p.stable;
    j["verdict"] = p.stable ? "C2+|.| plausible" : "not C2+|.|";
    j["tol"] = tol;
    o.status = verdict(p.identity_residual < tol);
    j["status"] = o.status;
    o.files["diagnose.json"] = j.dump(2) + "\n";
    o.files["regularity.csv"] = csv.str();
    return o;
}

Outcome cmd_apriori(const RunConfig& cfg, const std::string& spec, int samples)
{
    Outcome o;
    const NamedMap nm = resolve_map(spec, cfg);
    const int N = cfg.depth_of("analysis");
    const AprioriBounds b = apriori_bounds(nm.map, N);
    constexpr double kSpreadLimit = 2.0;
    Csv csv("apriori");
    for (const AprioriLevel& l : b.levels)
        csv.row({std::to_string(l.n), num(l.min_ratio), num(l.min_gap), num(l.max_Df), num(l.measure),
                 num(l.measure_ratio), num(b.tau), num(kSpreadLimit)});
    int mult = 0;
    for (int n = 2; n <= N; ++n)
        mult = std::max(mult, multiplicity_survey(nm.map, n, samples, cfg.seed + n).max_multiplicity);
    const PhiDecomposition phi = decompose_phi(nm.map);
    double worst = std::numeric_limits<double>::infinity();
    int max_m = 0;
    const std::vector<CrossRatioSample> cr = cross_ratio_survey(nm.map, N, samples, cfg.seed, phi.K());
    for (const CrossRatioSample& s : cr) {
        worst = std::min(worst, s.d.B / s.d.bound);
        max_m = std::max(max_m, s.d.m);
    }
    json& j = o.summary = envelope("apriori", cfg);
    j["map"] = spec;
    j["levels"] = N;
    j["tau"] = b.tau;
    j["df_spread"] = b.df_spread;
    j["df_spread_limit"] = kSpreadLimit;
    j["max_multiplicity"] = mult;
    j["multiplicity_limit"] = 7;
    j["K"] = phi.K();
    j["cross_ratio_samples"] = cr.size();
    j["min_B_over_bound"] = worst;
    j["max_m"] = max_m;
    const bool ok = b.tau > 0 && b.df_spread < kSpreadLimit && mult <= 7 && worst >= 1;
    o.status = verdict(ok);
    j["status"] = o.status;
    o.files["apriori.json"] = j.dump(2) + "\n";
    o.files["apriori.csv"] = csv.str();
    return o;
}

Outcome cmd_factorize(const RunConfig& cfg, const std::string& spec)
{
    Outcome o;
    const NamedMap nm = resolve_map(spec, cfg);
    const int N = cfg.depth_of("analysis");
    const PhiDecomposition phi = decompose_phi(nm.map);
    Csv csv("factorize");
    std::vector<double> sphi, sq, gap;
    for (int n = 1; n <= N; ++n) {
        const Factorization f = quadratic_factorization(nm.map, n, phi);
        const PureQuadraticModel m = pure_quadratic_model(nm.map, n, cfg.grid);
        sphi.push_back(f.sum_phi);
        sq.push_back(f.sum_q);
        gap.push_back(m.c1_gap);
    }
    // sum_q is bounded when its increments shrink geometrically
    double r = 0;
    for (std::size_t k = 2; k < sq.size(); ++k) r = std::max(r, (sq[k] - sq[k - 1]) / (sq[k - 1] - sq[k - 2]));
    const double inc = sq.size() > 1 ? sq.back() - sq[sq.size() - 2] : 0;
    const double q_bound = r < 1 ? sq.back() + inc * r / (1 - r) : std::numeric_limits<double>::infinity();
    bool phi_dec = true, gap_dec = true;
    for (int n = 1; n <= N; ++n) {
        const std::size_t k = static_cast<std::size_t>(n - 1);
        const bool pd = k == 0 || sphi[k] < sphi[k - 1];
        const bool gd = k == 0 || gap[k] < gap[k - 1];
        phi_dec = phi_dec && pd;
        gap_dec = gap_dec && gd;
        csv.row({std::to_string(n), num(sphi[k]), num(sq[k]), num(gap[k]), pd ? "1" : "0", gd ? "1" : "0",
                 num(q_bound)});
    }
    json& j = o.summary = envelope("factorize", cfg);
    j["map"] = spec;
    j["levels"] = N;
    j["grid"] = cfg.grid;
    j["K"] = phi.K();
    j["sum_phi_decreasing"] = phi_dec;
    j["sum_q_increment_ratio"] = r;
    j["sum_q_bound"] = q_bound;
    j["sum_q_bounded"] = r < 1;
    j["c1_gap_decreasing"] = gap_dec;
    o.status = verdict(phi_dec && r < 1 && gap_dec);
    j["status"] = o.status;
    o.files["factorize.json"] = j.dump(2) + "\n";
    o.files["factorize.csv"] = csv.str();
    return o;
}

Outcome cmd_slow(const RunConfig& cfg, const std::string& dspec, int points)
{
    Outcome o;
    const int depth = cfg.depth_of("slow");
    const SlowMap s = build_slow_map(d_sequence(dspec, depth + 1), depth, cfg.depth_of("reference"));
    const SlowReport rep = verify_slow(s, depth, cfg.grid);
    const RegularityProfile p = slow_regularity(s, points);
    Csv csv("slow");
    for (const SlowRow& r : rep.rows)
        csv.row({std::to_string(r.n), num(r.d), num(s.schedule.t[r.n]), num(r.measured), num(r.budget), num(r.chain),
                 num(r.margin), r.inconclusive ? "1" : "0"});
    json& j = o.summary = envelope("slow", cfg);
    j["d_spec"] = dspec;
    j["depth"] = depth;
    j["note"] = kReferenceNote;
    j["max_amplitude"] = max_amplitude(cfg.depth_of("reference"));
    j["orbit_defect"] = s.orbit_defect;
    j["margins_ok"] = rep.ok;
    j["inconclusive"] = rep.inconclusive;
    j["beta_hat_ratio"] = p.ratio;
    j["beta_hat_increments"] = p.increments;
    j["beta_hat_stable"] = p.stable;
    j["verdict"] = p.stable ? "C2+|.| plausible" : "not C2+|.|";
    o.status = rep.inconclusive ? kInconclusive : verdict(rep.ok);
    j["status"] = o.status;
    o.files["slow.json"] = j.dump(2) + "\n";
    o.files["slow.csv"] = csv.str();
    return o;
}

std::string error_record(const std::string& command, const std::string& kind, const std::string& message)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j.dump();
}

std::string help_footer(const std::string& command)
{
    std::string s = "CSV columns:\n";
    for (const auto& [name, meaning] : csv_columns(command)) s += "  " + name + ": " + meaning + "\n";
    return s;
}

} // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> c = {"fixed-point", "extend",  "shift-family", "horseshoe", "renorm",
                                               "diagnose",    "apriori", "factorize",    "slow"};
    return c;
}

const std::vector<std::pair<std::string, std::string>>& csv_columns(const std::string& command)
{
    static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> cols = {
        {"fixed-point", {}},
        {"extend",
         {{"level", "extension level n"},
          {"s0", "sigma0 at level n"},
          {"s1", "sigma1 at level n"},
          {"lip", "Lipschitz constant of the derivative of the level-n gap piece"},
          {"lip_ratio", "lip_n / lip_{n-1}"},
          {"slack", "relative slack allowed in lip_n <= lip_{n-1}"},
          {"nonincreasing", "1 when lip_n <= lip_{n-1} (1 + slack)"}}},
        {"shift-family",
         {{"word", "symbols omega_1..omega_L choosing the gap piece per level"},
          {"shifted", "tau omega"},
          {"dist0_Rf_ftau", "dist0(R f_omega, f_{tau omega}) on the grid"},
          {"tol", "tolerance for dist0_Rf_ftau"},
          {"nearest", "dist0 from f_omega to the closest other f_omega'"}}},
        {"horseshoe",
         {{"word", "random symbol word"},
          {"c", "coded parameter c(word)"},
          {"residual", "|R(c(w), eps_{w_0}) - c(tau w)|"},
          {"bound", "lambda^-|w| |c1* - c0*|"}}},
        {"renorm",
         {{"n", "renormalization level"},
          {"dist0", "sup |R^n f - reference| on the grid"},
          {"dist1", "dist0 plus sup of the derivative difference"},
          {"I01_lo", "left end of I_0^1 of R^n f"},
          {"I01_hi", "right end of I_0^1 of R^n f"},
          {"c_n", "critical point of R^n f"},
          {"budget", "dist0(R^n reference, reference), the reference error budget"}}},
        {"diagnose",
         {{"x", "grid point (c excluded)"},
          {"eps", "D^2 f(x) / D^2 f(c) - 1"},
          {"eps_bar", "mean of eps over [c, x]"},
          {"delta", "eps - eps_bar"},
          {"beta", "int_c^x delta(t) / (t - c) dt"},
          {"beta_hat", "int_c^x |delta(t)| / |t - c| dt"},
          {"residual", "|eps - delta - beta|"},
          {"tol", "tolerance for residual"}}},
        {"apriori",
         {{"n", "cycle level"},
          {"min_ratio", "min over j of |I_j^{n+1}| / |I_j^n| (both children)"},
          {"min_gap", "min over j of |gap_j^n| / |I_j^n|"},
          {"max_Df", "max |D f^{2^n}| on I_0^n"},
          {"measure", "total length of the level-n cycle"},
          {"measure_ratio", "measure_n / measure_{n-1}"},
          {"tau", "min of min_ratio and min_gap over all levels"},
          {"df_spread_limit", "allowed max/min ratio of max_Df across levels"}}},
        {"factorize",
         {{"n", "level"},
          {"sum_phi", "sum_j |phi_j^n| (L1 nonlinearity norms)"},
          {"sum_q", "sum_j |I_j^n| / dist(I_j^n, c)"},
          {"c1_gap", "|R^n f - f_n|_1 against the pure quadratic model"},
          {"phi_decreasing", "1 when sum_phi_n < sum_phi_{n-1}"},
          {"gap_decreasing", "1 when c1_gap_n < c1_gap_{n-1}"},
          {"sum_q_bound", "geometric extrapolation of sum_q (inf when increments do not shrink)"}}},
        {"slow",
         {{"n", "level"},
          {"d", "prescribed lower bound d_n"},
          {"t", "bump amplitude t_n"},
          {"measured", "dist0(R^n f, reference)"},
          {"budget", "reference self-drift plus chart mismatch"},
          {"chain", "max over U_0 of the gap displacement pushed through phi"},
          {"margin", "measured - (d - budget); must be >= 0"},
          {"inconclusive", "1 when budget >= d"}}},
    };
    const auto it = cols.find(command);
    if (it == cols.end()) throw Error(ErrorKind::Domain, "unknown command '" + command + "'");
    return it->second;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Renormalization laboratory for unimodal maps", "renormlab"};
    app.require_subcommand(1);
    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--set", overrides, "override one config key (key=value), repeatable");

    std::map<std::string, CLI::App*> sub;
    const std::map<std::string, std::string> about = {
        {"fixed-point", "fixed point c* of the scaling map: certificate.json and tower.json"},
        {"extend", "self-similar extension g of the fixed point, Rg = g residual, Lipschitz table"},
        {"shift-family", "two-symbol family f_omega: injectivity and R f_omega = f_{tau omega}"},
        {"horseshoe", "coding of the two-branch scaling map and density of the coded orbit"},
        {"renorm", "renormalization trajectory of a named map against the reference"},
        {"diagnose", "eps, delta, beta, beta_hat profiles and the C2+|.| verdict"},
        {"apriori", "a priori bounds, intersection multiplicity and cross-ratio distortion"},
        {"factorize", "quadratic factorization sums and the pure quadratic model gap"},
        {"slow", "slow-convergence construction and margin table"},
    };
    for (const std::string& c : commands()) {
        sub[c] = app.add_subcommand(c, about.at(c));
        if (!csv_columns(c).empty()) sub[c]->footer(help_footer(c));
    }
    int tower_depth = 8;
    sub["fixed-point"]->add_option("--tower-depth", tower_depth, "levels in tower.json")->check(CLI::Range(1, 40));
    std::string shape = "default";
    sub["extend"]->add_option("--shape", shape, "gap shape: 'default' or a fraction in [-1, 1]");
    double eps0 = 1.0, eps1 = 0.995;
    int nwords = 100, length = 30;
    sub["horseshoe"]->add_option("--eps0", eps0, "eps of branch 0");
    sub["horseshoe"]->add_option("--eps1", eps1, "eps of branch 1");
    sub["horseshoe"]->add_option("--words", nwords, "random words for the coding residual")->check(CLI::Range(1, 100000));
    sub["horseshoe"]->add_option("--length", length, "length of the random words")->check(CLI::Range(1, 200));
    std::string map_spec = "quadratic(feigenbaum)";
    sub["renorm"]->add_option("--map", map_spec, "quadratic(c) | reference(depth) | piecewise(sigma) | extension(shape) | slow(d-spec)");
    std::string diag_spec = "reference()", apriori_spec = "reference()", fact_spec = "reference()";
    int points = 257, slow_points = 129, samples = 200;
    sub["diagnose"]->add_option("--map", diag_spec, "input map spec");
    sub["diagnose"]->add_option("--points", points, "profile grid size")->check(CLI::Range(9, 4097));
    sub["apriori"]->add_option("--map", apriori_spec, "input map spec");
    sub["apriori"]->add_option("--samples", samples, "random towers and cross-ratio configurations")->check(CLI::Range(1, 100000));
    sub["factorize"]->add_option("--map", fact_spec, "input map spec");
    std::string dspec = "harmonic";
    sub["slow"]->add_option("--d", dspec, "d-spec: harmonic[:k] | geometric[:k] | zero; k = 'max' uses the largest amplitude");
    sub["slow"]->add_option("--points", slow_points, "profile grid size for the beta_hat verdict")->check(CLI::Range(9, 4097));

    std::string command = "renormlab";
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_record(command, "Usage", e.what()) << "\n";
        return kFailure;
    }
    for (const auto& [name, s] : sub)
        if (s->parsed()) command = name;

    try {
        RunConfig cfg = config_path.empty() ? RunConfig::defaults() : RunConfig::load(config_path);
        for (const std::string& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::Domain, "--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        cfg.validate();

        Outcome o;
        if (command == "fixed-point") o = cmd_fixed_point(cfg, tower_depth);
        else if (command == "extend") o = cmd_extend(cfg, shape);
        else if (command == "shift-family") o = cmd_shift_family(cfg);
        else if (command == "horseshoe") o = cmd_horseshoe(cfg, eps0, eps1, nwords, length);
        else if (command == "renorm") o = cmd_renorm(cfg, map_spec);
        else if (command == "diagnose") o = cmd_diagnose(cfg, diag_spec, points);
        else if (command == "apriori") o = cmd_apriori(cfg, apriori_spec, samples);
        else if (command == "factorize") o = cmd_factorize(cfg, fact_spec);
        else o = cmd_slow(cfg, dspec, slow_points);

        std::filesystem::create_directories(cfg.outdir);
        for (const auto& [name, contents] : o.files) {
            const std::filesystem::path path = std::filesystem::path(cfg.outdir) / name;
            std::ofstream f(path, std::ios::binary);
            f << contents;
            if (!f) throw Error(ErrorKind::Domain, "cannot write " + path.string());
        }
        out << o.summary.dump(2) << "\n";
        return o.status;
    } catch (const Error& e) {
        err << error_record(command, to_string(e.kind()), e.what()) << "\n";
    } catch (const std::exception& e) {
        err << error_record(command, "Internal", e.what()) << "\n";
    }
    return kFailure;
}

} // namespace rlab::cli
