// Command-line front end: fixed-point solvers, metric axiom checks, and
// geometry demos with machine-readable JSON (or CSV) reports.
//
// Exit codes: 0 success, 1 usage/parse error, 2 numeric failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhyp/builtin_maps.hpp"
#include "dhyp/dmetric.hpp"
#include "dhyp/fixedpoint.hpp"
#include "dhyp/funcspace.hpp"

using json = nlohmann::ordered_json;
using namespace dhyp;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool canonical = false;
    std::string out;
    uint64_t seed = 0;
};

json hyp_json(const Hyp& x, bool canonical) {
    json j{{"u", x.u}, {"v", x.v}};
    if (canonical) {
        const auto [a1, a2] = to_canonical(x);
        j["a1"] = a1;
        j["a2"] = a2;
    }
    return j;
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    double a, b;
    char comma;
    std::istringstream is(s);
    if (!(is >> a >> comma >> b) || comma != ',' || !is.eof())
        throw UsageError(std::string("cannot parse ") + what + ": '" + s + "'");
    return {a, b};
}

struct GridSpec {
    double lo, hi;
    size_t n;
};

GridSpec parse_grid(const std::string& s) {
    double lo, hi;
    size_t n;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ',' || c2 != ',' || !is.eof() ||
        n < 2)
        throw UsageError("cannot parse --grid (expected lo,hi,n): '" + s + "'");
    return {lo, hi, n};
}

/// Parses "affine:su,ou,sv,ov" or a builtin name into a map plus its
/// Lipschitz constant where one is known.
MapSpec<Hyp> parse_map(const std::string& s) {
    if (s.rfind("affine:", 0) == 0) {
        std::istringstream is(s.substr(7));
        double su, ou, sv, ov;
        char c1, c2, c3;
        if (!(is >> su >> c1 >> ou >> c2 >> sv >> c3 >> ov) || c1 != ',' ||
            c2 != ',' || c3 != ',' || !is.eof())
            throw UsageError("cannot parse affine map: '" + s + "'");
        const AffineMap m{su, ou, sv, ov};
        return {[m](const Hyp& x) { return m(x); }, m.lipschitz()};
    }
    if (s == "clamp-step") return {clamp_step, Hyp{2, 2}};
    if (s == "quad-contractive") return {quad_contractive, std::nullopt};
    if (s == "evt-counterexample") return {evt_counterexample, std::nullopt};
    throw UsageError("unknown map: '" + s + "'");
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw UsageError("cannot open output file: " + opt.out);
    f << text << "\n";
}

json solver_report(const ContractionReport<Hyp>& rep, bool canonical) {
    json j;
    j["fixed_point"] = hyp_json(rep.fixed_point, canonical);
    j["iterations"] = rep.iterations;
    j["residual"] = hyp_json(rep.residual, canonical);
    j["converged"] = rep.converged;
    json bounds = json::array();
    for (const Hyp& b : rep.apriori_bounds) bounds.push_back(hyp_json(b, canonical));
    j["apriori_bounds"] = bounds;
    if (!rep.errors_to_reference.empty()) {
        json errs = json::array();
        for (const Hyp& e : rep.errors_to_reference)
            errs.push_back(hyp_json(e, canonical));
        j["errors_to_fixed_point"] = errs;
    }
    return j;
}

int cmd_fixedpoint(const Options& opt, const std::string& mode,
                   const std::string& map_str, const std::string& start_str,
                   double tol, size_t max_iter, size_t n_pow,
                   const std::string& grid_str) {
    const auto [su, sv] = parse_pair(start_str, "--start");
    const Hyp start{su, sv};
    const Hyp tol_h{tol, tol};
    MapSpec<Hyp> spec = parse_map(map_str);

    json j;
    j["command"] = "fixedpoint";
    j["mode"] = mode;
    j["map"] = map_str;
    j["start"] = hyp_json(start, opt.canonical);
    j["tol"] = tol;

    try {
        ContractionReport<Hyp> rep;
        if (mode == "banach") {
            rep = solve_banach<Hyp>(spec, start, d_canonical, tol_h, max_iter);
        } else if (mode == "inexact") {
            auto eps = [](size_t n) {
                const double e = 1.0 / ((n + 1.0) * (n + 1.0));
                return Hyp{e, e};
            };
            auto step = [&spec, &eps](const Hyp& y, size_t n) {
                const Hyp e = eps(n);
                return spec.map(y) + Hyp{e.u, -e.v};
            };
            rep = solve_inexact<Hyp>(spec, start, eps, step, d_canonical,
                                     std::min<size_t>(max_iter, 10'000));
        } else if (mode == "power") {
            if (map_str == "clamp-step" && n_pow >= 2)
                spec.lipschitz = Hyp{0, 0}; // the composite is constant
            rep = solve_power<Hyp>(spec, n_pow, start, d_canonical, tol_h, max_iter);
        } else if (mode == "contractive") {
            const GridSpec g = parse_grid(grid_str);
            const auto grid = diagonal_grid(g.lo, g.hi, g.n);
            const double h = (g.hi - g.lo) / static_cast<double>(g.n - 1);
            rep = solve_contractive_compact(spec, grid, h, d_canonical, max_iter);
        } else {
            throw UsageError("unknown mode: '" + mode + "'");
        }
        j["report"] = solver_report(rep, opt.canonical);
        emit(opt, j.dump(2));
        return 0;
    } catch (const NoConvergence<Hyp>& e) {
        j["error"] = e.what();
        j["report"] = solver_report(e.partial, opt.canonical);
        emit(opt, j.dump(2));
        return kExitNumeric;
    } catch (const NotAContraction& e) {
        j["error"] = e.what();
        emit(opt, j.dump(2));
        return kExitNumeric;
    } catch (const NotContractive& e) {
        j["error"] = e.what();
        emit(opt, j.dump(2));
        return kExitNumeric;
    } catch (const PowerFixedPointMismatch& e) {
        j["error"] = e.what();
        emit(opt, j.dump(2));
        return kExitNumeric;
    } catch (const GridTooCoarse& e) {
        j["error"] = e.what();
        emit(opt, j.dump(2));
        return kExitNumeric;
    }
}

int cmd_check_metric(const Options& opt, const std::string& metric, size_t samples) {
    if (samples < 3) throw UsageError("--samples must be at least 3");

    std::mt19937_64 gen(opt.seed);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    auto rand_hyp = [&] { return Hyp{dist(gen), dist(gen)}; };
    auto rand_bc = [&] {
        return BC{{dist(gen), dist(gen)}, {dist(gen), dist(gen)}};
    };

    AxiomReport rep;
    if (metric == "canonical") {
        rep = check_axioms_sampled<Hyp>(d_canonical, rand_hyp, samples);
    } else if (metric == "hypmod") {
        rep = check_axioms_sampled<BC>(d_hypmod, rand_bc, samples);
    } else if (metric.rfind("product:", 0) == 0) {
        auto named = [](const std::string& name) -> RealMetric {
            if (name == "euclidean") return real_euclidean;
            if (name == "discrete") return real_discrete;
            throw UsageError("unknown real metric: '" + name + "'");
        };
        const std::string rest = metric.substr(8);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw UsageError("product metric needs two names: '" + metric + "'");
        rep = check_axioms_sampled<BC>(
            d_product(named(rest.substr(0, comma)), named(rest.substr(comma + 1))),
            rand_bc, samples);
    } else {
        throw UsageError("unknown metric: '" + metric + "'");
    }

    json j;
    j["command"] = "check-metric";
    j["metric"] = metric;
    j["samples"] = samples;
    j["seed"] = opt.seed;
    j["clauses"] = {{"nonneg_identity", rep.nonneg_identity},
                    {"symmetry", rep.symmetry},
                    {"triangle", rep.triangle}};
    j["all_pass"] = rep.all_pass();
    if (!rep.counterexample.empty()) j["counterexample"] = rep.counterexample;
    emit(opt, j.dump(2));
    return rep.all_pass() ? 0 : kExitNumeric;
}

int cmd_demo_ball(const Options& opt, const std::string& center_str,
                  const std::string& radius_str, const std::string& format) {
    const auto [cu, cv] = parse_pair(center_str, "--center");
    const auto [ru, rv] = parse_pair(radius_str, "--radius");
    const Hyp c{cu, cv}, r{ru, rv};

    std::array<Hyp, 4> verts;
    try {
        verts = sphere_vertices(c, r);
    } catch (const InvalidRadius& e) {
        throw UsageError(e.what());
    }
    // a closed-ball point that is neither interior nor on the sphere
    const Hyp witness{c.u + r.u, c.v};

    if (format == "csv") {
        std::ostringstream os;
        os << "kind,u,v\n";
        for (const Hyp& w : verts) os << "vertex," << w.u << "," << w.v << "\n";
        os << "witness," << witness.u << "," << witness.v;
        emit(opt, os.str());
        return 0;
    }

    json j;
    j["command"] = "demo ball";
    j["center"] = hyp_json(c, opt.canonical);
    j["radius"] = hyp_json(r, opt.canonical);
    json vj = json::array();
    for (const Hyp& w : verts) vj.push_back(hyp_json(w, opt.canonical));
    j["sphere_vertices"] = vj;
    j["square_corners"] = vj; // the open ball is the open square on the same corners
    j["closed_minus_open_witness"] = hyp_json(witness, opt.canonical);
    emit(opt, j.dump(2));
    return 0;
}

int cmd_demo_evt(const Options& opt, const std::string& grid_str) {
    const GridSpec g = parse_grid(grid_str);
    const auto dom = diagonal_grid(g.lo, g.hi, g.n);
    const double h = (g.hi - g.lo) / static_cast<double>(g.n - 1);
    const auto f = SampledFunction<Hyp, Hyp>::sample(dom, evt_counterexample, h);
    const auto rep = evt_extrema(f);

    json j;
    j["command"] = "demo evt";
    j["grid"] = grid_str;
    j["M"] = hyp_json(rep.sup_value, opt.canonical);
    j["m"] = hyp_json(rep.inf_value, opt.canonical);
    j["attainers"] = {{"sup_p1", hyp_json(rep.at_sup_u, opt.canonical)},
                      {"sup_p2", hyp_json(rep.at_sup_v, opt.canonical)},
                      {"inf_p1", hyp_json(rep.at_inf_u, opt.canonical)},
                      {"inf_p2", hyp_json(rep.at_inf_v, opt.canonical)}};
    j["jointly_attained"] = rep.jointly_attained;
    emit(opt, j.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic-valued metric space toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let --seed etc. appear after the subcommand

    Options opt;
    if (const char* env = std::getenv("DMETRIC_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
    app.add_flag("--canonical", opt.canonical,
                 "also emit canonical (a1, a2) coordinates");
    app.add_option("--out", opt.out, "write the report to a file instead of stdout");
    app.add_option("--seed", opt.seed, "seed for random sampling");

    auto* fp = app.add_subcommand("fixedpoint", "run a fixed-point solver");
    std::string mode = "banach", map_str, start_str = "0,0", grid_str = "0,1,1001";
    double tol = 1e-10;
    size_t max_iter = 100'000, n_pow = 2;
    fp->add_option("--mode", mode, "banach|inexact|power|contractive");
    fp->add_option("--map", map_str, "affine:su,ou,sv,ov or a builtin name")->required();
    fp->add_option("--start", start_str, "start point u,v");
    fp->add_option("--tol", tol, "tolerance per component");
    fp->add_option("--max-iter", max_iter, "iteration cap");
    fp->add_option("--n", n_pow, "power N for --mode power");
    fp->add_option("--grid", grid_str, "lo,hi,n grid for --mode contractive");

    auto* cm = app.add_subcommand("check-metric", "property-check metric axioms");
    std::string metric;
    size_t samples = 10'000;
    cm->add_option("--metric", metric, "canonical|hypmod|product:d1,d2")->required();
    cm->add_option("--samples", samples, "number of random triples");

    auto* demo = app.add_subcommand("demo", "geometry demos");
    demo->require_subcommand(1);
    auto* ball = demo->add_subcommand("ball", "four-point sphere and square ball");
    std::string center_str = "0,0", radius_str = "1,1", format = "json";
    ball->add_option("--center", center_str, "center u,v");
    ball->add_option("--radius", radius_str, "radius u,v (must be in D+)");
    ball->add_option("--format", format, "json|csv");
    auto* evt = demo->add_subcommand("evt", "componentwise extreme values");
    std::string evt_grid = "0,1,1001";
    evt->add_option("--grid", evt_grid, "lo,hi,n grid");

    try {
        app.parse(argc, argv);
        if (fp->parsed())
            return cmd_fixedpoint(opt, mode, map_str, start_str, tol, max_iter,
                                  n_pow, grid_str);
        if (cm->parsed()) return cmd_check_metric(opt, metric, samples);
        if (ball->parsed()) return cmd_demo_ball(opt, center_str, radius_str, format);
        if (evt->parsed()) return cmd_demo_evt(opt, evt_grid);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
