#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "piperoute/benchmark.hpp"
#include "piperoute/cost_model.hpp"
#include "piperoute/exact_solver.hpp"
#include "piperoute/geometry_export.hpp"
#include "piperoute/instances.hpp"
#include "piperoute/matheuristics.hpp"
#include "piperoute/scenario_io.hpp"
#include "piperoute/solution_io.hpp"
#include "piperoute/validator.hpp"

namespace {

using namespace piperoute;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

struct ScheduleFractions {
    double par = 0.1, cluster = 0.8, seq = 0.1;
};

ScheduleFractions parse_schedule(const std::string& text) {
    ScheduleFractions f;
    double a, b, c;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> c) || c1 != ':' || c2 != ':' || a < 0 || b < 0 ||
        c < 0 || a + b + c <= 0)
        throw CLI::ValidationError("--schedule", "expected par:cluster:seq, e.g. 10:80:10");
    double total = a + b + c;
    return {a / total, b / total, c / total};
}

int run_solve(const std::string& scenario_path, const std::string& method,
              const std::string& out_path, double time_limit, int threads, int maxit,
              const std::string& schedule, std::optional<double> delta_init,
              std::optional<double> delta_step, std::optional<int> fallback_density,
              bool verbose) {
    Scenario sc = load_scenario(scenario_path);
    RoutingGraph g;
    try {
        g = build_routing_graph(sc);
    } catch (const InfeasibleScenarioError& e) {
        std::cerr << "infeasible scenario: " << e.what() << "\n";
        return kExitInfeasible;
    }
    EdgeCostTable costs = build_cost_table(g, sc);
    std::cerr << "graph: " << g.pg.node_count() << " physical nodes, " << g.n_vnodes()
              << " virtual nodes, " << g.n_edges() << " edges, " << g.n_arcs()
              << " arcs\n";

    Solution sol;
    SolveStatus status;
    if (method == "exact") {
        ExactConfig ec;
        ec.time_limit_s = time_limit;
        if (verbose) ec.log = &std::cerr;
        ExactResult r = solve_exact(g, costs, sc, ec);
        status = r.status;
        sol = r.solution;
        std::cerr << "exact: " << solve_status_name(r.status) << " nodes "
                  << r.nodes_explored << " cuts " << r.cuts_dist << "+" << r.cuts_elbow
                  << " bound " << r.lower_bound << " time " << r.wall_time_s << "s\n";
    } else if (method == "h1") {
        H1Config hc;
        hc.time_limit_s = time_limit;
        hc.iter_time_limit_s = time_limit;
        hc.delta_init = delta_init;
        if (delta_step) hc.delta_step = delta_step;
        if (verbose) hc.log = &std::cerr;
        H1Result r = run_h1(g, costs, sc, hc);
        status = r.status;
        sol = r.solution;
        std::cerr << "h1: " << solve_status_name(r.status) << " after "
                  << r.growth_iterations << " restricted solves, vars "
                  << r.restricted_vars << "/" << r.full_vars << ", time " << r.wall_time_s
                  << "s\n";
    } else if (method == "h2") {
        H2Config hc;
        hc.maxit = maxit;
        ScheduleFractions f = parse_schedule(schedule);
        hc.frac_par = f.par;
        hc.frac_cluster = f.cluster;
        hc.frac_seq = f.seq;
        hc.threads = threads;
        if (fallback_density && *fallback_density >= 2)
            hc.fallback_spacing =
                (sc.region.hi.x - sc.region.lo.x) / (*fallback_density - 1);
        hc.log = &std::cerr;
        H2Result r = run_h2(g, costs, sc, hc);
        status = r.status;
        sol = r.solution;
        std::cerr << "h2: " << solve_status_name(r.status) << " after " << r.iterations
                  << " iterations" << (r.used_fallback ? " (fallback grid)" : "")
                  << ", time " << r.wall_time_s << "s\n";
    } else {
        std::cerr << "unknown method: " << method << "\n";
        return kExitUsage;
    }

    if (status == SolveStatus::Infeasible || status == SolveStatus::HeuristicFailed) {
        std::cerr << "no feasible solution"
                  << (status == SolveStatus::Infeasible ? " (proven infeasible)" : "")
                  << "\n";
        return kExitInfeasible;
    }
    if (!sol.has_paths()) {
        std::cerr << "time limit reached without an incumbent\n";
        return kExitTimeout;
    }

    finalize_solution_costs(sol, g, sc);
    save_solution(sol, g, out_path);
    std::cerr << "objective " << sol.objective << " written to " << out_path << "\n";

    ValidationReport rep = validate(g, sc, costs, sol);
    std::cerr << (rep.pass() ? "validation: all checks passed\n"
                             : "validation FAILED:\n" + rep.summary());
    return rep.pass() ? kExitOk : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-service 3D pipe routing on an orthogonal grid"};
    app.require_subcommand(1);

    // generate ---------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Generate a random benchmark scenario");
    int gd = 17, gs = 5, go = 5, gg = 1;
    std::uint64_t gseed = 1;
    double geps = 12.0;
    std::string gout = "scenario.json";
    gen->add_option("--d,--density", gd, "grid nodes per axis (cube of edge 128)");
    gen->add_option("--s,--services", gs, "number of services");
    gen->add_option("--o,--obstacles", go, "number of obstacles");
    gen->add_option("--g,--replicate", gg, "replicate index");
    gen->add_option("--seed", gseed, "random seed");
    gen->add_option("--eps", geps, "obstacle-free layer width");
    gen->add_option("--out", gout, "output scenario file");

    // solve ------------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Route all services of a scenario");
    std::string scenario_path, method = "exact", sout = "solution.json";
    std::string schedule = "10:80:10";
    double time_limit = 1e18;
    int threads = 1, maxit = 20;
    std::optional<double> delta_init, delta_step;
    std::optional<int> fallback_density;
    bool verbose = false;
    solve->add_option("scenario", scenario_path, "scenario file")->required();
    solve->add_option("--method", method, "exact, h1 or h2")->required();
    solve->add_option("--time-limit", time_limit, "seconds");
    solve->add_option("--threads", threads, "worker threads (heuristics)");
    solve->add_option("--maxit", maxit, "h2 iteration budget");
    solve->add_option("--schedule", schedule, "h2 type split par:cluster:seq");
    solve->add_option("--delta-init", delta_init, "h1 initial tube half-width");
    solve->add_option("--delta-step", delta_step, "h1 tube growth increment");
    solve->add_option("--fallback-density", fallback_density, "h2 coarse-grid fallback");
    solve->add_option("--out", sout, "output solution file");
    solve->add_flag("-v,--verbose", verbose, "verbose solver log");

    // validate ----------------------------------------------------------------
    auto* val = app.add_subcommand("validate", "Check a solution against a scenario");
    std::string vscenario, vsolution;
    val->add_option("scenario", vscenario, "scenario file")->required();
    val->add_option("solution", vsolution, "solution file")->required();

    // export ------------------------------------------------------------------
    auto* exp = app.add_subcommand("export", "Write scenario and solution as OBJ");
    std::string escenario, esolution, eout = "solution.obj";
    bool tubes = false;
    exp->add_option("scenario", escenario, "scenario file")->required();
    exp->add_option("solution", esolution, "solution file")->required();
    exp->add_option("--out", eout, "output OBJ file");
    exp->add_flag("--tubes", tubes, "emit tube meshes with the service radii");

    // benchmark ---------------------------------------------------------------
    auto* bench = app.add_subcommand("benchmark", "Random-instance benchmark report");
    std::vector<int> bd{17}, bs{5}, bo{5};
    int bg = 5;
    std::uint64_t bseed = 1;
    std::string bmethods = "exact,h1,h2", bout;
    double btl = 300.0;
    int bmaxit = 20, bthreads = 1;
    std::optional<int> bfallback;
    bench->add_option("--d", bd, "densities")->delimiter(',');
    bench->add_option("--s", bs, "service counts")->delimiter(',');
    bench->add_option("--o", bo, "obstacle counts")->delimiter(',');
    bench->add_option("--g", bg, "replicates per combination");
    bench->add_option("--seed", bseed, "random seed");
    bench->add_option("--methods", bmethods, "subset of exact,h1,h2");
    bench->add_option("--time-limit", btl, "seconds per solve");
    bench->add_option("--maxit", bmaxit, "h2 iteration budget");
    bench->add_option("--fallback-density", bfallback, "h2 coarse-grid fallback");
    bench->add_option("--threads", bthreads, "worker threads (heuristics)");
    bench->add_option("--out", bout, "CSV output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            RandomInstanceSpec spec;
            spec.density = gd;
            spec.n_services = gs;
            spec.n_obstacles = go;
            spec.replicate = gg;
            spec.seed = gseed;
            spec.eps_layer = geps;
            Scenario sc = generate_random(spec);
            save_scenario(sc, gout);
            std::cerr << "wrote " << gout << " (spacing " << sc.grid_spacing << ", "
                      << sc.services.size() << " services, " << sc.obstacles.size()
                      << " obstacles)\n";
            return kExitOk;
        }

        if (*solve) {
            return run_solve(scenario_path, method, sout, time_limit, threads, maxit,
                             schedule, delta_init, delta_step, fallback_density, verbose);
        }

        if (*val) {
            Scenario sc = load_scenario(vscenario);
            RoutingGraph g = build_routing_graph(sc);
            EdgeCostTable costs = build_cost_table(g, sc);
            Solution sol = load_solution(g, vsolution);
            ValidationReport rep = validate(g, sc, costs, sol);
            std::cout << rep.summary();
            if (rep.pass()) {
                std::cout << "all checks passed\n";
                return kExitOk;
            }
            return kExitInfeasible;
        }

        if (*exp) {
            Scenario sc = load_scenario(escenario);
            RoutingGraph g = build_routing_graph(sc);
            Solution sol = load_solution(g, esolution);
            ObjExportOptions opt;
            opt.tubes = tubes;
            export_geometry(sc, g, sol, eout, opt);
            std::cerr << "wrote " << eout << "\n";
            return kExitOk;
        }

        if (*bench) {
            std::vector<RandomInstanceSpec> specs;
            for (int d : bd) {
                for (int s : bs) {
                    for (int o : bo) {
                        for (int g2 = 1; g2 <= bg; ++g2) {
                            RandomInstanceSpec spec;
                            spec.density = d;
                            spec.n_services = s;
                            spec.n_obstacles = o;
                            spec.replicate = g2;
                            spec.seed = bseed;
                            specs.push_back(spec);
                        }
                    }
                }
            }
            if (specs.empty()) std::cerr << "warning: zero instances requested\n";
            BenchmarkMethods methods{bmethods.find("exact") != std::string::npos,
                                     bmethods.find("h1") != std::string::npos,
                                     bmethods.find("h2") != std::string::npos};
            BenchmarkLimits limits;
            limits.time_limit_s = btl;
            limits.h2_maxit = bmaxit;
            limits.h2_fallback_density = bfallback;
            limits.threads = bthreads;
            limits.log = &std::cerr;
            std::string csv = run_benchmark(specs, methods, limits);
            if (bout.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(bout);
                if (!out) throw std::runtime_error("cannot write " + bout);
                out << csv;
                std::cerr << "wrote " << bout << "\n";
            }
            return kExitOk;
        }
    } catch (const InfeasibleScenarioError& e) {
        std::cerr << "infeasible scenario: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
