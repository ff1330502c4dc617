#include "piperoute/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "piperoute/cost_model.hpp"
#include "piperoute/exact_solver.hpp"
#include "piperoute/matheuristics.hpp"
#include "piperoute/validator.hpp"

namespace piperoute {

namespace {

struct Cell {
    double sum = 0.0;
    int n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
    bool empty() const { return n == 0; }
    double mean() const { return n ? sum / n : 0.0; }
};

struct GroupStats {
    Cell vars, cons, gap_ex, gap_h1, gap_h2, time_ex, time_h1, time_h2;
    int solved = 0;
    int instances = 0;
};

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string cell_or_blank(const Cell& c, int decimals) {
    return c.empty() ? std::string() : fmt(c.mean(), decimals);
}

void emit_row(std::ostringstream& os, const std::string& d, const std::string& s,
              const std::string& o, const GroupStats& g) {
    os << d << "," << s << "," << o << "," << cell_or_blank(g.vars, 0) << ","
       << cell_or_blank(g.cons, 0) << "," << g.solved << "," << cell_or_blank(g.gap_ex, 2)
       << "," << cell_or_blank(g.gap_h1, 2) << "," << cell_or_blank(g.gap_h2, 2) << ","
       << cell_or_blank(g.time_ex, 2) << "," << cell_or_blank(g.time_h1, 2) << ","
       << cell_or_blank(g.time_h2, 2) << "\n";
}

void accumulate(GroupStats& into, const GroupStats& from) {
    for (auto field : {&GroupStats::vars, &GroupStats::cons, &GroupStats::gap_ex,
                       &GroupStats::gap_h1, &GroupStats::gap_h2, &GroupStats::time_ex,
                       &GroupStats::time_h1, &GroupStats::time_h2}) {
        (into.*field).sum += (from.*field).sum;
        (into.*field).n += (from.*field).n;
    }
    into.solved += from.solved;
    into.instances += from.instances;
}

} // namespace

std::string run_benchmark(const std::vector<RandomInstanceSpec>& specs,
                          const BenchmarkMethods& methods, const BenchmarkLimits& limits) {
    std::map<std::tuple<int, int, int>, GroupStats> groups;

    for (const RandomInstanceSpec& spec : specs) {
        GroupStats& grp = groups[{spec.density, spec.n_services, spec.n_obstacles}];
        ++grp.instances;
        if (limits.log)
            *limits.log << "[benchmark] instance d=" << spec.density << " s="
                        << spec.n_services << " o=" << spec.n_obstacles << " g="
                        << spec.replicate << "\n";
        Scenario sc;
        RoutingGraph g;
        try {
            sc = generate_random(spec);
            g = build_routing_graph(sc);
        } catch (const ScenarioError& e) {
            if (limits.log) *limits.log << "[benchmark] skipped: " << e.what() << "\n";
            continue;
        }
        EdgeCostTable costs = build_cost_table(g, sc);
        MasterModel mm = master_model_stats(g, static_cast<std::int32_t>(sc.services.size()));
        grp.vars.add(static_cast<double>(mm.n_vars));
        grp.cons.add(static_cast<double>(mm.n_constraints));

        std::optional<double> exact_best;
        if (methods.exact) {
            ExactConfig ec;
            ec.time_limit_s = limits.time_limit_s;
            ExactResult r = solve_exact(g, costs, sc, ec);
            grp.time_ex.add(r.wall_time_s);
            if (r.status == SolveStatus::Optimal) {
                ++grp.solved;
                grp.gap_ex.add(0.0);
                exact_best = r.solution.objective;
            } else if (r.solution.status == SolveStatus::Feasible) {
                grp.gap_ex.add(100.0 * r.gap);
                exact_best = r.solution.objective;
            }
        }

        auto heuristic_gap = [&](double obj) -> std::optional<double> {
            if (!exact_best || *exact_best <= 0.0) return std::nullopt;
            return 100.0 * (obj - *exact_best) / *exact_best;
        };

        if (methods.h1) {
            H1Config hc;
            hc.time_limit_s = limits.time_limit_s;
            hc.iter_time_limit_s = limits.time_limit_s;
            H1Result r = run_h1(g, costs, sc, hc);
            grp.time_h1.add(r.wall_time_s);
            if (r.status == SolveStatus::Feasible) {
                Solution checked = r.solution;
                finalize_solution_costs(checked, g, sc);
                if (validate(g, sc, costs, checked).pass()) {
                    if (auto gap = heuristic_gap(checked.objective)) grp.gap_h1.add(*gap);
                }
            }
        }

        if (methods.h2) {
            H2Config hc;
            hc.maxit = limits.h2_maxit;
            hc.threads = limits.threads;
            if (limits.h2_fallback_density && *limits.h2_fallback_density >= 2)
                hc.fallback_spacing = spec.region_edge / (*limits.h2_fallback_density - 1);
            H2Result r = run_h2(g, costs, sc, hc);
            grp.time_h2.add(r.wall_time_s);
            if (r.status == SolveStatus::Feasible) {
                Solution checked = r.solution;
                finalize_solution_costs(checked, g, sc);
                if (validate(g, sc, costs, checked).pass()) {
                    if (auto gap = heuristic_gap(checked.objective)) grp.gap_h2.add(*gap);
                }
            }
        }
    }

    std::ostringstream os;
    os << "d,s,o,Vars,Cons,Solved,GAP_Ex,GAP_H1,GAP_H2,Time_Ex,Time_H1,Time_H2\n";
    std::map<int, GroupStats> per_density;
    GroupStats total;
    for (const auto& [key, grp] : groups) {
        auto [d, s, o] = key;
        emit_row(os, std::to_string(d), std::to_string(s), std::to_string(o), grp);
        accumulate(per_density[d], grp);
        accumulate(total, grp);
    }
    for (const auto& [d, grp] : per_density)
        emit_row(os, std::to_string(d), "", "", grp);
    emit_row(os, "Total", "", "", total);
    return os.str();
}

} // namespace piperoute
