#include "piperoute/mps_export.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "piperoute/exact_solver.hpp"

namespace piperoute {

namespace {

std::string col_name(std::int64_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "X%07" PRId64, idx);
    return buf;
}

std::string row_name(std::int64_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "C%07" PRId64, idx);
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Entry {
    std::int64_t row;
    double value;
};

} // namespace

MpsStats export_model(const RoutingGraph& g, const EdgeCostTable& costs,
                      const Scenario& scenario, bool include_all_cuts,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write MPS file: " + path);

    const auto n_services = static_cast<std::int32_t>(scenario.services.size());
    const std::int64_t n_arcs = g.n_arcs();
    const std::int64_t n_vnodes = g.n_vnodes();
    auto var = [&](ServiceId k, ArcId a) { return static_cast<std::int64_t>(k) * n_arcs + a; };

    // Row layout: node capacity | flow conservation | source | sink | cuts.
    std::int64_t next_row = 0;
    const std::int64_t cap_base = next_row;
    next_row += n_vnodes;
    // Conservation rows exist for every (k, i) with i not a terminal of k;
    // map them densely.
    std::vector<std::int64_t> flow_row(static_cast<std::size_t>(n_services) * n_vnodes, -1);
    for (ServiceId k = 0; k < n_services; ++k) {
        for (VNodeId i = 0; i < n_vnodes; ++i) {
            if (i == g.source_vnode[k] || i == g.target_vnode[k]) continue;
            flow_row[static_cast<std::size_t>(k) * n_vnodes + i] = next_row++;
        }
    }
    const std::int64_t src_base = next_row;
    next_row += n_services;
    const std::int64_t snk_base = next_row;
    next_row += n_services;

    MpsStats stats;
    std::vector<char> row_sense;  // 'L' or 'E'
    std::vector<double> row_rhs;
    row_sense.resize(next_row);
    row_rhs.resize(next_row);
    for (std::int64_t r = cap_base; r < cap_base + n_vnodes; ++r) {
        row_sense[r] = 'L';
        row_rhs[r] = 1.0;
    }
    for (ServiceId k = 0; k < n_services; ++k) {
        for (VNodeId i = 0; i < n_vnodes; ++i) {
            std::int64_t r = flow_row[static_cast<std::size_t>(k) * n_vnodes + i];
            if (r >= 0) {
                row_sense[r] = 'E';
                row_rhs[r] = 0.0;
            }
        }
        row_sense[src_base + k] = 'E';
        row_rhs[src_base + k] = 1.0;
        row_sense[snk_base + k] = 'E';
        row_rhs[snk_base + k] = 1.0;
    }

    // Column entries of the static rows.
    std::vector<std::vector<Entry>> col_extra;  // cut entries appended later
    std::vector<std::vector<Entry>> cut_cols;

    // Cut rows (enumerated up front so ROWS can be emitted in one pass).
    std::vector<std::pair<char, double>> cut_rows;
    cut_cols.resize(include_all_cuts ? static_cast<std::size_t>(n_services) * n_arcs : 0);
    if (include_all_cuts) {
        // Dist rows: one per non-virtual arc and service.
        for (ServiceId k = 0; k < n_services && n_services > 1; ++k) {
            for (ArcId a = 0; a < g.n_arcs(); ++a) {
                if (g.is_virtual_arc(a)) continue;
                double m = big_m(g, scenario, a, k);
                std::int64_t row = next_row + static_cast<std::int64_t>(cut_rows.size());
                cut_rows.emplace_back('L', m);
                cut_cols[static_cast<std::size_t>(var(k, a))].push_back({row, m});
                for (ServiceId k2 = 0; k2 < n_services; ++k2) {
                    if (k2 == k) continue;
                    double R = scenario.pair_clearance(scenario.services[k],
                                                       scenario.services[k2]);
                    for (ArcId a2 = 0; a2 < g.n_arcs(); ++a2) {
                        if (arc_distance_sq(g, a, a2) < R * R)
                            cut_cols[static_cast<std::size_t>(var(k2, a2))].push_back(
                                {row, 1.0});
                    }
                }
                ++stats.dist_rows;
            }
        }
        // Elbow-R rows: per service, per physical-node group pair within D^k
        // (the same-node row forbids double turns).
        for (ServiceId k = 0; k < n_services; ++k) {
            double D = scenario.services[k].elbow_min;
            for (NodeId n = 0; n < static_cast<NodeId>(g.pg.node_count()); ++n) {
                for (NodeId n2 = n; n2 < static_cast<NodeId>(g.pg.node_count()); ++n2) {
                    if (n2 != n &&
                        point_distance_sq(g.pg.nodes[n], g.pg.nodes[n2]) > D * D)
                        continue;
                    std::int64_t row = next_row + static_cast<std::int64_t>(cut_rows.size());
                    cut_rows.emplace_back('L', 1.0);
                    for (NodeId grp : {n, n2}) {
                        EdgeId base = g.n_real_edges + 3 * grp;
                        for (EdgeId e = base; e < base + 3; ++e) {
                            for (int dir = 0; dir < 2; ++dir) {
                                auto& col =
                                    cut_cols[static_cast<std::size_t>(var(k, RoutingGraph::arc_of(e, dir)))];
                                if (col.empty() || col.back().row != row)
                                    col.push_back({row, 1.0});
                            }
                        }
                        if (n2 == n) break;
                    }
                    ++stats.elbow_rows;
                }
            }
        }
    }
    const std::int64_t total_rows = next_row + static_cast<std::int64_t>(cut_rows.size());
    stats.rows = total_rows;
    stats.columns = static_cast<std::int64_t>(n_services) * n_arcs;

    out << "NAME          PRPS\n";
    out << "ROWS\n";
    out << " N  COST\n";
    for (std::int64_t r = 0; r < next_row; ++r)
        out << " " << row_sense[r] << "  " << row_name(r) << "\n";
    for (std::size_t i = 0; i < cut_rows.size(); ++i)
        out << " " << cut_rows[i].first << "  " << row_name(next_row + static_cast<std::int64_t>(i))
            << "\n";

    auto entry = [&](const std::string& col, const std::string& row, double v) {
        out << "    " << col << "  " << row << "  " << num(v) << "\n";
    };

    out << "COLUMNS\n";
    out << "    MARKER                 'MARKER'                 'INTORG'\n";
    for (ServiceId k = 0; k < n_services; ++k) {
        for (ArcId a = 0; a < g.n_arcs(); ++a) {
            std::string name = col_name(var(k, a));
            entry(name, "COST", costs.arc_cost(a, k));
            entry(name, row_name(cap_base + g.tail(a)), 1.0);
            std::int64_t rt = flow_row[static_cast<std::size_t>(k) * n_vnodes + g.tail(a)];
            if (rt >= 0) entry(name, row_name(rt), 1.0);
            std::int64_t rh = flow_row[static_cast<std::size_t>(k) * n_vnodes + g.head(a)];
            if (rh >= 0) entry(name, row_name(rh), -1.0);
            if (g.tail(a) == g.source_vnode[k]) entry(name, row_name(src_base + k), 1.0);
            if (g.head(a) == g.target_vnode[k]) entry(name, row_name(snk_base + k), 1.0);
            if (include_all_cuts) {
                for (const Entry& ce : cut_cols[static_cast<std::size_t>(var(k, a))])
                    entry(name, row_name(ce.row), ce.value);
            }
        }
    }
    out << "    MARKER                 'MARKER'                 'INTEND'\n";

    out << "RHS\n";
    for (std::int64_t r = 0; r < next_row; ++r) {
        if (row_rhs[r] != 0.0) entry("RHS     ", row_name(r), row_rhs[r]);
    }
    for (std::size_t i = 0; i < cut_rows.size(); ++i) {
        if (cut_rows[i].second != 0.0)
            entry("RHS     ", row_name(next_row + static_cast<std::int64_t>(i)),
                  cut_rows[i].second);
    }

    out << "BOUNDS\n";
    for (ServiceId k = 0; k < n_services; ++k) {
        for (ArcId a = 0; a < g.n_arcs(); ++a) {
            if (g.arc_usable(a, k))
                out << " BV BND       " << col_name(var(k, a)) << "\n";
            else
                out << " FX BND       " << col_name(var(k, a)) << "  0\n";
        }
    }
    out << "ENDATA\n";
    if (!out) throw std::runtime_error("error writing MPS file: " + path);
    return stats;
}

} // namespace piperoute
