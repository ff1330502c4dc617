#include "piperoute/solution_io.hpp"

#include <fstream>

#include <json.hpp>

#include "piperoute/scenario_io.hpp"

namespace piperoute {

namespace {

using nlohmann::json;

json breakdown_json(const CostBreakdown& b) {
    return json{{"length", b.length},     {"preference", b.preference},
                {"elbow", b.elbow},       {"height", b.height},
                {"vertical", b.vertical}, {"penetrable", b.penetrable},
                {"closeness", b.closeness}};
}

CostBreakdown breakdown_from_json(const json& j) {
    CostBreakdown b;
    b.length = j.value("length", 0.0);
    b.preference = j.value("preference", 0.0);
    b.elbow = j.value("elbow", 0.0);
    b.height = j.value("height", 0.0);
    b.vertical = j.value("vertical", 0.0);
    b.penetrable = j.value("penetrable", 0.0);
    b.closeness = j.value("closeness", 0.0);
    return b;
}

} // namespace

std::vector<Point3> path_polyline(const RoutingGraph& g, const std::vector<ArcId>& arcs) {
    std::vector<Point3> out;
    for (VNodeId v : path_vnodes(g, arcs)) {
        Point3 p = g.point(v);
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    return out;
}

std::string solution_to_json_string(const Solution& sol, const RoutingGraph& g) {
    json j;
    j["schema_version"] = 1;
    j["status"] = solve_status_name(sol.status);
    j["objective"] = sol.objective;
    j["method"] = sol.method;
    j["solver"] = json{{"wall_time_s", sol.wall_time_s}, {"nodes", sol.nodes_explored},
                       {"cuts_dist", sol.cuts_dist},     {"cuts_elbow", sol.cuts_elbow},
                       {"lower_bound", sol.lower_bound}, {"gap", sol.gap}};
    j["services"] = json::array();
    for (std::size_t k = 0; k < sol.paths.size(); ++k) {
        json js;
        js["id"] = static_cast<int>(k);
        js["arc_ids"] = sol.paths[k];
        json poly = json::array();
        for (const Point3& p : path_polyline(g, sol.paths[k]))
            poly.push_back(json::array({p.x, p.y, p.z}));
        js["polyline"] = poly;
        js["cost_breakdown"] = breakdown_json(
            k < sol.breakdown.size() ? sol.breakdown[k] : CostBreakdown{});
        j["services"].push_back(js);
    }
    return j.dump(2) + "\n";
}

Solution solution_from_json_string(const RoutingGraph& g, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (j.value("schema_version", 0) != 1)
        throw ParseError("schema_version: unsupported version");

    Solution sol;
    sol.status = solve_status_from_name(j.at("status").get<std::string>());
    sol.objective = j.value("objective", 0.0);
    sol.method = j.value("method", "");
    if (j.contains("solver")) {
        const json& s = j["solver"];
        sol.wall_time_s = s.value("wall_time_s", 0.0);
        sol.nodes_explored = s.value("nodes", static_cast<std::int64_t>(0));
        sol.cuts_dist = s.value("cuts_dist", 0);
        sol.cuts_elbow = s.value("cuts_elbow", 0);
        sol.lower_bound = s.value("lower_bound", 0.0);
        sol.gap = s.value("gap", 0.0);
    }
    const json& services = j.at("services");
    sol.paths.resize(services.size());
    sol.breakdown.resize(services.size());
    for (std::size_t i = 0; i < services.size(); ++i) {
        const json& js = services[i];
        auto k = js.at("id").get<std::size_t>();
        if (k >= sol.paths.size()) throw ParseError("services: id out of range");
        for (const json& a : js.at("arc_ids")) {
            auto arc = a.get<ArcId>();
            if (arc < 0 || arc >= g.n_arcs())
                throw ParseError("arc_ids: arc " + std::to_string(arc) +
                                 " outside the graph");
            sol.paths[k].push_back(arc);
        }
        if (js.contains("cost_breakdown"))
            sol.breakdown[k] = breakdown_from_json(js["cost_breakdown"]);
    }
    return sol;
}

void save_solution(const Solution& sol, const RoutingGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write solution file: " + path);
    out << solution_to_json_string(sol, g);
}

Solution load_solution(const RoutingGraph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open solution file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return solution_from_json_string(g, text);
}

} // namespace piperoute
