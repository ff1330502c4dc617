#include "piperoute/scenario_io.hpp"

#include <fstream>

#include <json.hpp>

namespace piperoute {

namespace {

using nlohmann::json;

const json& field(const json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key + ": missing");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    return j.get<double>();
}

Point3 point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(path + ": expected [x, y, z]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]"),
            number(j[2], path + "[2]")};
}

Cuboid cuboid(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected {lo, hi}");
    return {point(field(j, "lo", path), path + ".lo"),
            point(field(j, "hi", path), path + ".hi")};
}

std::vector<Cuboid> cuboid_list(const json& j, const std::string& key) {
    std::vector<Cuboid> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array()) throw ParseError(key + ": expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
        out.push_back(cuboid((*it)[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

Axis axis_from_string(const std::string& s, const std::string& path) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    if (s == "z" || s == "Z") return Axis::Z;
    throw ParseError(path + ": expected one of x, y, z");
}

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

json cuboid_json(const Cuboid& c) {
    return json{{"lo", point_json(c.lo)}, {"hi", point_json(c.hi)}};
}

} // namespace

Scenario scenario_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level: expected an object");
    if (field(j, "schema_version", "").get<int>() != 1)
        throw ParseError("schema_version: unsupported version");

    Scenario sc;
    sc.region = cuboid(field(j, "region", ""), "region");
    const json& grid = field(j, "grid", "");
    sc.grid_spacing = number(field(grid, "spacing", "grid"), "grid.spacing");

    std::string model = field(j, "cost_model", "").get<std::string>();
    if (model == "case_study") {
        sc.cost_model = CostModelKind::CaseStudy;
    } else if (model == "random") {
        sc.cost_model = CostModelKind::Random;
    } else {
        throw ParseError("cost_model: expected case_study or random");
    }
    if (j.contains("closeness_radius"))
        sc.closeness_radius = number(j["closeness_radius"], "closeness_radius");

    sc.obstacles = cuboid_list(j, "obstacles");
    sc.penetrable_zones = cuboid_list(j, "penetrable_zones");
    sc.preference_zones = cuboid_list(j, "preference_zones");

    const json& services = field(j, "services", "");
    if (!services.is_array()) throw ParseError("services: expected an array");
    for (std::size_t i = 0; i < services.size(); ++i) {
        const json& js = services[i];
        std::string path = "services[" + std::to_string(i) + "]";
        Service s;
        s.id = static_cast<int>(number(field(js, "id", path), path + ".id"));
        s.source = point(field(js, "source", path), path + ".source");
        s.destination = point(field(js, "destination", path), path + ".destination");
        s.radius = number(field(js, "radius", path), path + ".radius");
        s.safety = number(field(js, "safety", path), path + ".safety");
        s.elbow_min = number(field(js, "elbow_min", path), path + ".elbow_min");
        const json& alpha = field(js, "alpha", path);
        if (!alpha.is_array() || alpha.size() != 7)
            throw ParseError(path + ".alpha: expected 7 numbers");
        for (int a = 0; a < 7; ++a)
            s.alpha[a] = number(alpha[a], path + ".alpha[" + std::to_string(a) + "]");
        if (js.contains("source_axis"))
            s.source_axis = axis_from_string(js["source_axis"].get<std::string>(),
                                             path + ".source_axis");
        if (js.contains("destination_axis"))
            s.destination_axis = axis_from_string(
                js["destination_axis"].get<std::string>(), path + ".destination_axis");
        sc.services.push_back(s);
    }

    sc.check();
    return sc;
}

std::string scenario_to_json_string(const Scenario& sc) {
    json j;
    j["schema_version"] = 1;
    j["region"] = cuboid_json(sc.region);
    j["grid"] = json{{"spacing", sc.grid_spacing}};
    j["cost_model"] = sc.cost_model == CostModelKind::CaseStudy ? "case_study" : "random";
    if (sc.closeness_radius) j["closeness_radius"] = *sc.closeness_radius;
    j["obstacles"] = json::array();
    for (const Cuboid& c : sc.obstacles) j["obstacles"].push_back(cuboid_json(c));
    j["penetrable_zones"] = json::array();
    for (const Cuboid& c : sc.penetrable_zones) j["penetrable_zones"].push_back(cuboid_json(c));
    j["preference_zones"] = json::array();
    for (const Cuboid& c : sc.preference_zones) j["preference_zones"].push_back(cuboid_json(c));
    j["services"] = json::array();
    for (const Service& s : sc.services) {
        json js;
        js["id"] = s.id;
        js["source"] = point_json(s.source);
        js["destination"] = point_json(s.destination);
        js["radius"] = s.radius;
        js["safety"] = s.safety;
        js["elbow_min"] = s.elbow_min;
        js["alpha"] = s.alpha;
        if (s.source_axis) js["source_axis"] = axis_name(*s.source_axis);
        if (s.destination_axis) js["destination_axis"] = axis_name(*s.destination_axis);
        j["services"].push_back(js);
    }
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json_string(text);
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write scenario file: " + path);
    out << scenario_to_json_string(scenario);
}

} // namespace piperoute
