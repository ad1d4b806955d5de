#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "qrplan/placement.hpp"
#include "qrplan/topology_io.hpp"
#include "qrplan/version.hpp"

namespace qrplan {

// Solution schema:
//   {"algorithm": str, "l_max_km": num, "k": int,
//    "centers": [id], "intermediates": [id],
//    "synthetic_nodes": [{"id": id, "on_edge": {"a": id, "b": id}, "offset_km": num}],
//    "topology_name": str, "tool_version": str}
// Centers and intermediates are written sorted; synthetic nodes keep creation
// order, and several cuts of one link appear in ascending offset order.
inline void save_solution_json(std::ostream& out, const Placement& p) {
    nlohmann::json j;
    j["algorithm"] = to_string(p.algorithm);
    j["l_max_km"] = p.l_max_km;
    j["k"] = p.k;
    j["centers"] = p.centers.sorted_ids();
    j["intermediates"] = p.intermediates;
    j["synthetic_nodes"] = nlohmann::json::array();
    for (const auto& s : p.synthetic_added) {
        nlohmann::json js;
        js["id"] = s.id;
        js["on_edge"] = {{"a", s.edge_a}, {"b", s.edge_b}};
        js["offset_km"] = s.offset_km;
        j["synthetic_nodes"].push_back(std::move(js));
    }
    j["topology_name"] = p.topology_name;
    j["tool_version"] = tool_version;
    out << j.dump(2) << "\n";
}

inline Placement load_solution_json(std::istream& in, const std::string& source = "solution") {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(source + ": " + e.what());
    }
    if (!j.is_object()) fail(source + ": document root must be an object");
    detail::reject_unknown_fields(j,
                                  {"algorithm", "l_max_km", "k", "centers", "intermediates",
                                   "synthetic_nodes", "topology_name", "tool_version"},
                                  source);
    for (const char* field : {"algorithm", "l_max_km", "k", "centers", "intermediates",
                              "synthetic_nodes", "topology_name", "tool_version"})
        if (!j.contains(field)) fail(source + ": missing field \"" + std::string(field) + "\"");

    Placement p;
    if (!j["algorithm"].is_string()) fail(source + ": \"algorithm\" must be a string");
    p.algorithm = algorithm_from_string(j["algorithm"].get<std::string>());
    p.l_max_km = detail::require_finite_number(j["l_max_km"], source + ": l_max_km");
    if (!j["k"].is_number_integer()) fail(source + ": \"k\" must be an integer");
    p.k = j["k"].get<int>();
    if (!j["topology_name"].is_string()) fail(source + ": \"topology_name\" must be a string");
    p.topology_name = j["topology_name"].get<std::string>();

    if (!j["centers"].is_array()) fail(source + ": \"centers\" must be an array");
    for (const auto& c : j["centers"]) {
        if (!c.is_string()) fail(source + ": every center must be a node id string");
        p.centers.entries.push_back(Center{c.get<std::string>(), CenterProvenance::greedy_cover});
    }
    if (!j["intermediates"].is_array()) fail(source + ": \"intermediates\" must be an array");
    for (const auto& c : j["intermediates"]) {
        if (!c.is_string()) fail(source + ": every intermediate must be a node id string");
        p.intermediates.push_back(c.get<std::string>());
    }
    if (!j["synthetic_nodes"].is_array()) fail(source + ": \"synthetic_nodes\" must be an array");
    for (const auto& js : j["synthetic_nodes"]) {
        if (!js.is_object()) fail(source + ": every synthetic node must be an object");
        detail::reject_unknown_fields(js, {"id", "on_edge", "offset_km"}, source + ": synthetic node");
        if (!js.contains("id") || !js["id"].is_string())
            fail(source + ": synthetic node missing string field \"id\"");
        SyntheticNode s;
        s.id = js["id"].get<std::string>();
        if (!js.contains("on_edge") || !js["on_edge"].is_object())
            fail(source + ": synthetic node \"" + s.id + "\" missing object field \"on_edge\"");
        const auto& oe = js["on_edge"];
        detail::reject_unknown_fields(oe, {"a", "b"}, source + ": synthetic node \"" + s.id + "\" on_edge");
        if (!oe.contains("a") || !oe["a"].is_string() || !oe.contains("b") || !oe["b"].is_string())
            fail(source + ": synthetic node \"" + s.id + "\" on_edge needs string fields \"a\"/\"b\"");
        s.edge_a = oe["a"].get<std::string>();
        s.edge_b = oe["b"].get<std::string>();
        if (!js.contains("offset_km"))
            fail(source + ": synthetic node \"" + s.id + "\" missing field \"offset_km\"");
        s.offset_km = detail::require_finite_number(js["offset_km"],
                                                    source + ": synthetic node \"" + s.id + "\" offset_km");
        p.synthetic_added.push_back(std::move(s));
    }
    return p;
}

}  // namespace qrplan
