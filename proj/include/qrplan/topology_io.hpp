#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "qrplan/error.hpp"
#include "qrplan/topology.hpp"

namespace qrplan {

namespace detail {

inline void reject_unknown_fields(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(where + ": unknown field \"" + it.key() + "\"");
}

inline double require_finite_number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) fail(where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where + " must be a finite number");
    return d;
}

}  // namespace detail

// Strict topology schema:
//   {"name": str,
//    "nodes": [{"id": str, "kind": "physical"|"synthetic"|"ghost",
//               "lat"?: num, "lon"?: num}],
//    "edges": [{"a": str, "b": str, "length_km": num}]}
// Unknown fields anywhere are rejected.
inline Topology load_topology_json(std::istream& in, const std::string& source = "topology") {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(source + ": " + e.what());
    }
    if (!j.is_object()) fail(source + ": document root must be an object");
    detail::reject_unknown_fields(j, {"name", "nodes", "edges"}, source);
    if (!j.contains("name") || !j["name"].is_string()) fail(source + ": missing string field \"name\"");
    if (!j.contains("nodes") || !j["nodes"].is_array()) fail(source + ": missing array field \"nodes\"");
    if (!j.contains("edges") || !j["edges"].is_array()) fail(source + ": missing array field \"edges\"");

    std::vector<NodeRecord> nodes;
    for (const auto& jn : j["nodes"]) {
        if (!jn.is_object()) fail(source + ": every node must be an object");
        detail::reject_unknown_fields(jn, {"id", "kind", "lat", "lon"}, source + ": node");
        if (!jn.contains("id") || !jn["id"].is_string())
            fail(source + ": node missing string field \"id\"");
        NodeRecord n;
        n.id = jn["id"].get<std::string>();
        if (!jn.contains("kind") || !jn["kind"].is_string())
            fail(source + ": node \"" + n.id + "\" missing string field \"kind\"");
        n.kind = node_kind_from_string(jn["kind"].get<std::string>());
        if (jn.contains("lat"))
            n.lat = detail::require_finite_number(jn["lat"], source + ": node \"" + n.id + "\" lat");
        if (jn.contains("lon"))
            n.lon = detail::require_finite_number(jn["lon"], source + ": node \"" + n.id + "\" lon");
        nodes.push_back(std::move(n));
    }

    std::vector<EdgeRecord> edges;
    for (const auto& je : j["edges"]) {
        if (!je.is_object()) fail(source + ": every edge must be an object");
        detail::reject_unknown_fields(je, {"a", "b", "length_km"}, source + ": edge");
        if (!je.contains("a") || !je["a"].is_string() || !je.contains("b") || !je["b"].is_string())
            fail(source + ": edge missing string fields \"a\"/\"b\"");
        EdgeRecord e;
        e.a = je["a"].get<std::string>();
        e.b = je["b"].get<std::string>();
        if (!je.contains("length_km"))
            fail(source + ": edge (" + e.a + ", " + e.b + ") missing field \"length_km\"");
        e.length_km = detail::require_finite_number(je["length_km"],
                                                    source + ": edge (" + e.a + ", " + e.b + ") length_km");
        edges.push_back(std::move(e));
    }

    return Topology::create(j["name"].get<std::string>(), std::move(nodes), std::move(edges));
}

// Canonical serialization: nodes sorted by id, edges sorted by (a, b); a
// save/load/save round trip is byte-identical.
inline void save_topology_json(std::ostream& out, const Topology& t) {
    nlohmann::json j;
    j["name"] = t.name();
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : t.nodes()) {
        nlohmann::json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        if (n.lat) jn["lat"] = *n.lat;
        if (n.lon) jn["lon"] = *n.lon;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : t.edges()) {
        nlohmann::json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["length_km"] = e.length_km;
        j["edges"].push_back(std::move(je));
    }
    out << j.dump(2) << "\n";
}

// GraphML-style import: node ids from <node id=...>, lengths from the edge
// data attribute named `length_attr` (resolved through <key> declarations
// when present, otherwise matched directly). All imported nodes are
// physical. Foreign elements are ignored rather than rejected; only our own
// JSON schema is strict.
inline Topology load_topology_graphml(std::istream& in, const std::string& fallback_name,
                                      const std::string& length_attr = "length_km") {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        fail(fallback_name + ": " + e.what());
    }
    auto graphml = tree.get_child_optional("graphml");
    if (!graphml) fail(fallback_name + ": missing <graphml> root element");

    std::set<std::string> length_keys;
    for (const auto& [tag, child] : *graphml) {
        if (tag != "key") continue;
        // "attr.name" contains a literal dot, so the default path separator
        // cannot address it.
        const auto attr_name = child.get_optional<std::string>(
            pt::ptree::path_type("<xmlattr>/attr.name", '/'));
        const auto id = child.get_optional<std::string>("<xmlattr>.id");
        if (attr_name && id && *attr_name == length_attr) length_keys.insert(*id);
    }

    auto graph = graphml->get_child_optional("graph");
    if (!graph) fail(fallback_name + ": missing <graph> element");
    const std::string name = graph->get<std::string>("<xmlattr>.id", fallback_name);

    std::vector<NodeRecord> nodes;
    std::vector<EdgeRecord> edges;
    for (const auto& [tag, child] : *graph) {
        if (tag == "node") {
            const auto id = child.get_optional<std::string>("<xmlattr>.id");
            if (!id) fail(name + ": <node> without id attribute");
            nodes.push_back(NodeRecord{*id, NodeKind::physical, std::nullopt, std::nullopt});
        } else if (tag == "edge") {
            const auto src = child.get_optional<std::string>("<xmlattr>.source");
            const auto dst = child.get_optional<std::string>("<xmlattr>.target");
            if (!src || !dst) fail(name + ": <edge> without source/target attributes");
            std::optional<double> length;
            for (const auto& [etag, echild] : child) {
                if (etag != "data") continue;
                const auto key = echild.get_optional<std::string>("<xmlattr>.key");
                if (!key) continue;
                if (length_keys.count(*key) || *key == length_attr) {
                    try {
                        length = std::stod(echild.get_value<std::string>());
                    } catch (const std::exception&) {
                        fail(name + ": edge (" + *src + ", " + *dst + "): attribute \"" +
                             length_attr + "\" is not numeric");
                    }
                }
            }
            if (!length)
                fail(name + ": edge (" + *src + ", " + *dst + ") missing attribute \"" +
                     length_attr + "\"");
            edges.push_back(EdgeRecord{*src, *dst, *length});
        }
    }
    return Topology::create(name, std::move(nodes), std::move(edges));
}

}  // namespace qrplan
