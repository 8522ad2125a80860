#include "glab/spec_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "glab/families.hpp"

namespace glab {

namespace {

using nlohmann::json;

Point parse_point(const json& j) {
    if (j.is_number()) return Point{0, j.get<double>()};
    if (j.is_array() && j.size() == 2) return Point{j[0].get<int>(), j[1].get<double>()};
    throw ValidationError("spec: point must be a number or [part, coord]");
}

std::vector<Edge> parse_edges(const json& doc, const char* key) {
    std::vector<Edge> out;
    if (!doc.contains(key)) return out;
    const json& list = doc.at(key);
    if (!list.is_array()) throw ValidationError(std::string("spec: ") + key + " must be an array");
    for (const json& e : list) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError(std::string("spec: ") + key + " entries must be [x, y]");
        out.push_back(Edge{parse_point(e[0]), parse_point(e[1])});
    }
    return out;
}

Graphing build_family(const json& doc) {
    if (!doc.contains("family")) throw ValidationError("spec: missing \"family\"");
    std::string family = doc.at("family").get<std::string>();
    json params = doc.value("params", json::object());

    if (family == "cycle-rotation") {
        if (!params.contains("alpha")) throw ValidationError("spec: cycle-rotation needs params.alpha");
        return make_cycle_rotation(params.at("alpha").get<double>());
    }
    if (family == "interval-exchange") {
        if (!params.contains("pieces"))
            throw ValidationError("spec: interval-exchange needs params.pieces");
        std::vector<ExchangePiece> pieces;
        for (const json& p : params.at("pieces")) {
            if (!p.is_array() || p.size() != 3)
                throw ValidationError("spec: exchange pieces are [lo, hi, offset]");
            pieces.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        return make_interval_exchange(pieces);
    }
    if (family == "finite-graph") {
        if (!params.contains("nodes")) throw ValidationError("spec: finite-graph needs params.nodes");
        std::vector<std::pair<int, int>> edges;
        for (const json& e : params.value("edges", json::array())) {
            if (!e.is_array() || e.size() != 2)
                throw ValidationError("spec: finite-graph edges are [i, j]");
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        return make_finite_graph(params.at("nodes").get<int>(), edges);
    }
    if (family == "union") {
        if (!params.contains("components")) throw ValidationError("spec: union needs params.components");
        std::vector<std::pair<Graphing, double>> comps;
        for (const json& c : params.at("components")) {
            if (!c.contains("weight") || !c.contains("spec"))
                throw ValidationError("spec: union components need weight and spec");
            comps.push_back({graphing_from_json(c.at("spec")), c.at("weight").get<double>()});
        }
        return make_weighted_union(comps);
    }
    throw ValidationError("spec: unknown family \"" + family + "\"");
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Graphing graphing_from_json(const json& doc) {
    Graphing g = build_family(doc);
    for (const Edge& e : parse_edges(doc, "deleted_edges")) g = delete_edge(g, e.a, e.b);
    for (const Edge& e : parse_edges(doc, "added_edges")) g = add_edge(g, e.a, e.b);
    if (doc.contains("degree_bound")) {
        int d = doc.at("degree_bound").get<int>();
        if (d < g.degree_bound())
            throw ValidationError("spec: degree_bound below the family's maximum degree");
        g = Graphing(g.space(), g.generators(), d, g.removed_edges(), g.added_edges());
    }
    return g;
}

LoadedSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("spec: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();

    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ValidationError("spec: JSON parse error in " + path + ": " + e.what());
    }

    LoadedSpec loaded{graphing_from_json(doc), doc.at("family").get<std::string>(), path,
                      fnv1a_hex(bytes)};
    ValidationReport report = loaded.graphing.validate();
    if (!report.ok) {
        std::string msg = "spec: graphing fails validation:";
        for (const std::string& issue : report.issues) msg += " [" + issue + "]";
        throw ValidationError(msg);
    }
    return loaded;
}

} // namespace glab
