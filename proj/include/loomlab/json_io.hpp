#ifndef LOOMLAB_JSON_IO_HPP
#define LOOMLAB_JSON_IO_HPP

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "loomlab/errors.hpp"
#include "loomlab/hypergraph.hpp"

namespace loomlab {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Hypergraph JSON: {"n": int, "k": int, "bounded": bool, "edges": [[int,...],...]}.
/// Rejects duplicates and out-of-range vertices with the offending position.
inline Hypergraph hypergraph_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("hypergraph: expected an object");
    for (const char* field : {"n", "k", "edges"})
        if (!j.contains(field)) throw ParseError(std::string("hypergraph: missing field '") + field + "'");
    if (!j["n"].is_number_integer() || !j["k"].is_number_integer())
        throw ParseError("hypergraph: 'n' and 'k' must be integers");
    int n = j["n"].get<int>();
    int k = j["k"].get<int>();
    bool bounded = j.value("bounded", false);
    if (!j["edges"].is_array()) throw ParseError("hypergraph: 'edges' must be an array");
    std::vector<Edge> edges;
    for (size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& je = j["edges"][i];
        if (!je.is_array()) throw ParseError("hypergraph: edge " + std::to_string(i) + " is not an array");
        Edge e;
        for (size_t p = 0; p < je.size(); ++p) {
            if (!je[p].is_number_integer())
                throw ParseError("hypergraph: edge " + std::to_string(i) + " entry " + std::to_string(p) +
                                 " is not an integer");
            int v = je[p].get<int>();
            if (v < 0 || v >= n)
                throw ParseError("hypergraph: edge " + std::to_string(i) + " entry " + std::to_string(p) +
                                 " = " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
            e.push_back(v);
        }
        Edge sorted = e;
        std::sort(sorted.begin(), sorted.end());
        for (size_t p = 0; p + 1 < sorted.size(); ++p)
            if (sorted[p] == sorted[p + 1])
                throw ParseError("hypergraph: edge " + std::to_string(i) + " repeats vertex " +
                                 std::to_string(sorted[p]));
        edges.push_back(std::move(sorted));
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i] == edges[i + 1])
            throw ParseError("hypergraph: duplicate edge at sorted index " + std::to_string(i));
    try {
        return bounded ? Hypergraph::bounded(n, k, std::move(edges))
                       : Hypergraph::uniform(n, k, std::move(edges));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("hypergraph: ") + e.what());
    }
}

inline Json hypergraph_to_json(const Hypergraph& G) {
    Json j;
    j["n"] = G.n();
    j["k"] = G.k();
    j["bounded"] = G.is_bounded();
    j["edges"] = G.edges();
    return j;
}

/// Atomic write: temp file in the target directory, then rename.
inline void persist_json(const Json& payload, const std::string& path) {
    Json j = payload;
    j["schema_version"] = kSchemaVersion;
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << j.dump(2) << "\n";
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw std::runtime_error("rename to '" + target.string() + "' failed: " + ec.message());
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("json parse error in '" + path + "': " + e.what());
    }
}

}  // namespace loomlab

#endif
