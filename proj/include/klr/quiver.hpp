/*
 * quiver.hpp
 * ----------
 * Finite quivers with loops and the symmetrizable generalized Cartan datum
 * they induce, plus the color-sequence combinatorics every other module
 * consumes.
 *
 * Conventions fixed here and relied on everywhere else:
 *  - vertices and edges are opaque string ids; all internal arithmetic uses
 *    their declaration-order indices;
 *  - a(i,i) = 2 - 2*loops(i), a(i,j) = -mult(i,j) - mult(j,i) for i != j,
 *    where mult(i,j) counts edges from i to j;
 *  - a vertex is real iff it carries no loop;
 *  - color sequences are enumerated in lexicographic order of vertex indices,
 *    and the base sequence of a root vector is the lexicographically smallest
 *    arrangement;
 *  - the symmetric-group action on sequences is (w.nu)_k = nu_{w^{-1}(k)},
 *    so nu_w := (base_{w(1)}, ..., base_{w(m)}) equals w^{-1}.base.
 */
#pragma once

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/permutation.hpp"

namespace klr {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what) {}
};

struct Edge {
    std::string id;
    int from = 0;
    int to = 0;
};

// Test-harness fault injections; parsed from the optional "fault" field so a
// deliberately broken fixture can prove the verifier is not vacuous.
enum class Fault { none, q_sign };

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    Fault fault = Fault::none;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < num_vertices(); ++i)
            if (vertices[i] == name) return i;
        return -1;
    }

    int loops(int i) const {
        int n = 0;
        for (const Edge& e : edges)
            if (e.from == i && e.to == i) ++n;
        return n;
    }

    // Number of edges from i to j (loops included when i == j).
    int mult(int i, int j) const {
        int n = 0;
        for (const Edge& e : edges)
            if (e.from == i && e.to == j) ++n;
        return n;
    }

    // Edge indices from i to j, in declaration order.
    std::vector<int> edges_between(int i, int j) const {
        std::vector<int> out;
        for (int a = 0; a < num_edges(); ++a)
            if (edges[a].from == i && edges[a].to == j) out.push_back(a);
        return out;
    }
};

struct CartanDatum {
    std::vector<std::vector<int>> a;  // a[i][j]
    std::vector<int> loops;           // loops per vertex
    std::vector<bool> real;           // real[i] iff loops[i] == 0
};

inline CartanDatum derive_datum(const Quiver& q) {
    int n = q.num_vertices();
    CartanDatum d;
    d.a.assign(n, std::vector<int>(n, 0));
    d.loops.resize(n);
    d.real.resize(n);
    for (int i = 0; i < n; ++i) {
        d.loops[i] = q.loops(i);
        d.real[i] = d.loops[i] == 0;
        d.a[i][i] = 2 - 2 * d.loops[i];
        for (int j = 0; j < n; ++j)
            if (j != i) d.a[i][j] = -q.mult(i, j) - q.mult(j, i);
    }
    return d;
}

inline Quiver parse_quiver(const nlohmann::json& doc) {
    Quiver q;
    if (!doc.is_object()) throw ParseError("$", "quiver document must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("vertices", "missing or not an array");
    if (doc["vertices"].empty()) throw ParseError("vertices", "must be non-empty");
    for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
        const auto& v = doc["vertices"][i];
        if (!v.is_string())
            throw ParseError("vertices[" + std::to_string(i) + "]", "vertex id must be a string");
        std::string name = v.get<std::string>();
        if (q.vertex_index(name) >= 0)
            throw ParseError("vertices[" + std::to_string(i) + "]",
                             "duplicate vertex id '" + name + "'");
        q.vertices.push_back(name);
    }
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw ParseError("edges", "not an array");
        std::set<std::string> seen;
        for (std::size_t a = 0; a < doc["edges"].size(); ++a) {
            std::string loc = "edges[" + std::to_string(a) + "]";
            const auto& e = doc["edges"][a];
            if (!e.is_object()) throw ParseError(loc, "edge must be an object");
            for (const char* key : {"id", "from", "to"})
                if (!e.contains(key) || !e[key].is_string())
                    throw ParseError(loc + "." + key, "missing or not a string");
            Edge edge;
            edge.id = e["id"].get<std::string>();
            if (!seen.insert(edge.id).second)
                throw ParseError(loc + ".id", "duplicate edge id '" + edge.id + "'");
            edge.from = q.vertex_index(e["from"].get<std::string>());
            if (edge.from < 0)
                throw ParseError(loc + ".from",
                                 "unknown vertex '" + e["from"].get<std::string>() + "'");
            edge.to = q.vertex_index(e["to"].get<std::string>());
            if (edge.to < 0)
                throw ParseError(loc + ".to",
                                 "unknown vertex '" + e["to"].get<std::string>() + "'");
            q.edges.push_back(edge);
        }
    }
    if (doc.contains("fault")) {
        std::string f = doc["fault"].get<std::string>();
        if (f == "q-sign") {
            q.fault = Fault::q_sign;
        } else {
            throw ParseError("fault", "unknown fault '" + f + "'");
        }
    }
    return q;
}

inline Quiver parse_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, std::string("malformed JSON: ") + e.what());
    }
    return parse_quiver(doc);
}

inline nlohmann::json serialize_quiver(const Quiver& q) {
    nlohmann::json doc;
    doc["vertices"] = q.vertices;
    doc["edges"] = nlohmann::json::array();
    for (const Edge& e : q.edges)
        doc["edges"].push_back({{"id", e.id}, {"from", q.vertices[e.from]}, {"to", q.vertices[e.to]}});
    return doc;
}

// Dimension vector / root: multiplicity per vertex index. Zero entries are
// not stored.
struct RootVector {
    std::map<int, int> mult;

    int height() const {
        int m = 0;
        for (auto& [i, k] : mult) m += k;
        return m;
    }
    int at(int i) const {
        auto it = mult.find(i);
        return it == mult.end() ? 0 : it->second;
    }
};

inline RootVector parse_root(const nlohmann::json& doc, const Quiver& q) {
    if (!doc.is_object()) throw ParseError("alpha", "root vector must be an object");
    RootVector r;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        int i = q.vertex_index(it.key());
        if (i < 0) throw ParseError("alpha." + it.key(), "unknown vertex");
        if (!it.value().is_number_integer() || it.value().get<int>() < 0)
            throw ParseError("alpha." + it.key(), "multiplicity must be a non-negative integer");
        int k = it.value().get<int>();
        if (k > 0) r.mult[i] = k;
    }
    if (r.height() == 0) throw ParseError("alpha", "root vector must be nonzero");
    return r;
}

inline nlohmann::json serialize_root(const RootVector& r, const Quiver& q) {
    nlohmann::json doc = nlohmann::json::object();
    for (auto& [i, k] : r.mult) doc[q.vertices[i]] = k;
    return doc;
}

using ColorSequence = std::vector<int>;

inline nlohmann::json serialize_sequence(const ColorSequence& nu, const Quiver& q) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c : nu) arr.push_back(q.vertices[c]);
    return arr;
}

// Lexicographically smallest arrangement of alpha.
inline ColorSequence base_sequence(const RootVector& alpha) {
    ColorSequence nu;
    for (auto& [i, k] : alpha.mult)
        for (int c = 0; c < k; ++c) nu.push_back(i);
    return nu;
}

// All distinct arrangements, lexicographic order. Guarded by a height cap:
// the count is a multinomial coefficient and grows fast.
inline std::vector<ColorSequence> enumerate_sequences(const RootVector& alpha, int cap = 8) {
    int m = alpha.height();
    if (m > cap)
        throw std::runtime_error("sequence enumeration refused: height " + std::to_string(m) +
                                 " exceeds cap " + std::to_string(cap));
    ColorSequence nu = base_sequence(alpha);
    std::vector<ColorSequence> out;
    do {
        out.push_back(nu);
    } while (std::next_permutation(nu.begin(), nu.end()));
    return out;
}

// (w.nu)_k = nu_{w^{-1}(k)}.
inline ColorSequence weyl_act(const Perm& w, const ColorSequence& nu) {
    Perm wi = w.inverse();
    ColorSequence out(nu.size());
    for (int k = 1; k <= static_cast<int>(nu.size()); ++k) out[k - 1] = nu[wi(k) - 1];
    return out;
}

// nu_w = (base_{w(1)}, ..., base_{w(m)}) = w^{-1}.base.
inline ColorSequence sequence_of(const Perm& w, const ColorSequence& base) {
    ColorSequence out(base.size());
    for (int k = 1; k <= static_cast<int>(base.size()); ++k) out[k - 1] = base[w(k) - 1];
    return out;
}

// Partition of S_m into the fibers W(nu) = { w : nu_w = nu }.
inline std::map<ColorSequence, std::vector<Perm>> stabilizer_classes(const RootVector& alpha) {
    ColorSequence base = base_sequence(alpha);
    std::map<ColorSequence, std::vector<Perm>> classes;
    for (const Perm& w : all_permutations(alpha.height()))
        classes[sequence_of(w, base)].push_back(w);
    return classes;
}

}  // namespace klr
