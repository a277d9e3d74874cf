#pragma once

// JSON matroid specs (schema 1), canonical emission and digests, and
// serialization of points, subspaces and partitions.
//
// Spec kinds:
//   {"kind":"circuits","n":3,"circuits":[[1,2,3]]}
//   {"kind":"graph","vertices":3,"edges":[[1,2],[2,3],[3,1]]}
//   {"kind":"uniform","rank":2,"n":3}
//   {"kind":"matrix","field":"Q","columns":[[1,0],[0,1],["1/2",1]]}
//   {"kind":"expr","defs":{"g":{...}},"expr":{"op":"dual","args":["g"]}}
// Expression nodes are a def name, an inline spec, or {"op":..., "args":[...]}
// with ops dual, delete, contract (field "elements"), sum, pc (field
// "basepoints":[b1,b2]), simplify, truncate (field "rank").  Every spec may
// carry "realizable": true|false and "schema": 1.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "resonator/field.hpp"
#include "resonator/matroid.hpp"
#include "resonator/subspace.hpp"

namespace resonator::io {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;

class SpecError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct LoadedMatroid {
    Matroid matroid;
    /// Realizability metadata: explicit flag, else derived from the kind.
    std::optional<bool> realizable;
    Json canonical;
};

namespace detail {

inline const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SpecError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline int int_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_integer()) throw SpecError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

inline std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw SpecError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw SpecError(std::string(what) + " must contain integers");
        out.push_back(x.get<int>());
    }
    return out;
}

/// Scalar as written in JSON: integer or string ("3", "-1/2").
inline std::string scalar_text(const Json& x) {
    if (x.is_number_integer()) return std::to_string(x.get<long long>());
    if (x.is_string()) return x.get<std::string>();
    throw SpecError("scalar must be an integer or a string");
}

/// Canonical JSON form of a scalar: an integer when it is one, else a string.
template <class F>
Json scalar_json(const F& field, const typename F::value_type& a) {
    const std::string s = field.to_string(a);
    if (s.find('/') == std::string::npos) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used == s.size()) return v;
        } catch (const std::out_of_range&) {
        }
    }
    return s;
}

template <class F>
typename F::value_type parse_scalar(const F& field, const Json& x) {
    try {
        return field.parse(scalar_text(x));
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(std::string("bad scalar: ") + e.what());
    }
}

inline std::optional<bool> and_flags(std::optional<bool> a, std::optional<bool> b) {
    if (a && b) return *a && *b;
    if ((a && !*a) || (b && !*b)) return false;
    return std::nullopt;
}

LoadedMatroid load(const Json& spec, const std::map<std::string, Json>& defs, int depth);

inline LoadedMatroid load_node(const Json& node, const std::map<std::string, Json>& defs, int depth) {
    if (depth > 64) throw SpecError("expression nesting too deep");
    if (node.is_string()) {
        auto it = defs.find(node.get<std::string>());
        if (it == defs.end()) throw SpecError("unknown name '" + node.get<std::string>() + "'");
        return load(it->second, defs, depth + 1);
    }
    if (node.is_object() && node.contains("kind")) return load(node, defs, depth + 1);
    if (!node.is_object() || !node.contains("op")) throw SpecError("expression node needs 'op'");

    const std::string op = member(node, "op").get<std::string>();
    const Json& args = member(node, "args");
    if (!args.is_array() || args.empty()) throw SpecError("'args' must be a nonempty array");
    std::vector<LoadedMatroid> in;
    for (const auto& a : args) in.push_back(load_node(a, defs, depth + 1));
    auto arity = [&](std::size_t k) {
        if (in.size() != k) throw SpecError("op '" + op + "' takes " + std::to_string(k) + " argument(s)");
    };

    Json canon = {{"op", op}, {"args", Json::array()}};
    for (const auto& x : in) canon["args"].push_back(x.canonical);
    LoadedMatroid out;
    out.realizable = in.front().realizable;
    if (op == "dual") {
        arity(1);
        out.matroid = in[0].matroid.dual();
    } else if (op == "delete" || op == "contract") {
        arity(1);
        auto elems = int_list(member(node, "elements"), "'elements'");
        std::sort(elems.begin(), elems.end());
        const Mask s = mask_of(elems, in[0].matroid.size());
        if (s == 0) throw SpecError("'elements' must be nonempty");
        if (op == "delete") {
            out.matroid = in[0].matroid.delete_elements(s);
        } else {
            for (int e : elems)
                if (in[0].matroid.is_loop(e)) throw SpecError("cannot contract loop " + std::to_string(e));
            out.matroid = in[0].matroid.contract(s);
        }
        canon["elements"] = elems;
    } else if (op == "sum") {
        arity(2);
        out.matroid = Matroid::direct_sum(in[0].matroid, in[1].matroid);
        out.realizable = and_flags(in[0].realizable, in[1].realizable);
    } else if (op == "pc") {
        arity(2);
        const auto b = int_list(member(node, "basepoints"), "'basepoints'");
        if (b.size() != 2) throw SpecError("'basepoints' needs two entries");
        out.matroid = in[0].matroid.parallel_connection(in[1].matroid, b[0], b[1]);
        out.realizable = and_flags(in[0].realizable, in[1].realizable);
        canon["basepoints"] = b;
    } else if (op == "simplify") {
        arity(1);
        out.matroid = in[0].matroid.simplify().simple;
    } else if (op == "truncate") {
        arity(1);
        const int k = int_member(node, "rank");
        if (k < 1 || k > in[0].matroid.rank()) throw SpecError("truncation rank out of range");
        out.matroid = in[0].matroid.truncate(k);
        canon["rank"] = k;
    } else {
        throw SpecError("unknown op '" + op + "'");
    }
    out.canonical = std::move(canon);
    return out;
}

inline LoadedMatroid load(const Json& spec, const std::map<std::string, Json>& outer_defs, int depth) {
    if (!spec.is_object()) throw SpecError("matroid spec must be a JSON object");
    if (spec.contains("schema") && spec.at("schema") != kSchema)
        throw SpecError("unsupported schema " + spec.at("schema").dump());
    const std::string kind = member(spec, "kind").get<std::string>();
    LoadedMatroid out;
    Json canon = {{"kind", kind}};
    try {
        if (kind == "circuits") {
            const int n = int_member(spec, "n");
            std::vector<std::vector<int>> circuits;
            for (const auto& c : member(spec, "circuits")) circuits.push_back(int_list(c, "circuit"));
            out.matroid = Matroid::from_circuits(n, circuits);
            Json list = Json::array();
            for (Mask c : out.matroid.circuits()) list.push_back(elements(c));
            canon["n"] = n;
            canon["circuits"] = list;
        } else if (kind == "graph") {
            const int vertices = int_member(spec, "vertices");
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : member(spec, "edges")) {
                const auto uv = int_list(e, "edge");
                if (uv.size() != 2) throw SpecError("an edge has two endpoints");
                edges.emplace_back(uv[0], uv[1]);
            }
            const bool loops = spec.value("self_loops", false);
            out.matroid = Matroid::from_graph(vertices, edges, loops);
            out.realizable = true;
            canon["vertices"] = vertices;
            canon["edges"] = member(spec, "edges");
            if (loops) canon["self_loops"] = true;
        } else if (kind == "uniform") {
            const int l = int_member(spec, "rank");
            const int n = int_member(spec, "n");
            out.matroid = Matroid::uniform(l, n);
            out.realizable = true;
            canon["rank"] = l;
            canon["n"] = n;
        } else if (kind == "matrix") {
            const FieldSpec fs = FieldSpec::parse(spec.value("field", std::string("Q")));
            const Json& cols = member(spec, "columns");
            if (!cols.is_array()) throw SpecError("'columns' must be an array");
            Json canon_cols = Json::array();
            visit_field(fs, [&](const auto& field) {
                std::vector<std::vector<typename std::decay_t<decltype(field)>::value_type>> columns;
                for (const auto& c : cols) {
                    if (!c.is_array()) throw SpecError("each column must be an array");
                    columns.emplace_back();
                    Json cc = Json::array();
                    for (const auto& x : c) {
                        columns.back().push_back(parse_scalar(field, x));
                        cc.push_back(scalar_json(field, columns.back().back()));
                    }
                    canon_cols.push_back(cc);
                }
                out.matroid = Matroid::from_columns(field, columns);
            });
            out.realizable = true;
            canon["field"] = fs.to_string();
            canon["columns"] = canon_cols;
        } else if (kind == "expr") {
            std::map<std::string, Json> defs = outer_defs;
            if (spec.contains("defs")) {
                if (!spec.at("defs").is_object()) throw SpecError("'defs' must be an object");
                for (const auto& [name, def] : spec.at("defs").items()) defs[name] = def;
            }
            auto inner = load_node(member(spec, "expr"), defs, depth + 1);
            out.matroid = std::move(inner.matroid);
            out.realizable = inner.realizable;
            // Definitions are inlined, so the canonical form is self-contained.
            canon["expr"] = std::move(inner.canonical);
        } else {
            throw SpecError("unknown matroid kind '" + kind + "'");
        }
    } catch (const SpecError&) {
        throw;
    } catch (const Json::exception& e) {
        throw SpecError(std::string("malformed spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    } catch (const std::runtime_error& e) {
        throw SpecError(e.what());
    }
    if (spec.contains("realizable")) {
        if (!spec.at("realizable").is_boolean()) throw SpecError("'realizable' must be a boolean");
        out.realizable = spec.at("realizable").get<bool>();
    }
    if (out.realizable) canon["realizable"] = *out.realizable;
    out.canonical = std::move(canon);
    return out;
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
}

/// Builds the matroid described by a spec and its canonical form.
inline LoadedMatroid load_matroid(const Json& spec) {
    auto out = detail::load(spec, {}, 0);
    out.canonical["schema"] = kSchema;
    return out;
}

inline LoadedMatroid load_matroid(const std::string& text) { return load_matroid(parse_json(text)); }
inline LoadedMatroid load_matroid(const char* text) { return load_matroid(std::string(text)); }

/// Canonical text of a spec: sorted keys, no whitespace.
inline std::string canonical_text(const Json& spec) { return load_matroid(spec).canonical.dump(); }

/// 64-bit FNV-1a of a string, as 16 hex digits.
inline std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Circuit-list spec of a matroid.
inline Json circuits_spec(const Matroid& m) {
    Json list = Json::array();
    for (Mask c : m.circuits()) list.push_back(elements(c));
    return {{"schema", kSchema}, {"kind", "circuits"}, {"n", m.size()}, {"circuits", list}};
}

template <class F>
std::vector<typename F::value_type> parse_vector(const F& field, const Json& j) {
    if (!j.is_array()) throw SpecError("vector must be a JSON array");
    std::vector<typename F::value_type> v;
    for (const auto& x : j) v.push_back(detail::parse_scalar(field, x));
    return v;
}

/// Accepts a JSON array or a comma-separated list such as "1,-1,0,1/2".
template <class F>
std::vector<typename F::value_type> parse_vector(const F& field, const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '[') return parse_vector(field, parse_json(text));
    Json arr = Json::array();
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw SpecError("empty vector entry");
            arr.push_back(item.substr(b, e - b + 1));
            item.clear();
        } else {
            item += c;
        }
    }
    return parse_vector(field, arr);
}

template <class F>
Json vector_json(const F& field, const std::vector<typename F::value_type>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(detail::scalar_json(field, x));
    return out;
}

template <class F>
Json subspace_json(const Subspace<F>& s) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(vector_json(s.field(), s.basis_vector(i)));
    return {{"ambient", s.ambient()}, {"dim", s.dim()}, {"rref", rows}};
}

/// Subspace from {"rref":[...]} or {"span":[...]} or {"equations":[...]}
/// together with "ambient" (or the first row's length).
template <class F>
Subspace<F> parse_subspace(const F& field, const Json& j) {
    if (!j.is_object()) throw SpecError("subspace must be a JSON object");
    const char* key = j.contains("span") ? "span" : j.contains("rref") ? "rref" : "equations";
    const Json& rows_json = detail::member(j, key);
    std::vector<std::vector<typename F::value_type>> rows;
    for (const auto& r : rows_json) rows.push_back(parse_vector(field, r));
    std::size_t ambient = 0;
    if (j.contains("ambient")) ambient = j.at("ambient").get<std::size_t>();
    else if (!rows.empty()) ambient = rows.front().size();
    else throw SpecError("subspace needs 'ambient'");
    for (const auto& r : rows)
        if (r.size() != ambient) throw SpecError("subspace row length mismatch");
    if (std::string(key) == "equations") return Subspace<F>::solutions(field, ambient, rows);
    return Subspace<F>::span(field, ambient, rows);
}

/// Partition from [[1,2],[3,4]] or the compact text "12|34" (single digits).
inline Partition parse_partition(int n, const Json& j) {
    std::vector<std::vector<int>> blocks;
    if (j.is_string()) {
        std::vector<int> block;
        for (char c : j.get<std::string>() + "|") {
            if (c == '|') {
                blocks.push_back(block);
                block.clear();
            } else if (c >= '1' && c <= '9') {
                block.push_back(c - '0');
            } else if (c != ' ') {
                throw SpecError("compact partitions use single digits separated by '|'");
            }
        }
    } else {
        if (!j.is_array()) throw SpecError("partition must be an array of blocks");
        for (const auto& b : j) blocks.push_back(detail::int_list(b, "block"));
    }
    try {
        return Partition::from_lists(n, blocks);
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

inline Json partition_json(const Partition& p) {
    Json out = Json::array();
    for (Mask b : p.blocks()) out.push_back(elements(b));
    return out;
}

inline Json mask_list_json(const std::vector<Mask>& masks) {
    Json out = Json::array();
    for (Mask m : masks) out.push_back(elements(m));
    return out;
}

}  // namespace resonator::io
