#ifndef DTS_PROOF_JSON_HPP
#define DTS_PROOF_JSON_HPP

// Machine-checkable proof files:
//
// { "format": "dts-proof-tree/1", "v": 9, "triples": [[1,2,3], ...],
//   "root": { "forced": [...], "branch": 0, "children": [ {...}, {...} ] } }
//
// A node holds an optional "decision" {"triple": i, "side": "left"|"right"},
// a "forced" list of {"triple", "side", "excluded_cycle"}, and then either a
// "cycle" (leaf) or "branch" + two "children". Triple indices are 0-based.

#include <string>

#include <json.hpp>

#include "dts/prover.hpp"

namespace dts {

inline constexpr const char* proof_format_tag = "dts-proof-tree/1";

class ProofFormatError : public InputError {
public:
    ProofFormatError(const std::string& node, const std::string& msg)
        : InputError("malformed proof tree at " + node + ": " + msg), node(node) {}

    std::string node;
};

namespace detail {

inline nlohmann::json side_to_json(Side s) { return side_name(s); }

inline Side side_from_json(const nlohmann::json& j, const std::string& where) {
    if (j == "left") return Side::left;
    if (j == "right") return Side::right;
    throw ProofFormatError(where, "side must be \"left\" or \"right\"");
}

inline nlohmann::json node_to_json(const ProofNode& node) {
    nlohmann::json j;
    if (node.decision) j["decision"] = {{"triple", node.decision->disjunction}, {"side", side_to_json(node.decision->side)}};
    j["forced"] = nlohmann::json::array();
    for (const ForcedStep& s : node.forced) {
        j["forced"].push_back(
            {{"triple", s.disjunction}, {"side", side_to_json(s.side)}, {"excluded_cycle", s.excluded_cycle}});
    }
    if (node.branch) {
        j["branch"] = *node.branch;
        j["children"] = nlohmann::json::array();
        for (const ProofNode& c : node.children) j["children"].push_back(node_to_json(c));
    } else {
        j["cycle"] = node.cycle;
    }
    return j;
}

template <class T>
T get_field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ProofFormatError(where, std::string("missing \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ProofFormatError(where, std::string("bad \"") + key + "\": " + e.what());
    }
}

inline ProofNode node_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw ProofFormatError(where, "node is not an object");
    ProofNode node;
    if (j.contains("decision")) {
        const auto& d = j["decision"];
        node.decision = Decision{get_field<std::size_t>(d, "triple", where), side_from_json(d.value("side", ""), where)};
    }
    if (j.contains("forced")) {
        if (!j["forced"].is_array()) throw ProofFormatError(where, "\"forced\" is not an array");
        for (const auto& s : j["forced"]) {
            node.forced.push_back({get_field<std::size_t>(s, "triple", where), side_from_json(s.value("side", ""), where),
                                   get_field<std::vector<Point>>(s, "excluded_cycle", where)});
        }
    }
    if (j.contains("branch")) {
        node.branch = get_field<std::size_t>(j, "branch", where);
        if (!j.contains("children") || !j["children"].is_array()) throw ProofFormatError(where, "branch without children");
        std::size_t i = 0;
        for (const auto& c : j["children"]) node.children.push_back(node_from_json(c, where + "/" + std::to_string(i++)));
    } else {
        node.cycle = get_field<std::vector<Point>>(j, "cycle", where);
    }
    return node;
}

} // namespace detail

/// A proof together with the triples it refers to.
struct ProofDocument {
    std::size_t v = 0;
    TripleList triples;
    ProofNode root;
};

inline nlohmann::json proof_to_json(std::size_t v, std::span<const Triple> triples, const ProofNode& root) {
    nlohmann::json j;
    j["format"] = proof_format_tag;
    j["v"] = v;
    j["triples"] = nlohmann::json::array();
    for (const Triple& t : triples) j["triples"].push_back({t.first, t.middle, t.last});
    j["root"] = detail::node_to_json(root);
    return j;
}

inline ProofDocument proof_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != proof_format_tag) {
        throw ProofFormatError("document", std::string("expected format \"") + proof_format_tag + "\"");
    }
    ProofDocument doc;
    doc.v = detail::get_field<std::size_t>(j, "v", "document");
    for (const auto& t : detail::get_field<std::vector<std::vector<Point>>>(j, "triples", "document")) {
        if (t.size() != 3) throw ProofFormatError("document", "triple without three points");
        doc.triples.push_back({t[0], t[1], t[2]});
    }
    if (!j.contains("root")) throw ProofFormatError("document", "missing \"root\"");
    doc.root = detail::node_from_json(j["root"], "root");
    return doc;
}

inline ProofDocument parse_proof(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ProofFormatError("document", e.what());
    }
    return proof_from_json(j);
}

} // namespace dts

#endif // DTS_PROOF_JSON_HPP
