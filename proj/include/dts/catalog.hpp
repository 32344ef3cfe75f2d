#ifndef DTS_CATALOG_HPP
#define DTS_CATALOG_HPP

// Built-in designs. The triple lists live in data/catalog/*.dts and are
// embedded at configure time; nothing here constructs a design in code.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dts/catalog_data.hpp"
#include "dts/design.hpp"
#include "dts/text_format.hpp"

namespace dts {

enum class FactKind {
    count_l_good,        // exactly `value` l-good sequencings (l = window)
    good_sequencing,     // the entry's SEQ line is window-good
    not_sequenceable,    // no v-good sequencing (holds for partial sets too)
    max_good_l,          // largest good window is `window`
    contains_gadget,     // the twelve-triple gadget is the first twelve triples
};

struct KnownFact {
    FactKind kind;
    std::size_t window = 0;
    std::uint64_t value = 0;
    std::string locus;  // where the claim comes from
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::size_t v = 0;
    TripleList triples;
    std::vector<std::string> labels;
    std::optional<Sequencing> sequencing;
    bool partial = false;  // triple set only, not a complete design
    std::vector<KnownFact> known_facts;
    std::string text;      // the embedded file, verbatim

    DirectedTripleSystem design() const {
        if (partial) throw DomainError(name + " is a partial triple set, not a design");
        return DirectedTripleSystem(v, triples, labels);
    }
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) s[static_cast<std::size_t>(i)] = digits[x & 0xf];
    return s;
}

namespace detail {

struct CatalogMeta {
    std::string_view name;
    std::string_view summary;
    bool partial;
    std::vector<KnownFact> facts;
};

inline const std::vector<CatalogMeta>& catalog_meta() {
    using K = FactKind;
    static const std::vector<CatalogMeta> meta = {
        {"DTS3", "order-3 example on points 1..3", false,
         {{K::good_sequencing, 3, 0, "order-3 example: [1 3 2] is 3-good"},
          {K::count_l_good, 3, 4, "order-3 example: four 3-good sequencings listed"}}},
        {"DTS4", "order-4 example on points 1..4", false,
         {{K::good_sequencing, 4, 0, "order-4 example: [1 3 2 4] is 4-good"}}},
        {"DTS6", "order-6 example {(0,inf,4),(0,1,3)} mod 5", false,
         {{K::good_sequencing, 6, 0, "order-6 example: [inf 0 2 4 3 1] is 6-good"}}},
        {"D4.1", "DTS(4) number 1 of 3", false,
         {{K::good_sequencing, 4, 0, "order-4 census D(4)1: 4-good sequencing 0213"},
          {K::count_l_good, 4, 8, "order-4 census D(4)1: 8 four-good sequencings"}}},
        {"D4.2", "DTS(4) number 2 of 3", false,
         {{K::good_sequencing, 4, 0, "order-4 census D(4)2: 4-good sequencing 0213"},
          {K::count_l_good, 4, 8, "order-4 census D(4)2: 8 four-good sequencings"}}},
        {"D4.3", "DTS(4) number 3 of 3", false,
         {{K::good_sequencing, 4, 0, "order-4 census D(4)3: 4-good sequencing 0123"},
          {K::count_l_good, 4, 8, "order-4 census D(4)3: 8 four-good sequencings"}}},
        {"D7.4.926", "DTS(7) over D(7)4 without a 7-good sequencing", false,
         {{K::not_sequenceable, 7, 0, "D(7)4.926: no 7-good sequencing (case-analysis proof)"},
          {K::good_sequencing, 6, 0, "D(7)4.926: 6-good sequencing 0123456"},
          {K::count_l_good, 6, 124, "D(7)4.926: 124 six-good sequencings"},
          {K::max_good_l, 6, 0, "D(7)4.926: the four bad DTS(7) all have 6-good sequencings"}}},
        {"D7.4.958", "DTS(7) over D(7)4 without a 7-good sequencing", false,
         {{K::not_sequenceable, 7, 0, "D(7)4.958: no 7-good sequencing"},
          {K::good_sequencing, 6, 0, "D(7)4.958: 6-good sequencing 0245613"},
          {K::count_l_good, 6, 124, "D(7)4.958: 124 six-good sequencings"},
          {K::max_good_l, 6, 0, "D(7)4.958: the four bad DTS(7) all have 6-good sequencings"}}},
        {"D7.4.1015", "DTS(7) over D(7)4 without a 7-good sequencing", false,
         {{K::not_sequenceable, 7, 0, "D(7)4.1015: no 7-good sequencing"},
          {K::good_sequencing, 6, 0, "D(7)4.1015: 6-good sequencing 0153462"},
          {K::count_l_good, 6, 112, "D(7)4.1015: 112 six-good sequencings"},
          {K::max_good_l, 6, 0, "D(7)4.1015: the four bad DTS(7) all have 6-good sequencings"}}},
        {"D7.4.1016", "DTS(7) over D(7)4 without a 7-good sequencing", false,
         {{K::not_sequenceable, 7, 0, "D(7)4.1016: no 7-good sequencing"},
          {K::good_sequencing, 6, 0, "D(7)4.1016: 6-good sequencing 0124356"},
          {K::count_l_good, 6, 112, "D(7)4.1016: 112 six-good sequencings"},
          {K::max_good_l, 6, 0, "D(7)4.1016: the four bad DTS(7) all have 6-good sequencings"}}},
        {"GADGET12", "twelve triples on 9 points that no sequencing avoids", true,
         {{K::not_sequenceable, 9, 0, "twelve-triple lemma: any host lacks a v-good sequencing"}}},
        {"EX-DTS9", "DTS(9) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(9) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 9, 0, "DTS(9) example: no 9-good sequencing"}}},
        {"EX-DTS10", "DTS(10) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(10) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 10, 0, "DTS(10) example: no 10-good sequencing"}}},
        {"EX-DTS12", "DTS(12) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(12) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 12, 0, "DTS(12) example: no 12-good sequencing"}}},
        {"EX-DTS13", "DTS(13) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(13) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 13, 0, "DTS(13) example: no 13-good sequencing"}}},
        {"EX-DTS16", "DTS(16) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(16) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 16, 0, "DTS(16) example: no 16-good sequencing"}}},
        {"EX-DTS18", "DTS(18) containing the gadget", false,
         {{K::contains_gadget, 0, 0, "DTS(18) example: first twelve triples are the gadget"},
          {K::not_sequenceable, 18, 0, "DTS(18) example: no 18-good sequencing"}}},
    };
    return meta;
}

inline std::string_view embedded_text(std::string_view name) {
    for (const auto& f : catalog_data::files)
        if (f.name == name) return f.text;
    return {};
}

} // namespace detail

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& m : detail::catalog_meta()) names.emplace_back(m.name);
    return names;
}

inline CatalogEntry builtin(std::string_view name) {
    for (const auto& m : detail::catalog_meta()) {
        if (m.name != name) continue;
        std::string_view text = detail::embedded_text(name);
        if (text.empty()) throw LookupError("catalog file for '" + std::string(name) + "' is not embedded");
        ParsedDesign parsed = parse_design(text);
        CatalogEntry e;
        e.name = std::string(m.name);
        e.summary = std::string(m.summary);
        e.v = parsed.v;
        e.triples = std::move(parsed.triples);
        e.labels = std::move(parsed.labels);
        if (parsed.sequencing) e.sequencing.emplace(std::move(*parsed.sequencing));
        e.partial = m.partial;
        e.known_facts = m.facts;
        e.text = std::string(text);
        return e;
    }
    std::string all;
    for (const auto& n : catalog_names()) all += (all.empty() ? "" : ", ") + n;
    throw LookupError("unknown catalog design '" + std::string(name) + "'; available: " + all);
}

inline std::vector<CatalogEntry> catalog_entries() {
    std::vector<CatalogEntry> out;
    for (const auto& n : catalog_names()) out.push_back(builtin(n));
    return out;
}

/// Digests recorded in data/catalog/DIGESTS, by design name.
inline std::vector<std::pair<std::string, std::string>> recorded_digests() {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in{std::string(catalog_data::digests)};
    for (std::string name, digest; in >> name >> digest;) out.emplace_back(name, digest);
    return out;
}

/// Names whose embedded text no longer matches the recorded digest.
inline std::vector<std::string> catalog_digest_mismatches() {
    std::vector<std::string> bad;
    auto recorded = recorded_digests();
    for (const auto& f : catalog_data::files) {
        auto it = std::find_if(recorded.begin(), recorded.end(), [&](const auto& r) { return r.first == f.name; });
        if (it == recorded.end() || it->second != hex64(fnv1a64(f.text))) bad.emplace_back(f.name);
    }
    return bad;
}

} // namespace dts

#endif // DTS_CATALOG_HPP
