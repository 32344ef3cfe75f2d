#ifndef DTS_DESIGN_HPP
#define DTS_DESIGN_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dts/errors.hpp"

namespace dts {

using Point = std::uint32_t;

/// Ordered pair (from, to), read as "from comes before to" or as the directed
/// edge from -> to, depending on context.
struct Edge {
    Point from = 0;
    Point to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Transitive triple (x, y, z) carrying the directed edges xy, xz and yz.
struct Triple {
    Point first = 0;
    Point middle = 0;
    Point last = 0;

    friend auto operator<=>(const Triple&, const Triple&) = default;

    std::array<Edge, 3> edges() const {
        return {Edge{first, middle}, Edge{first, last}, Edge{middle, last}};
    }
    bool degenerate() const { return first == middle || first == last || middle == last; }
    Point max_point() const { return std::max({first, middle, last}); }
};

using TripleList = std::vector<Triple>;

inline bool admissible_order(std::size_t v) { return v >= 3 && (v % 3 == 0 || v % 3 == 1); }

inline std::size_t expected_triple_count(std::size_t v) { return v * (v - 1) / 3; }

/// Throws InputError if any triple repeats a point or references a point >= v.
inline void check_well_formed(std::size_t v, std::span<const Triple> triples) {
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        if (t.degenerate()) {
            throw InputError("triple " + std::to_string(i) + " (" + std::to_string(t.first) + "," +
                             std::to_string(t.middle) + "," + std::to_string(t.last) +
                             ") repeats a point");
        }
        if (t.max_point() >= v) {
            throw InputError("triple " + std::to_string(i) + " references point " +
                             std::to_string(t.max_point()) + " but v = " + std::to_string(v));
        }
    }
}

/// Smallest v that makes every point of the list a valid index.
inline std::size_t point_span(std::span<const Triple> triples) {
    std::size_t v = 0;
    for (const Triple& t : triples) v = std::max<std::size_t>(v, t.max_point() + 1);
    return v;
}

/// Dense v x v map from directed edge to the index of the triple covering it.
class EdgeOwners {
public:
    static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    EdgeOwners() = default;
    explicit EdgeOwners(std::size_t v) : v_(v), owner_(v * v, none) {}

    std::size_t order() const { return v_; }
    std::uint32_t get(Edge e) const { return owner_[index(e)]; }
    std::uint32_t get(Point from, Point to) const { return get(Edge{from, to}); }
    bool covered(Edge e) const { return get(e) != none; }
    void set(Edge e, std::uint32_t owner) { owner_[index(e)] = owner; }
    void clear(Edge e) { owner_[index(e)] = none; }

private:
    std::size_t index(Edge e) const { return static_cast<std::size_t>(e.from) * v_ + e.to; }

    std::size_t v_ = 0;
    std::vector<std::uint32_t> owner_;
};

struct DuplicatedEdge {
    Edge edge;
    std::vector<std::size_t> owners;  // indices into the triple list
};

/// Every defect found while checking an exact directed-edge cover.
struct ValidationReport {
    bool valid = false;
    std::vector<Edge> missing_edges;
    std::vector<DuplicatedEdge> duplicated_edges;

    std::string summary() const {
        if (valid) return "valid";
        std::string s = "invalid:";
        for (const Edge& e : missing_edges)
            s += " missing(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
        for (const DuplicatedEdge& d : duplicated_edges) {
            s += " duplicated(" + std::to_string(d.edge.from) + "," + std::to_string(d.edge.to) +
                 ") in triples";
            for (std::size_t o : d.owners) s += " " + std::to_string(o);
        }
        return s;
    }
};

/// Checks that `triples` cover every ordered pair of distinct points of
/// {0..v-1} exactly once. A perfect cover forces |triples| = v(v-1)/3.
inline ValidationReport validate_dts(std::size_t v, std::span<const Triple> triples) {
    check_well_formed(v, triples);
    std::vector<std::vector<std::size_t>> owners(v * v);
    for (std::size_t i = 0; i < triples.size(); ++i) {
        for (const Edge& e : triples[i].edges()) owners[e.from * v + e.to].push_back(i);
    }
    ValidationReport report;
    for (Point a = 0; a < v; ++a) {
        for (Point b = 0; b < v; ++b) {
            if (a == b) continue;
            const auto& o = owners[a * v + b];
            if (o.empty()) report.missing_edges.push_back({a, b});
            else if (o.size() > 1) report.duplicated_edges.push_back({{a, b}, o});
        }
    }
    report.valid = report.missing_edges.empty() && report.duplicated_edges.empty();
    return report;
}

class InvalidDesign : public InputError {
public:
    explicit InvalidDesign(ValidationReport report)
        : InputError("not a directed triple system: " + report.summary()), report(std::move(report)) {}

    ValidationReport report;
};

/// A complete DTS(v) on points 0..v-1. Construction validates; an instance
/// always holds an exact cover of the complete directed graph.
class DirectedTripleSystem {
public:
    DirectedTripleSystem(std::size_t v, TripleList triples, std::vector<std::string> labels = {})
        : v_(v), triples_(std::move(triples)), labels_(std::move(labels)) {
        if (v_ < 3) throw AdmissibilityError("order " + std::to_string(v_) + " is below 3");
        ValidationReport report = validate_dts(v_, triples_);
        if (!report.valid) throw InvalidDesign(std::move(report));
        if (!labels_.empty() && labels_.size() != v_) {
            throw InputError("label map has " + std::to_string(labels_.size()) + " entries for v = " +
                             std::to_string(v_));
        }
        owners_ = EdgeOwners(v_);
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            for (const Edge& e : triples_[i].edges()) owners_.set(e, static_cast<std::uint32_t>(i));
        }
    }

    std::size_t order() const { return v_; }
    const TripleList& triples() const { return triples_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    std::string label(Point p) const { return labels_.empty() ? std::to_string(p) : labels_.at(p); }

    /// Index of the unique triple containing the directed edge from -> to.
    std::size_t owner(Edge e) const { return owners_.get(e); }

    bool contains(const Triple& t) const {
        if (t.degenerate() || t.max_point() >= v_) return false;
        return triples_[owners_.get(Edge{t.first, t.middle})] == t;
    }

private:
    std::size_t v_;
    TripleList triples_;
    std::vector<std::string> labels_;
    EdgeOwners owners_;
};

inline bool is_permutation_of_range(std::span<const Point> values) {
    std::vector<bool> seen(values.size(), false);
    for (Point p : values) {
        if (p >= values.size() || seen[p]) return false;
        seen[p] = true;
    }
    return true;
}

/// A permutation of the points, read as a total order: order()[i] is the
/// point at position i.
class Sequencing {
public:
    explicit Sequencing(std::vector<Point> order) : order_(std::move(order)), position_(order_.size()) {
        if (!is_permutation_of_range(order_)) throw DomainError("sequencing is not a permutation of 0..v-1");
        for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = static_cast<Point>(i);
    }

    static Sequencing identity(std::size_t v) {
        std::vector<Point> order(v);
        for (std::size_t i = 0; i < v; ++i) order[i] = static_cast<Point>(i);
        return Sequencing(std::move(order));
    }

    std::size_t size() const { return order_.size(); }
    const std::vector<Point>& order() const { return order_; }
    Point at(std::size_t i) const { return order_[i]; }
    std::size_t position(Point p) const { return position_[p]; }

    friend bool operator==(const Sequencing& a, const Sequencing& b) { return a.order_ == b.order_; }

private:
    std::vector<Point> order_;
    std::vector<Point> position_;
};

/// True iff the triple appears in sequencing order and its outer points are
/// at most `window - 1` positions apart, i.e. some window of `window`
/// consecutive positions contains it in order.
inline bool contained_in_window(const Triple& t, const Sequencing& seq, std::size_t window) {
    const std::size_t a = seq.position(t.first), b = seq.position(t.middle), c = seq.position(t.last);
    return a < b && b < c && c - a < window;
}

/// l-goodness for an arbitrary triple set over the sequencing's points.
inline bool is_l_good(std::span<const Triple> triples, const Sequencing& seq, std::size_t window) {
    if (window < 3 || window > seq.size()) {
        throw DomainError("window length " + std::to_string(window) + " outside [3, " +
                          std::to_string(seq.size()) + "]");
    }
    check_well_formed(seq.size(), triples);
    return std::none_of(triples.begin(), triples.end(),
                        [&](const Triple& t) { return contained_in_window(t, seq, window); });
}

inline bool is_l_good(const DirectedTripleSystem& dts, const Sequencing& seq, std::size_t window) {
    if (seq.size() != dts.order()) {
        throw DomainError("sequencing has " + std::to_string(seq.size()) + " points, design has " +
                          std::to_string(dts.order()));
    }
    return is_l_good(dts.triples(), seq, window);
}

inline Triple relabel(const Triple& t, std::span<const Point> perm) {
    return {perm[t.first], perm[t.middle], perm[t.last]};
}

inline TripleList relabel(std::span<const Triple> triples, std::span<const Point> perm) {
    TripleList out;
    out.reserve(triples.size());
    for (const Triple& t : triples) out.push_back(relabel(t, perm));
    return out;
}

/// Applies the point map p -> perm[p]; labels travel with their points.
inline DirectedTripleSystem relabel(const DirectedTripleSystem& dts, std::span<const Point> perm) {
    if (perm.size() != dts.order() || !is_permutation_of_range(perm)) {
        throw DomainError("relabelling is not a bijection on 0..v-1");
    }
    std::vector<std::string> labels;
    if (dts.has_labels()) {
        labels.resize(dts.order());
        for (Point p = 0; p < dts.order(); ++p) labels[perm[p]] = dts.labels()[p];
    }
    return DirectedTripleSystem(dts.order(), relabel(dts.triples(), perm), std::move(labels));
}

inline std::vector<Point> inverse_permutation(std::span<const Point> perm) {
    std::vector<Point> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<Point>(i);
    return inv;
}

using Block3 = std::array<Point, 3>;  // sorted ascending

inline Block3 make_block(Point a, Point b, Point c) {
    Block3 blk{a, b, c};
    std::sort(blk.begin(), blk.end());
    return blk;
}

/// Twofold triple system: unordered triples covering every pair twice.
struct TwofoldTripleSystem {
    std::size_t v = 0;
    std::vector<Block3> blocks;
};

/// Empty string when valid, otherwise a description of the first defect.
inline std::string tts_defect(const TwofoldTripleSystem& tts) {
    const std::size_t v = tts.v;
    if (tts.blocks.size() != expected_triple_count(v)) {
        return "expected " + std::to_string(expected_triple_count(v)) + " blocks, found " +
               std::to_string(tts.blocks.size());
    }
    std::vector<int> cover(v * v, 0);
    for (const Block3& blk : tts.blocks) {
        if (blk[0] == blk[1] || blk[1] == blk[2] || blk[0] == blk[2]) return "block repeats a point";
        if (blk[2] >= v) return "block point out of range";
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ++cover[blk[i] * v + blk[j]];
    }
    for (Point a = 0; a < v; ++a)
        for (Point b = a + 1; b < v; ++b)
            if (cover[a * v + b] != 2)
                return "pair {" + std::to_string(a) + "," + std::to_string(b) + "} covered " +
                       std::to_string(cover[a * v + b]) + " times";
    return {};
}

inline TwofoldTripleSystem underlying_tts(const DirectedTripleSystem& dts) {
    TwofoldTripleSystem tts{dts.order(), {}};
    tts.blocks.reserve(dts.triples().size());
    for (const Triple& t : dts.triples()) tts.blocks.push_back(make_block(t.first, t.middle, t.last));
    std::sort(tts.blocks.begin(), tts.blocks.end());
    return tts;
}

} // namespace dts

#endif // DTS_DESIGN_HPP
