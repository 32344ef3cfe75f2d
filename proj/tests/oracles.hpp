#ifndef DTS_TESTS_ORACLES_HPP
#define DTS_TESTS_ORACLES_HPP

// Slow, obviously-correct reference implementations used to cross-check
// the library. Nothing here calls into the code under test except for the
// plain data types.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dts/design.hpp"

namespace oracle {

using dts::Point;
using dts::Triple;
using dts::TripleList;

// Scan every window of `window` consecutive positions and every triple.
inline bool l_good(const TripleList& triples, const std::vector<Point>& seq, std::size_t window) {
    const std::size_t v = seq.size();
    for (std::size_t start = 0; start + window <= v; ++start) {
        for (const Triple& t : triples) {
            std::vector<std::size_t> pos;
            for (Point p : {t.first, t.middle, t.last}) {
                auto it = std::find(seq.begin() + start, seq.begin() + start + window, p);
                if (it == seq.begin() + start + window) break;
                pos.push_back(it - seq.begin());
            }
            if (pos.size() == 3 && pos[0] < pos[1] && pos[1] < pos[2]) return false;
        }
    }
    return true;
}

// Every permutation of 0..v-1 in lexicographic order.
inline std::vector<std::vector<Point>> good_sequencings(std::size_t v, const TripleList& triples, std::size_t window) {
    std::vector<Point> p(v);
    std::iota(p.begin(), p.end(), Point{0});
    std::vector<std::vector<Point>> out;
    do
        if (l_good(triples, p, window)) out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Count of ordered pairs covered by the triples, keyed by pair.
inline std::map<std::pair<Point, Point>, int> edge_counts(const TripleList& triples) {
    std::map<std::pair<Point, Point>, int> c;
    for (const Triple& t : triples) {
        ++c[{t.first, t.middle}];
        ++c[{t.first, t.last}];
        ++c[{t.middle, t.last}];
    }
    return c;
}

inline bool exact_cover(std::size_t v, const TripleList& triples) {
    auto c = edge_counts(triples);
    for (Point a = 0; a < v; ++a)
        for (Point b = 0; b < v; ++b) {
            if (a == b) continue;
            auto it = c.find({a, b});
            if (it == c.end() || it->second != 1) return false;
        }
    return c.size() == v * (v - 1);
}

// Every pair of distinct points lies in exactly two blocks.
inline bool twofold(std::size_t v, const std::vector<std::array<Point, 3>>& blocks) {
    std::map<std::pair<Point, Point>, int> c;
    for (const auto& b : blocks)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j && b[i] < b[j]) ++c[{b[i], b[j]}];
    if (c.size() != v * (v - 1) / 2) return false;
    return std::all_of(c.begin(), c.end(), [](const auto& kv) { return kv.second == 2; });
}

// Isomorphism by trying all v! maps.
inline bool isomorphic(std::size_t v, const TripleList& a, const TripleList& b) {
    if (a.size() != b.size()) return false;
    std::multiset<Triple> target(b.begin(), b.end());
    std::vector<Point> p(v);
    std::iota(p.begin(), p.end(), Point{0});
    do {
        std::multiset<Triple> image;
        for (const Triple& t : a) image.insert({p[t.first], p[t.middle], p[t.last]});
        if (image == target) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Number of point permutations fixing the triple multiset.
inline std::uint64_t automorphisms(std::size_t v, const TripleList& a) {
    std::multiset<Triple> target(a.begin(), a.end());
    std::vector<Point> p(v);
    std::iota(p.begin(), p.end(), Point{0});
    std::uint64_t n = 0;
    do {
        std::multiset<Triple> image;
        for (const Triple& t : a) image.insert({p[t.first], p[t.middle], p[t.last]});
        n += image == target;
    } while (std::next_permutation(p.begin(), p.end()));
    return n;
}

// Positive cycle check: consecutive pairs, wrapping around, all present.
inline bool is_cycle_in(const std::vector<Point>& cycle, const std::set<std::pair<Point, Point>>& edges) {
    if (cycle.size() < 2) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!edges.count({cycle[i], cycle[(i + 1) % cycle.size()]})) return false;
    return true;
}

// Same cyclic sequence, up to where it starts.
inline bool same_cycle(std::vector<Point> a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a == b) return true;
        std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    return false;
}

} // namespace oracle

#endif // DTS_TESTS_ORACLES_HPP
