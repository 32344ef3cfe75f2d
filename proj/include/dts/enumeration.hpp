#ifndef DTS_ENUMERATION_HPP
#define DTS_ENUMERATION_HPP

// Directing a twofold triple system in every way, isomorph rejection by
// canonical forms, and classification by sequenceability.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "dts/design.hpp"
#include "dts/errors.hpp"
#include "dts/prover.hpp"
#include "dts/search.hpp"

namespace dts {

/// The six orderings of a block, in lexicographic order.
inline std::array<Triple, 6> block_orderings(const Block3& blk) {
    std::array<Point, 3> p = blk;
    std::sort(p.begin(), p.end());
    std::array<Triple, 6> out;
    std::size_t i = 0;
    do out[i++] = {p[0], p[1], p[2]};
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Calls visit(triples) once for every directing of the blocks that covers
/// each ordered pair exactly once. Blocks are taken in index order and each
/// block's orderings lexicographically; a branch is cut as soon as two
/// triples share a directed edge.
inline void all_directings(const TwofoldTripleSystem& tts, const std::function<void(const TripleList&)>& visit) {
    if (auto defect = tts_defect(tts); !defect.empty()) throw InputError("invalid TTS: " + defect);
    const std::size_t v = tts.v;
    std::vector<char> used(v * v, 0);
    TripleList current;
    current.reserve(tts.blocks.size());
    std::vector<std::array<Triple, 6>> options;
    for (const Block3& blk : tts.blocks) options.push_back(block_orderings(blk));

    std::function<void(std::size_t)> extend = [&](std::size_t b) {
        if (b == options.size()) {
            visit(current);
            return;
        }
        for (const Triple& t : options[b]) {
            auto edges = t.edges();
            bool clash = false;
            for (const Edge& e : edges) clash = clash || used[e.from * v + e.to];
            if (clash) continue;
            for (const Edge& e : edges) used[e.from * v + e.to] = 1;
            current.push_back(t);
            extend(b + 1);
            current.pop_back();
            for (const Edge& e : edges) used[e.from * v + e.to] = 0;
        }
    };
    extend(0);
}

inline std::vector<TripleList> all_directings(const TwofoldTripleSystem& tts) {
    std::vector<TripleList> out;
    all_directings(tts, [&](const TripleList& d) { out.push_back(d); });
    return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

inline constexpr std::size_t max_canonical_order = 9;

/// Lexicographically least relabelled triple list, sorted by
/// (largest point, first, middle, last), together with the number of
/// relabellings that attain it (the automorphism group order).
struct CanonicalLabelling {
    std::vector<Point> relabel;  // old point -> new point
    TripleList triples;          // canonical triple list
    std::uint64_t automorphisms = 0;

    std::string bytes(std::size_t v) const {
        std::string out(1, static_cast<char>(v));
        for (const Triple& t : triples) {
            out.push_back(static_cast<char>(t.first));
            out.push_back(static_cast<char>(t.middle));
            out.push_back(static_cast<char>(t.last));
        }
        return out;
    }
};

namespace detail {

inline auto canonical_key(const Triple& t) { return std::tuple{t.max_point(), t.first, t.middle, t.last}; }

inline bool canonical_less(const Triple& a, const Triple& b) { return canonical_key(a) < canonical_key(b); }

// New labels are handed out 0, 1, 2, ... Once label k is placed, the
// triples whose largest new label is k are known, and since the encoding is
// sorted by largest label they form the next segment of the final list.
class Canonicalizer {
public:
    Canonicalizer(std::size_t v, std::span<const Triple> triples)
        : v_(v), triples_(triples.begin(), triples.end()), incident_(v), label_(v, unset) {
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            const Triple& t = triples_[i];
            incident_[t.first].push_back(i);
            incident_[t.middle].push_back(i);
            incident_[t.last].push_back(i);
        }
    }

    CanonicalLabelling run() {
        current_.clear();
        search(0, 0);
        return {best_label_, best_, automorphisms_};
    }

private:
    static constexpr Point unset = static_cast<Point>(-1);

    // less_epoch == epoch_ means the current prefix is already strictly
    // smaller than best_; a new best invalidates that.
    void search(std::size_t depth, std::uint64_t less_epoch) {
        if (depth == v_) {
            if (!has_best_ || less_epoch == epoch_) {
                best_ = current_;
                best_label_ = label_;
                has_best_ = true;
                automorphisms_ = 1;
                ++epoch_;
            } else {
                ++automorphisms_;
            }
            return;
        }
        const Point k = static_cast<Point>(depth);
        for (Point p = 0; p < v_; ++p) {
            if (label_[p] != unset) continue;
            label_[p] = k;
            const std::size_t mark = current_.size();
            for (std::size_t id : incident_[p]) {
                Triple t = triples_[id];
                Point a = label_[t.first], b = label_[t.middle], c = label_[t.last];
                if (a == unset || b == unset || c == unset) continue;
                current_.push_back({a, b, c});
            }
            std::sort(current_.begin() + static_cast<std::ptrdiff_t>(mark), current_.end(), canonical_less);
            std::uint64_t child_epoch = less_epoch;
            bool prune = false;
            if (has_best_ && less_epoch != epoch_) {
                for (std::size_t i = mark; i < current_.size(); ++i) {
                    if (canonical_less(current_[i], best_[i])) {
                        child_epoch = epoch_;
                        break;
                    }
                    if (canonical_less(best_[i], current_[i])) {
                        prune = true;
                        break;
                    }
                }
            }
            if (!prune) search(depth + 1, has_best_ ? child_epoch : epoch_);
            current_.resize(mark);
            label_[p] = unset;
        }
    }

    std::size_t v_;
    TripleList triples_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<Point> label_;
    TripleList current_, best_;
    std::vector<Point> best_label_;
    bool has_best_ = false;
    std::uint64_t epoch_ = 1;
    std::uint64_t automorphisms_ = 0;
};

inline void check_canonical_order(std::size_t v) {
    if (v > max_canonical_order) {
        throw DomainError("canonical forms are supported up to order " + std::to_string(max_canonical_order) +
                          ", got " + std::to_string(v));
    }
}

} // namespace detail

inline CanonicalLabelling canonical_labelling(std::size_t v, std::span<const Triple> triples) {
    detail::check_canonical_order(v);
    check_well_formed(v, triples);
    return detail::Canonicalizer(v, triples).run();
}

inline CanonicalLabelling canonical_labelling(const DirectedTripleSystem& dts) {
    return canonical_labelling(dts.order(), dts.triples());
}

/// Byte string equal for two designs exactly when they are isomorphic.
inline std::string canonical_form(const DirectedTripleSystem& dts) {
    return canonical_labelling(dts).bytes(dts.order());
}

inline std::string canonical_form(std::size_t v, std::span<const Triple> triples) {
    return canonical_labelling(v, triples).bytes(v);
}

inline std::string to_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

/// Order of the group of point permutations mapping the block multiset onto
/// itself. Plain v! scan.
inline std::uint64_t tts_automorphisms(const TwofoldTripleSystem& tts) {
    detail::check_canonical_order(tts.v);
    std::vector<Block3> target = tts.blocks;
    std::sort(target.begin(), target.end());
    std::vector<Point> perm(tts.v);
    std::iota(perm.begin(), perm.end(), Point{0});
    std::uint64_t count = 0;
    std::vector<Block3> image(target.size());
    do {
        for (std::size_t i = 0; i < target.size(); ++i)
            image[i] = make_block(perm[target[i][0]], perm[target[i][1]], perm[target[i][2]]);
        std::sort(image.begin(), image.end());
        if (image == target) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// ---------------------------------------------------------------------------
// Census

/// Product of m! over the multiplicities m of repeated blocks. A directing
/// of a repeated block's copies can be swapped between positions, so the
/// position-wise stream counts each triple set this many times.
inline std::uint64_t repeated_block_factor(const TwofoldTripleSystem& tts) {
    std::map<Block3, std::uint64_t> mult;
    for (const Block3& b : tts.blocks) ++mult[make_block(b[0], b[1], b[2])];
    std::uint64_t factor = 1;
    for (const auto& [b, m] : mult)
        for (std::uint64_t i = 2; i <= m; ++i) factor *= i;
    return factor;
}

struct DirectingClass {
    std::string canonical;        // canonical_form bytes
    TripleList representative;    // canonical triple list
    std::uint64_t directings = 0; // members of the stream in this class
    std::uint64_t automorphisms = 0;
    VerdictKind verdict = VerdictKind::unknown;
    std::size_t max_good_l = 0;   // 0 when not determined
    bool max_certified = false;
};

struct CensusReport {
    std::size_t v = 0;
    std::uint64_t total_directings = 0;    // counted per block position
    std::uint64_t distinct_directings = 0; // as triple sets
    std::uint64_t nonisomorphic = 0;
    std::uint64_t with_v_good = 0;
    std::uint64_t tts_automorphisms = 0;
    std::vector<DirectingClass> classes;     // in canonical-form order
    std::vector<std::size_t> exceptional;    // indices into classes
    bool partial = false;                    // some verdict or max window unresolved
};

struct CensusOptions {
    SearchBudget prover_budget = SearchBudget::nodes(1'000'000);
    SearchBudget window_budget = {};
    unsigned workers = 1;
};

/// Directs the TTS in every way, groups the directings by canonical form,
/// and decides v-good sequenceability of one representative per class.
/// Classes without a v-good sequencing also get their largest good window.
inline CensusReport classify_directings(const TwofoldTripleSystem& tts, const CensusOptions& options = {}) {
    detail::check_canonical_order(tts.v);
    const std::size_t v = tts.v;
    std::vector<TripleList> stream = all_directings(tts);

    const unsigned workers = std::max(1u, options.workers);
    std::vector<std::map<std::string, DirectingClass>> partial_maps(workers);
    auto work = [&](unsigned w) {
        auto& classes = partial_maps[w];
        for (std::size_t i = w; i < stream.size(); i += workers) {
            CanonicalLabelling c = detail::Canonicalizer(v, stream[i]).run();
            std::string key = c.bytes(v);
            auto [it, fresh] = classes.try_emplace(key);
            if (fresh) {
                it->second.canonical = key;
                it->second.representative = c.triples;
                it->second.automorphisms = c.automorphisms;
            }
            ++it->second.directings;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    std::map<std::string, DirectingClass> merged;
    for (auto& m : partial_maps) {
        for (auto& [key, cls] : m) {
            auto [it, fresh] = merged.try_emplace(key, cls);
            if (!fresh) it->second.directings += cls.directings;
        }
    }

    CensusReport report;
    report.v = v;
    report.total_directings = stream.size();
    report.distinct_directings = stream.size() / repeated_block_factor(tts);
    report.nonisomorphic = merged.size();
    report.tts_automorphisms = tts_automorphisms(tts);
    for (auto& [key, cls] : merged) {
        ProverVerdict verdict = decide_v_good(v, cls.representative, options.prover_budget);
        cls.verdict = verdict.kind;
        if (verdict.kind == VerdictKind::sequenceable) {
            ++report.with_v_good;
            cls.max_good_l = v;
            cls.max_certified = true;
        } else {
            if (verdict.kind == VerdictKind::unknown) report.partial = true;
            MaxGoodL m = max_good_l(DirectedTripleSystem(v, cls.representative), options.window_budget);
            cls.max_good_l = m.window;
            cls.max_certified = m.certified;
            if (!m.certified) report.partial = true;
        }
        if (cls.verdict != VerdictKind::sequenceable) report.exceptional.push_back(report.classes.size());
        report.classes.push_back(std::move(cls));
    }
    return report;
}

} // namespace dts

#endif // DTS_ENUMERATION_HPP
