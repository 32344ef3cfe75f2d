#ifndef DTS_CONSTRUCTIONS_HPP
#define DTS_CONSTRUCTIONS_HPP

// Recursive constructions of directed triple systems.
//
// Both doublings keep the input triples verbatim on the old points and add
// the new points after them, so any subdesign of the input survives. With a
// good sequencing of the input, "input sequencing, then new points in
// ascending order" is a good sequencing of the output.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dts/catalog.hpp"
#include "dts/design.hpp"
#include "dts/prover.hpp"
#include "dts/text_format.hpp"

namespace dts {

struct LatinSquare {
    std::size_t n = 0;
    std::vector<Point> cells;  // row-major

    Point at(std::size_t row, std::size_t col) const { return cells[row * n + col]; }

    bool is_latin() const {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<bool> row(n, false), col(n, false);
            for (std::size_t j = 0; j < n; ++j) {
                Point r = at(i, j), c = at(j, i);
                if (r >= n || c >= n || row[r] || col[c]) return false;
                row[r] = col[c] = true;
            }
        }
        return true;
    }

    bool has_constant_diagonal() const {
        for (std::size_t i = 1; i < n; ++i)
            if (at(i, i) != at(0, 0)) return false;
        return true;
    }
};

/// cells[i][j] = (j - i) mod n; symbol 0 sits exactly on the diagonal.
inline LatinSquare constant_diagonal_latin_square(std::size_t n) {
    if (n == 0) throw DomainError("latin square order must be at least 1");
    LatinSquare sq{n, std::vector<Point>(n * n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sq.cells[i * n + j] = static_cast<Point>((j + n - i) % n);
    return sq;
}

struct SequencedDesign {
    DirectedTripleSystem design;
    Sequencing sequencing;
};

namespace detail {

inline void require_good(const DirectedTripleSystem& dts, const Sequencing& seq) {
    if (!is_l_good(dts, seq, dts.order())) {
        throw DomainError("input sequencing is not " + std::to_string(dts.order()) + "-good");
    }
}

inline Sequencing extended_sequencing(const Sequencing& seq, std::size_t new_points) {
    std::vector<Point> order = seq.order();
    for (std::size_t i = 0; i < new_points; ++i) order.push_back(static_cast<Point>(seq.size() + i));
    return Sequencing(std::move(order));
}

inline SequencedDesign checked(std::size_t v, TripleList triples, Sequencing seq) {
    DirectedTripleSystem out(v, std::move(triples));
    if (!is_l_good(out, seq, v)) throw std::logic_error("construction produced a sequencing that is not good");
    return {std::move(out), std::move(seq)};
}

} // namespace detail

/// v -> 2v+1. New points v..2v index a constant-diagonal latin square of
/// order v+1; for rows r != s the triple (y_r, x_{L(r,s)}, y_s) is added,
/// where x_k is the k-th point of `x_order` (k = 1..v).
inline TripleList double_plus_one_triples(const DirectedTripleSystem& dts, std::span<const Point> x_order) {
    const std::size_t v = dts.order();
    if (x_order.size() != v || !is_permutation_of_range(x_order)) throw DomainError("point order is not a permutation");
    const LatinSquare sq = constant_diagonal_latin_square(v + 1);
    TripleList triples = dts.triples();
    triples.reserve(expected_triple_count(2 * v + 1));
    for (std::size_t r = 0; r <= v; ++r) {
        for (std::size_t s = 0; s <= v; ++s) {
            if (r == s) continue;
            triples.push_back({static_cast<Point>(v + r), x_order[sq.at(r, s) - 1], static_cast<Point>(v + s)});
        }
    }
    return triples;
}

/// v -> 2v+4 with Y = Z_{v+4} placed at v..2v+3: (a, x_i, a+i) for
/// i = 1..v and every a, plus (i, i+v+2, i+v+1) for every i, all mod v+4.
inline TripleList double_plus_four_triples(const DirectedTripleSystem& dts, std::span<const Point> x_order) {
    const std::size_t v = dts.order();
    if (x_order.size() != v || !is_permutation_of_range(x_order)) throw DomainError("point order is not a permutation");
    const std::size_t m = v + 4;
    auto y = [&](std::size_t a) { return static_cast<Point>(v + a % m); };
    TripleList triples = dts.triples();
    triples.reserve(expected_triple_count(2 * v + 4));
    for (std::size_t i = 1; i <= v; ++i)
        for (std::size_t a = 0; a < m; ++a) triples.push_back({y(a), x_order[i - 1], y(a + i)});
    for (std::size_t i = 0; i < m; ++i) triples.push_back({y(i), y(i + v + 2), y(i + v + 1)});
    return triples;
}

inline SequencedDesign double_plus_one(const DirectedTripleSystem& dts, const Sequencing& seq) {
    detail::require_good(dts, seq);
    const std::size_t v = dts.order();
    return detail::checked(2 * v + 1, double_plus_one_triples(dts, seq.order()), detail::extended_sequencing(seq, v + 1));
}

inline SequencedDesign double_plus_four(const DirectedTripleSystem& dts, const Sequencing& seq) {
    detail::require_good(dts, seq);
    const std::size_t v = dts.order();
    return detail::checked(2 * v + 4, double_plus_four_triples(dts, seq.order()), detail::extended_sequencing(seq, v + 4));
}

// ---------------------------------------------------------------------------
// Pairwise balanced designs

struct PairwiseBalancedDesign {
    std::size_t v = 0;
    std::vector<std::vector<Point>> blocks;
};

/// Empty when every pair lies in exactly one block.
inline std::string pbd_defect(const PairwiseBalancedDesign& pbd) {
    std::vector<int> cover(pbd.v * pbd.v, 0);
    for (std::size_t b = 0; b < pbd.blocks.size(); ++b) {
        const auto& blk = pbd.blocks[b];
        if (blk.size() < 2) return "block " + std::to_string(b) + " has fewer than two points";
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] >= pbd.v) return "block " + std::to_string(b) + " references point " + std::to_string(blk[i]);
            for (std::size_t j = i + 1; j < blk.size(); ++j) {
                if (blk[i] == blk[j]) return "block " + std::to_string(b) + " repeats a point";
                Point a = std::min(blk[i], blk[j]), c = std::max(blk[i], blk[j]);
                ++cover[a * pbd.v + c];
            }
        }
    }
    for (Point a = 0; a < pbd.v; ++a)
        for (Point b = a + 1; b < pbd.v; ++b)
            if (cover[a * pbd.v + b] != 1)
                return "pair {" + std::to_string(a) + "," + std::to_string(b) + "} lies in " +
                       std::to_string(cover[a * pbd.v + b]) + " blocks";
    return {};
}

inline PairwiseBalancedDesign parse_pbd(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty input, expected 'PBD v=<n>'");
    PairwiseBalancedDesign pbd;
    pbd.v = detail::parse_header(lines[0], "PBD");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<Point> blk;
        for (const auto& tok : lines[i].tokens) blk.push_back(detail::parse_point(tok, pbd.v, lines[i].number));
        pbd.blocks.push_back(std::move(blk));
    }
    if (auto defect = pbd_defect(pbd); !defect.empty()) throw InputError("invalid PBD: " + defect);
    return pbd;
}

inline PairwiseBalancedDesign single_block_pbd(std::size_t k) {
    PairwiseBalancedDesign pbd{k, {std::vector<Point>(k)}};
    std::iota(pbd.blocks[0].begin(), pbd.blocks[0].end(), Point{0});
    return pbd;
}

/// AG(2,3): point (x, y) is 3x + y; 12 lines in 4 parallel classes.
inline PairwiseBalancedDesign affine_plane_order3() {
    PairwiseBalancedDesign pbd{9, {}};
    const int dirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, 2}};
    for (const auto& d : dirs) {
        std::vector<bool> used(9, false);
        for (Point start = 0; start < 9; ++start) {
            if (used[start]) continue;
            std::vector<Point> line;
            for (int t = 0; t < 3; ++t) {
                int x = (int(start) / 3 + t * d[0]) % 3, y = (int(start) % 3 + t * d[1]) % 3;
                line.push_back(static_cast<Point>(3 * x + y));
                used[line.back()] = true;
            }
            std::sort(line.begin(), line.end());
            pbd.blocks.push_back(std::move(line));
        }
    }
    return pbd;
}

/// Sequenceable fillers keyed by block size.
using FillerMap = std::map<std::size_t, SequencedDesign>;

namespace detail {

inline void fill_block(TripleList& out, const std::vector<Point>& block, const DirectedTripleSystem& filler,
                       std::span<const Point> filler_order) {
    // filler_order[j] -> j-th smallest point of the block
    std::vector<Point> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Point> map(filler.order());
    for (std::size_t j = 0; j < sorted.size(); ++j) map[filler_order[j]] = sorted[j];
    for (const Triple& t : filler.triples()) out.push_back(relabel(t, map));
}

inline const SequencedDesign& filler_for(const FillerMap& fillers, std::size_t size) {
    auto it = fillers.find(size);
    if (it == fillers.end()) throw DomainError("no filler design for blocks of size " + std::to_string(size));
    if (it->second.design.order() != size) throw DomainError("filler for size " + std::to_string(size) + " has the wrong order");
    require_good(it->second.design, it->second.sequencing);
    return it->second;
}

} // namespace detail

/// Fills each block with a relabelled copy of the filler for its size, so
/// that the filler's good sequencing runs along the block in ascending
/// order. [0 1 ... v-1] is then good for the union.
inline SequencedDesign compose_pbd(const PairwiseBalancedDesign& pbd, const FillerMap& fillers) {
    if (auto defect = pbd_defect(pbd); !defect.empty()) throw InputError("invalid PBD: " + defect);
    TripleList triples;
    for (const auto& blk : pbd.blocks) {
        const SequencedDesign& f = detail::filler_for(fillers, blk.size());
        detail::fill_block(triples, blk, f.design, f.sequencing.order());
    }
    return detail::checked(pbd.v, std::move(triples), Sequencing::identity(pbd.v));
}

/// Fillers from build_sequenceable for every admissible size in `sizes`.
FillerMap default_fillers(std::span<const std::size_t> sizes);

// ---------------------------------------------------------------------------
// Embeddings

enum class EmbeddingKind { gadget, seed_subdesign };

inline const char* embedding_kind_name(EmbeddingKind k) {
    return k == EmbeddingKind::gadget ? "gadget" : "seed-subdesign";
}

/// Pattern point p sits at host point injection[p].
struct EmbeddingCertificate {
    EmbeddingKind kind = EmbeddingKind::gadget;
    std::string pattern_name;
    std::vector<Point> injection;
    TripleList pattern_triples;
};

struct CertifiedDesign {
    DirectedTripleSystem design;
    EmbeddingCertificate certificate;
};

/// True iff the injection is one-to-one into the host's points and every
/// pattern triple lands on a host triple verbatim.
inline bool verify_embedding(const DirectedTripleSystem& host, std::span<const Triple> pattern,
                             std::span<const Point> injection) {
    if (injection.size() < point_span(pattern)) return false;
    std::vector<bool> used(host.order(), false);
    for (Point p : injection) {
        if (p >= host.order() || used[p]) return false;
        used[p] = true;
    }
    return std::all_of(pattern.begin(), pattern.end(),
                       [&](const Triple& t) { return host.contains(relabel(t, injection)); });
}

inline bool verify_embedding(const DirectedTripleSystem& host, const EmbeddingCertificate& cert) {
    return verify_embedding(host, cert.pattern_triples, cert.injection);
}

inline std::vector<Point> identity_map(std::size_t n) {
    std::vector<Point> m(n);
    std::iota(m.begin(), m.end(), Point{0});
    return m;
}

/// Node budget used to certify that a bad block's filler has no good sequencing.
inline constexpr std::uint64_t bad_filler_budget = 1'000'000;

/// As compose_pbd, but block `bad_block` receives `bad_design`, which must
/// be provably unsequenceable. The host then inherits non-sequenceability.
inline CertifiedDesign compose_pbd_with_bad_block(const PairwiseBalancedDesign& pbd, const FillerMap& fillers,
                                                  std::size_t bad_block, const DirectedTripleSystem& bad_design) {
    if (auto defect = pbd_defect(pbd); !defect.empty()) throw InputError("invalid PBD: " + defect);
    if (bad_block >= pbd.blocks.size()) throw InputError("bad block index out of range");
    const auto& b0 = pbd.blocks[bad_block];
    if (b0.size() != bad_design.order()) {
        throw InputError("bad block has " + std::to_string(b0.size()) + " points but the design has order " +
                         std::to_string(bad_design.order()));
    }
    ProverVerdict verdict = decide_v_good(bad_design, SearchBudget::nodes(bad_filler_budget));
    if (verdict.kind != VerdictKind::unsequenceable) {
        throw DomainError("bad-block design is not certified unsequenceable");
    }
    TripleList triples;
    for (std::size_t i = 0; i < pbd.blocks.size(); ++i) {
        if (i == bad_block) {
            detail::fill_block(triples, b0, bad_design, identity_map(bad_design.order()));
        } else {
            const SequencedDesign& f = detail::filler_for(fillers, pbd.blocks[i].size());
            detail::fill_block(triples, pbd.blocks[i], f.design, f.sequencing.order());
        }
    }
    std::vector<Point> injection = b0;
    std::sort(injection.begin(), injection.end());
    EmbeddingCertificate cert{EmbeddingKind::seed_subdesign, "bad block " + std::to_string(bad_block), std::move(injection),
                              bad_design.triples()};
    DirectedTripleSystem host(pbd.v, std::move(triples));
    if (!verify_embedding(host, cert)) throw std::logic_error("bad block was not embedded verbatim");
    return {std::move(host), std::move(cert)};
}

// ---------------------------------------------------------------------------
// Drivers

/// Smaller order k from which v is reached by one doubling: v = 2k+1 for
/// odd v, v = 2k+4 for even v.
inline std::size_t doubling_source(std::size_t v) { return v % 2 == 1 ? (v - 1) / 2 : (v - 4) / 2; }

inline void require_admissible(std::size_t v) {
    if (!admissible_order(v)) {
        throw AdmissibilityError("no DTS(" + std::to_string(v) + ") exists: v must be 0 or 1 mod 3 and at least 3");
    }
}

inline SequencedDesign build_sequenceable(std::size_t v) {
    require_admissible(v);
    if (v == 3 || v == 4 || v == 6) {
        CatalogEntry e = builtin("DTS" + std::to_string(v));
        return {e.design(), *e.sequencing};
    }
    SequencedDesign base = build_sequenceable(doubling_source(v));
    DirectedTripleSystem plain(base.design.order(), base.design.triples());
    return v % 2 == 1 ? double_plus_one(plain, base.sequencing) : double_plus_four(plain, base.sequencing);
}

inline FillerMap default_fillers(std::span<const std::size_t> sizes) {
    FillerMap fillers;
    for (std::size_t k : sizes) {
        if (admissible_order(k) && !fillers.contains(k)) fillers.emplace(k, build_sequenceable(k));
    }
    return fillers;
}

/// Orders with a catalogued unsequenceable design.
inline const std::vector<std::size_t>& unsequenceable_seed_orders() {
    static const std::vector<std::size_t> seeds = {7, 9, 10, 12, 13, 16, 18};
    return seeds;
}

inline CertifiedDesign build_unsequenceable(std::size_t v) {
    require_admissible(v);
    if (v < 7) {
        throw DomainError("every DTS(" + std::to_string(v) + ") has a " + std::to_string(v) + "-good sequencing");
    }
    const auto& seeds = unsequenceable_seed_orders();
    if (std::find(seeds.begin(), seeds.end(), v) != seeds.end()) {
        if (v == 7) {
            CatalogEntry e = builtin("D7.4.926");
            return {e.design(), {EmbeddingKind::seed_subdesign, e.name, identity_map(7), e.triples}};
        }
        CatalogEntry host = builtin("EX-DTS" + std::to_string(v));
        CatalogEntry gadget = builtin("GADGET12");
        return {host.design(), {EmbeddingKind::gadget, gadget.name, identity_map(gadget.v), gadget.triples}};
    }
    const std::size_t k = doubling_source(v);
    CertifiedDesign base = build_unsequenceable(k);
    const auto order = identity_map(k);
    TripleList triples =
        v % 2 == 1 ? double_plus_one_triples(base.design, order) : double_plus_four_triples(base.design, order);
    return {DirectedTripleSystem(v, std::move(triples)), std::move(base.certificate)};
}

} // namespace dts

#endif // DTS_CONSTRUCTIONS_HPP
