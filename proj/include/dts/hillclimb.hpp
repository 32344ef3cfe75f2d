#ifndef DTS_HILLCLIMB_HPP
#define DTS_HILLCLIMB_HPP

// Randomized hill climbing towards a DTS(v).
//
// Each step picks a heuristic and a pivot point x, then two uncovered edges
// at x, and adds the triple they determine:
//   H1  x first   (x, y, z) from uncovered xy, xz
//   H2  x middle  (y, x, z) from uncovered yx, xz
//   H3  x last    (y, z, x) from uncovered yx, zx
// The third edge yz may already belong to a triple, which is then evicted.
// Starred mode refuses to evict a protected (initial) triple and the step
// does nothing instead.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dts/design.hpp"
#include "dts/errors.hpp"

namespace dts {

/// mt19937_64 with a fixed rejection-sampling draw, so a seed gives the
/// same choices on every platform and standard library.
class ClimbRng {
public:
    explicit ClimbRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n). n must be positive.
    std::size_t below(std::size_t n) {
        const std::uint64_t range = n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t x;
        do x = engine_(); while (x >= limit);
        return static_cast<std::size_t>(x % range);
    }

private:
    std::mt19937_64 engine_;
};

enum class Heuristic { h1, h2, h3 };

inline const char* heuristic_name(Heuristic h) {
    switch (h) {
        case Heuristic::h1: return "H1";
        case Heuristic::h2: return "H2";
        default: return "H3";
    }
}

enum class ClimbMode { plain, starred };

class ClimbState {
public:
    ClimbState(std::size_t v, std::span<const Triple> initial) : v_(v), owner_(v), out_free_(v, v - 1), in_free_(v, v - 1) {
        check_well_formed(v, initial);
        for (const Triple& t : initial) {
            for (const Edge& e : t.edges()) {
                if (owner_.covered(e)) {
                    throw InputError("initial triples share the edge (" + std::to_string(e.from) + "," +
                                     std::to_string(e.to) + ")");
                }
            }
            insert(t, true);
        }
    }

    std::size_t order() const { return v_; }
    std::size_t size() const { return live_; }
    bool complete() const { return live_ == expected_triple_count(v_); }

    std::size_t out_free(Point x) const { return out_free_[x]; }
    std::size_t in_free(Point x) const { return in_free_[x]; }
    bool covered(Edge e) const { return owner_.covered(e); }

    std::optional<std::size_t> owner(Edge e) const {
        std::uint32_t id = owner_.get(e);
        if (id == EdgeOwners::none) return std::nullopt;
        return id;
    }

    const Triple& triple(std::size_t slot) const { return slots_[slot]; }
    bool is_protected(std::size_t slot) const { return protected_[slot]; }

    /// Live triples: protected ones first in their original order, then the
    /// rest sorted.
    TripleList triples() const {
        TripleList prot, rest;
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (!alive_[i]) continue;
            (protected_[i] ? prot : rest).push_back(slots_[i]);
        }
        std::sort(rest.begin(), rest.end());
        prot.insert(prot.end(), rest.begin(), rest.end());
        return prot;
    }

    std::size_t insert(const Triple& t, bool is_protected = false) {
        std::size_t slot;
        if (!free_slots_.empty()) {
            slot = free_slots_.back();
            free_slots_.pop_back();
            slots_[slot] = t;
            alive_[slot] = true;
            protected_[slot] = is_protected;
        } else {
            slot = slots_.size();
            slots_.push_back(t);
            alive_.push_back(true);
            protected_.push_back(is_protected);
        }
        for (const Edge& e : t.edges()) {
            owner_.set(e, static_cast<std::uint32_t>(slot));
            --out_free_[e.from];
            --in_free_[e.to];
        }
        ++live_;
        return slot;
    }

    void erase(std::size_t slot) {
        for (const Edge& e : slots_[slot].edges()) {
            owner_.clear(e);
            ++out_free_[e.from];
            ++in_free_[e.to];
        }
        alive_[slot] = false;
        protected_[slot] = false;
        free_slots_.push_back(slot);
        --live_;
    }

    /// Drops every unprotected triple.
    void restart() {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (alive_[i] && !protected_[i]) erase(i);
    }

    std::vector<Point> free_out_neighbours(Point x) const {
        std::vector<Point> out;
        for (Point y = 0; y < v_; ++y)
            if (y != x && !owner_.covered({x, y})) out.push_back(y);
        return out;
    }

    std::vector<Point> free_in_neighbours(Point x) const {
        std::vector<Point> out;
        for (Point y = 0; y < v_; ++y)
            if (y != x && !owner_.covered({y, x})) out.push_back(y);
        return out;
    }

private:
    std::size_t v_;
    EdgeOwners owner_;
    std::vector<std::size_t> out_free_, in_free_;
    TripleList slots_;
    std::vector<bool> alive_, protected_;
    std::vector<std::size_t> free_slots_;
    std::size_t live_ = 0;
};

/// Outcome of one heuristic application.
struct ClimbMove {
    Heuristic heuristic = Heuristic::h1;
    bool applied = false;
    std::optional<Triple> added;
    std::optional<Triple> evicted;
    bool blocked = false;  // starred mode met a protected triple
};

/// The triple a heuristic builds from pivot x and the two other points.
inline Triple heuristic_triple(Heuristic h, Point x, Point y, Point z) {
    switch (h) {
        case Heuristic::h1: return {x, y, z};
        case Heuristic::h2: return {y, x, z};
        default: return {y, z, x};
    }
}

/// Adds heuristic_triple(h, x, y, z) whose two edges at x must be uncovered,
/// evicting the owner of yz if there is one.
inline ClimbMove apply_move(ClimbState& state, Heuristic h, Point x, Point y, Point z, ClimbMode mode) {
    ClimbMove move{h};
    const Triple t = heuristic_triple(h, x, y, z);
    for (const Edge& e : t.edges()) {
        if (e.from == y && e.to == z) continue;
        if (state.covered(e)) throw std::logic_error("heuristic edge at the pivot is already covered");
    }
    if (auto owner = state.owner({y, z})) {
        if (mode == ClimbMode::starred && state.is_protected(*owner)) {
            move.blocked = true;
            return move;
        }
        move.evicted = state.triple(*owner);
        state.erase(*owner);
    }
    state.insert(t);
    move.added = t;
    move.applied = true;
    return move;
}

namespace detail {

// Ordered pairs (y, z), y != z, drawn from the given candidate lists.
inline std::size_t pair_count(const std::vector<Point>& ys, const std::vector<Point>& zs) {
    std::size_t shared = 0;
    for (Point y : ys) shared += std::binary_search(zs.begin(), zs.end(), y) ? 1 : 0;
    return ys.size() * zs.size() - shared;
}

inline std::pair<Point, Point> nth_pair(const std::vector<Point>& ys, const std::vector<Point>& zs, std::size_t n) {
    for (Point y : ys)
        for (Point z : zs) {
            if (y == z) continue;
            if (n-- == 0) return {y, z};
        }
    throw std::logic_error("pair index out of range");
}

inline std::pair<std::vector<Point>, std::vector<Point>> candidates(const ClimbState& s, Heuristic h, Point x) {
    switch (h) {
        case Heuristic::h1: return {s.free_out_neighbours(x), s.free_out_neighbours(x)};
        case Heuristic::h2: return {s.free_in_neighbours(x), s.free_out_neighbours(x)};
        default: return {s.free_in_neighbours(x), s.free_in_neighbours(x)};
    }
}

inline bool eligible(const ClimbState& s, Heuristic h, Point x) {
    switch (h) {
        case Heuristic::h1: return s.out_free(x) >= 2;
        case Heuristic::h3: return s.in_free(x) >= 2;
        default: {
            if (s.in_free(x) == 0 || s.out_free(x) == 0) return false;
            auto [ys, zs] = candidates(s, h, x);
            return pair_count(ys, zs) > 0;
        }
    }
}

} // namespace detail

/// Draws x uniformly among points where h applies, then (y, z) uniformly
/// among the admissible pairs at x.
inline ClimbMove apply_heuristic(ClimbState& state, Heuristic h, ClimbRng& rng, ClimbMode mode = ClimbMode::starred) {
    std::vector<Point> pivots;
    for (Point x = 0; x < state.order(); ++x)
        if (detail::eligible(state, h, x)) pivots.push_back(x);
    if (pivots.empty()) return ClimbMove{h};
    const Point x = pivots[rng.below(pivots.size())];
    auto [ys, zs] = detail::candidates(state, h, x);
    auto [y, z] = detail::nth_pair(ys, zs, rng.below(detail::pair_count(ys, zs)));
    return apply_move(state, h, x, y, z, mode);
}

inline ClimbMove apply_h1(ClimbState& s, ClimbRng& rng, ClimbMode mode = ClimbMode::starred) {
    return apply_heuristic(s, Heuristic::h1, rng, mode);
}
inline ClimbMove apply_h2(ClimbState& s, ClimbRng& rng, ClimbMode mode = ClimbMode::starred) {
    return apply_heuristic(s, Heuristic::h2, rng, mode);
}
inline ClimbMove apply_h3(ClimbState& s, ClimbRng& rng, ClimbMode mode = ClimbMode::starred) {
    return apply_heuristic(s, Heuristic::h3, rng, mode);
}

struct ClimbConfig {
    std::uint64_t rng_seed = 1;
    std::uint64_t max_iterations = 100'000;
    std::uint64_t restart_after_stall = 1'000;  // iterations without a new size high
    bool record_transcript = false;
};

struct ClimbResult {
    bool success = false;
    std::optional<DirectedTripleSystem> design;
    std::uint64_t iterations = 0;
    std::uint64_t restarts = 0;
    std::size_t best_size = 0;  // most triples held at once
    std::size_t final_size = 0;
    std::vector<std::string> transcript;

    std::string stall_report(std::size_t v) const {
        std::ostringstream out;
        out << "no DTS(" << v << ") after " << iterations << " iterations, " << restarts << " restarts; best "
            << best_size << " of " << expected_triple_count(v) << " triples";
        return out.str();
    }
};

namespace detail {

inline std::string triple_text(const Triple& t) {
    return "(" + std::to_string(t.first) + " " + std::to_string(t.middle) + " " + std::to_string(t.last) + ")";
}

} // namespace detail

/// Runs the heuristics from the initial triples (which are never evicted)
/// until the design is complete or max_iterations steps have been taken.
inline ClimbResult hill_climb(std::size_t v, std::span<const Triple> initial, const ClimbConfig& config) {
    if (!admissible_order(v)) {
        throw AdmissibilityError("no DTS(" + std::to_string(v) + ") exists: v must be 0 or 1 mod 3 and at least 3");
    }
    if (config.max_iterations == 0 || config.restart_after_stall == 0) {
        throw DomainError("iteration and stall bounds must be positive");
    }
    ClimbState state(v, initial);
    ClimbRng rng(config.rng_seed);
    ClimbResult result;
    result.best_size = state.size();
    std::uint64_t stall = 0;
    std::size_t high = state.size();  // most triples since the last restart
    while (!state.complete() && result.iterations < config.max_iterations) {
        ++result.iterations;
        const auto h = static_cast<Heuristic>(rng.below(3));
        ClimbMove move = apply_heuristic(state, h, rng);
        if (config.record_transcript) {
            std::string line = std::to_string(result.iterations) + " " + heuristic_name(h);
            if (move.applied) {
                line += " add " + detail::triple_text(*move.added);
                if (move.evicted) line += " evict " + detail::triple_text(*move.evicted);
            } else {
                line += move.blocked ? " blocked" : " idle";
            }
            result.transcript.push_back(std::move(line));
        }
        // A swap that only trades one triple for another is not progress;
        // with protected triples two moves can undo each other forever.
        result.best_size = std::max(result.best_size, state.size());
        if (state.size() > high) {
            high = state.size();
            stall = 0;
        } else if (++stall >= config.restart_after_stall) {
            state.restart();
            high = state.size();
            stall = 0;
            ++result.restarts;
            if (config.record_transcript) result.transcript.push_back(std::to_string(result.iterations) + " restart");
        }
    }
    result.final_size = state.size();
    if (state.complete()) {
        result.success = true;
        result.design.emplace(v, state.triples());
    }
    return result;
}

} // namespace dts

#endif // DTS_HILLCLIMB_HPP
