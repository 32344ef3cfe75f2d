#ifndef DTS_SEARCH_HPP
#define DTS_SEARCH_HPP

// Backtracking search over sequencings. A prefix is extended one point at a
// time in increasing point order; a prefix is cut as soon as some l-window
// lying wholly inside it contains a triple in order. Only triples whose last
// point is the one being placed need checking at each step.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "dts/design.hpp"

namespace dts {

struct SearchBudget {
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> time_limit;  // seconds

    bool bounded() const { return max_nodes.has_value() || time_limit.has_value(); }

    static SearchBudget unbounded() { return {}; }
    static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
};

/// Orders above this need a finite budget.
inline constexpr std::size_t max_unbudgeted_order = 12;

/// Exhaustive counts are refused above this order unless forced.
inline constexpr std::size_t max_default_count_order = 8;

/// Shared node/time accounting. Safe to charge from several threads.
class BudgetMeter {
public:
    explicit BudgetMeter(SearchBudget budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    /// Charges one node; false once the budget is spent.
    bool charge() {
        if (exhausted_.load(std::memory_order_relaxed)) return false;
        std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_.max_nodes && n > *budget_.max_nodes) {
            exhausted_ = true;
            return false;
        }
        if (budget_.time_limit && (n & 0x3ff) == 0 && elapsed() > *budget_.time_limit) {
            exhausted_ = true;
            return false;
        }
        return true;
    }

    bool exhausted() const { return exhausted_.load(); }
    std::uint64_t nodes() const { return nodes_.load(); }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
};

enum class SearchStatus { found, none, budget_exhausted };

struct SearchOutcome {
    SearchStatus status = SearchStatus::none;
    std::optional<Sequencing> witness;
    std::uint64_t nodes = 0;
};

namespace detail {

inline void check_window(std::size_t v, std::size_t window) {
    if (window < 3 || window > v) {
        throw DomainError("window length " + std::to_string(window) + " outside [3, " + std::to_string(v) + "]");
    }
}

inline void check_budget(std::size_t v, const SearchBudget& budget) {
    if (v > max_unbudgeted_order && !budget.bounded()) {
        throw DomainError("order " + std::to_string(v) + " needs a node or time budget");
    }
}

class PrefixSearch {
public:
    PrefixSearch(std::size_t v, std::span<const Triple> triples, std::size_t window)
        : v_(v), window_(window), ending_at_(v), position_(v, unplaced), prefix_() {
        check_well_formed(v, triples);
        for (const Triple& t : triples) ending_at_[t.last].push_back({t.first, t.middle});
        prefix_.reserve(v);
    }

    /// Visits every complete l-good sequencing extending `start` in
    /// lexicographic order. `visit` returns false to stop. Returns false if
    /// the budget ran out.
    bool run(std::span<const Point> start, BudgetMeter& meter, const std::function<bool(const std::vector<Point>&)>& visit) {
        bool ok = true;
        stop_ = false;
        bool viable = true;
        for (Point p : start) {
            if (!fits(p)) {
                viable = false;
                break;
            }
            place(p);
        }
        if (viable) ok = extend(meter, visit);
        while (!prefix_.empty()) unplace();
        return ok;
    }

private:
    static constexpr std::size_t unplaced = static_cast<std::size_t>(-1);

    bool fits(Point p) const {
        const std::size_t k = prefix_.size();
        for (const Edge& e : ending_at_[p]) {
            const std::size_t a = position_[e.from], b = position_[e.to];
            if (a != unplaced && b != unplaced && a < b && k - a < window_) return false;
        }
        return true;
    }

    void place(Point p) {
        position_[p] = prefix_.size();
        prefix_.push_back(p);
    }

    void unplace() {
        position_[prefix_.back()] = unplaced;
        prefix_.pop_back();
    }

    bool extend(BudgetMeter& meter, const std::function<bool(const std::vector<Point>&)>& visit) {
        if (prefix_.size() == v_) {
            if (!visit(prefix_)) stop_ = true;
            return true;
        }
        for (Point p = 0; p < v_ && !stop_; ++p) {
            if (position_[p] != unplaced) continue;
            if (!meter.charge()) return false;
            if (!fits(p)) continue;
            place(p);
            bool ok = extend(meter, visit);
            unplace();
            if (!ok) return false;
        }
        return true;
    }

    std::size_t v_;
    std::size_t window_;
    std::vector<std::vector<Edge>> ending_at_;  // (first, middle) of triples by last point
    std::vector<std::size_t> position_;
    std::vector<Point> prefix_;
    bool stop_ = false;
};

} // namespace detail

/// First l-good sequencing in lexicographic order, or a proof by exhaustion
/// that none exists.
inline SearchOutcome find_l_good(std::size_t v, std::span<const Triple> triples, std::size_t window,
                                 const SearchBudget& budget = {}) {
    detail::check_window(v, window);
    detail::check_budget(v, budget);
    BudgetMeter meter(budget);
    detail::PrefixSearch search(v, triples, window);
    SearchOutcome out;
    bool complete = search.run({}, meter, [&](const std::vector<Point>& seq) {
        out.witness.emplace(seq);
        return false;
    });
    out.nodes = meter.nodes();
    if (out.witness) out.status = SearchStatus::found;
    else out.status = complete ? SearchStatus::none : SearchStatus::budget_exhausted;
    return out;
}

inline SearchOutcome find_l_good(const DirectedTripleSystem& dts, std::size_t window, const SearchBudget& budget = {}) {
    return find_l_good(dts.order(), dts.triples(), window, budget);
}

struct CountOptions {
    unsigned workers = 1;
    bool force = false;  // allow orders above max_default_count_order
};

/// Exact number of l-good sequencings. Work is split on the first point when
/// several workers are requested; partial counts are summed, so the result
/// does not depend on scheduling. Throws BudgetExhausted with the partial
/// count if the budget runs out.
inline std::uint64_t count_l_good(std::size_t v, std::span<const Triple> triples, std::size_t window,
                                  const SearchBudget& budget = {}, CountOptions options = {}) {
    detail::check_window(v, window);
    detail::check_budget(v, budget);
    if (v > max_default_count_order && !options.force) {
        throw DomainError("exhaustive counting above order " + std::to_string(max_default_count_order) +
                          " must be forced");
    }
    BudgetMeter meter(budget);
    std::atomic<std::uint64_t> total{0};
    std::atomic<Point> next_first{0};
    auto worker = [&] {
        detail::PrefixSearch search(v, triples, window);
        std::uint64_t local = 0;
        for (Point first = next_first++; first < v; first = next_first++) {
            std::array<Point, 1> start{first};
            if (!meter.charge()) break;
            if (!search.run(start, meter, [&](const std::vector<Point>&) { return ++local, true; })) break;
        }
        total += local;
    };
    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (meter.exhausted()) {
        throw BudgetExhausted("budget exhausted while counting " + std::to_string(window) + "-good sequencings",
                              total.load(), meter.nodes());
    }
    return total.load();
}

inline std::uint64_t count_l_good(const DirectedTripleSystem& dts, std::size_t window, const SearchBudget& budget = {},
                                  CountOptions options = {}) {
    return count_l_good(dts.order(), dts.triples(), window, budget, options);
}

/// Largest l admitting an l-good sequencing. `certified` is false when some
/// larger l could not be ruled out within the budget, in which case `window`
/// is only a lower bound. `window` is 0 if not even l = 3 succeeded.
struct MaxGoodL {
    std::size_t window = 0;
    std::optional<Sequencing> witness;
    bool certified = true;
    std::uint64_t nodes = 0;
};

inline MaxGoodL max_good_l(const DirectedTripleSystem& dts, const SearchBudget& budget = {}) {
    MaxGoodL out;
    for (std::size_t window = dts.order(); window >= 3; --window) {
        SearchOutcome r = find_l_good(dts, window, budget);
        out.nodes += r.nodes;
        if (r.status == SearchStatus::found) {
            out.window = window;
            out.witness = std::move(r.witness);
            return out;
        }
        if (r.status == SearchStatus::budget_exhausted) out.certified = false;
    }
    return out;
}

} // namespace dts

#endif // DTS_SEARCH_HPP
