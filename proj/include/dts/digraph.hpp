#ifndef DTS_DIGRAPH_HPP
#define DTS_DIGRAPH_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "dts/design.hpp"

namespace dts {

/// Directed multigraph on points 0..n-1. Parallel edges are counted so that
/// removing one copy keeps the others.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : n_(n), count_(n * n, 0), succ_(n) {}

    std::size_t size() const { return n_; }

    void add_edge(Edge e) {
        if (count_[index(e)]++ == 0) {
            auto& s = succ_[e.from];
            s.insert(std::upper_bound(s.begin(), s.end(), e.to), e.to);
        }
    }

    void remove_edge(Edge e) {
        if (--count_[index(e)] == 0) {
            auto& s = succ_[e.from];
            s.erase(std::lower_bound(s.begin(), s.end(), e.to));
        }
    }

    bool has_edge(Edge e) const { return count_[index(e)] > 0; }

    /// Distinct successors in increasing order.
    const std::vector<Point>& successors(Point p) const { return succ_[p]; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Point a = 0; a < n_; ++a)
            for (Point b : succ_[a]) out.push_back({a, b});
        return out;
    }

    /// A shortest directed path from -> ... -> to, as its list of points.
    std::optional<std::vector<Point>> shortest_path(Point from, Point to) const {
        if (from == to) return std::vector<Point>{from};
        std::vector<Point> parent(n_, unreached);
        std::deque<Point> queue{from};
        parent[from] = from;
        while (!queue.empty()) {
            Point p = queue.front();
            queue.pop_front();
            for (Point q : succ_[p]) {
                if (parent[q] != unreached) continue;
                parent[q] = p;
                if (q == to) {
                    std::vector<Point> path{to};
                    while (path.back() != from) path.push_back(parent[path.back()]);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(q);
            }
        }
        return std::nullopt;
    }

    bool reaches(Point from, Point to) const { return shortest_path(from, to).has_value(); }

    /// If adding `e` would close a directed cycle, that cycle as a point list
    /// starting with e.from, e.to (the closing edge back to e.from implied).
    std::optional<std::vector<Point>> cycle_closed_by(Edge e) const {
        auto path = shortest_path(e.to, e.from);
        if (!path) return std::nullopt;
        std::vector<Point> cycle{e.from};
        cycle.insert(cycle.end(), path->begin(), path->end() - 1);
        return cycle;
    }

private:
    static constexpr Point unreached = static_cast<Point>(-1);

    std::size_t index(Edge e) const { return static_cast<std::size_t>(e.from) * n_ + e.to; }

    std::size_t n_ = 0;
    std::vector<int> count_;
    std::vector<std::vector<Point>> succ_;
};

/// Either a total order extending every edge, or a directed cycle
/// (listed as c0, c1, ..., ck with ck -> c0 closing it).
struct TopologicalResult {
    std::optional<Sequencing> order;
    std::vector<Point> cycle;
};

/// Depth-first search; the order is reversed postorder with roots taken in
/// increasing point order. A back edge yields the cycle.
inline TopologicalResult topological_order(const Digraph& graph) {
    enum class Mark : unsigned char { fresh, active, done };
    const std::size_t n = graph.size();
    std::vector<Mark> mark(n, Mark::fresh);
    std::vector<Point> postorder;
    postorder.reserve(n);
    std::vector<Point> stack;                 // active path
    std::vector<std::size_t> next_child;      // per stack frame

    for (Point root = 0; root < n; ++root) {
        if (mark[root] != Mark::fresh) continue;
        stack.assign(1, root);
        next_child.assign(1, 0);
        mark[root] = Mark::active;
        while (!stack.empty()) {
            Point p = stack.back();
            const auto& succ = graph.successors(p);
            if (next_child.back() < succ.size()) {
                Point q = succ[next_child.back()++];
                if (mark[q] == Mark::active) {
                    auto it = std::find(stack.begin(), stack.end(), q);
                    return {std::nullopt, std::vector<Point>(it, stack.end())};
                }
                if (mark[q] == Mark::fresh) {
                    mark[q] = Mark::active;
                    stack.push_back(q);
                    next_child.push_back(0);
                }
            } else {
                mark[p] = Mark::done;
                postorder.push_back(p);
                stack.pop_back();
                next_child.pop_back();
            }
        }
    }
    std::reverse(postorder.begin(), postorder.end());
    return {Sequencing(std::move(postorder)), {}};
}

inline Digraph make_digraph(std::size_t n, std::span<const Edge> edges) {
    Digraph g(n);
    for (const Edge& e : edges) g.add_edge(e);
    return g;
}

} // namespace dts

#endif // DTS_DIGRAPH_HPP
