#ifndef DTS_PROVER_HPP
#define DTS_PROVER_HPP

// Decides whether a triple set admits a sequencing in which no triple
// (a, b, c) appears as a < b < c. Each triple forces the disjunction
//
//     (c before b)  or  (b before a),
//
// so a good sequencing exists iff some choice of one edge per triple gives
// an acyclic digraph; any topological order of that digraph is a witness.
// The search branches on disjunctions and propagates: whenever one side of
// an open disjunction would close a directed cycle, the other side is forced.
// A refuted search yields a case tree whose leaves are directed cycles.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dts/design.hpp"
#include "dts/digraph.hpp"
#include "dts/search.hpp"

namespace dts {

enum class Side : unsigned char { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// For triple (a, b, c): left is "c before b", right is "b before a".
struct OrderDisjunction {
    std::size_t triple_id = 0;
    Edge left;
    Edge right;

    Edge edge(Side s) const { return s == Side::left ? left : right; }
};

inline OrderDisjunction disjunction_of(std::size_t id, const Triple& t) {
    if (t.degenerate()) throw InputError("triple " + std::to_string(id) + " repeats a point");
    return {id, Edge{t.last, t.middle}, Edge{t.middle, t.first}};
}

inline std::vector<OrderDisjunction> disjunctions(std::span<const Triple> triples) {
    std::vector<OrderDisjunction> out;
    out.reserve(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) out.push_back(disjunction_of(i, triples[i]));
    return out;
}

struct Decision {
    std::size_t disjunction = 0;
    Side side = Side::left;

    friend bool operator==(const Decision&, const Decision&) = default;
};

/// One propagation step: `side` was forced because the opposite edge would
/// have closed `excluded_cycle` (listed from the opposite edge's tail).
struct ForcedStep {
    std::size_t disjunction = 0;
    Side side = Side::left;
    std::vector<Point> excluded_cycle;

    friend bool operator==(const ForcedStep&, const ForcedStep&) = default;
};

/// Case-analysis certificate. A node is entered by `decision` (absent at the
/// root), then applies its `forced` chain. It either ends in a contradiction
/// (`cycle` made of accepted edges) or splits on `branch` into two children,
/// one per side.
struct ProofNode {
    std::optional<Decision> decision;
    std::vector<ForcedStep> forced;
    std::optional<std::size_t> branch;
    std::vector<ProofNode> children;
    std::vector<Point> cycle;

    bool is_leaf() const { return !branch.has_value(); }

    std::size_t size() const {
        std::size_t n = 1 + forced.size();
        for (const auto& c : children) n += c.size();
        return n;
    }

    std::size_t branch_count() const {
        std::size_t n = branch ? 1 : 0;
        for (const auto& c : children) n += c.branch_count();
        return n;
    }
};

struct TrailEntry {
    std::size_t disjunction;
    Side side;
    bool forced;
};

struct PropagationResult {
    std::vector<ForcedStep> forced;
    std::optional<std::vector<Point>> contradiction;
};

/// Partial orientation: the digraph of chosen edges plus which side each
/// resolved disjunction took. Live states are acyclic.
class OrderConstraintState {
public:
    OrderConstraintState(std::size_t v, std::span<const Triple> triples)
        : v_(v), disjunctions_(disjunctions(triples)), graph_(v), resolved_(disjunctions_.size()),
          degree_(v, 0), by_edge_(v * v) {
        check_well_formed(v, triples);
        for (std::size_t i = 0; i < disjunctions_.size(); ++i) {
            for (Side s : {Side::left, Side::right}) {
                Edge e = disjunctions_[i].edge(s);
                by_edge_[e.from * v_ + e.to].push_back({i, s});
            }
        }
    }

    std::size_t order() const { return v_; }
    const std::vector<OrderDisjunction>& disjunctions_list() const { return disjunctions_; }
    const Digraph& graph() const { return graph_; }
    const std::vector<TrailEntry>& trail() const { return trail_; }
    std::optional<Side> resolved(std::size_t d) const { return resolved_[d]; }
    bool constrained(Point p) const { return degree_[p] > 0; }

    bool all_resolved() const { return trail_.size() == disjunctions_.size(); }

    void decide(Decision d) { push(d.disjunction, d.side, false); }

    void undo_to(std::size_t trail_size) {
        while (trail_.size() > trail_size) {
            const TrailEntry& t = trail_.back();
            Edge e = disjunctions_[t.disjunction].edge(t.side);
            graph_.remove_edge(e);
            --degree_[e.from];
            --degree_[e.to];
            resolved_[t.disjunction].reset();
            trail_.pop_back();
        }
    }

    /// Forces sides until a fixpoint or a contradiction. Rejections against
    /// the most recent edge's reverse are taken first (newest edge first,
    /// then lowest disjunction index); longer cycles are looked for only when
    /// none remain, scanning disjunctions in index order.
    PropagationResult propagate() {
        PropagationResult result;
        for (;;) {
            auto step = find_reverse_rejection();
            if (!step) step = find_cycle_rejection();
            if (!step) return result;
            Edge accepted = disjunctions_[step->disjunction].edge(step->side);
            auto closing = graph_.cycle_closed_by(accepted);
            push(step->disjunction, step->side, true);
            result.forced.push_back(std::move(*step));
            if (closing) {
                result.contradiction = std::move(closing);
                return result;
            }
        }
    }

private:
    struct SideRef {
        std::size_t disjunction;
        Side side;
    };

    void push(std::size_t d, Side s, bool forced) {
        Edge e = disjunctions_[d].edge(s);
        graph_.add_edge(e);
        ++degree_[e.from];
        ++degree_[e.to];
        resolved_[d] = s;
        trail_.push_back({d, s, forced});
    }

    std::optional<ForcedStep> find_reverse_rejection() const {
        for (auto it = trail_.rbegin(); it != trail_.rend(); ++it) {
            Edge e = disjunctions_[it->disjunction].edge(it->side);
            for (const SideRef& ref : by_edge_[e.to * v_ + e.from]) {
                if (resolved_[ref.disjunction]) continue;
                return ForcedStep{ref.disjunction, opposite(ref.side), {e.to, e.from}};
            }
        }
        return std::nullopt;
    }

    std::optional<ForcedStep> find_cycle_rejection() const {
        for (std::size_t i = 0; i < disjunctions_.size(); ++i) {
            if (resolved_[i]) continue;
            if (auto c = graph_.cycle_closed_by(disjunctions_[i].right)) return ForcedStep{i, Side::left, std::move(*c)};
            if (auto c = graph_.cycle_closed_by(disjunctions_[i].left)) return ForcedStep{i, Side::right, std::move(*c)};
        }
        return std::nullopt;
    }

    std::size_t v_;
    std::vector<OrderDisjunction> disjunctions_;
    Digraph graph_;
    std::vector<std::optional<Side>> resolved_;
    std::vector<int> degree_;
    std::vector<std::vector<SideRef>> by_edge_;
    std::vector<TrailEntry> trail_;
};

inline PropagationResult propagate(OrderConstraintState& state) { return state.propagate(); }

enum class VerdictKind { sequenceable, unsequenceable, unknown };

struct ProverVerdict {
    VerdictKind kind = VerdictKind::unknown;
    std::optional<Sequencing> witness;
    std::optional<ProofNode> proof;
    std::uint64_t nodes = 0;
};

namespace detail {

class OrderProver {
public:
    OrderProver(std::size_t v, std::span<const Triple> triples, const SearchBudget& budget)
        : state_(v, triples), meter_(budget) {}

    ProverVerdict run() {
        ProverVerdict verdict;
        Outcome out = explore(std::nullopt);
        verdict.nodes = meter_.nodes();
        if (out.witness) {
            verdict.kind = VerdictKind::sequenceable;
            verdict.witness = std::move(out.witness);
        } else if (out.refutation) {
            verdict.kind = VerdictKind::unsequenceable;
            verdict.proof = std::move(out.refutation);
        }
        return verdict;
    }

private:
    struct Outcome {
        std::optional<Sequencing> witness;
        std::optional<ProofNode> refutation;
    };

    // Most endpoints already touched by chosen edges; ties to lowest index.
    std::size_t pick_branch() const {
        const auto& ds = state_.disjunctions_list();
        std::size_t best = ds.size();
        int best_score = -1;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (state_.resolved(i)) continue;
            const OrderDisjunction& d = ds[i];
            // left = (c, b), right = (b, a): the endpoints are a, b, c
            int score = int(state_.constrained(d.left.from)) + int(state_.constrained(d.left.to)) +
                        int(state_.constrained(d.right.to));
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        return best;
    }

    Outcome explore(std::optional<Decision> decision) {
        if (!meter_.charge()) return {};
        const std::size_t mark = state_.trail().size();
        if (decision) state_.decide(*decision);

        ProofNode node;
        node.decision = decision;
        PropagationResult prop = state_.propagate();
        node.forced = std::move(prop.forced);

        Outcome out;
        if (prop.contradiction) {
            node.cycle = std::move(*prop.contradiction);
            out.refutation = std::move(node);
        } else if (state_.all_resolved()) {
            TopologicalResult topo = topological_order(state_.graph());
            out.witness = std::move(topo.order);
        } else {
            const std::size_t d = pick_branch();
            Outcome left = explore(Decision{d, Side::left});
            if (left.witness || !left.refutation) {
                state_.undo_to(mark);
                return left;
            }
            Outcome right = explore(Decision{d, Side::right});
            if (right.witness || !right.refutation) {
                state_.undo_to(mark);
                return right;
            }
            node.branch = d;
            // smaller refutation first; on a tie the "b before a" side leads
            if (right.refutation->size() <= left.refutation->size()) std::swap(left, right);
            node.children.push_back(std::move(*left.refutation));
            node.children.push_back(std::move(*right.refutation));
            out.refutation = std::move(node);
        }
        state_.undo_to(mark);
        return out;
    }

    OrderConstraintState state_;
    BudgetMeter meter_;
};

} // namespace detail

/// Complete search over one-side-per-disjunction choices. Triples need not
/// form a complete design; points are 0..v-1.
inline ProverVerdict decide_v_good(std::size_t v, std::span<const Triple> triples, const SearchBudget& budget = {}) {
    check_well_formed(v, triples);
    return detail::OrderProver(v, triples, budget).run();
}

inline ProverVerdict decide_v_good(const DirectedTripleSystem& dts, const SearchBudget& budget = {}) {
    return decide_v_good(dts.order(), dts.triples(), budget);
}

// ---------------------------------------------------------------------------
// Certificate checking. Deliberately independent of OrderConstraintState:
// every justification is re-verified edge by edge.

struct ProofCheck {
    bool valid = true;
    std::string node;   // path of the offending node, e.g. "root/1/0"
    std::string error;

    explicit operator bool() const { return valid; }
};

namespace detail {

class ProofChecker {
public:
    ProofChecker(std::size_t v, std::span<const Triple> triples) : v_(v), ds_(disjunctions(triples)) {}

    ProofCheck check(const ProofNode& root) {
        if (root.decision) return fail("root", "root node carries a decision");
        Digraph accepted(v_);
        std::vector<bool> resolved(ds_.size(), false);
        return check_node(root, accepted, resolved, "root");
    }

private:
    static ProofCheck fail(const std::string& node, const std::string& error) { return {false, node, error}; }

    bool known(std::size_t d) const { return d < ds_.size(); }

    bool is_cycle_in(const std::vector<Point>& cycle, const Digraph& g, std::optional<Edge> extra,
                     bool extra_required) const {
        if (cycle.size() < 2) return false;
        std::vector<bool> seen(v_, false);
        for (Point p : cycle) {
            if (p >= v_ || seen[p]) return false;
            seen[p] = true;
        }
        bool used_extra = false;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            Edge e{cycle[i], cycle[(i + 1) % cycle.size()]};
            if (extra && e == *extra) used_extra = true;
            else if (!g.has_edge(e)) return false;
        }
        return used_extra || !extra_required;
    }

    ProofCheck check_node(const ProofNode& node, Digraph accepted, std::vector<bool> resolved, const std::string& path) {
        if (node.decision) {
            accepted.add_edge(ds_[node.decision->disjunction].edge(node.decision->side));
            resolved[node.decision->disjunction] = true;
        }
        for (std::size_t k = 0; k < node.forced.size(); ++k) {
            const ForcedStep& step = node.forced[k];
            const std::string where = path + " forced step " + std::to_string(k);
            if (!known(step.disjunction)) return fail(where, "unknown disjunction " + std::to_string(step.disjunction));
            if (resolved[step.disjunction]) return fail(where, "disjunction already resolved");
            Edge rejected = ds_[step.disjunction].edge(opposite(step.side));
            if (!is_cycle_in(step.excluded_cycle, accepted, rejected, true)) {
                return fail(where, "rejected edge does not close the stated cycle");
            }
            accepted.add_edge(ds_[step.disjunction].edge(step.side));
            resolved[step.disjunction] = true;
        }
        if (node.is_leaf()) {
            if (!node.children.empty()) return fail(path, "leaf has children");
            if (!is_cycle_in(node.cycle, accepted, std::nullopt, false)) {
                return fail(path, "leaf cycle is not a directed cycle of accepted edges");
            }
            return {};
        }
        const std::size_t d = *node.branch;
        if (!known(d)) return fail(path, "branch on unknown disjunction " + std::to_string(d));
        if (resolved[d]) return fail(path, "branch on a resolved disjunction");
        if (node.children.size() != 2) return fail(path, "branch needs exactly two cases");
        bool saw[2] = {false, false};
        for (const ProofNode& child : node.children) {
            if (!child.decision || child.decision->disjunction != d) {
                return fail(path, "case does not decide the branch disjunction");
            }
            saw[child.decision->side == Side::left ? 0 : 1] = true;
        }
        if (!saw[0] || !saw[1]) return fail(path, "cases do not cover both sides");
        for (std::size_t i = 0; i < 2; ++i) {
            ProofCheck c = check_node(node.children[i], accepted, resolved, path + "/" + std::to_string(i));
            if (!c) return c;
        }
        return {};
    }

    std::size_t v_;
    std::vector<OrderDisjunction> ds_;
};

} // namespace detail

/// Full diagnostic: which node failed and why.
inline ProofCheck check_proof_detailed(std::size_t v, std::span<const Triple> triples, const ProofNode& tree) {
    check_well_formed(v, triples);
    return detail::ProofChecker(v, triples).check(tree);
}

inline bool check_proof(std::size_t v, std::span<const Triple> triples, const ProofNode& tree) {
    return check_proof_detailed(v, triples, tree).valid;
}

// ---------------------------------------------------------------------------
// Transcript

namespace detail {

inline std::string render_edge(Edge e, const std::vector<std::string>& labels) {
    auto name = [&](Point p) { return labels.empty() ? std::to_string(p) : labels[p]; };
    return name(e.from) + " < " + name(e.to);
}

inline std::string render_cycle(const std::vector<Point>& cycle, const std::vector<std::string>& labels) {
    auto name = [&](Point p) { return labels.empty() ? std::to_string(p) : labels[p]; };
    std::string s;
    for (Point p : cycle) s += name(p) + " < ";
    return s + name(cycle.front());
}

inline std::string render_condition(const OrderDisjunction& d, const std::vector<std::string>& labels) {
    return "(" + render_edge(d.left, labels) + ") or (" + render_edge(d.right, labels) + ")";
}

inline void render_node(std::ostream& out, const ProofNode& node, const std::vector<OrderDisjunction>& ds,
                        const std::vector<std::string>& labels, const std::string& case_name, int depth) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    if (node.decision) {
        out << indent << "Case " << case_name << ": assume "
            << render_edge(ds[node.decision->disjunction].edge(node.decision->side), labels) << "\n";
    }
    const std::string inner = node.decision ? indent + "  " : indent;
    for (const ForcedStep& step : node.forced) {
        const OrderDisjunction& d = ds[step.disjunction];
        out << inner << "T" << step.disjunction + 1 << " => " << render_condition(d, labels) << "; "
            << render_edge(d.edge(opposite(step.side)), labels) << " would close "
            << render_cycle(step.excluded_cycle, labels) << ", so " << render_edge(d.edge(step.side), labels)
            << "\n";
    }
    if (node.is_leaf()) {
        out << inner << "But then " << render_cycle(node.cycle, labels) << " is a directed cycle.\n";
        if (node.decision) out << inner << "Thus Case " << case_name << " is impossible.\n";
        return;
    }
    const std::size_t d = *node.branch;
    out << inner << "Split on T" << d + 1 << " = " << render_condition(ds[d], labels) << ".\n";
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        std::string child = case_name.empty() ? std::to_string(i + 1) : case_name + "." + std::to_string(i + 1);
        render_node(out, node.children[i], ds, labels, child, node.decision ? depth + 1 : depth);
    }
}

} // namespace detail

/// Human-readable case analysis: the table of conditions, then each case
/// with its forced chain and terminal cycle.
inline std::string proof_to_text(std::span<const Triple> triples, const ProofNode& tree,
                                 const std::vector<std::string>& labels = {}) {
    auto ds = disjunctions(triples);
    std::ostringstream out;
    auto name = [&](Point p) { return labels.empty() ? std::to_string(p) : labels[p]; };
    out << "Conditions:\n";
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        out << "  T" << i + 1 << " = (" << name(t.first) << "," << name(t.middle) << "," << name(t.last)
            << "): " << detail::render_condition(ds[i], labels) << "\n";
    }
    detail::render_node(out, tree, ds, labels, "", 0);
    out << "Every case ends in a directed cycle, so no sequencing avoids all triples.\n";
    return out.str();
}

} // namespace dts

#endif // DTS_PROVER_HPP
